#pragma once

#include <functional>
#include <string>

#include "birkhoff/config.hpp"
#include "birkhoff/expr.hpp"
#include "birkhoff/functions.hpp"
#include "birkhoff/measures.hpp"
#include "birkhoff/partitions.hpp"

namespace birkhoff {

enum class IntegralStatus { Converged, Oscillating, TailUnresolved };

const char* to_string(IntegralStatus s);

/// Outcome of the weak-integral estimator.
///
/// `value` is always the canonical singleton partial sum at the deepest
/// examined depth, whatever the status. `oscillation` is the spread of
/// tagged sums across sampled refinements, tags, and enumeration orders at
/// the final stage. `stage_depth` is the discovered partial-sum depth from
/// which singleton sums stay within tolerance of the value.
struct IntegralResult {
    double value = 0.0;
    double oscillation = 0.0;
    IntegralStatus status = IntegralStatus::Oscillating;
    int partitions_examined = 0;
    int stage_depth = 0;
};

/// Anything the estimator can integrate: a pointwise evaluator plus a sound
/// range enclosure over tails [start, ∞) for the truncation bound. Checkers
/// build composite integrands (guarded products, powers) directly.
struct Integrand {
    std::function<double(Nat)> eval;
    std::function<Interval(Nat)> range_from;
    std::string label;

    static Integrand from(const ScalarFunction& f);

    /// |f|^p with the 0^p = 0 convention for p > 0.
    static Integrand abs_pow(const ScalarFunction& f, double p);
};

/// Partial sum over the first n cells of the tagged partition in canonical
/// order. Cells of measure zero contribute nothing and their tags are never
/// evaluated.
double tagged_sum(const ScalarFunction& u, const SetFunction& nu, const TaggedPartition& tp,
                  int n);

/// Weak-integral estimator. Per stage s it derives a base partition of
/// [0, s) whose cells are maximal runs of equal integrand values (the tag
/// choice is then immaterial on every cell), draws seeded refinements with
/// varied tags and head enumeration orders, and measures the spread of the
/// deepest tagged sums. Converged requires that spread and the tail bound
/// sup|u| * sum of singleton masses beyond the horizon to stay within
/// tolerance. Throws NonSummableTail when no finite tail bound exists.
IntegralResult integrate_integrand(const Integrand& u, const SetFunction& nu,
                                   const RunConfig& cfg);

IntegralResult birkhoff_weak_integral(const ScalarFunction& u, const SetFunction& nu,
                                      const RunConfig& cfg);

/// Integral over E, computed as the integral of u * indicator(E).
IntegralResult integrate_on(const ScalarFunction& u, const MeasurableSet& e,
                            const SetFunction& nu, const RunConfig& cfg);

struct PNormResult {
    double norm = 0.0;
    IntegralResult integral;
};

/// (integral of |u|^p)^(1/p). Throws BadBounds for p below 1e-3 (the 1/p
/// exponent amplifies integral error unboundedly) and NotConverged when the
/// underlying integral status is not converged.
PNormResult p_norm(const ScalarFunction& u, double p, const SetFunction& nu,
                   const RunConfig& cfg);

}  // namespace birkhoff

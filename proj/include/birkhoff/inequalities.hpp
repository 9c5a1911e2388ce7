#pragma once

#include <optional>
#include <string>
#include <vector>

#include "birkhoff/integrator.hpp"

namespace birkhoff {

/// Exponents p, q with 1/p + 1/q = 1. For p in (0,1) the conjugate q is
/// negative. p = 1 has no conjugate.
struct ConjugatePair {
    double p;
    double q;

    ConjugatePair(double p_, double q_);
    static ConjugatePair from_p(double p);
};

enum class CheckOutcome { Holds, Fails, HypothesesViolated, NotConverged };

const char* to_string(CheckOutcome o);

/// Condensed evidence for one integrand examined during a check.
struct IntegralSummary {
    std::string label;
    double value = 0.0;
    double oscillation = 0.0;
    IntegralStatus status = IntegralStatus::Oscillating;
    int stage_depth = 0;
};

/// Result of one inequality check. `slack` is signed so that slack >= 0
/// means the inequality holds in its own direction; the tolerance is
/// relative: 1e-9 * max(1, |lhs|, |rhs|). Under violated hypotheses the
/// sides are still computed when possible (exploratory mode) but the
/// outcome stays hypotheses_violated.
struct InequalityVerdict {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double tolerance = 0.0;
    CheckOutcome outcome = CheckOutcome::NotConverged;
    std::vector<PropertyAudit> hypothesis_audits;
    std::vector<IntegralSummary> integral_statuses;
    std::string error;  // nonempty when an embedded error occurred

    std::optional<double> p, q, alpha, beta;  // parameter echo
};

/// Hypothesis evidence for a measure: the claimed M_cs flags plus fresh
/// audits of subadditivity, continuity from below, and A-integrability.
struct MeasureHypotheses {
    bool flags_claimed = false;
    std::vector<PropertyAudit> audits;

    bool ok() const;
};

MeasureHypotheses audit_measure_hypotheses(const SetFunction& nu, const RunConfig& cfg);

struct CheckConfig {
    RunConfig run;
    /// Reuse an already-computed hypothesis bundle (e.g. across a sweep).
    const MeasureHypotheses* cached_hypotheses = nullptr;
};

// The seven inequality families. Domain violations (bad exponent branch,
// alpha > beta) throw BadBounds; a vanishing denominator on a point of
// positive measure throws ZeroDenominator. Non-convergence and hypothesis
// failures are reported through the verdict, never thrown.

InequalityVerdict holder_check(const ScalarFunction& u, const ScalarFunction& v,
                               const ConjugatePair& cp, const SetFunction& nu,
                               const CheckConfig& cfg);

InequalityVerdict minkowski_check(const ScalarFunction& u, const ScalarFunction& v, double p,
                                  const SetFunction& nu, const CheckConfig& cfg);

InequalityVerdict reverse_holder_check(const ScalarFunction& u, const ScalarFunction& v,
                                       const ConjugatePair& cp, const SetFunction& nu,
                                       const CheckConfig& cfg);

InequalityVerdict reverse_minkowski_check(const ScalarFunction& u, const ScalarFunction& v,
                                          double p, const SetFunction& nu,
                                          const CheckConfig& cfg);

InequalityVerdict weighted_check(const ScalarFunction& u, const ScalarFunction& v,
                                 const ConjugatePair& cp, const SetFunction& nu,
                                 const CheckConfig& cfg);

InequalityVerdict radon_ratio_check(const ScalarFunction& u, const ScalarFunction& v, double p,
                                    const SetFunction& nu, const CheckConfig& cfg);

InequalityVerdict bounded_ratio_check_a(const ScalarFunction& u, const ScalarFunction& v,
                                        const ConjugatePair& cp, double alpha, double beta,
                                        const SetFunction& nu, const CheckConfig& cfg);

InequalityVerdict bounded_ratio_check_b(const ScalarFunction& u, const ScalarFunction& v,
                                        const ConjugatePair& cp, double alpha, double beta,
                                        const SetFunction& nu, const CheckConfig& cfg);

/// Checker names accepted by sweep() and the CLI: holder, minkowski,
/// reverse_holder, reverse_minkowski, weighted, radon_ratio,
/// bounded_ratio_a, bounded_ratio_b.
bool is_checker_name(const std::string& name);

/// Tight pointwise ratio bounds min/max of u/v (power = 1) or u^p/v^q over
/// the points of positive mass below the horizon.
std::pair<double, double> tight_ratio_bounds(const ScalarFunction& u, const ScalarFunction& v,
                                             const SetFunction& nu, Nat horizon, double p_pow,
                                             double q_pow);

/// One verdict per grid entry, evaluated independently; errors (including
/// p = 1, which has no conjugate) are embedded per element and never abort
/// the sweep. For the bounded_ratio checkers, alpha/beta are computed as
/// tight pointwise bounds when not supplied.
std::vector<InequalityVerdict> sweep(const std::string& checker_name, const ScalarFunction& u,
                                     const ScalarFunction& v, const std::vector<double>& p_grid,
                                     const SetFunction& nu, const CheckConfig& cfg,
                                     std::optional<double> alpha = std::nullopt,
                                     std::optional<double> beta = std::nullopt);

}  // namespace birkhoff

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "birkhoff/config.hpp"
#include "birkhoff/sets.hpp"
#include "birkhoff/weights.hpp"

namespace birkhoff {

class ScalarFunction;  // functions.hpp

/// Distortions applied on top of an additive base measure. Both fix g(0)=0
/// and are nondecreasing; Sqrt is concave (subadditive composite), Square is
/// convex (the composite violates subadditivity).
enum class Distortion { Sqrt, Square };

/// Properties a set function may claim. Claims are audited, not trusted.
enum class MeasureFlag : unsigned {
    Subadditive = 1u << 0,
    ContinuousFromBelow = 1u << 1,
    AIntegrable = 1u << 2,
};

/// A non-additive set function ν with ν(∅)=0. Three kinds:
///   Additive:  ν(A) = sum of weights over A
///   Distorted: ν(A) = g(base(A)) for a distortion g
///   Max:       ν(A) = sup of weights over A (possibility measure)
class SetFunction {
public:
    static SetFunction additive(WeightSequence weights, std::string label = "");
    static SetFunction distorted(WeightSequence base, Distortion g, std::string label = "");
    static SetFunction max_measure(WeightSequence weights, std::string label = "");

    bool claims(MeasureFlag flag) const { return (flags_ & static_cast<unsigned>(flag)) != 0; }
    bool claims_all_mcs() const;

    /// ν({n}) without set machinery; exact for every kind.
    double singleton_mass(Nat n) const;

    /// Upper bound on sum_{n >= start} ν({n}); nullopt when divergent.
    std::optional<double> singleton_mass_tail(Nat start) const;

    /// Upper bound on how much ν(members ∪ F) can exceed ν(members) for any
    /// future F ⊆ [from, ∞). nullopt when no finite bound exists.
    std::optional<double> tail_increment_bound(const std::vector<Nat>& members, Nat from) const;

    /// Exact evaluation on an explicit finite element list.
    double evaluate_finite(const std::vector<Nat>& elements) const;

    const std::string& label() const { return label_; }
    std::string describe() const;

    bool is_additive() const { return std::holds_alternative<Additive>(repr_); }

private:
    struct Additive {
        WeightSequence weights;
    };
    struct Distorted {
        WeightSequence base;
        Distortion g;
    };
    struct Max {
        WeightSequence weights;
    };

    std::variant<Additive, Distorted, Max> repr_;
    unsigned flags_ = 0;
    std::string label_;
};

/// Evaluate ν(A). Finite sets are exact by kind. Infinite sets use the
/// continuity-from-below limit: ν(A ∩ [0,n)) iterated with doubling n until
/// successive values differ by less than the tail tolerance.
/// Throws UnknownFiniteness for predicate sets with unknown flag and
/// TailNotConverged when the horizon is reached without settling.
double evaluate(const SetFunction& nu, const MeasurableSet& a, Nat horizon = 64,
                double tail_tolerance = kTailTolerance);

enum class AuditProperty { Subadditivity, ContinuityFromBelow, AIntegrability };
enum class AuditVerdict { Passed, Failed, Inconclusive };

/// Counterexample evidence attached to a failed audit.
struct AuditWitness {
    std::string description;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
};

struct PropertyAudit {
    AuditProperty property;
    AuditVerdict verdict = AuditVerdict::Inconclusive;
    std::optional<AuditWitness> witness;
    int samples_used = 0;
    double tolerance = 0.0;

    bool passed() const { return verdict == AuditVerdict::Passed; }
};

/// Budgeted deterministic sampler for disjoint finite set pairs.
struct PairSampler {
    int count = 64;
    std::uint64_t seed = 42;
    Nat universe = 16;  // elements drawn from [0, universe)
};

/// Samples disjoint finite pairs (A,B) and checks ν(A∪B) <= ν(A)+ν(B)+tol.
/// "Passed" means no counterexample found at this budget.
PropertyAudit subadditivity_audit(const SetFunction& nu, const PairSampler& sampler, double tol);

/// An increasing chain of finite sets with its declared union.
struct SetChain {
    std::vector<MeasurableSet> steps;
    MeasurableSet union_set = MeasurableSet::empty();
    std::string label;
};

/// Doubling prefixes [0,1) ⊂ [0,2) ⊂ [0,4) ⊂ ... ↑ target ∩ horizon window.
SetChain prefix_chain(const MeasurableSet& target, Nat horizon);

/// Checks ν(union) against the last iterate along each chain.
PropertyAudit continuity_below_audit(const SetFunction& nu, const std::vector<SetChain>& chains,
                                     double tol);

/// Runs the integrator's oscillation estimator on χ_B and compares the value
/// against ν(B). Defined in audits.cpp (needs the integrator).
PropertyAudit a_integrability_audit(const SetFunction& nu, const MeasurableSet& b,
                                    int refinement_samples, double tol,
                                    const RunConfig& cfg = {});

/// True iff u and v disagree only on a ν-null set: the disagreement set over
/// [0, probe_horizon), extended by the declared supports, has ν = 0.
bool nu_ae_equal(const ScalarFunction& u, const ScalarFunction& v, const SetFunction& nu,
                 Nat probe_horizon, double tol = 1e-12);

const char* to_string(AuditProperty p);
const char* to_string(AuditVerdict v);

}  // namespace birkhoff

#include <cmath>

#include "birkhoff/integrator.hpp"
#include "birkhoff/measures.hpp"

namespace birkhoff {

PropertyAudit a_integrability_audit(const SetFunction& nu, const MeasurableSet& b,
                                    int refinement_samples, double tol, const RunConfig& cfg) {
    PropertyAudit audit;
    audit.property = AuditProperty::AIntegrability;
    audit.tolerance = tol;

    RunConfig run = cfg;
    run.samples_per_stage = std::max(1, refinement_samples);

    const IntegralResult res = birkhoff_weak_integral(ScalarFunction::indicator(b), nu, run);
    const double direct = evaluate(nu, b, run.horizon);
    audit.samples_used = res.partitions_examined;

    const double mismatch = std::abs(res.value - direct);
    if (res.status == IntegralStatus::Converged && mismatch <= tol) {
        audit.verdict = AuditVerdict::Passed;
        return audit;
    }
    audit.verdict = AuditVerdict::Failed;
    AuditWitness w;
    w.description = "singleton-resolution sum vs coarse-cell sum nu(B) for chi_B";
    w.lhs = res.value;
    w.rhs = direct;
    w.gap = std::max(mismatch, res.oscillation);
    audit.witness = w;
    return audit;
}

bool nu_ae_equal(const ScalarFunction& u, const ScalarFunction& v, const SetFunction& nu,
                 Nat probe_horizon, double tol) {
    if (expr_equal(u.expr(), v.expr())) return true;

    std::vector<Nat> disagree;
    for (Nat n = 0; n < probe_horizon; ++n) {
        if (u(n) != v(n)) disagree.push_back(n);
    }
    const MeasurableSet probed = MeasurableSet::finite(disagree, "disagreement");
    if (nu.evaluate_finite(probed.explicit_list()) > tol) return false;

    const auto& su = u.declared_support();
    const auto& sv = v.declared_support();
    if (!su || !sv) {
        throw UnknownFiniteness(
            "disagreement set cannot be classified: missing declared support");
    }
    // beyond the probe window both functions vanish outside their supports,
    // so the disagreement set is contained in the declared-support union
    const MeasurableSet beyond = set_intersect(
        set_union(*su, *sv), MeasurableSet::predicate(PredicateKind::Geq, probe_horizon));
    const MeasurableSet extended = set_union(probed, beyond);
    const Nat horizon = std::max<Nat>(probe_horizon, 64);
    return evaluate(nu, extended, horizon) <= tol;
}

}  // namespace birkhoff

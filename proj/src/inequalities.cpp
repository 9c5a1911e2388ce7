#include "birkhoff/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace birkhoff {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kVerdictTolScale = 1e-9;

std::string ratio_label(double p, double vexp) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "|u|^%g/|v|^%g", p, vexp);
    return buf;
}

}  // namespace

ConjugatePair::ConjugatePair(double p_, double q_) : p(p_), q(q_) {
    if (!(p > 0.0) || p == 1.0) throw BadBounds("p must lie in (0,1) or (1,inf)");
    if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
        throw BadBounds("1/p + 1/q = 1 violated");
    }
}

ConjugatePair ConjugatePair::from_p(double p) {
    if (!(p > 0.0)) throw BadBounds("p must be positive");
    if (p == 1.0) throw BadBounds("p = 1 has no conjugate");
    return ConjugatePair(p, p / (p - 1.0));
}

const char* to_string(CheckOutcome o) {
    switch (o) {
        case CheckOutcome::Holds: return "holds";
        case CheckOutcome::Fails: return "fails";
        case CheckOutcome::HypothesesViolated: return "hypotheses_violated";
        case CheckOutcome::NotConverged: return "not_converged";
    }
    return "?";
}

bool MeasureHypotheses::ok() const {
    if (!flags_claimed) return false;
    for (const PropertyAudit& a : audits) {
        if (!a.passed()) return false;
    }
    return true;
}

namespace {

/// An audit that cannot complete (e.g. a tail that will not settle at this
/// horizon) counts as inconclusive, which blocks the verified-hypotheses
/// gate just like a failure.
template <typename Fn>
PropertyAudit guarded_audit(AuditProperty property, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        PropertyAudit a;
        a.property = property;
        a.verdict = AuditVerdict::Inconclusive;
        AuditWitness w;
        w.description = e.what();
        a.witness = w;
        return a;
    }
}

}  // namespace

MeasureHypotheses audit_measure_hypotheses(const SetFunction& nu, const RunConfig& cfg) {
    MeasureHypotheses h;
    h.flags_claimed = nu.claims_all_mcs();

    h.audits.push_back(guarded_audit(AuditProperty::Subadditivity, [&] {
        PairSampler sampler;
        sampler.count = 48;
        sampler.seed = cfg.seed;
        sampler.universe = 12;
        return subadditivity_audit(nu, sampler, 1e-9);
    }));

    h.audits.push_back(guarded_audit(AuditProperty::ContinuityFromBelow, [&] {
        std::vector<SetChain> chains;
        chains.push_back(prefix_chain(MeasurableSet::all(), cfg.horizon));
        chains.push_back(prefix_chain(
            MeasurableSet::predicate(PredicateKind::Even, 0, "evens"), cfg.horizon));
        chains.push_back(prefix_chain(MeasurableSet::cofinite({0, 1}, "T\\{0,1}"), cfg.horizon));
        return continuity_below_audit(nu, chains, 1e-8);
    }));

    h.audits.push_back(guarded_audit(AuditProperty::AIntegrability, [&] {
        PropertyAudit worst;
        worst.property = AuditProperty::AIntegrability;
        worst.verdict = AuditVerdict::Passed;
        for (const auto& elems :
             {std::vector<Nat>{0}, std::vector<Nat>{0, 1}, std::vector<Nat>{0, 1, 2, 3}}) {
            PropertyAudit a = a_integrability_audit(nu, MeasurableSet::finite(elems),
                                                    cfg.samples_per_stage, 1e-9, cfg);
            worst.samples_used += a.samples_used;
            worst.tolerance = a.tolerance;
            if (!a.passed() && worst.passed()) {
                worst.verdict = a.verdict;
                worst.witness = a.witness;
            }
        }
        return worst;
    }));
    return h;
}

namespace {

enum class Direction { Leq, Geq };

/// Shared per-check state: runs integrals, collects summaries, tracks
/// convergence of everything that was integrated.
struct CheckContext {
    const SetFunction& nu;
    const RunConfig& run;
    InequalityVerdict& verdict;
    bool all_converged = true;

    double integral(const Integrand& f) {
        const IntegralResult res = integrate_integrand(f, nu, run);
        IntegralSummary s;
        s.label = f.label;
        s.value = res.value;
        s.oscillation = res.oscillation;
        s.status = res.status;
        s.stage_depth = res.stage_depth;
        verdict.integral_statuses.push_back(std::move(s));
        if (res.status != IntegralStatus::Converged) all_converged = false;
        return res.value;
    }
};

InequalityVerdict base_verdict(const std::string& name, const SetFunction& nu,
                               const CheckConfig& cfg, bool& gated) {
    InequalityVerdict v;
    v.name = name;
    v.lhs = v.rhs = v.slack = kNan;
    const MeasureHypotheses hyp = cfg.cached_hypotheses
                                      ? *cfg.cached_hypotheses
                                      : audit_measure_hypotheses(nu, cfg.run);
    v.hypothesis_audits = hyp.audits;
    gated = !hyp.ok();
    return v;
}

void finish(InequalityVerdict& v, Direction dir, double lhs, double rhs, bool gated,
            bool all_converged) {
    v.lhs = lhs;
    v.rhs = rhs;
    v.tolerance = kVerdictTolScale * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    v.slack = dir == Direction::Leq ? rhs - lhs : lhs - rhs;
    if (gated) {
        v.outcome = CheckOutcome::HypothesesViolated;
    } else if (!all_converged) {
        v.outcome = CheckOutcome::NotConverged;
    } else {
        v.outcome = v.slack >= -v.tolerance ? CheckOutcome::Holds : CheckOutcome::Fails;
    }
}

/// Computation failed mid-flight: keep what we have, record the error.
void abort_with(InequalityVerdict& v, bool gated, const Error& e) {
    v.error = e.what();
    v.outcome = gated ? CheckOutcome::HypothesesViolated : CheckOutcome::NotConverged;
}

/// Throws ZeroDenominator if f vanishes on a point of positive mass below
/// the horizon.
void require_nonvanishing(const ScalarFunction& f, const SetFunction& nu, Nat horizon,
                          const char* role) {
    for (Nat n = 0; n < horizon; ++n) {
        if (nu.singleton_mass(n) == 0.0) continue;
        if (f(n) == 0.0) {
            throw ZeroDenominator(std::string(role) + " vanishes at n=" + std::to_string(n) +
                                  " which has positive measure");
        }
    }
}

bool strictly_positive(const ScalarFunction& f, const SetFunction& nu, Nat horizon) {
    for (Nat n = 0; n < horizon; ++n) {
        if (nu.singleton_mass(n) == 0.0) continue;
        if (!(f(n) > 0.0)) return false;
    }
    return true;
}

/// |u|^p * |v|^(-vexp), with the 0 * anything = 0 convention on |u| = 0.
/// Callers must have established v != 0 wherever vexp makes that necessary.
Integrand ratio_integrand(const ScalarFunction& u, const ScalarFunction& v, double p,
                          double vexp) {
    const ExprPtr ue = u.expr(), ve = v.expr();
    return Integrand{
        [ue, ve, p, vexp](Nat n) {
            const double uu = std::abs(eval_expr(ue, n));
            if (uu == 0.0) return 0.0;
            const double vv = std::abs(eval_expr(ve, n));
            return std::pow(uu, p) * std::pow(vv, -vexp);
        },
        [ue, ve, p, vexp](Nat start) {
            return interval_mul(interval_pow(interval_abs(expr_range_from(ue, start)), p),
                                interval_pow(interval_abs(expr_range_from(ve, start)), -vexp));
        },
        ratio_label(p, vexp),
    };
}

/// |a| * (|a|+|b|)^e. For e < 0 the pointwise bound |a|^(1+e) replaces the
/// naive interval product, which would blow up where the base can vanish.
Integrand mixed_power_integrand(const ScalarFunction& a, const ScalarFunction& b, double e,
                                const std::string& label) {
    const ExprPtr ae = a.expr(), be = b.expr();
    return Integrand{
        [ae, be, e](Nat n) {
            const double aa = std::abs(eval_expr(ae, n));
            if (aa == 0.0) return 0.0;
            const double ss = aa + std::abs(eval_expr(be, n));
            return aa * std::pow(ss, e);
        },
        [ae, be, e](Nat start) {
            const Interval aabs = interval_abs(expr_range_from(ae, start));
            if (e < 0.0) return interval_pow(aabs, 1.0 + e);
            const Interval sum =
                interval_add(aabs, interval_abs(expr_range_from(be, start)));
            return interval_mul(aabs, interval_pow(sum, e));
        },
        label,
    };
}

Integrand product_integrand(const ScalarFunction& u, const ScalarFunction& v, double pu,
                            double pv, const std::string& label) {
    const ExprPtr ue = u.expr(), ve = v.expr();
    return Integrand{
        [ue, ve, pu, pv](Nat n) {
            const double uu = std::abs(eval_expr(ue, n));
            if (uu == 0.0) return 0.0;
            const double vv = std::abs(eval_expr(ve, n));
            if (vv == 0.0) return 0.0;
            return std::pow(uu, pu) * std::pow(vv, pv);
        },
        [ue, ve, pu, pv](Nat start) {
            return interval_mul(interval_pow(interval_abs(expr_range_from(ue, start)), pu),
                                interval_pow(interval_abs(expr_range_from(ve, start)), pv));
        },
        label,
    };
}

}  // namespace

InequalityVerdict holder_check(const ScalarFunction& u, const ScalarFunction& v,
                               const ConjugatePair& cp, const SetFunction& nu,
                               const CheckConfig& cfg) {
    if (!(cp.p > 1.0)) throw BadBounds("holder_check requires p > 1");
    bool gated = false;
    InequalityVerdict verdict = base_verdict("holder", nu, cfg, gated);
    verdict.p = cp.p;
    verdict.q = cp.q;
    try {
        CheckContext ctx{nu, cfg.run, verdict};
        const double int_uv = ctx.integral(product_integrand(u, v, 1.0, 1.0, "|uv|"));
        const double int_up = ctx.integral(Integrand::abs_pow(u, cp.p));
        const double int_vq = ctx.integral(Integrand::abs_pow(v, cp.q));
        const double lhs = int_uv;
        const double rhs = std::pow(int_up, 1.0 / cp.p) * std::pow(int_vq, 1.0 / cp.q);
        finish(verdict, Direction::Leq, lhs, rhs, gated, ctx.all_converged);
    } catch (const ZeroDenominator&) {
        throw;
    } catch (const BadBounds&) {
        throw;
    } catch (const Error& e) {
        abort_with(verdict, gated, e);
    }
    return verdict;
}

InequalityVerdict minkowski_check(const ScalarFunction& u, const ScalarFunction& v, double p,
                                  const SetFunction& nu, const CheckConfig& cfg) {
    if (!(p > 1.0)) throw BadBounds("minkowski_check requires p > 1");
    bool gated = false;
    InequalityVerdict verdict = base_verdict("minkowski", nu, cfg, gated);
    verdict.p = p;
    try {
        CheckContext ctx{nu, cfg.run, verdict};
        const ScalarFunction sum = pw_sum(u, v);
        const double int_sum_p = ctx.integral(Integrand::abs_pow(sum, p));
        const double int_up = ctx.integral(Integrand::abs_pow(u, p));
        const double int_vp = ctx.integral(Integrand::abs_pow(v, p));
        // side conditions of the inequality: integrated for the record only
        ctx.integral(mixed_power_integrand(u, v, p - 1.0, "|u|(|u|+|v|)^(p-1)"));
        ctx.integral(mixed_power_integrand(v, u, p - 1.0, "|v|(|u|+|v|)^(p-1)"));
        const double lhs = std::pow(int_sum_p, 1.0 / p);
        const double rhs = std::pow(int_up, 1.0 / p) + std::pow(int_vp, 1.0 / p);
        finish(verdict, Direction::Leq, lhs, rhs, gated, ctx.all_converged);
    } catch (const ZeroDenominator&) {
        throw;
    } catch (const BadBounds&) {
        throw;
    } catch (const Error& e) {
        abort_with(verdict, gated, e);
    }
    return verdict;
}

InequalityVerdict reverse_holder_check(const ScalarFunction& u, const ScalarFunction& v,
                                       const ConjugatePair& cp, const SetFunction& nu,
                                       const CheckConfig& cfg) {
    if (!(cp.p > 0.0 && cp.p < 1.0)) {
        throw BadBounds("reverse_holder_check requires p in (0,1)");
    }
    bool gated = false;
    InequalityVerdict verdict = base_verdict("reverse_holder", nu, cfg, gated);
    verdict.p = cp.p;
    verdict.q = cp.q;
    try {
        require_nonvanishing(v, nu, cfg.run.horizon, "v");
        CheckContext ctx{nu, cfg.run, verdict};
        const double int_uv = ctx.integral(product_integrand(u, v, 1.0, 1.0, "|uv|"));
        const double int_up = ctx.integral(Integrand::abs_pow(u, cp.p));
        if (int_up == 0.0) {
            // |u|^p integrates to zero, so uv = 0 nu-a.e. and the reverse
            // inequality degenerates to lhs >= 0
            finish(verdict, Direction::Geq, int_uv, 0.0, gated, ctx.all_converged);
            return verdict;
        }
        const double int_vq = ctx.integral(Integrand::abs_pow(v, cp.q));
        if (!(int_vq > 0.0)) {
            verdict.error = "hypothesis violated: integral of |v|^q is not positive";
            verdict.outcome = CheckOutcome::HypothesesViolated;
            return verdict;
        }
        const double lhs = int_uv;
        const double rhs = std::pow(int_up, 1.0 / cp.p) * std::pow(int_vq, 1.0 / cp.q);
        finish(verdict, Direction::Geq, lhs, rhs, gated, ctx.all_converged);
    } catch (const ZeroDenominator&) {
        throw;
    } catch (const BadBounds&) {
        throw;
    } catch (const Error& e) {
        abort_with(verdict, gated, e);
    }
    return verdict;
}

InequalityVerdict reverse_minkowski_check(const ScalarFunction& u, const ScalarFunction& v,
                                          double p, const SetFunction& nu,
                                          const CheckConfig& cfg) {
    if (!(p > 0.0 && p < 1.0)) throw BadBounds("reverse_minkowski_check requires p in (0,1)");
    bool gated = false;
    InequalityVerdict verdict = base_verdict("reverse_minkowski", nu, cfg, gated);
    verdict.p = p;
    try {
        CheckContext ctx{nu, cfg.run, verdict};
        const ScalarFunction abs_sum = pw_sum(pw_abs(u), pw_abs(v));
        const double int_sum_p = ctx.integral(Integrand::abs_pow(abs_sum, p));
        const double int_up = ctx.integral(Integrand::abs_pow(u, p));
        const double int_vp = ctx.integral(Integrand::abs_pow(v, p));
        ctx.integral(mixed_power_integrand(u, v, p - 1.0, "|u|(|u|+|v|)^(p-1)"));
        ctx.integral(mixed_power_integrand(v, u, p - 1.0, "|v|(|u|+|v|)^(p-1)"));
        const double lhs = std::pow(int_sum_p, 1.0 / p);
        const double rhs = std::pow(int_up, 1.0 / p) + std::pow(int_vp, 1.0 / p);
        finish(verdict, Direction::Geq, lhs, rhs, gated, ctx.all_converged);
    } catch (const ZeroDenominator&) {
        throw;
    } catch (const BadBounds&) {
        throw;
    } catch (const Error& e) {
        abort_with(verdict, gated, e);
    }
    return verdict;
}

InequalityVerdict weighted_check(const ScalarFunction& u, const ScalarFunction& v,
                                 const ConjugatePair& cp, const SetFunction& nu,
                                 const CheckConfig& cfg) {
    bool gated = false;
    InequalityVerdict verdict = base_verdict("weighted", nu, cfg, gated);
    verdict.p = cp.p;
    verdict.q = cp.q;
    try {
        require_nonvanishing(v, nu, cfg.run.horizon, "v");
        CheckContext ctx{nu, cfg.run, verdict};
        const double int_u = ctx.integral(Integrand::abs_pow(u, 1.0));
        const double int_v = ctx.integral(Integrand::abs_pow(v, 1.0));
        // p/q = p - 1 from the conjugacy identity
        const double int_ratio = ctx.integral(ratio_integrand(u, v, cp.p, cp.p - 1.0));
        if (int_v == 0.0) throw ZeroDenominator("integral of |v| vanishes");
        const double lhs = std::pow(int_u, cp.p);
        const double rhs = int_ratio * std::pow(int_v, cp.p - 1.0);
        const Direction dir = cp.p > 1.0 ? Direction::Leq : Direction::Geq;
        finish(verdict, dir, lhs, rhs, gated, ctx.all_converged);
    } catch (const ZeroDenominator&) {
        throw;
    } catch (const BadBounds&) {
        throw;
    } catch (const Error& e) {
        abort_with(verdict, gated, e);
    }
    return verdict;
}

InequalityVerdict radon_ratio_check(const ScalarFunction& u, const ScalarFunction& v, double p,
                                    const SetFunction& nu, const CheckConfig& cfg) {
    if (!(p > 0.0) || p == 1.0) throw BadBounds("radon_ratio_check requires p in (0,1)∪(1,inf)");
    bool gated = false;
    InequalityVerdict verdict = base_verdict("radon_ratio", nu, cfg, gated);
    verdict.p = p;
    try {
        require_nonvanishing(v, nu, cfg.run.horizon, "v");
        CheckContext ctx{nu, cfg.run, verdict};
        const double int_u = ctx.integral(Integrand::abs_pow(u, 1.0));
        const double int_v = ctx.integral(Integrand::abs_pow(v, 1.0));
        const double int_ratio = ctx.integral(ratio_integrand(u, v, p, p - 1.0));
        if (int_v == 0.0) throw ZeroDenominator("integral of |v| vanishes");
        const double lhs = int_ratio;
        const double rhs = std::pow(int_u, p) / std::pow(int_v, p - 1.0);
        const Direction dir = p > 1.0 ? Direction::Geq : Direction::Leq;
        finish(verdict, dir, lhs, rhs, gated, ctx.all_converged);
    } catch (const ZeroDenominator&) {
        throw;
    } catch (const BadBounds&) {
        throw;
    } catch (const Error& e) {
        abort_with(verdict, gated, e);
    }
    return verdict;
}

namespace {

/// Shared core of the ratio-bounded product checks:
///   (∫a)^(1/p) (∫b)^(1/q) <= (beta/alpha)^(1/(pq)) ∫ a^(1/p) b^(1/q)
/// where the caller has already validated positivity and the ratio bound.
InequalityVerdict bounded_ratio_core(const std::string& name, const ScalarFunction& a,
                                     const ScalarFunction& b, const ConjugatePair& cp,
                                     double alpha, double beta, const SetFunction& nu,
                                     const CheckConfig& cfg, bool hypotheses_ok) {
    bool gated = false;
    InequalityVerdict verdict = base_verdict(name, nu, cfg, gated);
    verdict.p = cp.p;
    verdict.q = cp.q;
    verdict.alpha = alpha;
    verdict.beta = beta;
    gated = gated || !hypotheses_ok;
    try {
        CheckContext ctx{nu, cfg.run, verdict};
        const double int_a = ctx.integral(Integrand::abs_pow(a, 1.0));
        const double int_b = ctx.integral(Integrand::abs_pow(b, 1.0));
        const double int_mix = ctx.integral(
            product_integrand(a, b, 1.0 / cp.p, 1.0 / cp.q, "a^(1/p) b^(1/q)"));
        const double lhs = std::pow(int_a, 1.0 / cp.p) * std::pow(int_b, 1.0 / cp.q);
        const double rhs = std::pow(beta / alpha, 1.0 / (cp.p * cp.q)) * int_mix;
        finish(verdict, Direction::Leq, lhs, rhs, gated, ctx.all_converged);
    } catch (const ZeroDenominator&) {
        throw;
    } catch (const BadBounds&) {
        throw;
    } catch (const Error& e) {
        abort_with(verdict, gated, e);
    }
    return verdict;
}

bool ratio_bound_holds(const ScalarFunction& a, const ScalarFunction& b, const SetFunction& nu,
                       Nat horizon, double alpha, double beta) {
    const double eps = 1e-12 * std::max({1.0, alpha, beta});
    for (Nat n = 0; n < horizon; ++n) {
        if (nu.singleton_mass(n) == 0.0) continue;
        const double bn = b(n);
        if (bn == 0.0) return false;
        const double r = a(n) / bn;
        if (r < alpha - eps || r > beta + eps) return false;
    }
    return true;
}

void validate_bounds(const ConjugatePair& cp, double alpha, double beta) {
    if (!(cp.p > 1.0)) throw BadBounds("bounded_ratio checks require p > 1");
    if (!(alpha > 0.0) || !(beta > 0.0)) throw BadBounds("alpha and beta must be positive");
    if (alpha > beta) throw BadBounds("alpha must not exceed beta");
}

}  // namespace

InequalityVerdict bounded_ratio_check_a(const ScalarFunction& u, const ScalarFunction& v,
                                        const ConjugatePair& cp, double alpha, double beta,
                                        const SetFunction& nu, const CheckConfig& cfg) {
    validate_bounds(cp, alpha, beta);
    const Nat horizon = cfg.run.horizon;
    const bool hyp = strictly_positive(u, nu, horizon) && strictly_positive(v, nu, horizon) &&
                     ratio_bound_holds(u, v, nu, horizon, alpha, beta);
    return bounded_ratio_core("bounded_ratio_a", u, v, cp, alpha, beta, nu, cfg, hyp);
}

InequalityVerdict bounded_ratio_check_b(const ScalarFunction& u, const ScalarFunction& v,
                                        const ConjugatePair& cp, double alpha, double beta,
                                        const SetFunction& nu, const CheckConfig& cfg) {
    validate_bounds(cp, alpha, beta);
    const Nat horizon = cfg.run.horizon;
    // substitute u^p and v^q; the mixed integrand then reduces to u*v
    const ScalarFunction up = ScalarFunction::from_expr(
        make_binary(Expr::Tag::Pow, u.expr(), make_num(cp.p)), u.declared_support());
    const ScalarFunction vq = ScalarFunction::from_expr(
        make_binary(Expr::Tag::Pow, v.expr(), make_num(cp.q)), std::nullopt);
    const bool hyp = strictly_positive(u, nu, horizon) && strictly_positive(v, nu, horizon) &&
                     ratio_bound_holds(up, vq, nu, horizon, alpha, beta);
    InequalityVerdict verdict =
        bounded_ratio_core("bounded_ratio_b", up, vq, cp, alpha, beta, nu, cfg, hyp);
    return verdict;
}

bool is_checker_name(const std::string& name) {
    static const char* names[] = {"holder",          "minkowski",       "reverse_holder",
                                  "reverse_minkowski", "weighted",        "radon_ratio",
                                  "bounded_ratio_a", "bounded_ratio_b"};
    for (const char* n : names) {
        if (name == n) return true;
    }
    return false;
}

std::pair<double, double> tight_ratio_bounds(const ScalarFunction& u, const ScalarFunction& v,
                                             const SetFunction& nu, Nat horizon, double p_pow,
                                             double q_pow) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Nat n = 0; n < horizon; ++n) {
        if (nu.singleton_mass(n) == 0.0) continue;
        const double vn = v(n);
        if (vn == 0.0) throw ZeroDenominator("ratio undefined: v vanishes at n=" +
                                             std::to_string(n));
        const double r = std::pow(u(n), p_pow) / std::pow(vn, q_pow);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw ZeroDenominator("no points of positive measure below the horizon");
    }
    return {lo, hi};
}

std::vector<InequalityVerdict> sweep(const std::string& checker_name, const ScalarFunction& u,
                                     const ScalarFunction& v, const std::vector<double>& p_grid,
                                     const SetFunction& nu, const CheckConfig& cfg,
                                     std::optional<double> alpha, std::optional<double> beta) {
    if (!is_checker_name(checker_name)) throw BadBounds("unknown checker '" + checker_name + "'");

    const MeasureHypotheses hyp = cfg.cached_hypotheses
                                      ? *cfg.cached_hypotheses
                                      : audit_measure_hypotheses(nu, cfg.run);
    CheckConfig shared = cfg;
    shared.cached_hypotheses = &hyp;

    std::vector<InequalityVerdict> out;
    out.reserve(p_grid.size());
    for (double p : p_grid) {
        try {
            if (checker_name == "holder") {
                out.push_back(holder_check(u, v, ConjugatePair::from_p(p), nu, shared));
            } else if (checker_name == "minkowski") {
                out.push_back(minkowski_check(u, v, p, nu, shared));
            } else if (checker_name == "reverse_holder") {
                out.push_back(reverse_holder_check(u, v, ConjugatePair::from_p(p), nu, shared));
            } else if (checker_name == "reverse_minkowski") {
                out.push_back(reverse_minkowski_check(u, v, p, nu, shared));
            } else if (checker_name == "weighted") {
                out.push_back(weighted_check(u, v, ConjugatePair::from_p(p), nu, shared));
            } else if (checker_name == "radon_ratio") {
                out.push_back(radon_ratio_check(u, v, p, nu, shared));
            } else if (checker_name == "bounded_ratio_a") {
                const ConjugatePair cp = ConjugatePair::from_p(p);
                auto [lo, hi] = alpha && beta
                                    ? std::pair<double, double>{*alpha, *beta}
                                    : tight_ratio_bounds(u, v, nu, cfg.run.horizon, 1.0, 1.0);
                out.push_back(bounded_ratio_check_a(u, v, cp, lo, hi, nu, shared));
            } else {
                const ConjugatePair cp = ConjugatePair::from_p(p);
                auto [lo, hi] = alpha && beta ? std::pair<double, double>{*alpha, *beta}
                                              : tight_ratio_bounds(u, v, nu, cfg.run.horizon,
                                                                   cp.p, cp.q);
                out.push_back(bounded_ratio_check_b(u, v, cp, lo, hi, nu, shared));
            }
        } catch (const Error& e) {
            InequalityVerdict bad;
            bad.name = checker_name;
            bad.p = p;
            bad.lhs = bad.rhs = bad.slack = kNan;
            bad.error = e.what();
            bad.outcome = CheckOutcome::NotConverged;
            out.push_back(std::move(bad));
        }
    }
    return out;
}

}  // namespace birkhoff

#include "birkhoff/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace birkhoff {

const char* to_string(IntegralStatus s) {
    switch (s) {
        case IntegralStatus::Converged: return "converged";
        case IntegralStatus::Oscillating: return "oscillating";
        case IntegralStatus::TailUnresolved: return "tail_unresolved";
    }
    return "?";
}

Integrand Integrand::from(const ScalarFunction& f) {
    const ExprPtr expr = f.expr();
    return Integrand{
        [expr](Nat n) { return eval_expr(expr, n); },
        [expr](Nat start) { return expr_range_from(expr, start); },
        f.label().empty() ? f.to_text() : f.label(),
    };
}

Integrand Integrand::abs_pow(const ScalarFunction& f, double p) {
    const ExprPtr expr = f.expr();
    char exp_str[32];
    std::snprintf(exp_str, sizeof(exp_str), "%g", p);
    return Integrand{
        [expr, p](Nat n) {
            const double v = std::abs(eval_expr(expr, n));
            return v == 0.0 ? 0.0 : std::pow(v, p);
        },
        [expr, p](Nat start) {
            return interval_pow(interval_abs(expr_range_from(expr, start)), p);
        },
        "|" + (f.label().empty() ? f.to_text() : f.label()) + "|^" + exp_str,
    };
}

double tagged_sum(const ScalarFunction& u, const SetFunction& nu, const TaggedPartition& tp,
                  int n) {
    if (n < 1) throw BadBounds("tagged_sum depth must be at least 1");
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto cell = tp.partition.cell_elements(static_cast<std::size_t>(k));
        const double mass = nu.evaluate_finite(cell);
        if (mass == 0.0) continue;
        sum += eval_expr(u.expr(), tp.tag_at(static_cast<std::size_t>(k))) * mass;
    }
    return sum;
}

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Coarsest partition of [0, cover) whose cells are maximal runs of
/// consecutive points with identical integrand values. Points of zero
/// singleton mass are isolated so the integrand is never evaluated there.
Partition level_block_base(const std::vector<double>& uvals, Nat cover) {
    std::vector<std::vector<Nat>> head;
    Nat n = 0;
    while (n < cover) {
        if (std::isnan(uvals[n])) {  // zero-mass point: isolated cell
            head.push_back({n});
            ++n;
            continue;
        }
        Nat m = n + 1;
        while (m < cover && !std::isnan(uvals[m]) && uvals[m] == uvals[n]) ++m;
        std::vector<Nat> cell;
        for (Nat i = n; i < m; ++i) cell.push_back(i);
        head.push_back(std::move(cell));
        n = m;
    }
    return Partition(std::move(head), Partition::TailRule::Singletons, {}, "level-blocks");
}

double head_sum(const SetFunction& nu, const TaggedPartition& tp,
                const std::vector<double>& uvals, const std::vector<std::size_t>& order) {
    double sum = 0.0;
    for (std::size_t k : order) {
        const auto cell = tp.partition.cell_elements(k);
        const double mass = nu.evaluate_finite(cell);
        if (mass == 0.0) continue;
        sum += uvals[tp.tag_at(k)] * mass;
    }
    return sum;
}

}  // namespace

IntegralResult integrate_integrand(const Integrand& u, const SetFunction& nu,
                                   const RunConfig& cfg) {
    cfg.validate();
    const Nat horizon = cfg.horizon;
    const double tol = cfg.tolerance;
    constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

    // singleton masses, integrand values (NaN marks zero-mass points where
    // the integrand stays unevaluated), and canonical partial sums
    std::vector<double> mass(horizon), uvals(horizon), partial(horizon + 1, 0.0);
    for (Nat n = 0; n < horizon; ++n) {
        mass[n] = nu.singleton_mass(n);
        uvals[n] = mass[n] == 0.0 ? kNan : u.eval(n);
        const double term = mass[n] == 0.0 ? 0.0 : uvals[n] * mass[n];
        partial[n + 1] = partial[n] + term;
    }
    const double value = partial[horizon];
    // tolerance is absolute near unit scale and relative above it, so that
    // convergence never flaps on rounding noise of large-magnitude integrands
    const double band = tol * std::max(1.0, std::abs(value));

    // discovered n_eps: smallest depth from which partial sums stay in band
    Nat n_eps = 1;
    for (Nat d = horizon; d-- > 1;) {
        if (std::abs(partial[d] - value) > band) {
            n_eps = d + 1;
            break;
        }
    }

    // stage loop: sampled refinements of the per-stage level-block base
    int partitions_examined = 0;
    double final_spread = 0.0;
    for (int s = 1; s <= cfg.stages; ++s) {
        const Nat cover = std::min<Nat>(static_cast<Nat>(s), horizon);
        const Partition base = level_block_base(uvals, cover);
        const double tail_chunk = value - partial[cover];

        std::vector<TaggedPartition> candidates;
        std::vector<Nat> least_tags;
        for (std::size_t k = 0; k < base.head_size(); ++k) {
            least_tags.push_back(base.cell_elements(k).front());
        }
        candidates.emplace_back(base, least_tags);
        {
            std::vector<std::vector<Nat>> singles;
            for (Nat n = 0; n < cover; ++n) singles.push_back({n});
            Partition full(std::move(singles), Partition::TailRule::Singletons, {}, "singles");
            std::vector<Nat> tags;
            for (Nat n = 0; n < cover; ++n) tags.push_back(n);
            candidates.emplace_back(std::move(full), std::move(tags));
        }
        std::uint64_t seed_state = cfg.seed + 0x9e3779b9ull * static_cast<std::uint64_t>(s);
        auto sampled = sample_refinements(base, cfg.samples_per_stage, splitmix(seed_state),
                                          horizon);
        for (auto& tp : sampled) candidates.push_back(std::move(tp));

        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const TaggedPartition& tp : candidates) {
            std::vector<std::size_t> order(tp.partition.head_size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            for (int pass = 0; pass < 2; ++pass) {
                if (pass == 1 && order.size() > 1) {
                    for (std::size_t i = order.size(); i > 1; --i) {
                        std::swap(order[i - 1], order[splitmix(seed_state) % i]);
                    }
                } else if (pass == 1) {
                    break;
                }
                const double sum = head_sum(nu, tp, uvals, order) + tail_chunk;
                lo = std::min(lo, sum);
                hi = std::max(hi, sum);
                ++partitions_examined;
            }
        }
        lo = std::min(lo, value);
        hi = std::max(hi, value);
        if (s == cfg.stages) final_spread = hi - lo;
    }

    // truncation accounting: sup |u| on [horizon, ∞) times the mass tail
    const double tail_sup = u.range_from(horizon).abs_sup();
    double tail_bound = 0.0;
    if (tail_sup != 0.0) {
        const auto mass_tail = nu.singleton_mass_tail(horizon);
        if (!std::isfinite(tail_sup) || !mass_tail.has_value() ||
            !std::isfinite(*mass_tail)) {
            throw NonSummableTail("no finite tail bound for '" + u.label + "' beyond horizon " +
                                  std::to_string(horizon));
        }
        tail_bound = tail_sup * *mass_tail;
    }

    IntegralResult res;
    res.value = value;
    res.oscillation = final_spread;
    res.partitions_examined = partitions_examined;
    res.stage_depth = static_cast<int>(n_eps);
    if (final_spread > band) {
        res.status = IntegralStatus::Oscillating;
    } else if (tail_bound > band) {
        res.status = IntegralStatus::TailUnresolved;
    } else {
        res.status = IntegralStatus::Converged;
    }
    return res;
}

IntegralResult birkhoff_weak_integral(const ScalarFunction& u, const SetFunction& nu,
                                      const RunConfig& cfg) {
    return integrate_integrand(Integrand::from(u), nu, cfg);
}

IntegralResult integrate_on(const ScalarFunction& u, const MeasurableSet& e,
                            const SetFunction& nu, const RunConfig& cfg) {
    return birkhoff_weak_integral(pw_product(u, ScalarFunction::indicator(e)), nu, cfg);
}

PNormResult p_norm(const ScalarFunction& u, double p, const SetFunction& nu,
                   const RunConfig& cfg) {
    if (!(p > 0.0)) throw BadBounds("p_norm requires p > 0");
    if (p < 1e-3) throw BadBounds("p_norm with p < 1e-3 is ill-conditioned");
    const IntegralResult integral = integrate_integrand(Integrand::abs_pow(u, p), nu, cfg);
    if (integral.status != IntegralStatus::Converged) {
        throw NotConverged("p_norm integral status: " + std::string(to_string(integral.status)));
    }
    PNormResult out;
    out.integral = integral;
    out.norm = std::pow(integral.value, 1.0 / p);
    return out;
}

}  // namespace birkhoff

#include "birkhoff/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace birkhoff {

namespace {

double apply_distortion(Distortion g, double x) {
    switch (g) {
        case Distortion::Sqrt: return std::sqrt(x);
        case Distortion::Square: return x * x;
    }
    throw Error("unreachable distortion");
}

unsigned flag_bits(std::initializer_list<MeasureFlag> flags) {
    unsigned bits = 0;
    for (MeasureFlag f : flags) bits |= static_cast<unsigned>(f);
    return bits;
}

}  // namespace

SetFunction SetFunction::additive(WeightSequence weights, std::string label) {
    SetFunction nu;
    nu.repr_ = Additive{std::move(weights)};
    nu.flags_ = flag_bits({MeasureFlag::Subadditive, MeasureFlag::ContinuousFromBelow,
                           MeasureFlag::AIntegrable});
    nu.label_ = std::move(label);
    return nu;
}

SetFunction SetFunction::distorted(WeightSequence base, Distortion g, std::string label) {
    SetFunction nu;
    nu.repr_ = Distorted{std::move(base), g};
    // concave distortions keep subadditivity; neither kind is A-integrable
    nu.flags_ = g == Distortion::Sqrt
                    ? flag_bits({MeasureFlag::Subadditive, MeasureFlag::ContinuousFromBelow})
                    : flag_bits({MeasureFlag::ContinuousFromBelow});
    nu.label_ = std::move(label);
    return nu;
}

SetFunction SetFunction::max_measure(WeightSequence weights, std::string label) {
    SetFunction nu;
    nu.repr_ = Max{std::move(weights)};
    nu.flags_ = flag_bits({MeasureFlag::Subadditive, MeasureFlag::ContinuousFromBelow});
    nu.label_ = std::move(label);
    return nu;
}

bool SetFunction::claims_all_mcs() const {
    return claims(MeasureFlag::Subadditive) && claims(MeasureFlag::ContinuousFromBelow) &&
           claims(MeasureFlag::AIntegrable);
}

double SetFunction::singleton_mass(Nat n) const {
    if (const auto* a = std::get_if<Additive>(&repr_)) return a->weights.at(n);
    if (const auto* d = std::get_if<Distorted>(&repr_)) {
        return apply_distortion(d->g, d->base.at(n));
    }
    return std::get<Max>(repr_).weights.at(n);
}

std::optional<double> SetFunction::singleton_mass_tail(Nat start) const {
    if (const auto* a = std::get_if<Additive>(&repr_)) return a->weights.tail_bound(start);
    if (const auto* d = std::get_if<Distorted>(&repr_)) {
        const double power = d->g == Distortion::Sqrt ? 0.5 : 2.0;
        return d->base.tail_bound(start, power);
    }
    return std::get<Max>(repr_).weights.tail_bound(start);
}

std::optional<double> SetFunction::tail_increment_bound(const std::vector<Nat>& members,
                                                        Nat from) const {
    if (const auto* a = std::get_if<Additive>(&repr_)) {
        return a->weights.tail_bound(from);
    }
    if (const auto* m = std::get_if<Max>(&repr_)) {
        // adding points can raise a sup by at most the largest remaining weight
        return m->weights.tail_bound(from);
    }
    const auto& d = std::get<Distorted>(repr_);
    const auto delta = d.base.tail_bound(from);
    if (!delta) return std::nullopt;
    double base = 0.0;
    for (Nat n : members) base += d.base.at(n);
    // g is nondecreasing, so the worst case absorbs the whole base tail
    return apply_distortion(d.g, base + *delta) - apply_distortion(d.g, base);
}

double SetFunction::evaluate_finite(const std::vector<Nat>& elements) const {
    if (const auto* a = std::get_if<Additive>(&repr_)) {
        double sum = 0.0;
        for (Nat n : elements) sum += a->weights.at(n);
        return sum;
    }
    if (const auto* d = std::get_if<Distorted>(&repr_)) {
        double base = 0.0;
        for (Nat n : elements) base += d->base.at(n);
        return apply_distortion(d->g, base);
    }
    const auto& w = std::get<Max>(repr_).weights;
    double best = 0.0;
    for (Nat n : elements) best = std::max(best, w.at(n));
    return best;
}

std::string SetFunction::describe() const {
    std::string kind;
    std::string weights;
    if (const auto* a = std::get_if<Additive>(&repr_)) {
        kind = "additive";
        weights = a->weights.describe();
    } else if (const auto* d = std::get_if<Distorted>(&repr_)) {
        kind = d->g == Distortion::Sqrt ? "distorted:sqrt" : "distorted:square";
        weights = d->base.describe();
    } else {
        kind = "max";
        weights = std::get<Max>(repr_).weights.describe();
    }
    return kind + "(" + weights + ")";
}

double evaluate(const SetFunction& nu, const MeasurableSet& a, Nat horizon,
                double tail_tolerance) {
    if (a.kind() == MeasurableSet::Kind::Finite) {
        return nu.evaluate_finite(a.explicit_list());
    }
    if (a.finiteness() == Finiteness::Unknown) {
        throw UnknownFiniteness("cannot evaluate '" + a.label() +
                                "': predicate set with unknown finiteness");
    }
    // continuity-from-below limit over growing prefixes; stop as soon as the
    // remaining prefix growth provably cannot move the value past tolerance
    std::vector<Nat> members;
    for (Nat n = 1; n <= horizon; ++n) {
        if (a.member(n - 1)) members.push_back(n - 1);
        const auto remaining = nu.tail_increment_bound(members, n);
        if (remaining && *remaining < tail_tolerance) {
            return nu.evaluate_finite(members);
        }
    }
    throw TailNotConverged("evaluation of '" + a.label() + "' did not settle by horizon " +
                           std::to_string(horizon));
}

PropertyAudit subadditivity_audit(const SetFunction& nu, const PairSampler& sampler, double tol) {
    PropertyAudit audit;
    audit.property = AuditProperty::Subadditivity;
    audit.tolerance = tol;

    std::mt19937_64 rng(sampler.seed);
    std::uniform_int_distribution<Nat> pick(0, sampler.universe - 1);
    std::uniform_int_distribution<int> size_dist(1, 4);

    for (int i = 0; i < sampler.count; ++i) {
        std::vector<Nat> lhs_elems, rhs_elems;
        const int na = size_dist(rng), nb = size_dist(rng);
        for (int k = 0; k < na; ++k) lhs_elems.push_back(pick(rng));
        for (int k = 0; k < nb; ++k) {
            const Nat e = pick(rng);
            if (std::find(lhs_elems.begin(), lhs_elems.end(), e) == lhs_elems.end()) {
                rhs_elems.push_back(e);
            }
        }
        auto a = MeasurableSet::finite(lhs_elems);
        auto b = MeasurableSet::finite(rhs_elems);
        ++audit.samples_used;

        const double va = nu.evaluate_finite(a.explicit_list());
        const double vb = nu.evaluate_finite(b.explicit_list());
        const double vu = evaluate(nu, set_union(a, b));
        const double gap = vu - va - vb;
        if (gap > tol) {
            audit.verdict = AuditVerdict::Failed;
            AuditWitness w;
            w.description = "nu(A∪B) > nu(A)+nu(B) for disjoint A,B";
            w.lhs = vu;
            w.rhs = va + vb;
            w.gap = gap;
            audit.witness = w;
            return audit;
        }
    }
    audit.verdict = AuditVerdict::Passed;
    return audit;
}

SetChain prefix_chain(const MeasurableSet& target, Nat horizon) {
    SetChain chain;
    chain.union_set = target;
    chain.label = "prefixes of " + (target.label().empty() ? "target" : target.label());
    for (Nat n = 1;; n *= 2) {
        if (n > horizon) n = horizon;
        chain.steps.push_back(MeasurableSet::finite(target.enumerate_prefix(n)));
        if (n == horizon) break;
    }
    return chain;
}

PropertyAudit continuity_below_audit(const SetFunction& nu, const std::vector<SetChain>& chains,
                                     double tol) {
    PropertyAudit audit;
    audit.property = AuditProperty::ContinuityFromBelow;
    audit.tolerance = tol;

    for (const SetChain& chain : chains) {
        if (chain.steps.empty()) continue;
        ++audit.samples_used;
        double limit = 0.0;
        for (const MeasurableSet& step : chain.steps) {
            limit = evaluate(nu, step);
        }
        const double direct = evaluate(nu, chain.union_set);
        const double gap = std::abs(direct - limit);
        if (gap > tol) {
            audit.verdict = AuditVerdict::Failed;
            AuditWitness w;
            w.description = "limit along chain '" + chain.label + "' misses nu(union)";
            w.lhs = direct;
            w.rhs = limit;
            w.gap = gap;
            audit.witness = w;
            return audit;
        }
    }
    audit.verdict = AuditVerdict::Passed;
    return audit;
}

const char* to_string(AuditProperty p) {
    switch (p) {
        case AuditProperty::Subadditivity: return "subadditivity";
        case AuditProperty::ContinuityFromBelow: return "continuity_from_below";
        case AuditProperty::AIntegrability: return "a_integrability";
    }
    return "?";
}

const char* to_string(AuditVerdict v) {
    switch (v) {
        case AuditVerdict::Passed: return "passed";
        case AuditVerdict::Failed: return "failed";
        case AuditVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace birkhoff

#include "birkhoff/sets.hpp"

#include <algorithm>

namespace birkhoff {

namespace {

std::vector<Nat> normalized(std::vector<Nat> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<Nat> list_union(const std::vector<Nat>& a, const std::vector<Nat>& b) {
    std::vector<Nat> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Nat> list_intersect(const std::vector<Nat>& a, const std::vector<Nat>& b) {
    std::vector<Nat> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Nat> list_difference(const std::vector<Nat>& a, const std::vector<Nat>& b) {
    std::vector<Nat> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Finiteness union_finiteness(Finiteness a, Finiteness b) {
    if (a == Finiteness::Infinite || b == Finiteness::Infinite) return Finiteness::Infinite;
    if (a == Finiteness::Finite && b == Finiteness::Finite) return Finiteness::Finite;
    return Finiteness::Unknown;
}

Finiteness intersect_finiteness(Finiteness a, Finiteness b) {
    if (a == Finiteness::Finite || b == Finiteness::Finite) return Finiteness::Finite;
    // infinite ∩ infinite can be either; unknown stays unknown
    return Finiteness::Unknown;
}

}  // namespace

MeasurableSet MeasurableSet::finite(std::vector<Nat> elements, std::string label) {
    MeasurableSet s;
    s.repr_ = FiniteData{normalized(std::move(elements))};
    s.label_ = std::move(label);
    return s;
}

MeasurableSet MeasurableSet::cofinite(std::vector<Nat> excluded, std::string label) {
    MeasurableSet s;
    s.repr_ = CofiniteData{normalized(std::move(excluded))};
    s.label_ = std::move(label);
    return s;
}

MeasurableSet MeasurableSet::predicate(PredicateKind kind, Nat param, std::string label) {
    std::function<bool(Nat)> fn;
    Finiteness fin = Finiteness::Infinite;
    switch (kind) {
        case PredicateKind::Even:
            fn = [](Nat n) { return n % 2 == 0; };
            break;
        case PredicateKind::Odd:
            fn = [](Nat n) { return n % 2 == 1; };
            break;
        case PredicateKind::Geq:
            fn = [param](Nat n) { return n >= param; };
            break;
        case PredicateKind::Lt:
            fn = [param](Nat n) { return n < param; };
            fin = Finiteness::Finite;
            break;
        case PredicateKind::Custom:
            throw Error("custom predicates need an explicit membership rule");
    }
    MeasurableSet s;
    s.repr_ = PredicateData{std::move(fn), fin, kind, param};
    s.label_ = std::move(label);
    return s;
}

MeasurableSet MeasurableSet::predicate(std::function<bool(Nat)> member, Finiteness finiteness,
                                       std::string label) {
    MeasurableSet s;
    s.repr_ = PredicateData{std::move(member), finiteness, PredicateKind::Custom, 0};
    s.label_ = std::move(label);
    return s;
}

MeasurableSet::Kind MeasurableSet::kind() const {
    switch (repr_.index()) {
        case 0: return Kind::Finite;
        case 1: return Kind::Cofinite;
        default: return Kind::Predicate;
    }
}

Finiteness MeasurableSet::finiteness() const {
    switch (kind()) {
        case Kind::Finite: return Finiteness::Finite;
        case Kind::Cofinite: return Finiteness::Infinite;
        default: return std::get<PredicateData>(repr_).finiteness;
    }
}

bool MeasurableSet::member(Nat n) const {
    switch (kind()) {
        case Kind::Finite: {
            const auto& e = std::get<FiniteData>(repr_).elements;
            return std::binary_search(e.begin(), e.end(), n);
        }
        case Kind::Cofinite: {
            const auto& e = std::get<CofiniteData>(repr_).excluded;
            return !std::binary_search(e.begin(), e.end(), n);
        }
        default:
            return std::get<PredicateData>(repr_).member(n);
    }
}

const std::vector<Nat>& MeasurableSet::explicit_list() const {
    if (kind() == Kind::Finite) return std::get<FiniteData>(repr_).elements;
    if (kind() == Kind::Cofinite) return std::get<CofiniteData>(repr_).excluded;
    throw Error("predicate sets have no explicit list");
}

PredicateKind MeasurableSet::predicate_kind() const {
    return std::get<PredicateData>(repr_).pkind;
}

Nat MeasurableSet::predicate_param() const {
    return std::get<PredicateData>(repr_).param;
}

std::vector<Nat> MeasurableSet::enumerate_prefix(Nat n) const {
    std::vector<Nat> out;
    if (kind() == Kind::Finite) {
        for (Nat e : std::get<FiniteData>(repr_).elements) {
            if (e < n) out.push_back(e);
        }
        return out;
    }
    for (Nat i = 0; i < n; ++i) {
        if (member(i)) out.push_back(i);
    }
    return out;
}

MeasurableSet set_union(const MeasurableSet& a, const MeasurableSet& b) {
    using K = MeasurableSet::Kind;
    const K ka = a.kind(), kb = b.kind();
    if (ka == K::Finite && kb == K::Finite) {
        return MeasurableSet::finite(list_union(a.explicit_list(), b.explicit_list()));
    }
    if (ka == K::Finite && kb == K::Cofinite) {
        return MeasurableSet::cofinite(list_difference(b.explicit_list(), a.explicit_list()));
    }
    if (ka == K::Cofinite && kb == K::Finite) return set_union(b, a);
    if (ka == K::Cofinite && kb == K::Cofinite) {
        return MeasurableSet::cofinite(list_intersect(a.explicit_list(), b.explicit_list()));
    }
    // at least one predicate
    Finiteness fin = union_finiteness(a.finiteness(), b.finiteness());
    return MeasurableSet::predicate([a, b](Nat n) { return a.member(n) || b.member(n); }, fin);
}

MeasurableSet set_intersect(const MeasurableSet& a, const MeasurableSet& b) {
    using K = MeasurableSet::Kind;
    const K ka = a.kind(), kb = b.kind();
    if (ka == K::Finite) {
        std::vector<Nat> out;
        for (Nat e : a.explicit_list()) {
            if (b.member(e)) out.push_back(e);
        }
        return MeasurableSet::finite(std::move(out));
    }
    if (kb == K::Finite) return set_intersect(b, a);
    if (ka == K::Cofinite && kb == K::Cofinite) {
        return MeasurableSet::cofinite(list_union(a.explicit_list(), b.explicit_list()));
    }
    // cofinite ∩ infinite predicate stays infinite: only finitely many points
    // are removed from an infinite set
    Finiteness fin;
    if (ka == K::Cofinite) {
        fin = b.finiteness() == Finiteness::Infinite ? Finiteness::Infinite : Finiteness::Unknown;
    } else if (kb == K::Cofinite) {
        fin = a.finiteness() == Finiteness::Infinite ? Finiteness::Infinite : Finiteness::Unknown;
    } else {
        fin = intersect_finiteness(a.finiteness(), b.finiteness());
    }
    return MeasurableSet::predicate([a, b](Nat n) { return a.member(n) && b.member(n); }, fin);
}

MeasurableSet set_complement(const MeasurableSet& a) {
    using K = MeasurableSet::Kind;
    switch (a.kind()) {
        case K::Finite: return MeasurableSet::cofinite(a.explicit_list());
        case K::Cofinite: return MeasurableSet::finite(a.explicit_list());
        default: break;
    }
    switch (a.predicate_kind()) {
        case PredicateKind::Even: return MeasurableSet::predicate(PredicateKind::Odd, 0);
        case PredicateKind::Odd: return MeasurableSet::predicate(PredicateKind::Even, 0);
        case PredicateKind::Geq:
            return MeasurableSet::predicate(PredicateKind::Lt, a.predicate_param());
        case PredicateKind::Lt:
            return MeasurableSet::predicate(PredicateKind::Geq, a.predicate_param());
        case PredicateKind::Custom: break;
    }
    Finiteness fin = a.finiteness() == Finiteness::Finite ? Finiteness::Infinite
                                                          : Finiteness::Unknown;
    return MeasurableSet::predicate([a](Nat n) { return !a.member(n); }, fin);
}

MeasurableSet set_difference(const MeasurableSet& a, const MeasurableSet& b) {
    using K = MeasurableSet::Kind;
    if (a.kind() == K::Finite) {
        std::vector<Nat> out;
        for (Nat e : a.explicit_list()) {
            if (!b.member(e)) out.push_back(e);
        }
        return MeasurableSet::finite(std::move(out));
    }
    if (a.kind() == K::Cofinite && b.kind() == K::Finite) {
        return MeasurableSet::cofinite(list_union(a.explicit_list(), b.explicit_list()));
    }
    return set_intersect(a, set_complement(b));
}

MeasurableSet set_algebra(const MeasurableSet& a, const MeasurableSet& b, SetOp op) {
    switch (op) {
        case SetOp::Union: return set_union(a, b);
        case SetOp::Intersect: return set_intersect(a, b);
        case SetOp::Difference: return set_difference(a, b);
        case SetOp::Complement: return set_complement(a);
    }
    throw Error("unreachable set op");
}

}  // namespace birkhoff

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "birkhoff/errors.hpp"

namespace birkhoff {

using Nat = std::uint64_t;

/// The countable ground space, modeled as the natural numbers. The horizon
/// only bounds numeric enumeration; membership semantics are unbounded.
struct GroundSpace {
    Nat horizon = 64;
    std::string description = "naturals";
};

enum class Finiteness { Finite, Infinite, Unknown };

/// Structured predicate kinds understood by the CLI grammar. `Custom` carries
/// an opaque membership rule and is only constructible through the API.
enum class PredicateKind { Even, Odd, Geq, Lt, Custom };

/// A subset of the naturals with decidable membership. Three representations:
/// an explicit finite list, the complement of an explicit finite list, or a
/// membership predicate with a finiteness classification.
class MeasurableSet {
public:
    enum class Kind { Finite, Cofinite, Predicate };

    static MeasurableSet finite(std::vector<Nat> elements, std::string label = "");
    static MeasurableSet cofinite(std::vector<Nat> excluded, std::string label = "");
    static MeasurableSet predicate(PredicateKind kind, Nat param, std::string label = "");
    static MeasurableSet predicate(std::function<bool(Nat)> member, Finiteness finiteness,
                                   std::string label = "");
    static MeasurableSet empty() { return finite({}, "empty"); }
    static MeasurableSet all() { return cofinite({}, "T"); }

    Kind kind() const;
    Finiteness finiteness() const;
    bool member(Nat n) const;

    /// Explicit element list of a Finite set, or excluded list of a Cofinite
    /// set. Throws for Predicate sets.
    const std::vector<Nat>& explicit_list() const;

    PredicateKind predicate_kind() const;  // Predicate sets only
    Nat predicate_param() const;

    /// Sorted members below `n`.
    std::vector<Nat> enumerate_prefix(Nat n) const;

    const std::string& label() const { return label_; }

private:
    struct FiniteData {
        std::vector<Nat> elements;  // sorted, deduplicated
    };
    struct CofiniteData {
        std::vector<Nat> excluded;  // sorted, deduplicated
    };
    struct PredicateData {
        std::function<bool(Nat)> member;
        Finiteness finiteness;
        PredicateKind pkind;
        Nat param;
    };

    std::variant<FiniteData, CofiniteData, PredicateData> repr_;
    std::string label_;

    MeasurableSet() = default;
};

enum class SetOp { Union, Intersect, Difference, Complement };

MeasurableSet set_union(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet set_intersect(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet set_difference(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet set_complement(const MeasurableSet& a);

/// Dispatch form of the four algebra operations. `b` is ignored for
/// Complement.
MeasurableSet set_algebra(const MeasurableSet& a, const MeasurableSet& b, SetOp op);

}  // namespace birkhoff

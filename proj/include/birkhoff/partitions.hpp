#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "birkhoff/sets.hpp"

namespace birkhoff {

/// A countable partition of the naturals: a finite list of explicit head
/// cells plus a rule generating the remaining cells lazily. Canonical cell
/// order: head cells as listed, then tail cells by increasing least element.
///
/// Tail rules over the naturals not covered by the head (in increasing
/// order): Singletons makes each its own cell; Blocks groups them into
/// consecutive blocks whose lengths cycle through `block_cycle`.
class Partition {
public:
    enum class TailRule { Singletons, Blocks };

    Partition(std::vector<std::vector<Nat>> head_cells, TailRule rule,
              std::vector<Nat> block_cycle = {}, std::string label = "");

    /// The all-singletons partition (empty head, singleton tail).
    static Partition singletons(std::string label = "singletons");

    std::size_t head_size() const { return head_.size(); }
    const std::vector<std::vector<Nat>>& head() const { return head_; }
    TailRule tail_rule() const { return tail_rule_; }
    const std::vector<Nat>& block_cycle() const { return block_cycle_; }
    const std::vector<Nat>& covered() const { return covered_; }
    const std::string& label() const { return label_; }

    /// Explicit elements of the k-th cell in canonical order.
    std::vector<Nat> cell_elements(std::size_t k) const;

    /// Index of the cell containing n.
    std::size_t cell_index_of(Nat n) const;

    /// True iff every cell of *this meeting [0, check_horizon) lies inside a
    /// single cell of `coarser` (checked pointwise).
    bool is_finer_than(const Partition& coarser, Nat check_horizon) const;

    /// Splits cell k into two given parts; the parts are inserted in order of
    /// least element and everything else is unchanged. Splitting a tail cell
    /// materializes the preceding tail cells into the head.
    Partition refine_cell(std::size_t k, std::vector<Nat> first, std::vector<Nat> second) const;

private:
    std::vector<std::vector<Nat>> head_;
    TailRule tail_rule_;
    std::vector<Nat> block_cycle_;  // cyclic lengths; used iff rule == Blocks
    std::vector<Nat> covered_;      // sorted union of head cells
    std::string label_;

    Nat uncovered_at_rank(Nat rank) const;
    Nat rank_of_uncovered(Nat n) const;
    Nat cycle_prefix(Nat cells) const;  // ranks consumed by the first `cells` tail cells
};

/// Free-function forms.
MeasurableSet cell_at(const Partition& p, std::size_t k);
bool is_finer(const Partition& finer, const Partition& coarser, Nat check_horizon);

/// The partition {B ∩ C : B ∈ p, C ∈ q, B ∩ C nonvoid}. Head cells of the
/// result are ordered by least element. Throws IncompatibleTails when the
/// combined block period is unreasonably large.
Partition common_refinement(const Partition& p, const Partition& q);

/// A partition with one tag point per cell. Tags are explicit for the first
/// `explicit_tags` cells and default to the least element beyond.
struct TaggedPartition {
    Partition partition;
    std::vector<Nat> explicit_tags;

    TaggedPartition(Partition p, std::vector<Nat> tags);

    Nat tag_at(std::size_t k) const;
};

/// Deterministic-for-seed refinements of p with varied cell splits and tag
/// strategies (least element, greatest element, random member). Every output
/// is finer than p.
std::vector<TaggedPartition> sample_refinements(const Partition& p, int count,
                                                std::uint64_t seed, Nat horizon = 64);

}  // namespace birkhoff

#include "birkhoff/partitions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {

constexpr Nat kMaxBlockPeriod = 4096;

std::vector<Nat> sorted_unique(std::vector<Nat> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// deterministic across standard libraries, unlike std::shuffle
template <typename T>
void fisher_yates(std::vector<T>& v, std::uint64_t& state) {
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[next() % i]);
    }
}

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

Partition::Partition(std::vector<std::vector<Nat>> head_cells, TailRule rule,
                     std::vector<Nat> block_cycle, std::string label)
    : head_(std::move(head_cells)),
      tail_rule_(rule),
      block_cycle_(std::move(block_cycle)),
      label_(std::move(label)) {
    std::vector<Nat> all;
    for (auto& cell : head_) {
        if (cell.empty()) throw BadSplit("partition cells must be nonvoid");
        std::sort(cell.begin(), cell.end());
        cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
        all.insert(all.end(), cell.begin(), cell.end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw BadSplit("head cells must be pairwise disjoint");
    }
    covered_ = std::move(all);
    if (tail_rule_ == TailRule::Blocks) {
        if (block_cycle_.empty()) throw BadSplit("block tail needs a nonempty length cycle");
        for (Nat len : block_cycle_) {
            if (len == 0) throw BadSplit("block lengths must be positive");
        }
    } else {
        block_cycle_.clear();
    }
}

Partition Partition::singletons(std::string label) {
    return Partition({}, TailRule::Singletons, {}, std::move(label));
}

Nat Partition::uncovered_at_rank(Nat rank) const {
    Nat v = rank;
    for (Nat c : covered_) {
        if (c <= v) ++v;
    }
    return v;
}

Nat Partition::rank_of_uncovered(Nat n) const {
    const auto below =
        std::lower_bound(covered_.begin(), covered_.end(), n) - covered_.begin();
    return n - static_cast<Nat>(below);
}

Nat Partition::cycle_prefix(Nat cells) const {
    if (tail_rule_ == TailRule::Singletons) return cells;
    const Nat period = block_cycle_.size();
    const Nat total = std::accumulate(block_cycle_.begin(), block_cycle_.end(), Nat{0});
    Nat ranks = (cells / period) * total;
    for (Nat i = 0; i < cells % period; ++i) ranks += block_cycle_[i];
    return ranks;
}

std::vector<Nat> Partition::cell_elements(std::size_t k) const {
    if (k < head_.size()) return head_[k];
    const Nat j = static_cast<Nat>(k - head_.size());
    const Nat lo = cycle_prefix(j);
    const Nat hi = cycle_prefix(j + 1);
    std::vector<Nat> out;
    out.reserve(hi - lo);
    for (Nat r = lo; r < hi; ++r) out.push_back(uncovered_at_rank(r));
    return out;
}

std::size_t Partition::cell_index_of(Nat n) const {
    for (std::size_t k = 0; k < head_.size(); ++k) {
        if (std::binary_search(head_[k].begin(), head_[k].end(), n)) return k;
    }
    if (std::binary_search(covered_.begin(), covered_.end(), n)) {
        throw Error("covered element missing from every head cell");
    }
    const Nat rank = rank_of_uncovered(n);
    if (tail_rule_ == TailRule::Singletons) return head_.size() + rank;
    const Nat period = block_cycle_.size();
    const Nat total = std::accumulate(block_cycle_.begin(), block_cycle_.end(), Nat{0});
    const Nat full = rank / total;
    Nat rem = rank % total;
    for (Nat i = 0; i < period; ++i) {
        if (rem < block_cycle_[i]) return head_.size() + full * period + i;
        rem -= block_cycle_[i];
    }
    throw Error("unreachable block index");
}

bool Partition::is_finer_than(const Partition& coarser, Nat check_horizon) const {
    std::map<std::size_t, std::size_t> cell_map;
    for (Nat n = 0; n < check_horizon; ++n) {
        const std::size_t mine = cell_index_of(n);
        const std::size_t theirs = coarser.cell_index_of(n);
        auto [it, inserted] = cell_map.emplace(mine, theirs);
        if (!inserted && it->second != theirs) return false;
    }
    return true;
}

Partition Partition::refine_cell(std::size_t k, std::vector<Nat> first,
                                 std::vector<Nat> second) const {
    first = sorted_unique(std::move(first));
    second = sorted_unique(std::move(second));
    if (first.empty() || second.empty()) throw BadSplit("split parts must be nonvoid");

    const std::vector<Nat> target = cell_elements(k);
    std::vector<Nat> merged;
    merged.reserve(first.size() + second.size());
    std::merge(first.begin(), first.end(), second.begin(), second.end(),
               std::back_inserter(merged));
    if (std::adjacent_find(merged.begin(), merged.end()) != merged.end()) {
        throw BadSplit("split parts overlap");
    }
    if (merged != target) throw BadSplit("split parts must cover the cell exactly");

    if (second.front() < first.front()) std::swap(first, second);

    std::vector<std::vector<Nat>> new_head;
    if (k < head_.size()) {
        new_head = head_;
        new_head[k] = std::move(first);
        new_head.insert(new_head.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                        std::move(second));
        return Partition(std::move(new_head), tail_rule_, block_cycle_, label_);
    }

    // splitting a tail cell materializes it and its predecessors into the head
    const Nat j = static_cast<Nat>(k - head_.size());
    new_head = head_;
    for (Nat i = 0; i < j; ++i) new_head.push_back(cell_elements(head_.size() + i));
    new_head.push_back(std::move(first));
    new_head.push_back(std::move(second));
    if (tail_rule_ == TailRule::Singletons) {
        return Partition(std::move(new_head), TailRule::Singletons, {}, label_);
    }
    std::vector<Nat> rotated(block_cycle_.size());
    const Nat shift = (j + 1) % block_cycle_.size();
    for (std::size_t i = 0; i < block_cycle_.size(); ++i) {
        rotated[i] = block_cycle_[(i + shift) % block_cycle_.size()];
    }
    return Partition(std::move(new_head), TailRule::Blocks, std::move(rotated), label_);
}

MeasurableSet cell_at(const Partition& p, std::size_t k) {
    return MeasurableSet::finite(p.cell_elements(k));
}

bool is_finer(const Partition& finer, const Partition& coarser, Nat check_horizon) {
    return finer.is_finer_than(coarser, check_horizon);
}

namespace {

// first point from which every cell of both partitions lies entirely on one
// side; both tails are purely cyclic beyond it
Nat clean_cut_point(const Partition& p, const Partition& q) {
    Nat cut = 0;
    if (!p.covered().empty()) cut = std::max(cut, p.covered().back() + 1);
    if (!q.covered().empty()) cut = std::max(cut, q.covered().back() + 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Partition* part : {&p, &q}) {
            for (Nat j = 0;; ++j) {
                const auto cell = part->cell_elements(part->head_size() + j);
                if (cell.front() >= cut) break;
                if (cell.back() >= cut) {
                    cut = cell.back() + 1;
                    changed = true;
                }
            }
        }
    }
    return cut;
}

std::vector<std::vector<Nat>> cells_below(const Partition& p, Nat cut) {
    std::vector<std::vector<Nat>> cells(p.head().begin(), p.head().end());
    for (Nat j = 0;; ++j) {
        auto cell = p.cell_elements(p.head_size() + j);
        if (cell.front() >= cut) break;
        cells.push_back(std::move(cell));
    }
    return cells;
}

bool is_cell_start(const Partition& p, Nat x) {
    if (x == 0) return true;
    return p.cell_index_of(x) != p.cell_index_of(x - 1);
}

Nat cycle_total(const Partition& p) {
    if (p.tail_rule() == Partition::TailRule::Singletons) return 1;
    return std::accumulate(p.block_cycle().begin(), p.block_cycle().end(), Nat{0});
}

}  // namespace

Partition common_refinement(const Partition& p, const Partition& q) {
    const Nat cut = clean_cut_point(p, q);

    std::vector<std::vector<Nat>> head;
    for (const auto& a : cells_below(p, cut)) {
        for (const auto& b : cells_below(q, cut)) {
            std::vector<Nat> inter;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) head.push_back(std::move(inter));
        }
    }
    std::sort(head.begin(), head.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    const std::string label = "(" + p.label() + ")∧(" + q.label() + ")";

    if (p.tail_rule() == Partition::TailRule::Singletons ||
        q.tail_rule() == Partition::TailRule::Singletons) {
        return Partition(std::move(head), Partition::TailRule::Singletons, {}, label);
    }

    const Nat period = std::lcm(cycle_total(p), cycle_total(q));
    if (period > kMaxBlockPeriod) {
        throw IncompatibleTails("combined block period " + std::to_string(period) +
                                " exceeds limit");
    }
    std::vector<Nat> boundaries;
    for (Nat x = cut; x <= cut + period; ++x) {
        if (is_cell_start(p, x) || is_cell_start(q, x)) boundaries.push_back(x);
    }
    std::vector<Nat> cycle;
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        cycle.push_back(boundaries[i + 1] - boundaries[i]);
    }
    const bool all_ones = std::all_of(cycle.begin(), cycle.end(), [](Nat l) { return l == 1; });
    if (all_ones) {
        return Partition(std::move(head), Partition::TailRule::Singletons, {}, label);
    }
    return Partition(std::move(head), Partition::TailRule::Blocks, std::move(cycle), label);
}

TaggedPartition::TaggedPartition(Partition p, std::vector<Nat> tags)
    : partition(std::move(p)), explicit_tags(std::move(tags)) {
    for (std::size_t k = 0; k < explicit_tags.size(); ++k) {
        const auto cell = partition.cell_elements(k);
        if (!std::binary_search(cell.begin(), cell.end(), explicit_tags[k])) {
            throw BadSplit("tag " + std::to_string(explicit_tags[k]) +
                           " does not belong to cell " + std::to_string(k));
        }
    }
}

Nat TaggedPartition::tag_at(std::size_t k) const {
    if (k < explicit_tags.size()) return explicit_tags[k];
    return partition.cell_elements(k).front();
}

std::vector<TaggedPartition> sample_refinements(const Partition& p, int count,
                                                std::uint64_t seed, Nat horizon) {
    std::vector<TaggedPartition> out;
    out.reserve(static_cast<std::size_t>(count));
    std::uint64_t state = seed ^ 0x5851f42d4c957f2dull;

    for (int s = 0; s < count; ++s) {
        Partition refined = p;
        const int split_attempts = static_cast<int>(splitmix(state) % 4);
        for (int a = 0; a < split_attempts; ++a) {
            // candidate cells: head plus a few materializable tail cells
            std::vector<std::size_t> candidates;
            const std::size_t scan = refined.head_size() + 3;
            for (std::size_t k = 0; k < scan; ++k) {
                const auto cell = refined.cell_elements(k);
                if (cell.size() >= 2 && cell.front() < horizon) candidates.push_back(k);
            }
            if (candidates.empty()) break;
            const std::size_t k = candidates[splitmix(state) % candidates.size()];
            std::vector<Nat> cell = refined.cell_elements(k);
            std::uint64_t shuffle_state = splitmix(state);
            fisher_yates(cell, shuffle_state);
            const std::size_t cut = 1 + splitmix(state) % (cell.size() - 1);
            std::vector<Nat> first(cell.begin(), cell.begin() + static_cast<std::ptrdiff_t>(cut));
            std::vector<Nat> second(cell.begin() + static_cast<std::ptrdiff_t>(cut), cell.end());
            refined = refined.refine_cell(k, std::move(first), std::move(second));
        }

        const int strategy = static_cast<int>(splitmix(state) % 3);
        std::vector<Nat> tags;
        for (std::size_t k = 0; k < refined.head_size(); ++k) {
            const auto cell = refined.cell_elements(k);
            switch (strategy) {
                case 0: tags.push_back(cell.front()); break;
                case 1: tags.push_back(cell.back()); break;
                default: tags.push_back(cell[splitmix(state) % cell.size()]); break;
            }
        }
        out.emplace_back(std::move(refined), std::move(tags));
    }
    return out;
}

}  // namespace birkhoff

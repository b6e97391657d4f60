#include "dupdel/process.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace dupdel {

ProcessParams::ProcessParams(double p, std::uint64_t seed, std::size_t size_capacity_hint)
    : p_(p), seed_(seed), capacity_hint_(size_capacity_hint) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("p must lie strictly between 0 and 1, got " + std::to_string(p));
    }
    if (size_capacity_hint == 0) {
        throw std::invalid_argument("size capacity hint must be positive");
    }
}

CliqueState::CliqueState(std::size_t capacity_hint) {
    const std::size_t cap = std::bit_ceil(std::max<std::size_t>(capacity_hint, 2));
    counts_.assign(cap + 1, 0);
    tree_.assign(cap + 1, 0);
    add(1, 1);
    num_vertices_ = 1;
    num_cliques_ = 1;
}

CliqueState CliqueState::from_counts(std::span<const std::pair<std::size_t, Count>> counts,
                                     std::uint64_t m) {
    std::size_t largest = 1;
    for (const auto& [k, c] : counts) {
        if (k == 0) throw std::invalid_argument("clique size 0 is not allowed");
        largest = std::max(largest, k);
    }
    CliqueState s(largest);
    s.add(1, -1);
    s.num_vertices_ = 0;
    s.num_cliques_ = 0;
    for (const auto& [k, c] : counts) {
        s.add(k, static_cast<std::int64_t>(c));
        s.num_vertices_ += k * c;
        s.num_cliques_ += c;
    }
    if (s.num_vertices_ == 0) throw std::invalid_argument("state must contain at least one vertex");
    s.step_index_ = m;
    return s;
}

std::size_t CliqueState::max_size() const noexcept {
    for (std::size_t k = counts_.size() - 1; k > 0; --k) {
        if (counts_[k] != 0) return k;
    }
    return 0;
}

void CliqueState::add(std::size_t k, std::int64_t delta) {
    if (k > capacity()) grow_to(k);
    counts_[k] += static_cast<Count>(delta);
    // Unsigned wraparound makes negative deltas work.
    const Count w = static_cast<Count>(delta) * static_cast<Count>(k);
    const std::size_t cap = capacity();
    for (std::size_t i = k; i <= cap; i += i & (~i + 1)) tree_[i] += w;
}

void CliqueState::grow_to(std::size_t k) {
    std::size_t cap = capacity();
    while (cap < k) cap *= 2;
    counts_.resize(cap + 1, 0);
    rebuild_tree();
}

void CliqueState::rebuild_tree() {
    const std::size_t cap = capacity();
    tree_.assign(cap + 1, 0);
    for (std::size_t i = 1; i <= cap; ++i) {
        tree_[i] += static_cast<Count>(i) * counts_[i];
        const std::size_t j = i + (i & (~i + 1));
        if (j <= cap) tree_[j] += tree_[i];
    }
}

std::size_t CliqueState::size_at_vertex_rank(Count rank) const {
    if (rank >= num_vertices_) throw std::out_of_range("vertex rank out of range");
    const std::size_t cap = capacity();
    std::size_t pos = 0;
    for (std::size_t stride = cap; stride != 0; stride >>= 1) {
        const std::size_t next = pos + stride;
        if (next <= cap && tree_[next] <= rank) {
            pos = next;
            rank -= tree_[next];
        }
    }
    return pos + 1;
}

void CliqueState::apply_duplication(std::size_t k) {
    if (count(k) == 0) {
        throw std::logic_error("duplication in a " + std::to_string(k) + "-clique, but none exist");
    }
    add(k, -1);
    add(k + 1, 1);
    ++num_vertices_;
}

void CliqueState::apply_deletion(std::size_t k) {
    if (count(k) == 0) {
        throw std::logic_error("deletion in a " + std::to_string(k) + "-clique, but none exist");
    }
    if (k == 1) return;  // an isolated vertex stays isolated
    add(k, -1);
    if (k == 2) {
        add(1, 2);
    } else {
        add(k - 1, 1);
        add(1, 1);
    }
    ++num_cliques_;
}

Snapshot CliqueState::snapshot() const {
    Snapshot snap;
    snap.m = step_index_;
    snap.n_vertices = num_vertices_;
    snap.num_cliques = num_cliques_;
    for (std::size_t k = 1; k < counts_.size(); ++k) {
        if (counts_[k] != 0) snap.counts.emplace_back(k, counts_[k]);
    }
    return snap;
}

void CliqueState::check_invariants() const {
    Count vertices = 0;
    Count cliques = 0;
    for (std::size_t k = 1; k < counts_.size(); ++k) {
        vertices += static_cast<Count>(k) * counts_[k];
        cliques += counts_[k];
        // A wrapped-around count shows up as an absurdly large value.
        if (counts_[k] > num_vertices_) {
            throw std::logic_error("negative count at size " + std::to_string(k));
        }
    }
    if (vertices != num_vertices_) throw std::logic_error("sum k*C_k != N");
    if (cliques != num_cliques_) throw std::logic_error("sum C_k != number of cliques");
    if (num_vertices_ == 0) throw std::logic_error("state has no vertices");
    // Fenwick prefix at capacity must equal N.
    Count total = 0;
    for (std::size_t i = capacity(); i > 0; i -= i & (~i + 1)) total += tree_[i];
    if (total != num_vertices_) throw std::logic_error("sampling index out of sync with counts");
}

CliqueState init_state(std::size_t capacity_hint) { return CliqueState(capacity_hint); }

std::size_t sample_vertex_clique_size(const CliqueState& state, Rng& rng) {
    return state.size_at_vertex_rank(rng.uniform_below(state.num_vertices()));
}

StepOutcome step(CliqueState& state, const ProcessParams& params, Rng& rng) {
    const bool duplicate = rng.bernoulli(params.p());
    const std::size_t k = sample_vertex_clique_size(state, rng);
    if (duplicate) {
        state.apply_duplication(k);
    } else {
        state.apply_deletion(k);
    }
    state.advance_step();
#ifndef NDEBUG
    state.check_invariants();
#endif
    return {duplicate ? StepKind::Duplication : StepKind::Deletion, k};
}

namespace {

void validate_schedule(std::uint64_t num_steps, std::span<const std::uint64_t> checkpoints) {
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > num_steps) {
            throw std::invalid_argument("checkpoint " + std::to_string(checkpoints[i]) +
                                        " exceeds the number of steps " + std::to_string(num_steps));
        }
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
            throw std::invalid_argument("checkpoints must be strictly increasing");
        }
    }
}

}  // namespace

CliqueState simulate(const ProcessParams& params, std::uint64_t num_steps,
                     std::span<const std::uint64_t> checkpoints, const SnapshotObserver& observer) {
    Rng rng(params.seed());
    return simulate(params, rng, num_steps, checkpoints, observer);
}

CliqueState simulate(const ProcessParams& params, Rng& rng, std::uint64_t num_steps,
                     std::span<const std::uint64_t> checkpoints, const SnapshotObserver& observer) {
    validate_schedule(num_steps, checkpoints);
    CliqueState state(params.size_capacity_hint());
    std::size_t next = 0;
    auto report = [&] {
        while (next < checkpoints.size() && checkpoints[next] == state.step_index()) {
            if (observer) observer(state.snapshot());
            ++next;
        }
    };
    report();
    while (state.step_index() < num_steps) {
        step(state, params, rng);
        report();
    }
    return state;
}

}  // namespace dupdel

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "dupdel/rng.hpp"

namespace dupdel {

using Count = std::uint64_t;

/// Parameters of one run of the duplication-deletion process.
class ProcessParams {
public:
    /// Throws std::invalid_argument unless 0 < p < 1 and capacity_hint > 0.
    ProcessParams(double p, std::uint64_t seed, std::size_t size_capacity_hint = 64);

    double p() const noexcept { return p_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::size_t size_capacity_hint() const noexcept { return capacity_hint_; }

private:
    double p_;
    std::uint64_t seed_;
    std::size_t capacity_hint_;
};

enum class StepKind { Duplication, Deletion };

struct StepOutcome {
    StepKind kind;
    /// Size of the clique holding the chosen vertex, before the step.
    std::size_t affected_size;
};

/// Sorted (size, count) pairs of a state, sizes ascending, zero counts omitted.
struct Snapshot {
    std::uint64_t m = 0;
    Count n_vertices = 0;
    Count num_cliques = 0;
    std::vector<std::pair<std::size_t, Count>> counts;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// The whole process state: a multiset of clique sizes.
///
/// counts(k) is the number of k-cliques. A Fenwick tree over sizes with slot
/// weight k * counts(k) supports drawing the clique of a uniformly chosen
/// vertex in O(log S), S = capacity. Capacity doubles when a clique outgrows it.
class CliqueState {
public:
    /// The single isolated vertex at m = 0.
    explicit CliqueState(std::size_t capacity_hint = 64);

    /// Build from explicit (size, count) pairs; step index starts at `m`.
    /// Throws std::invalid_argument on size 0 or an empty state.
    static CliqueState from_counts(std::span<const std::pair<std::size_t, Count>> counts,
                                   std::uint64_t m = 0);

    Count count(std::size_t k) const noexcept { return k < counts_.size() ? counts_[k] : 0; }
    Count num_vertices() const noexcept { return num_vertices_; }
    Count num_cliques() const noexcept { return num_cliques_; }
    std::uint64_t step_index() const noexcept { return step_index_; }
    /// Largest clique size with a nonzero count.
    std::size_t max_size() const noexcept;
    std::size_t capacity() const noexcept { return counts_.size() - 1; }

    /// Size of the clique containing vertex number `rank` in [0, N), where
    /// vertices are ordered by clique size. Sampling reduces to this.
    std::size_t size_at_vertex_rank(Count rank) const;

    /// k-clique -> (k+1)-clique. Throws std::logic_error if counts(k) == 0.
    void apply_duplication(std::size_t k);
    /// Isolate one vertex of a k-clique. Throws std::logic_error if counts(k) == 0.
    void apply_deletion(std::size_t k);
    void advance_step() noexcept { ++step_index_; }

    Snapshot snapshot() const;

    /// Recomputes every bookkeeping identity from scratch; throws std::logic_error
    /// naming the first violated one.
    void check_invariants() const;

    friend bool operator==(const CliqueState& a, const CliqueState& b) {
        return a.snapshot() == b.snapshot();
    }

private:
    void add(std::size_t k, std::int64_t delta);
    void grow_to(std::size_t k);
    void rebuild_tree();

    std::vector<Count> counts_;  // index = clique size, [0] unused
    std::vector<Count> tree_;    // Fenwick tree over k * counts_[k]
    Count num_vertices_ = 0;
    Count num_cliques_ = 0;
    std::uint64_t step_index_ = 0;
};

CliqueState init_state(std::size_t capacity_hint = 64);

/// Size of the clique of a uniformly chosen vertex: returns k with probability
/// k * counts(k) / N. Consumes exactly one bounded-integer draw.
std::size_t sample_vertex_clique_size(const CliqueState& state, Rng& rng);

/// One step: Bernoulli(p) for the kind, then the vertex draw (always both, in
/// that order, including the no-op deletion of an isolated vertex).
StepOutcome step(CliqueState& state, const ProcessParams& params, Rng& rng);

using SnapshotObserver = std::function<void(const Snapshot&)>;

/// Runs `num_steps` steps from the initial state with Rng(params.seed()).
/// `checkpoints` must be strictly increasing and <= num_steps (a checkpoint 0
/// reports the initial state); throws std::invalid_argument otherwise.
CliqueState simulate(const ProcessParams& params, std::uint64_t num_steps,
                     std::span<const std::uint64_t> checkpoints = {},
                     const SnapshotObserver& observer = {});

/// Same, driven by a caller-supplied stream (used for replicas).
CliqueState simulate(const ProcessParams& params, Rng& rng, std::uint64_t num_steps,
                     std::span<const std::uint64_t> checkpoints = {},
                     const SnapshotObserver& observer = {});

}  // namespace dupdel

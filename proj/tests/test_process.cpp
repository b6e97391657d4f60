#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "dupdel/process.hpp"

using namespace dupdel;

namespace {

std::map<std::size_t, Count> as_map(const CliqueState& s) {
    std::map<std::size_t, Count> out;
    for (const auto& [k, c] : s.snapshot().counts) out[k] = c;
    return out;
}

CliqueState state_of(std::vector<std::pair<std::size_t, Count>> counts, std::uint64_t m = 0) {
    return CliqueState::from_counts(counts, m);
}

}  // namespace

TEST_CASE("initial state is one isolated vertex") {
    const CliqueState s = init_state();
    CHECK(s.num_vertices() == 1);
    CHECK(s.num_cliques() == 1);
    CHECK(s.step_index() == 0);
    CHECK(s.count(1) == 1);
    CHECK(as_map(s) == std::map<std::size_t, Count>{{1, 1}});
}

TEST_CASE("ProcessParams rejects p outside (0, 1)") {
    CHECK_THROWS_AS(ProcessParams(0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ProcessParams(1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ProcessParams(-0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(ProcessParams(std::nan(""), 1), std::invalid_argument);
    CHECK_NOTHROW(ProcessParams(0.5, 1));
}

TEST_CASE("duplication grows a clique by one vertex") {
    CliqueState s = state_of({{1, 2}, {3, 1}});
    s.apply_duplication(3);
    CHECK(as_map(s) == std::map<std::size_t, Count>{{1, 2}, {4, 1}});
    CHECK(s.num_vertices() == 6);
    s.apply_duplication(1);
    CHECK(as_map(s) == std::map<std::size_t, Count>{{1, 1}, {2, 1}, {4, 1}});
    CHECK(s.num_vertices() == 7);
    s.check_invariants();
}

TEST_CASE("deletion isolates one vertex") {
    SUBCASE("k >= 3 leaves a (k-1)-clique and an isolated vertex") {
        CliqueState s = state_of({{5, 1}});
        s.apply_deletion(5);
        CHECK(as_map(s) == std::map<std::size_t, Count>{{1, 1}, {4, 1}});
        CHECK(s.num_vertices() == 5);
    }
    SUBCASE("k = 2 leaves two isolated vertices") {
        CliqueState s = state_of({{2, 1}});
        s.apply_deletion(2);
        CHECK(as_map(s) == std::map<std::size_t, Count>{{1, 2}});
    }
    SUBCASE("k = 1 changes nothing") {
        CliqueState s = state_of({{1, 3}});
        s.apply_deletion(1);
        CHECK(as_map(s) == std::map<std::size_t, Count>{{1, 3}});
    }
}

TEST_CASE("applying a step to an absent size is a logic error") {
    CliqueState s = init_state();
    CHECK_THROWS_AS(s.apply_duplication(2), std::logic_error);
    CHECK_THROWS_AS(s.apply_deletion(4), std::logic_error);
}

TEST_CASE("from_counts validates its input") {
    const std::vector<std::pair<std::size_t, Count>> zero_size{{0, 1}};
    CHECK_THROWS_AS(CliqueState::from_counts(zero_size, 0), std::invalid_argument);
    const std::vector<std::pair<std::size_t, Count>> empty;
    CHECK_THROWS_AS(CliqueState::from_counts(empty, 0), std::invalid_argument);
    const CliqueState s = state_of({{2, 3}, {200, 1}}, 17);
    CHECK(s.num_vertices() == 206);
    CHECK(s.step_index() == 17);
    CHECK(s.capacity() >= 200);
    s.check_invariants();
}

TEST_CASE("vertex ranks map onto cliques in proportion to size") {
    const CliqueState s = state_of({{1, 2}, {3, 1}, {4, 2}});
    std::map<std::size_t, Count> hits;
    for (Count r = 0; r < s.num_vertices(); ++r) ++hits[s.size_at_vertex_rank(r)];
    CHECK(hits == std::map<std::size_t, Count>{{1, 2}, {3, 3}, {4, 8}});
    CHECK_THROWS(s.size_at_vertex_rank(s.num_vertices()));
}

TEST_CASE("sampling frequencies match k C_k / N within 4 sigma") {
    const CliqueState s = state_of({{1, 5}, {3, 2}, {10, 1}, {70, 1}});
    const double n = static_cast<double>(s.num_vertices());
    Rng rng(2024);
    const int draws = 1'000'000;
    std::map<std::size_t, int> hits;
    for (int i = 0; i < draws; ++i) ++hits[sample_vertex_clique_size(s, rng)];
    CHECK(hits.size() == 4);
    for (const auto& [k, c] : s.snapshot().counts) {
        const double q = static_cast<double>(k * c) / n;
        const double sigma = std::sqrt(draws * q * (1.0 - q));
        CHECK(std::abs(hits[k] - draws * q) < 4.0 * sigma);
    }
}

TEST_CASE("capacity doubles when a clique outgrows it") {
    CliqueState s(4);
    const std::size_t before = s.capacity();
    for (std::size_t k = 1; k <= 40; ++k) s.apply_duplication(k);
    CHECK(s.capacity() > before);
    CHECK(s.capacity() >= 41);
    CHECK(s.count(41) == 1);
    s.check_invariants();
}

TEST_CASE("random trajectories preserve the invariants") {
    for (const double p : {0.1, 0.25, 0.5, 0.75, 0.95}) {
        CAPTURE(p);
        const ProcessParams params(p, 77, 2);
        Rng rng(params.seed());
        CliqueState s(params.size_capacity_hint());
        Count duplications = 0;
        for (int i = 1; i <= 50'000; ++i) {
            const Count vertices_before = s.num_vertices();
            const StepOutcome out = step(s, params, rng);
            REQUIRE(out.affected_size >= 1);
            if (out.kind == StepKind::Duplication) {
                ++duplications;
                REQUIRE(s.num_vertices() == vertices_before + 1);
            } else {
                REQUIRE(s.num_vertices() == vertices_before);
            }
            if (i % 5000 == 0) s.check_invariants();
        }
        CHECK(s.step_index() == 50'000);
        CHECK(s.num_vertices() == 1 + duplications);
        Count total = 0;
        for (const auto& [k, c] : s.snapshot().counts) total += k * c;
        CHECK(total == s.num_vertices());
    }
}

TEST_CASE("duplication fraction matches p") {
    const ProcessParams params(0.6, 5);
    Rng rng(params.seed());
    CliqueState s = init_state();
    const int n = 1'000'000;
    int dup = 0;
    for (int i = 0; i < n; ++i) dup += step(s, params, rng).kind == StepKind::Duplication;
    CHECK(std::abs(dup - 0.6 * n) < 4.0 * std::sqrt(n * 0.6 * 0.4));
}

TEST_CASE("simulation is deterministic in the seed") {
    const ProcessParams a(0.7, 123), b(0.7, 124);
    const CliqueState x = simulate(a, 20000);
    const CliqueState y = simulate(a, 20000);
    const CliqueState z = simulate(b, 20000);
    CHECK(x == y);
    CHECK_FALSE(x == z);
}

TEST_CASE("simulate reports every checkpoint in order") {
    const ProcessParams params(0.5, 9);
    const std::vector<std::uint64_t> schedule{0, 10, 100, 1000};
    std::vector<Snapshot> seen;
    const CliqueState last = simulate(params, 1000, schedule, [&](const Snapshot& s) { seen.push_back(s); });
    REQUIRE(seen.size() == 4);
    CHECK(seen[0] == init_state().snapshot());
    for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i].m == schedule[i]);
    CHECK(seen.back() == last.snapshot());

    // Observing does not perturb the stream.
    CHECK(simulate(params, 1000) == last);
}

TEST_CASE("simulate rejects bad schedules") {
    const ProcessParams params(0.5, 9);
    const std::vector<std::uint64_t> unsorted{10, 5};
    const std::vector<std::uint64_t> repeated{10, 10};
    const std::vector<std::uint64_t> beyond{5, 2000};
    CHECK_THROWS_AS(simulate(params, 1000, unsorted), std::invalid_argument);
    CHECK_THROWS_AS(simulate(params, 1000, repeated), std::invalid_argument);
    CHECK_THROWS_AS(simulate(params, 1000, beyond), std::invalid_argument);
}

TEST_CASE("an explicit stream continues where it left off") {
    const ProcessParams params(0.65, 31);
    Rng rng(params.seed());
    CliqueState s = init_state();
    for (int i = 0; i < 3000; ++i) step(s, params, rng);
    CHECK(s == simulate(params, 3000));
}

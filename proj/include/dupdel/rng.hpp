#pragma once

#include <cstdint>
#include <random>

namespace dupdel {

/// SplitMix64 finalizer. Used to derive replica seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of replica `replica` under base seed `base_seed`.
///
/// replica_seed(b, i) = splitmix64(b + 0x9E3779B97F4A7C15 * (i + 1)). This
/// mapping is part of the reproducibility contract and must not change.
std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t replica) noexcept;

/// Seedable 64-bit random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Conversions to doubles and bounded integers are done here rather
/// than through <random> distributions, which are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_replica(std::uint64_t base_seed, std::uint64_t replica) {
        return Rng(replica_seed(base_seed, replica));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0. Unbiased (Lemire's multiply-and-reject).
    std::uint64_t uniform_below(std::uint64_t n);

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace dupdel

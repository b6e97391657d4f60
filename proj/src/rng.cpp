#include "dupdel/rng.hpp"

namespace dupdel {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t replica) noexcept {
    return splitmix64(base_seed + 0x9E3779B97F4A7C15ULL * (replica + 1));
}

std::uint64_t Rng::uniform_below(std::uint64_t n) {
    u128 m = static_cast<u128>(engine_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<u128>(engine_()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace dupdel

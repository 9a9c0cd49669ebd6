#include "wbspi/rng.hpp"

#include <limits>
#include <utility>

namespace wbspi {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Rng Rng::derive(std::uint64_t master_seed, std::string_view stream_name) {
    // FNV-1a over the stream name.
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : stream_name) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return Rng(splitmix64(master_seed ^ splitmix64(h)));
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) std::swap(lo, hi);
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) return next();
    const std::uint64_t bound = span + 1;
    // Reject the low 2^64 mod bound values so every residue is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next();
        if (r >= threshold) return lo + r % bound;
    }
}

}  // namespace wbspi

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wbspi {

/// Seeded random stream. Built on mt19937_64, whose output sequence is
/// fixed by the standard; bounded draws are done here rather than with
/// std::uniform_int_distribution, whose algorithm varies across standard
/// libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Independent stream for a named component, derived from a master
    /// seed. Adding a stream never shifts the draws of another.
    static Rng derive(std::uint64_t master_seed, std::string_view stream_name);

    std::uint64_t next() { return engine_(); }

    /// Uniform in [lo, hi], inclusive.
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

    bool operator==(const Rng&) const = default;

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace wbspi

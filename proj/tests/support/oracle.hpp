#pragma once

// Test-side expectations computed without any of the library's models.

#include <cstdint>

namespace oracle {

inline std::uint32_t mask(unsigned len) { return len >= 32 ? 0xFFFFFFFFu : (1u << len) - 1u; }

struct Ring {
    std::uint32_t master;  // what the master holds after the exchange
    std::uint32_t slave;
};

// Two shift registers joined in a ring, clocked len times.
inline Ring ring_exchange(std::uint32_t m, std::uint32_t s, unsigned len, bool lsb_first) {
    const std::uint32_t k = mask(len);
    m &= k;
    s &= k;
    for (unsigned i = 0; i < len; ++i) {
        if (lsb_first) {
            const std::uint32_t mo = m & 1u, so = s & 1u;
            m = (m >> 1) | (so << (len - 1));
            s = (s >> 1) | (mo << (len - 1));
        } else {
            const std::uint32_t mo = (m >> (len - 1)) & 1u, so = (s >> (len - 1)) & 1u;
            m = ((m << 1) | so) & k;
            s = ((s << 1) | mo) & k;
        }
    }
    return {m, s};
}

// wb clocks per sclk half period
inline std::uint64_t half_period(std::uint64_t divider) { return divider + 1; }

// wb clocks from first to last sclk edge window: 2*len half periods
inline std::uint64_t active_clocks(std::uint64_t divider, unsigned len) { return 2ull * len * half_period(divider); }

inline double sclk_hz(double f, double divider) { return f / (2.0 * (divider + 1.0)); }

}  // namespace oracle

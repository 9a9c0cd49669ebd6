#pragma once

#include <cstdint>

namespace wbspi {

/// Three-valued pin level. Only MISO is ever tri-stated.
enum class Tri : std::uint8_t { Zero, One, HighZ };

constexpr Tri to_tri(bool level) { return level ? Tri::One : Tri::Zero; }

/// HighZ resolves to 0 when forced into a two-valued register.
constexpr bool resolve(Tri level) { return level == Tri::One; }

constexpr char to_char(Tri level) {
    switch (level) {
        case Tri::Zero: return '0';
        case Tri::One: return '1';
        case Tri::HighZ: return 'z';
    }
    return 'x';
}

/// Mask with the low `bits` bits set; bits may be 0..32.
constexpr std::uint32_t low_mask(unsigned bits) {
    return bits >= 32 ? 0xFFFFFFFFu : ((1u << bits) - 1u);
}

}  // namespace wbspi

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wbspi::wb {

/// Register offsets decoded by the SPI master core.
namespace reg {
inline constexpr std::uint8_t kData = 0x00;
inline constexpr std::uint8_t kCtrl = 0x10;
inline constexpr std::uint8_t kDivider = 0x14;
inline constexpr std::uint8_t kSs = 0x18;
}  // namespace reg

constexpr bool is_register(std::uint8_t address) {
    return address == reg::kData || address == reg::kCtrl || address == reg::kDivider ||
           address == reg::kSs;
}

enum class Direction : std::uint8_t { Read, Write };

/// One Wishbone Classic single read or write.
///
/// A read carries no data until the cycle completes; `data` stays empty
/// until then.
struct Transaction {
    std::uint8_t address = 0;
    std::optional<std::uint32_t> data;
    Direction direction = Direction::Read;

    static Transaction write(std::uint8_t address, std::uint32_t data) {
        return {address, data, Direction::Write};
    }
    static Transaction read(std::uint8_t address) { return {address, std::nullopt, Direction::Read}; }

    bool is_write() const { return direction == Direction::Write; }
    bool operator==(const Transaction&) const = default;
};

std::string to_string(const Transaction& txn);

/// Every Wishbone signal at one rising edge of clk_i.
struct Pins {
    bool clk_i = false;
    bool rst_i = false;
    std::uint8_t adr_i = 0;
    std::uint32_t dat_i = 0;
    std::uint32_t dat_o = 0;
    bool we_i = false;
    bool stb_i = false;
    bool cyc_i = false;
    bool ack_o = false;
    std::uint8_t sel_i = 0;

    bool operator==(const Pins&) const = default;
};

inline constexpr std::uint8_t kSelAll = 0xF;
inline constexpr std::size_t kAckLatency = 1;
inline constexpr std::size_t kCycleLength = 1 + kAckLatency;

/// ack_o only while cyc_i and stb_i are both high.
constexpr bool ack_discipline_ok(const Pins& p) { return !p.ack_o || (p.cyc_i && p.stb_i); }

/// Per-clock pins of one Classic single cycle: strobe (acked on the same
/// sample), then a clock with everything deasserted. Reads put the
/// transaction's data on dat_o when it is already resolved.
///
/// Throws InvalidAddress for offsets outside the register map and
/// ProtocolViolation for a write without data.
std::vector<Pins> encode_cycle(const Transaction& txn);

/// Inverse of encode_cycle. The trace must hold exactly one complete
/// cycle. Throws ProtocolViolation on an ack without cyc&stb, on cyc
/// dropping before ack, or on an incomplete or repeated cycle.
Transaction decode_cycle(std::span<const Pins> trace);

}  // namespace wbspi::wb

#pragma once

#include <cstdint>

#include "wbspi/logic.hpp"
#include "wbspi/wishbone.hpp"

namespace wbspi {

/// Control register (offset 0x10) bit layout.
namespace ctrl {
inline constexpr std::uint32_t kCharLenMask = 0x3F;
inline constexpr std::uint32_t kGoBsy = 1u << 8;
inline constexpr std::uint32_t kRxNeg = 1u << 9;
inline constexpr std::uint32_t kTxNeg = 1u << 10;
inline constexpr std::uint32_t kLsbFirst = 1u << 11;
inline constexpr std::uint32_t kIe = 1u << 12;
inline constexpr std::uint32_t kAss = 1u << 13;
inline constexpr std::uint32_t kWritable = kCharLenMask | kRxNeg | kTxNeg | kLsbFirst | kIe | kAss;
}  // namespace ctrl

struct CtrlFields {
    unsigned char_len = 32;  // 1..32
    bool go = false;
    bool rx_neg = false;
    bool tx_neg = false;
    bool lsb_first = false;
    bool ie = false;
    bool ass = false;

    bool operator==(const CtrlFields&) const = default;
};

std::uint32_t encode_ctrl(const CtrlFields& fields);
CtrlFields decode_ctrl(std::uint32_t word);

/// char_len field 0 means 32 bits.
constexpr unsigned transfer_length(std::uint32_t ctrl_word) {
    const unsigned field = ctrl_word & ctrl::kCharLenMask;
    return field == 0 ? 32u : field;
}

/// Injected design bugs used to measure how well the checkers catch
/// faults. None is the real core.
enum class Mutation : std::uint8_t {
    None,
    SwapEdgeSelect,     // M1: tx_neg drives sampling, rx_neg drives shifting
    DividerReloadOff,   // M2: reload counter with divider+1
    DropFinalEdge,      // M3: stop after 2L-1 sclk edges
    EarlyRxLatch,       // M4: latch MISO as seen one edge early
    IgnoreLsbFirst,     // M5: always MSB first
};

struct RegisterFile {
    std::uint32_t tx_data = 0;  // written at 0x00
    std::uint32_t rx_data = 0;  // read at 0x00
    std::uint32_t ctrl = 0;     // go_bsy is never stored here
    std::uint16_t divider = 0;
    std::uint8_t ss = 0;

    bool operator==(const RegisterFile&) const = default;
};

enum class CoreFsm : std::uint8_t { Idle, Transfer };

struct SpiPins {
    bool sclk = false;
    bool mosi = false;
    Tri miso = Tri::HighZ;
    std::uint8_t ss_n = 0xFF;  // active low, one bit per slave

    bool operator==(const SpiPins&) const = default;
};

/// Complete state of the SPI master core. Transitions are pure functions
/// below; a CoreState is a plain value.
struct CoreState {
    RegisterFile regs;
    CoreFsm fsm = CoreFsm::Idle;
    bool start_pending = false;  // go accepted on the bus this clock

    std::uint32_t shift_reg = 0;     // tx payload latched at start
    std::uint32_t sampled_bits = 0;  // rx accumulator
    unsigned bit_counter = 0;        // sclk edges remaining
    unsigned div_counter = 0;        // wb clocks left in this half period
    bool sclk = false;
    bool mosi = false;

    // Transfer parameters latched when go is accepted.
    unsigned length = 0;
    bool tx_neg = false;
    bool rx_neg = false;
    bool lsb_first = false;
    bool ass = false;
    std::uint16_t divider = 0;
    std::uint8_t ss = 0;

    unsigned tx_edges = 0;  // shift edges seen in this transfer
    unsigned rx_count = 0;  // bits sampled in this transfer
    Tri miso_at_last_edge = Tri::HighZ;

    Mutation mutation = Mutation::None;

    bool operator==(const CoreState&) const = default;
};

/// sclk = f_wbclk / ((divider + 1) * 2).
constexpr double sclk_frequency(double f_wbclk, std::uint16_t divider) {
    return f_wbclk / ((static_cast<double>(divider) + 1.0) * 2.0);
}

constexpr bool busy(const CoreState& core) {
    return core.fsm == CoreFsm::Transfer || core.start_pending;
}

/// Registers cleared, Idle, sclk low, every slave deselected. The
/// mutation survives reset.
CoreState reset(const CoreState& core);

struct BusResult {
    CoreState core;
    std::uint32_t data = 0;
};

/// Applies one register access. Throws InvalidAddress.
BusResult bus_access(CoreState core, const wb::Transaction& txn);

struct TickResult {
    CoreState core;
    SpiPins pins;
};

/// Advances the serial engine by one wb clock. `miso_in` is the line as
/// it stood before this clock edge.
TickResult tick(CoreState core, Tri miso_in);

/// Boundary pins for a state; miso is left HighZ (the core never drives it).
SpiPins output_pins(const CoreState& core);

/// True only for shift-on-rising / sample-on-falling, the one mode whose
/// first shift edge precedes its first sample edge. There the k-th shift
/// edge (1-based) presents wire bit k-1; in every other mode bit 0 is
/// presented at frame start and the k-th shift edge presents bit k.
constexpr bool shift_leads_sample(bool tx_neg, bool rx_neg) { return !tx_neg && rx_neg; }

/// Bit `index` (wire order) of a `length`-bit payload.
constexpr bool wire_bit(std::uint32_t payload, unsigned length, unsigned index, bool lsb_first) {
    const unsigned pos = lsb_first ? index : length - 1 - index;
    return (payload >> pos) & 1u;
}

/// Places the `index`-th received wire bit into an accumulator.
constexpr std::uint32_t place_bit(std::uint32_t acc, unsigned length, unsigned index, bool lsb_first,
                                  bool bit) {
    const unsigned pos = lsb_first ? index : length - 1 - index;
    return bit ? (acc | (1u << pos)) : (acc & ~(1u << pos));
}

}  // namespace wbspi

#include "wbspi/spi_core.hpp"

#include <utility>

#include "wbspi/errors.hpp"

namespace wbspi {

std::uint32_t encode_ctrl(const CtrlFields& f) {
    std::uint32_t word = f.char_len >= 32 ? 0u : (f.char_len & ctrl::kCharLenMask);
    if (f.go) word |= ctrl::kGoBsy;
    if (f.rx_neg) word |= ctrl::kRxNeg;
    if (f.tx_neg) word |= ctrl::kTxNeg;
    if (f.lsb_first) word |= ctrl::kLsbFirst;
    if (f.ie) word |= ctrl::kIe;
    if (f.ass) word |= ctrl::kAss;
    return word;
}

CtrlFields decode_ctrl(std::uint32_t word) {
    CtrlFields f;
    f.char_len = transfer_length(word);
    f.go = word & ctrl::kGoBsy;
    f.rx_neg = word & ctrl::kRxNeg;
    f.tx_neg = word & ctrl::kTxNeg;
    f.lsb_first = word & ctrl::kLsbFirst;
    f.ie = word & ctrl::kIe;
    f.ass = word & ctrl::kAss;
    return f;
}

CoreState reset(const CoreState& core) {
    CoreState fresh;
    fresh.mutation = core.mutation;
    return fresh;
}

BusResult bus_access(CoreState core, const wb::Transaction& txn) {
    if (!wb::is_register(txn.address)) {
        throw InvalidAddress("address " + std::to_string(txn.address) + " is not in the register map");
    }
    const bool is_busy = busy(core);
    RegisterFile& r = core.regs;

    if (txn.is_write()) {
        const std::uint32_t value = txn.data.value_or(0);
        switch (txn.address) {
            case wb::reg::kData:
                if (!is_busy) r.tx_data = value;
                break;
            case wb::reg::kCtrl:
                if (!is_busy) {
                    r.ctrl = value & ctrl::kWritable;
                    if ((value & ctrl::kGoBsy) && r.ss != 0) core.start_pending = true;
                }
                break;
            case wb::reg::kDivider:
                if (!is_busy) r.divider = static_cast<std::uint16_t>(value);
                break;
            case wb::reg::kSs:
                r.ss = static_cast<std::uint8_t>(value);
                break;
        }
        return {core, 0};
    }

    std::uint32_t data = 0;
    switch (txn.address) {
        case wb::reg::kData: data = r.rx_data; break;
        case wb::reg::kCtrl: data = r.ctrl | (is_busy ? ctrl::kGoBsy : 0u); break;
        case wb::reg::kDivider: data = r.divider; break;
        case wb::reg::kSs: data = r.ss; break;
    }
    return {core, data};
}

SpiPins output_pins(const CoreState& core) {
    SpiPins pins;
    pins.sclk = core.sclk;
    pins.mosi = core.mosi;
    pins.miso = Tri::HighZ;
    std::uint8_t selected = 0;
    if (core.fsm == CoreFsm::Transfer) {
        selected = core.ass ? core.ss : core.regs.ss;
    } else if (!(core.regs.ctrl & ctrl::kAss)) {
        selected = core.regs.ss;
    }
    pins.ss_n = static_cast<std::uint8_t>(~selected);
    return pins;
}

namespace {

void start_transfer(CoreState& c, Tri miso_in) {
    const CtrlFields f = decode_ctrl(c.regs.ctrl);
    c.start_pending = false;
    c.fsm = CoreFsm::Transfer;
    c.length = f.char_len;
    c.tx_neg = f.tx_neg;
    c.rx_neg = f.rx_neg;
    c.lsb_first = f.lsb_first;
    c.ass = f.ass;
    c.divider = c.regs.divider;
    c.ss = c.regs.ss;

    c.shift_reg = c.regs.tx_data & low_mask(c.length);
    c.sampled_bits = 0;
    c.bit_counter = 2 * c.length;
    c.div_counter = c.divider;
    c.sclk = false;
    c.tx_edges = 0;
    c.rx_count = 0;
    c.miso_at_last_edge = miso_in;

    const bool lsb = c.lsb_first && c.mutation != Mutation::IgnoreLsbFirst;
    c.mosi = wire_bit(c.shift_reg, c.length, 0, lsb);
}

void sclk_edge(CoreState& c, Tri miso_in) {
    c.sclk = !c.sclk;
    c.div_counter = c.divider + (c.mutation == Mutation::DividerReloadOff ? 1u : 0u);
    --c.bit_counter;

    bool tx_sel = c.tx_neg;
    bool rx_sel = c.rx_neg;
    if (c.mutation == Mutation::SwapEdgeSelect) std::swap(tx_sel, rx_sel);
    const bool lsb = c.lsb_first && c.mutation != Mutation::IgnoreLsbFirst;

    // neg = 1 selects the falling edge.
    const bool rising = c.sclk;
    const bool is_rx = rising != rx_sel;
    const bool is_tx = rising != tx_sel;

    // Sample before shift: both see the line as it was before this edge.
    if (is_rx && c.rx_count < c.length) {
        const Tri seen = c.mutation == Mutation::EarlyRxLatch ? c.miso_at_last_edge : miso_in;
        c.sampled_bits = place_bit(c.sampled_bits, c.length, c.rx_count, lsb, resolve(seen));
        ++c.rx_count;
    }
    if (is_tx) {
        ++c.tx_edges;
        const unsigned index = shift_leads_sample(tx_sel, rx_sel) ? c.tx_edges - 1 : c.tx_edges;
        if (index < c.length) c.mosi = wire_bit(c.shift_reg, c.length, index, lsb);
    }
    c.miso_at_last_edge = miso_in;

    if (c.mutation == Mutation::DropFinalEdge && c.bit_counter == 1) c.bit_counter = 0;
}

void finish_transfer(CoreState& c) {
    c.fsm = CoreFsm::Idle;
    c.regs.rx_data = c.sampled_bits;
    c.mosi = false;
    c.div_counter = 0;
}

}  // namespace

TickResult tick(CoreState core, Tri miso_in) {
    if (core.start_pending) {
        start_transfer(core, miso_in);
    } else if (core.fsm == CoreFsm::Transfer) {
        if (core.bit_counter == 0) {
            finish_transfer(core);
        } else if (core.div_counter == 0) {
            sclk_edge(core, miso_in);
        } else {
            --core.div_counter;
        }
    }
    return {core, output_pins(core)};
}

}  // namespace wbspi

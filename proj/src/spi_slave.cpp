#include "wbspi/spi_slave.hpp"

#include <string>

#include "wbspi/errors.hpp"

namespace wbspi {

SlaveState configure(SlaveState slave, std::uint32_t payload, unsigned char_len, SpiMode mode) {
    if (char_len < 1 || char_len > 32) {
        throw LengthMismatch("char_len " + std::to_string(char_len) + " outside 1..32");
    }
    if ((payload & ~low_mask(char_len)) != 0) {
        throw LengthMismatch("payload wider than " + std::to_string(char_len) + " bits");
    }
    slave.tx_payload = payload;
    slave.char_len = char_len;
    slave.mode = mode;
    slave.rx_captured = 0;
    slave.edge_count = 0;
    slave.rx_bits = 0;
    slave.tx_edges = 0;
    return slave;
}

SlaveStep on_spi_pins(SlaveState s, const SpiPins& pins) {
    const bool selected_now = ((pins.ss_n >> s.select_index) & 1u) == 0;
    if (!selected_now) {
        if (s.selected) {
            s.selected = false;
            s.miso = Tri::HighZ;
        }
        return {s, Tri::HighZ};
    }

    if (!s.selected) {
        s.selected = true;
        s.rx_captured = 0;
        s.edge_count = 0;
        s.rx_bits = 0;
        s.tx_edges = 0;
        s.prev_sclk = pins.sclk;
        s.prev_mosi = pins.mosi;
        s.miso = to_tri(wire_bit(s.tx_payload, s.char_len, 0, s.mode.lsb_first));
        return {s, s.miso};
    }

    if (pins.sclk != s.prev_sclk) {
        ++s.edge_count;
        const bool rising = pins.sclk;
        const bool is_rx = rising != s.mode.rx_neg;
        const bool is_tx = rising != s.mode.tx_neg;
        if (is_rx && s.rx_bits < s.char_len) {
            s.rx_captured = place_bit(s.rx_captured, s.char_len, s.rx_bits, s.mode.lsb_first, s.prev_mosi);
            ++s.rx_bits;
        }
        if (is_tx) {
            ++s.tx_edges;
            const unsigned index =
                shift_leads_sample(s.mode.tx_neg, s.mode.rx_neg) ? s.tx_edges - 1 : s.tx_edges;
            if (index < s.char_len) {
                s.miso = to_tri(wire_bit(s.tx_payload, s.char_len, index, s.mode.lsb_first));
            }
        }
    }
    s.prev_sclk = pins.sclk;
    s.prev_mosi = pins.mosi;
    return {s, s.miso};
}

}  // namespace wbspi

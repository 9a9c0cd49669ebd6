#pragma once

#include <cstdint>

#include "wbspi/logic.hpp"
#include "wbspi/spi_core.hpp"

namespace wbspi {

/// Edge and bit-order configuration shared by master and slave.
struct SpiMode {
    bool tx_neg = false;
    bool rx_neg = false;
    bool lsb_first = false;

    bool operator==(const SpiMode&) const = default;
};

/// Pin-level SPI slave. It mirrors the master: it shifts MISO on the
/// master's shift edges and samples MOSI on the master's sample edges,
/// always using the line value from before the edge.
struct SlaveState {
    std::uint32_t tx_payload = 0;
    std::uint32_t rx_captured = 0;
    unsigned char_len = 8;
    SpiMode mode;
    unsigned select_index = 0;  // which ss_n bit this slave listens to

    bool selected = false;
    unsigned edge_count = 0;
    unsigned rx_bits = 0;
    unsigned tx_edges = 0;
    bool prev_sclk = false;
    bool prev_mosi = false;
    Tri miso = Tri::HighZ;

    bool operator==(const SlaveState&) const = default;
};

/// Loads the payload for the next selected transfer and clears counters.
/// Throws LengthMismatch if the payload does not fit in char_len bits or
/// char_len is outside 1..32.
SlaveState configure(SlaveState slave, std::uint32_t payload, unsigned char_len, SpiMode mode);

struct SlaveStep {
    SlaveState slave;
    Tri miso_out = Tri::HighZ;
};

/// Reacts to the master's pins for one wb clock.
SlaveStep on_spi_pins(SlaveState slave, const SpiPins& pins);

}  // namespace wbspi

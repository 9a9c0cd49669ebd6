#pragma once

#include <cstdint>
#include <vector>

#include "wbspi/sequence.hpp"

namespace wbspi {

/// Expected outcome of one transfer.
struct Exchange {
    unsigned length = 0;
    std::vector<bool> mosi_stream;  // wire order
    std::vector<bool> miso_stream;
    std::uint32_t master_received = 0;
    std::uint32_t slave_received = 0;

    bool operator==(const Exchange&) const = default;
};

/// Straight-line bit model of a full-duplex exchange. Serializes each
/// payload into wire order and reassembles it at the far end; no clocks,
/// no edges.
Exchange predict_exchange(const SpiSequenceItem& item);

}  // namespace wbspi

#include "wbspi/reference_model.hpp"

namespace wbspi {

namespace {

std::vector<bool> serialize(std::uint32_t payload, unsigned length, bool lsb_first) {
    std::vector<bool> bits(length);
    for (unsigned i = 0; i < length; ++i) {
        const unsigned pos = lsb_first ? i : length - 1 - i;
        bits[i] = (payload >> pos) & 1u;
    }
    return bits;
}

std::uint32_t deserialize(const std::vector<bool>& bits, bool lsb_first) {
    std::uint32_t value = 0;
    if (lsb_first) {
        for (std::size_t i = bits.size(); i-- > 0;) value = (value << 1) | (bits[i] ? 1u : 0u);
    } else {
        for (bool b : bits) value = (value << 1) | (b ? 1u : 0u);
    }
    return value;
}

}  // namespace

Exchange predict_exchange(const SpiSequenceItem& item) {
    Exchange ex;
    ex.length = item.char_len;
    ex.mosi_stream = serialize(item.master_payload, item.char_len, item.lsb_first);
    ex.miso_stream = serialize(item.slave_payload, item.char_len, item.lsb_first);
    ex.slave_received = deserialize(ex.mosi_stream, item.lsb_first);
    ex.master_received = deserialize(ex.miso_stream, item.lsb_first);
    return ex;
}

}  // namespace wbspi

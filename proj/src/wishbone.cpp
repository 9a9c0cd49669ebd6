#include "wbspi/wishbone.hpp"

#include <cstdio>

#include "wbspi/errors.hpp"

namespace wbspi::wb {

std::string to_string(const Transaction& txn) {
    char buf[64];
    if (txn.data) {
        std::snprintf(buf, sizeof buf, "%s(0x%02X, 0x%08X)", txn.is_write() ? "Write" : "Read",
                      static_cast<unsigned>(txn.address), static_cast<unsigned>(*txn.data));
    } else {
        std::snprintf(buf, sizeof buf, "%s(0x%02X)", txn.is_write() ? "Write" : "Read",
                      static_cast<unsigned>(txn.address));
    }
    return buf;
}

std::vector<Pins> encode_cycle(const Transaction& txn) {
    if (!is_register(txn.address)) {
        throw InvalidAddress("address " + std::to_string(txn.address) + " is not in the register map");
    }
    if (txn.is_write() && !txn.data) {
        throw ProtocolViolation("write transaction without data");
    }

    Pins strobe;
    strobe.clk_i = true;
    strobe.cyc_i = true;
    strobe.stb_i = true;
    strobe.we_i = txn.is_write();
    strobe.adr_i = txn.address;
    strobe.sel_i = kSelAll;
    strobe.ack_o = true;
    if (txn.is_write()) {
        strobe.dat_i = *txn.data;
    } else {
        strobe.dat_o = txn.data.value_or(0);
    }

    Pins idle;
    idle.clk_i = true;
    return {strobe, idle};
}

Transaction decode_cycle(std::span<const Pins> trace) {
    std::optional<std::size_t> start;
    std::optional<Transaction> result;

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const Pins& p = trace[i];
        if (!ack_discipline_ok(p)) {
            throw ProtocolViolation("ack_o high without cyc_i&stb_i at clock " + std::to_string(i));
        }
        if (result) {
            if (p.cyc_i) throw ProtocolViolation("trace holds more than one cycle");
            continue;
        }
        if (!start) {
            if (p.cyc_i) start = i;
            else continue;
        }
        if (!p.cyc_i) {
            throw ProtocolViolation("cyc_i deasserted before ack at clock " + std::to_string(i));
        }
        if (p.ack_o) {
            if (!is_register(p.adr_i)) {
                throw InvalidAddress("address " + std::to_string(p.adr_i) + " is not in the register map");
            }
            result = p.we_i ? Transaction::write(p.adr_i, p.dat_i)
                            : Transaction{p.adr_i, p.dat_o, Direction::Read};
        }
    }
    if (!result) throw ProtocolViolation("trace holds no complete cycle");
    return *result;
}

}  // namespace wbspi::wb

#include "wbspi/scoreboard.hpp"

#include <bit>
#include <cstdio>

namespace wbspi {

namespace {

void compare(Verdict& v, std::size_t item, const char* field, std::uint32_t expected, std::uint32_t actual) {
    const std::uint32_t diff = expected ^ actual;
    if (diff == 0) return;
    char detail[80];
    std::snprintf(detail, sizeof detail, "expected 0x%08X got 0x%08X", expected, actual);
    v.mismatches.push_back({item, field, std::countr_zero(diff), detail});
}

}  // namespace

Verdict scoreboard_check(const Exchange& expected, const std::optional<TransferRecord>& observed,
                         const CompletedItem& completion) {
    Verdict v;
    const std::size_t item = completion.index;

    if (completion.timed_out) {
        v.mismatches.push_back({item, "drive", -1, "DriveTimeout: go_bsy never cleared"});
    }
    if (!observed) {
        v.mismatches.push_back({item, "transfer", -1, "no transfer observed on the pins"});
    } else {
        if (observed->bits_sampled != expected.length) {
            v.mismatches.push_back({item, "length", -1,
                                    "sampled " + std::to_string(observed->bits_sampled) + " bits, expected " +
                                        std::to_string(expected.length)});
        }
        compare(v, item, "mosi", expected.slave_received, observed->mosi_value);
        compare(v, item, "miso", expected.master_received, observed->miso_value);
    }

    if (!completion.master_received) {
        if (!completion.timed_out) v.mismatches.push_back({item, "master_received", -1, "no data read-back"});
    } else {
        compare(v, item, "master_received", expected.master_received, *completion.master_received);
    }
    if (!completion.timed_out) {
        compare(v, item, "slave_received", expected.slave_received, completion.slave_received);
    }
    return v;
}

}  // namespace wbspi

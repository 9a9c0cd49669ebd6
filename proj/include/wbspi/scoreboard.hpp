#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wbspi/monitor.hpp"
#include "wbspi/reference_model.hpp"
#include "wbspi/sequence.hpp"

namespace wbspi {

/// What the driver saw when an item finished.
struct CompletedItem {
    std::size_t index = 0;
    SpiSequenceItem item;
    std::optional<std::uint32_t> master_received;  // data register read-back
    std::uint32_t slave_received = 0;              // captured by the slave model
    bool timed_out = false;

    bool operator==(const CompletedItem&) const = default;
};

struct Mismatch {
    std::size_t item = 0;
    std::string field;
    int bit = -1;  // lowest differing bit, -1 when not a bit-vector field
    std::string detail;

    bool operator==(const Mismatch&) const = default;
};

struct Verdict {
    std::vector<Mismatch> mismatches;
    bool pass() const { return mismatches.empty(); }
};

/// Compares one transfer against the reference prediction: serial lines
/// and length from the monitor record, master read-back, and slave
/// capture from the driver.
Verdict scoreboard_check(const Exchange& expected, const std::optional<TransferRecord>& observed,
                         const CompletedItem& completion);

}  // namespace wbspi

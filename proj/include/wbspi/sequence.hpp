#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wbspi/rng.hpp"
#include "wbspi/spi_slave.hpp"

namespace wbspi {

/// One full-duplex transfer request.
struct SpiSequenceItem {
    std::uint32_t master_payload = 0;
    std::uint32_t slave_payload = 0;
    unsigned char_len = 8;  // 1..32
    bool tx_neg = false;
    bool rx_neg = false;
    bool lsb_first = false;
    std::uint16_t divider = 0;
    unsigned slave_index = 0;  // 0..7

    SpiMode mode() const { return {tx_neg, rx_neg, lsb_first}; }
    bool operator==(const SpiSequenceItem&) const = default;
};

std::string to_string(const SpiSequenceItem& item);

/// Randomizable fields of a sequence item.
enum class Field : std::uint8_t {
    CharLen,
    Divider,
    TxNeg,
    RxNeg,
    LsbFirst,
    SlaveIndex,
    MasterPayload,
    SlavePayload,
};
inline constexpr std::size_t kFieldCount = 8;

std::string_view field_name(Field f);
std::optional<Field> parse_field(std::string_view name);

/// Inclusive legal domain of each field.
std::pair<std::uint64_t, std::uint64_t> field_domain(Field f);

struct WeightedRange {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint32_t weight = 1;

    bool operator==(const WeightedRange&) const = default;
};

/// Per-field weighted inclusive ranges plus the master seed.
class ConstraintSet {
public:
    /// char_len 1..32, divider 0..7, every mode bit free, slave 0..7,
    /// payloads over the full 32 bits.
    static ConstraintSet defaults(std::uint64_t seed = 1);

    ConstraintSet& set(Field f, std::uint64_t lo, std::uint64_t hi);
    ConstraintSet& set_weighted(Field f, std::vector<WeightedRange> choices);
    ConstraintSet& pin(Field f, std::uint64_t value) { return set(f, value, value); }

    const std::vector<WeightedRange>& choices(Field f) const {
        return fields_[static_cast<std::size_t>(f)];
    }

    /// True if any choice of field f overlaps [lo, hi].
    bool allows_any(Field f, std::uint64_t lo, std::uint64_t hi) const;

    /// Throws ConfigError on an empty range, a zero weight or a value
    /// outside the field's domain.
    void validate() const;

    std::uint64_t seed = 1;

    bool operator==(const ConstraintSet&) const = default;

private:
    std::array<std::vector<WeightedRange>, kFieldCount> fields_;
};

/// Parses "KEY=LO..HI" (or "KEY=VALUE") into the given set.
void apply_constraint_override(ConstraintSet& set, std::string_view text);

/// Draws one item, advancing `rng`: choice by weight, then uniform within
/// the range. Payloads are masked to char_len bits.
SpiSequenceItem draw_item(const ConstraintSet& constraints, Rng& rng);

/// Value form of draw_item: the item and the successor stream state.
inline std::pair<SpiSequenceItem, Rng> randomize_item(const ConstraintSet& constraints, Rng rng_state) {
    SpiSequenceItem item = draw_item(constraints, rng_state);
    return {item, rng_state};
}

}  // namespace wbspi

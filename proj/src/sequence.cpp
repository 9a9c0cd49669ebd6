#include "wbspi/sequence.hpp"

#include <charconv>
#include <cstdio>

#include "wbspi/errors.hpp"

namespace wbspi {

namespace {

constexpr std::array<std::string_view, kFieldCount> kFieldNames = {
    "char_len", "divider", "tx_neg", "rx_neg", "lsb_first", "slave_index", "master_payload", "slave_payload",
};

std::uint64_t parse_number(std::string_view text, std::string_view context) {
    std::uint64_t value = 0;
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        text.remove_prefix(2);
        base = 16;
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError("bad number '" + std::string(text) + "' in constraint '" + std::string(context) + "'");
    }
    return value;
}

std::uint64_t draw_field(const ConstraintSet& cs, Field f, Rng& rng) {
    const auto& choices = cs.choices(f);
    std::uint64_t total = 0;
    for (const auto& c : choices) total += c.weight;
    std::uint64_t pick = rng.uniform(0, total - 1);
    for (const auto& c : choices) {
        if (pick < c.weight) return rng.uniform(c.lo, c.hi);
        pick -= c.weight;
    }
    return choices.back().lo;
}

}  // namespace

std::string to_string(const SpiSequenceItem& item) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "{master=0x%08X slave=0x%08X len=%u tx_neg=%d rx_neg=%d %s div=%u ss=%u}",
                  static_cast<unsigned>(item.master_payload), static_cast<unsigned>(item.slave_payload),
                  item.char_len, item.tx_neg, item.rx_neg, item.lsb_first ? "LSB" : "MSB",
                  static_cast<unsigned>(item.divider), item.slave_index);
    return buf;
}

std::string_view field_name(Field f) { return kFieldNames[static_cast<std::size_t>(f)]; }

std::optional<Field> parse_field(std::string_view name) {
    for (std::size_t i = 0; i < kFieldCount; ++i) {
        if (kFieldNames[i] == name) return static_cast<Field>(i);
    }
    return std::nullopt;
}

std::pair<std::uint64_t, std::uint64_t> field_domain(Field f) {
    switch (f) {
        case Field::CharLen: return {1, 32};
        case Field::Divider: return {0, 0xFFFF};
        case Field::TxNeg:
        case Field::RxNeg:
        case Field::LsbFirst: return {0, 1};
        case Field::SlaveIndex: return {0, 7};
        case Field::MasterPayload:
        case Field::SlavePayload: return {0, 0xFFFFFFFFull};
    }
    return {0, 0};
}

ConstraintSet ConstraintSet::defaults(std::uint64_t seed) {
    ConstraintSet cs;
    cs.seed = seed;
    for (std::size_t i = 0; i < kFieldCount; ++i) {
        const auto [lo, hi] = field_domain(static_cast<Field>(i));
        cs.fields_[i] = {{lo, hi, 1}};
    }
    cs.set(Field::Divider, 0, 7);
    return cs;
}

ConstraintSet& ConstraintSet::set(Field f, std::uint64_t lo, std::uint64_t hi) {
    fields_[static_cast<std::size_t>(f)] = {{lo, hi, 1}};
    return *this;
}

ConstraintSet& ConstraintSet::set_weighted(Field f, std::vector<WeightedRange> choices) {
    fields_[static_cast<std::size_t>(f)] = std::move(choices);
    return *this;
}

bool ConstraintSet::allows_any(Field f, std::uint64_t lo, std::uint64_t hi) const {
    for (const auto& c : choices(f)) {
        if (c.lo <= hi && lo <= c.hi) return true;
    }
    return false;
}

void ConstraintSet::validate() const {
    for (std::size_t i = 0; i < kFieldCount; ++i) {
        const Field f = static_cast<Field>(i);
        const auto [dlo, dhi] = field_domain(f);
        const std::string name(field_name(f));
        if (fields_[i].empty()) throw ConfigError(name + ": no ranges");
        for (const auto& c : fields_[i]) {
            if (c.lo > c.hi) throw ConfigError(name + ": empty range");
            if (c.weight == 0) throw ConfigError(name + ": weight must be positive");
            if (c.lo < dlo || c.hi > dhi) {
                throw ConfigError(name + ": range outside " + std::to_string(dlo) + ".." + std::to_string(dhi));
            }
        }
    }
}

void apply_constraint_override(ConstraintSet& set, std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("constraint '" + std::string(text) + "' is not KEY=LO..HI");
    }
    const auto key = text.substr(0, eq);
    const auto value = text.substr(eq + 1);
    const auto field = parse_field(key);
    if (!field) throw ConfigError("unknown constraint field '" + std::string(key) + "'");

    const auto dots = value.find("..");
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    if (dots == std::string_view::npos) {
        lo = hi = parse_number(value, text);
    } else {
        lo = parse_number(value.substr(0, dots), text);
        hi = parse_number(value.substr(dots + 2), text);
    }
    set.set(*field, lo, hi);
}

SpiSequenceItem draw_item(const ConstraintSet& cs, Rng& rng) {
    SpiSequenceItem item;
    item.char_len = static_cast<unsigned>(draw_field(cs, Field::CharLen, rng));
    item.divider = static_cast<std::uint16_t>(draw_field(cs, Field::Divider, rng));
    item.tx_neg = draw_field(cs, Field::TxNeg, rng) != 0;
    item.rx_neg = draw_field(cs, Field::RxNeg, rng) != 0;
    item.lsb_first = draw_field(cs, Field::LsbFirst, rng) != 0;
    item.slave_index = static_cast<unsigned>(draw_field(cs, Field::SlaveIndex, rng));
    const std::uint32_t mask = low_mask(item.char_len);
    item.master_payload = static_cast<std::uint32_t>(draw_field(cs, Field::MasterPayload, rng)) & mask;
    item.slave_payload = static_cast<std::uint32_t>(draw_field(cs, Field::SlavePayload, rng)) & mask;
    return item;
}

}  // namespace wbspi

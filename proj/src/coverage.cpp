#include "wbspi/coverage.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace wbspi {

namespace {

std::uint64_t field_value(const CoverageSample& s, Field f) {
    switch (f) {
        case Field::CharLen: return s.char_len;
        case Field::Divider: return s.divider;
        case Field::TxNeg: return s.tx_neg;
        case Field::RxNeg: return s.rx_neg;
        case Field::LsbFirst: return s.lsb_first;
        default: return 0;
    }
}

bool matches(const CoverBin& bin, const CoverageSample& s) {
    for (const auto& c : bin.conditions) {
        const std::uint64_t v = field_value(s, c.field);
        if (std::none_of(c.ranges.begin(), c.ranges.end(), [v](const ValueRange& r) { return r.contains(v); })) {
            return false;
        }
    }
    return true;
}

bool reachable(const std::vector<ValueRange>& ranges, Field f, const ConstraintSet& cs) {
    return std::any_of(ranges.begin(), ranges.end(),
                       [&](const ValueRange& r) { return cs.allows_any(f, r.lo, r.hi); });
}

}  // namespace

CoverageModel& CoverageModel::add_coverpoint(const std::string& point, Field field,
                                             const std::vector<Label>& labels) {
    points_.push_back({point, field, labels});
    for (const auto& l : labels) {
        bins_.push_back({point + ":" + l.label, {{field, l.ranges}}, 0});
    }
    return *this;
}

CoverageModel& CoverageModel::add_cross(const std::string& cross, const std::vector<std::string>& points) {
    std::vector<const Point*> parts;
    for (const auto& name : points) {
        const auto it = std::find_if(points_.begin(), points_.end(), [&](const Point& p) { return p.name == name; });
        if (it == points_.end()) throw std::invalid_argument("cross over unknown coverpoint " + name);
        parts.push_back(&*it);
    }
    // Odometer over the label indices of each part.
    std::vector<std::size_t> idx(parts.size(), 0);
    for (;;) {
        CoverBin bin;
        bin.name = cross + ":";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const Label& l = parts[i]->labels[idx[i]];
            if (i) bin.name += "_";
            bin.name += l.label;
            bin.conditions.push_back({parts[i]->field, l.ranges});
        }
        bins_.push_back(std::move(bin));

        std::size_t k = parts.size();
        while (k > 0) {
            --k;
            if (++idx[k] < parts[k]->labels.size()) break;
            idx[k] = 0;
            if (k == 0) return *this;
        }
        if (parts.empty()) return *this;
    }
}

CoverageModel& CoverageModel::add_bin(CoverBin bin) {
    bins_.push_back(std::move(bin));
    return *this;
}

void CoverageModel::sample(const CoverageSample& s) {
    for (auto& bin : bins_) {
        if (matches(bin, s)) ++bin.hits;
    }
}

void CoverageModel::merge(const CoverageModel& other) {
    if (other.bins_.size() != bins_.size()) throw std::invalid_argument("merging coverage models with different bins");
    for (std::size_t i = 0; i < bins_.size(); ++i) {
        if (bins_[i].name != other.bins_[i].name) {
            throw std::invalid_argument("merging coverage models with different bins");
        }
        bins_[i].hits += other.bins_[i].hits;
    }
}

std::size_t CoverageModel::bins_hit() const {
    return static_cast<std::size_t>(
        std::count_if(bins_.begin(), bins_.end(), [](const CoverBin& b) { return b.hits > 0; }));
}

double CoverageModel::percentage() const {
    if (bins_.empty()) return 0.0;
    return 100.0 * static_cast<double>(bins_hit()) / static_cast<double>(bins_.size());
}

std::string CoverageModel::percentage_text() const { return format_percentage(percentage()); }

std::string format_percentage(double pct) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", pct);
    return buf;
}

CoverageModel CoverageModel::spi_default(const ConstraintSet& cs) {
    std::vector<Label> len = {
        {"1", {{1, 1}}},
        {"2-7", {{2, 7}}},
        {"8", {{8, 8}}},
        {"16", {{16, 16}}},
        {"32", {{32, 32}}},
        {"other", {{9, 15}, {17, 31}}},
    };
    std::vector<Label> div = {
        {"0", {{0, 0}}},
        {"1-7", {{1, 7}}},
        {"8-255", {{8, 255}}},
        {">255", {{256, 0xFFFF}}},
    };
    std::vector<Label> tx = {{"0", {{0, 0}}}, {"1", {{1, 1}}}};
    std::vector<Label> order = {{"MSB", {{0, 0}}}, {"LSB", {{1, 1}}}};

    auto keep = [&](std::vector<Label> labels, Field f) {
        std::erase_if(labels, [&](const Label& l) { return !reachable(l.ranges, f, cs); });
        return labels;
    };

    std::vector<Label> mode_tx = keep({{"tx0", {{0, 0}}}, {"tx1", {{1, 1}}}}, Field::TxNeg);
    std::vector<Label> mode_rx = keep({{"rx0", {{0, 0}}}, {"rx1", {{1, 1}}}}, Field::RxNeg);

    CoverageModel m;
    m.add_coverpoint("len", Field::CharLen, keep(len, Field::CharLen));
    m.add_coverpoint("div", Field::Divider, keep(div, Field::Divider));
    m.add_coverpoint("tx_neg", Field::TxNeg, keep(tx, Field::TxNeg));
    m.add_coverpoint("rx_neg", Field::RxNeg, keep(tx, Field::RxNeg));
    m.add_coverpoint("order", Field::LsbFirst, keep(order, Field::LsbFirst));

    // The cross needs its own labels so names read "mode:tx1_rx0_MSB".
    CoverageModel crosses;
    crosses.add_coverpoint("t", Field::TxNeg, mode_tx);
    crosses.add_coverpoint("r", Field::RxNeg, mode_rx);
    crosses.add_coverpoint("o", Field::LsbFirst, keep(order, Field::LsbFirst));
    crosses.bins_.clear();
    crosses.add_cross("mode", {"t", "r", "o"});
    for (auto& b : crosses.bins_) m.bins_.push_back(std::move(b));
    return m;
}

nlohmann::ordered_json to_json(const Violation& v) {
    nlohmann::ordered_json j;
    j["rule"] = std::string(rule_id(v.rule));
    j["time"] = v.cycle;
    j["detail"] = v.detail;
    return j;
}

CoverageReport report(const CoverageModel& model, const std::vector<Violation>& violations) {
    CoverageReport out;
    std::string& t = out.text;
    t += "coverage bins\n";
    auto bins = nlohmann::ordered_json::array();
    for (const auto& b : model.bins()) {
        char line[96];
        std::snprintf(line, sizeof line, "  %-22s %8llu%s\n", b.name.c_str(),
                      static_cast<unsigned long long>(b.hits), b.hits ? "" : "  <- not hit");
        t += line;
        bins.push_back({{"name", b.name}, {"hits", b.hits}});
    }
    t += "coverage: " + model.percentage_text() + " (" + std::to_string(model.bins_hit()) + "/" +
         std::to_string(model.bins().size()) + " bins)\n";

    auto viols = nlohmann::ordered_json::array();
    for (const auto& v : violations) viols.push_back(to_json(v));
    t += "assertion violations: " + std::to_string(violations.size()) + "\n";
    for (const auto& v : violations) {
        t += "  " + std::string(rule_id(v.rule)) + " @" + std::to_string(v.cycle) + ": " + v.detail + "\n";
    }

    out.json["bins"] = std::move(bins);
    // Two decimals, the same figure the text form prints.
    out.json["percentage"] = std::stod(format_percentage(model.percentage()));
    out.json["violations"] = std::move(viols);
    return out;
}

}  // namespace wbspi

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wbspi/monitor.hpp"
#include "wbspi/sequence.hpp"

namespace wbspi {

struct ValueRange {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }
    bool operator==(const ValueRange&) const = default;
};

/// A bin matches when, for every condition, the field value falls in one
/// of the condition's ranges.
struct BinCondition {
    Field field = Field::CharLen;
    std::vector<ValueRange> ranges;

    bool operator==(const BinCondition&) const = default;
};

struct CoverBin {
    std::string name;
    std::vector<BinCondition> conditions;
    std::uint64_t hits = 0;

    bool operator==(const CoverBin&) const = default;
};

/// Field values a coverage sample is taken over.
struct CoverageSample {
    unsigned char_len = 0;
    std::uint16_t divider = 0;
    bool tx_neg = false;
    bool rx_neg = false;
    bool lsb_first = false;

    static CoverageSample from(const TransferRecord& r) {
        return {r.char_len, r.divider, r.tx_neg, r.rx_neg, r.lsb_first};
    }
};

/// Named bins with hit counts. Coverpoints and crosses are flattened into
/// one bin list; percentage counts bins hit at least once.
class CoverageModel {
public:
    struct Label {
        std::string label;
        std::vector<ValueRange> ranges;
    };

    /// Bins "<point>:<label>" over one field.
    CoverageModel& add_coverpoint(const std::string& point, Field field, const std::vector<Label>& labels);

    /// Every combination of the listed coverpoints' bins, named
    /// "<cross>:<l1>_<l2>..." in declaration order.
    CoverageModel& add_cross(const std::string& cross, const std::vector<std::string>& points);

    CoverageModel& add_bin(CoverBin bin);

    void sample(const CoverageSample& s);
    void sample(const TransferRecord& r) { sample(CoverageSample::from(r)); }

    /// Bin-wise count addition. Throws std::invalid_argument if the bin
    /// lists differ.
    void merge(const CoverageModel& other);

    const std::vector<CoverBin>& bins() const { return bins_; }
    std::size_t bins_hit() const;
    double percentage() const;

    /// "92.31%".
    std::string percentage_text() const;

    bool operator==(const CoverageModel& o) const { return bins_ == o.bins_; }

    /// The regression covergroup: char_len buckets {1, 2-7, 8, 16, 32,
    /// other}; divider buckets {0, 1-7, 8-255, >255}; tx_neg, rx_neg,
    /// bit order; cross (tx_neg, rx_neg, order). Bins the constraint set
    /// can never produce are left out, as ignore_bins would be.
    static CoverageModel spi_default(const ConstraintSet& constraints = ConstraintSet::defaults());

private:
    struct Point {
        std::string name;
        Field field;
        std::vector<Label> labels;
    };
    std::vector<Point> points_;
    std::vector<CoverBin> bins_;
};

/// Pure-value form of CoverageModel::sample.
inline CoverageModel sample(CoverageModel model, const TransferRecord& record) {
    model.sample(record);
    return model;
}

/// "12.34%" with two decimals.
std::string format_percentage(double pct);

struct CoverageReport {
    std::string text;
    nlohmann::ordered_json json;
};

CoverageReport report(const CoverageModel& model, const std::vector<Violation>& violations = {});

nlohmann::ordered_json to_json(const Violation& v);

}  // namespace wbspi

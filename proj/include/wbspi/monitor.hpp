#pragma once

#include <bitset>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wbspi/spi_core.hpp"
#include "wbspi/wishbone.hpp"

namespace wbspi {

/// Every DUT boundary signal at one wb clock. spi.miso is the resolved
/// line after the slave reacted to this clock.
struct PinSample {
    std::uint64_t cycle = 0;
    wb::Pins wb;
    SpiPins spi;

    bool operator==(const PinSample&) const = default;
};

/// Protocol rules checked over recorded pin traces.
enum class Rule : std::uint8_t {
    SsFraming = 1,      // A1 ss_n active low around every edge, one-hot
    MisoHighZ,          // A2 MISO HighZ while deselected
    HalfPeriod,         // A3 every sclk half period == divider+1 clocks
    SclkIdle,           // A4 sclk low and quiet outside transfers
    EdgeCount,          // A5 2*char_len edges per transfer
    GoBsyClear,         // A6 go_bsy high during, low after a transfer
    BusyWriteIgnored,   // A7 register writes during a transfer have no effect
    AckDiscipline,      // A8 ack_o only with cyc_i & stb_i
};
inline constexpr std::size_t kRuleCount = 8;

/// "A1".."A8".
std::string_view rule_id(Rule r);
std::string_view rule_summary(Rule r);

struct Violation {
    Rule rule = Rule::SsFraming;
    std::uint64_t cycle = 0;
    std::string detail;
    std::size_t frame = 0;  // index of the transfer in progress or last finished

    bool operator==(const Violation&) const = default;
};

/// The set of enabled rules.
struct AssertionCatalog {
    std::bitset<kRuleCount> enabled = std::bitset<kRuleCount>().set();

    static AssertionCatalog all() { return {}; }
    bool has(Rule r) const { return enabled.test(static_cast<std::size_t>(r) - 1); }
    AssertionCatalog& disable(Rule r) {
        enabled.reset(static_cast<std::size_t>(r) - 1);
        return *this;
    }
};

/// One transfer reconstructed from pins alone.
struct TransferRecord {
    std::size_t index = 0;
    std::uint64_t start_cycle = 0;
    std::uint64_t end_cycle = 0;

    // Configuration as programmed over the bus.
    unsigned char_len = 0;
    bool tx_neg = false;
    bool rx_neg = false;
    bool lsb_first = false;
    bool ass = false;
    std::uint16_t divider = 0;
    std::uint8_t ss = 0;

    // What was seen on the serial lines.
    std::uint32_t mosi_value = 0;
    std::uint32_t miso_value = 0;
    unsigned bits_sampled = 0;
    unsigned edge_count = 0;
    std::vector<std::uint32_t> half_periods;  // wb clocks, first one from ss assert
    std::optional<std::uint32_t> rx_readback;  // first data read after completion

    bool completed = false;  // closed by deselect / go_bsy clear, not reset
    unsigned busy_writes = 0;
    std::vector<Violation> violations;

    std::optional<std::uint32_t> measured_divider() const {
        if (half_periods.empty()) return std::nullopt;
        return half_periods.front() - 1;
    }

    bool operator==(const TransferRecord&) const = default;
};

struct AnalyzerOptions {
    AssertionCatalog catalog;
    bool strict = false;  // writes while busy become A7 violations
};

/// Incremental pin-trace decoder and protocol checker. Feeding a trace
/// sample by sample yields the same records and violations whether done
/// live or offline.
class TraceAnalyzer {
public:
    explicit TraceAnalyzer(AnalyzerOptions options = {});

    void step(const PinSample& sample);

    /// Emits a record still waiting for its data read-back and closes
    /// an open transfer as incomplete.
    void flush();

    /// Records finished since the last call.
    std::vector<TransferRecord> take_records();

    const std::vector<Violation>& violations() const { return violations_; }
    std::size_t frames_started() const { return frames_started_; }

private:
    struct Shadow {
        std::uint32_t ctrl = 0;
        std::uint16_t divider = 0;
        std::uint8_t ss = 0;
    };
    struct Frame {
        TransferRecord record;
        std::uint64_t last_toggle = 0;
        std::map<std::uint8_t, std::uint32_t> busy_writes;
    };

    void violate(Rule rule, std::uint64_t cycle, std::string detail);
    void on_bus(const PinSample& s);
    void on_serial(const PinSample& s);
    void open_frame(const PinSample& s, std::uint32_t ctrl_word);
    void close_frame(std::uint64_t cycle, bool completed);
    void emit_pending();

    AnalyzerOptions options_;
    Shadow shadow_;
    std::optional<Frame> frame_;
    std::optional<TransferRecord> pending_;  // closed, awaiting data read-back
    std::map<std::uint8_t, std::uint32_t> stale_busy_writes_;
    std::optional<PinSample> prev_;
    bool idle_sclk_flagged_ = false;
    std::size_t frames_started_ = 0;
    std::vector<TransferRecord> ready_;
    std::vector<Violation> violations_;
};

/// Decodes a window holding one framed transfer. Returns the first
/// record; violations found in the window are attached to it.
std::optional<TransferRecord> monitor_decode(std::span<const PinSample> window, AnalyzerOptions options = {});

/// Every record in a trace, in order.
std::vector<TransferRecord> decode_trace(std::span<const PinSample> trace, AnalyzerOptions options = {});

/// Every failing (rule, cycle, detail) in the window.
std::vector<Violation> assert_protocol(const AssertionCatalog& catalog, std::span<const PinSample> window);

}  // namespace wbspi

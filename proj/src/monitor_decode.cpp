#include "wbspi/monitor.hpp"

#include <bit>
#include <cstdio>

namespace wbspi {

namespace {

constexpr std::string_view kRuleIds[] = {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"};
constexpr std::string_view kRuleSummaries[] = {
    "ss_n active-low framing",
    "MISO HighZ when deselected",
    "sclk half period == divider+1",
    "sclk quiescent at idle",
    "edge count == 2*char_len",
    "go_bsy clears at completion",
    "busy write ignored",
    "Wishbone ack discipline",
};

std::string format(const char* fmt, auto... args) {
    char buf[192];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

bool is_ack(const wb::Pins& p) { return p.ack_o && p.cyc_i && p.stb_i; }

}  // namespace

std::string_view rule_id(Rule r) { return kRuleIds[static_cast<std::size_t>(r) - 1]; }
std::string_view rule_summary(Rule r) { return kRuleSummaries[static_cast<std::size_t>(r) - 1]; }

TraceAnalyzer::TraceAnalyzer(AnalyzerOptions options) : options_(options) {}

void TraceAnalyzer::violate(Rule rule, std::uint64_t cycle, std::string detail) {
    if (!options_.catalog.has(rule)) return;
    const std::size_t frame = frames_started_ == 0 ? 0 : frames_started_ - 1;
    violations_.push_back({rule, cycle, std::move(detail), frame});
}

void TraceAnalyzer::step(const PinSample& s) {
    if (!wb::ack_discipline_ok(s.wb)) violate(Rule::AckDiscipline, s.cycle, "ack_o without cyc_i&stb_i");

    const std::uint8_t selected = static_cast<std::uint8_t>(~s.spi.ss_n);
    if (std::popcount(selected) > 1) {
        violate(Rule::SsFraming, s.cycle, format("ss_n=0x%02X selects more than one slave", s.spi.ss_n));
    }
    if (s.spi.ss_n == 0xFF && s.spi.miso != Tri::HighZ) {
        violate(Rule::MisoHighZ, s.cycle, "MISO driven while every slave is deselected");
    }

    if (s.wb.rst_i) {
        if (frame_) close_frame(s.cycle, false);
        shadow_ = {};
        stale_busy_writes_.clear();
    } else {
        on_bus(s);
        on_serial(s);
    }

    if (!frame_) {
        if (s.spi.sclk) {
            if (!idle_sclk_flagged_) violate(Rule::SclkIdle, s.cycle, "sclk high outside a transfer");
            idle_sclk_flagged_ = true;
        }
    }
    prev_ = s;
}

void TraceAnalyzer::on_bus(const PinSample& s) {
    if (!is_ack(s.wb)) return;
    const wb::Pins& p = s.wb;

    if (p.we_i) {
        const std::uint32_t value = p.dat_i;
        if (frame_) {
            if (p.adr_i == wb::reg::kSs) {
                shadow_.ss = static_cast<std::uint8_t>(value);
                return;
            }
            frame_->busy_writes[p.adr_i] = value;
            ++frame_->record.busy_writes;
            if (options_.strict) {
                violate(Rule::BusyWriteIgnored, s.cycle,
                        format("write 0x%08X to 0x%02X during a transfer", value, p.adr_i));
            }
            return;
        }
        switch (p.adr_i) {
            case wb::reg::kCtrl:
                shadow_.ctrl = value & ctrl::kWritable;
                if ((value & ctrl::kGoBsy) && shadow_.ss != 0) open_frame(s, value);
                break;
            case wb::reg::kDivider: shadow_.divider = static_cast<std::uint16_t>(value); break;
            case wb::reg::kSs: shadow_.ss = static_cast<std::uint8_t>(value); break;
            default: break;
        }
        return;
    }

    const std::uint32_t data = p.dat_o;
    switch (p.adr_i) {
        case wb::reg::kCtrl: {
            const bool go = data & ctrl::kGoBsy;
            if (frame_) {
                if (!go) {
                    if (frame_->record.ass) {
                        violate(Rule::GoBsyClear, s.cycle, "go_bsy reads 0 while the transfer is running");
                    } else {
                        close_frame(s.cycle, true);  // without ass the bus is the only end marker
                    }
                }
            } else if (go) {
                violate(Rule::GoBsyClear, s.cycle, "go_bsy still set after the transfer completed");
            }
            const auto it = stale_busy_writes_.find(wb::reg::kCtrl);
            if (!frame_ && it != stale_busy_writes_.end()) {
                const std::uint32_t written = it->second & ctrl::kWritable;
                if ((data & ctrl::kWritable) == written && written != shadow_.ctrl) {
                    violate(Rule::BusyWriteIgnored, s.cycle, "ctrl took a value written during a transfer");
                }
            }
            break;
        }
        case wb::reg::kDivider: {
            const auto it = stale_busy_writes_.find(wb::reg::kDivider);
            if (!frame_ && it != stale_busy_writes_.end()) {
                const std::uint32_t written = it->second & 0xFFFFu;
                if (data == written && written != shadow_.divider) {
                    violate(Rule::BusyWriteIgnored, s.cycle, "divider took a value written during a transfer");
                }
            }
            break;
        }
        case wb::reg::kData:
            if (!frame_ && pending_) {
                pending_->rx_readback = data;
                emit_pending();
            }
            break;
        default: break;
    }
}

void TraceAnalyzer::open_frame(const PinSample& s, std::uint32_t ctrl_word) {
    emit_pending();
    stale_busy_writes_.clear();
    idle_sclk_flagged_ = false;

    const CtrlFields f = decode_ctrl(ctrl_word);
    Frame fr;
    TransferRecord& r = fr.record;
    r.index = frames_started_++;
    r.start_cycle = s.cycle;
    r.char_len = f.char_len;
    r.tx_neg = f.tx_neg;
    r.rx_neg = f.rx_neg;
    r.lsb_first = f.lsb_first;
    r.ass = f.ass;
    r.divider = shadow_.divider;
    r.ss = shadow_.ss;
    fr.last_toggle = s.cycle;
    frame_ = std::move(fr);
}

void TraceAnalyzer::on_serial(const PinSample& s) {
    if (!frame_ || !prev_ || frame_->record.start_cycle == s.cycle) {
        if (frame_ && frame_->record.ass && s.spi.ss_n != static_cast<std::uint8_t>(~frame_->record.ss)) {
            violate(Rule::SsFraming, s.cycle, "slave not selected when the transfer started");
        }
        return;
    }
    Frame& fr = *frame_;
    TransferRecord& r = fr.record;
    const std::uint8_t expected_ss_n = static_cast<std::uint8_t>(~r.ss);

    if (s.spi.sclk != prev_->spi.sclk) {
        ++r.edge_count;
        r.half_periods.push_back(static_cast<std::uint32_t>(s.cycle - fr.last_toggle));
        fr.last_toggle = s.cycle;

        if (r.ass && s.spi.ss_n != expected_ss_n) {
            violate(Rule::SsFraming, s.cycle, format("sclk edge with ss_n=0x%02X", s.spi.ss_n));
        }
        const bool rising = s.spi.sclk;
        if (rising != r.rx_neg && r.bits_sampled < r.char_len) {
            if (prev_->spi.miso == Tri::HighZ) {
                violate(Rule::MisoHighZ, s.cycle, "HighZ sampled on MISO by a selected transfer");
            }
            r.mosi_value = place_bit(r.mosi_value, r.char_len, r.bits_sampled, r.lsb_first, prev_->spi.mosi);
            r.miso_value =
                place_bit(r.miso_value, r.char_len, r.bits_sampled, r.lsb_first, resolve(prev_->spi.miso));
            ++r.bits_sampled;
        }
    }

    if (r.ass && s.spi.ss_n == 0xFF) close_frame(s.cycle, true);
}

void TraceAnalyzer::close_frame(std::uint64_t cycle, bool completed) {
    Frame fr = std::move(*frame_);
    frame_.reset();
    TransferRecord& r = fr.record;
    r.end_cycle = cycle;
    r.completed = completed;

    if (r.edge_count != 2 * r.char_len) {
        violate(Rule::EdgeCount, cycle,
                format("%u sclk edges for a %u-bit transfer (expected %u)", r.edge_count, r.char_len,
                       2 * r.char_len));
    }
    const std::uint32_t expected = static_cast<std::uint32_t>(r.divider) + 1;
    for (std::size_t i = 0; i < r.half_periods.size(); ++i) {
        if (r.half_periods[i] != expected) {
            violate(Rule::HalfPeriod, cycle,
                    format("half period %zu lasted %u wb clocks (divider %u expects %u)", i, r.half_periods[i],
                           static_cast<unsigned>(r.divider), expected));
            break;
        }
    }
    stale_busy_writes_ = std::move(fr.busy_writes);
    pending_ = std::move(r);
}

void TraceAnalyzer::emit_pending() {
    if (!pending_) return;
    for (const auto& v : violations_) {
        if (v.frame == pending_->index) pending_->violations.push_back(v);
    }
    ready_.push_back(std::move(*pending_));
    pending_.reset();
}

void TraceAnalyzer::flush() {
    if (frame_) close_frame(prev_ ? prev_->cycle : 0, false);
    emit_pending();
}

std::vector<TransferRecord> TraceAnalyzer::take_records() {
    std::vector<TransferRecord> out;
    out.swap(ready_);
    return out;
}

std::optional<TransferRecord> monitor_decode(std::span<const PinSample> window, AnalyzerOptions options) {
    TraceAnalyzer analyzer(options);
    for (const auto& s : window) analyzer.step(s);
    analyzer.flush();
    auto records = analyzer.take_records();
    if (records.empty()) return std::nullopt;
    TransferRecord record = std::move(records.front());
    record.violations = analyzer.violations();
    return record;
}

std::vector<TransferRecord> decode_trace(std::span<const PinSample> trace, AnalyzerOptions options) {
    TraceAnalyzer analyzer(options);
    std::vector<TransferRecord> out;
    for (const auto& s : trace) {
        analyzer.step(s);
        for (auto& r : analyzer.take_records()) out.push_back(std::move(r));
    }
    analyzer.flush();
    for (auto& r : analyzer.take_records()) out.push_back(std::move(r));
    return out;
}

std::vector<Violation> assert_protocol(const AssertionCatalog& catalog, std::span<const PinSample> window) {
    TraceAnalyzer analyzer({catalog, false});
    for (const auto& s : window) analyzer.step(s);
    analyzer.flush();
    return analyzer.violations();
}

}  // namespace wbspi

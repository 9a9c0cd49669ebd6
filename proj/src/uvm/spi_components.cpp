#include "wbspi/uvm/spi_components.hpp"

#include "wbspi/errors.hpp"
#include "wbspi/spi_core.hpp"
#include "wbspi/spi_slave.hpp"
#include "wbspi/uvm/environment.hpp"

namespace wbspi::uvm {

Factory Factory::with_defaults() {
    Factory f;
    f.register_component<SpiTest>("spi_test");
    f.register_component<Env>("spi_env");
    f.register_component<Agent>("spi_agent");
    f.register_component<Sequencer>("spi_sequencer");
    f.register_component<Driver>("spi_driver");
    f.register_component<Monitor>("spi_monitor");
    f.register_component<StrictMonitor>("strict_monitor");
    f.register_component<Scoreboard>("spi_scoreboard");
    f.register_component<CoverageCollector>("coverage_collector");
    f.register_dut(kDutType, [] { return std::make_unique<SpiMasterDut>(); });
    return f;
}

// --- sequencer ---------------------------------------------------------

std::optional<SpiSequenceItem> SeqItemPort::get_next_item() {
    if (!sequencer_) throw ElaborationError(full_name() + " is not connected");
    return sequencer_->next_item();
}

std::vector<const Component*> SeqItemPort::peers() const {
    if (!sequencer_) return {};
    return {sequencer_};
}

Sequencer::Sequencer(std::string name, Component* parent) : Component(std::move(name), parent) {}

void Sequencer::build_phase() { rng_ = context().stream(full_name()); }

std::optional<SpiSequenceItem> Sequencer::next_item() {
    const auto& cfg = context().config;
    SpiSequenceItem item;
    if (!cfg.directed_items.empty()) {
        if (directed_next_ >= cfg.directed_items.size()) return std::nullopt;
        item = cfg.directed_items[directed_next_++];
    } else {
        item = draw_item(cfg.constraints, rng_);
    }
    ap.write(item);
    return item;
}

// --- driver ------------------------------------------------------------

Driver::Driver(std::string name, Component* parent) : Component(std::move(name), parent) {}

std::uint32_t Driver::execute(const wb::Transaction& txn) {
    auto& ctx = context();
    Bench& bench = *ctx.bench;
    const auto pins = wb::encode_cycle(txn);

    auto clock = [&](const wb::Pins& p) -> const PinSample& {
        const PinSample& s = bench.clock(p);
        if (ctx.stop.cycle_budget && bench.cycle() > *ctx.stop.cycle_budget) {
            throw RunTimeout("cycle budget of " + std::to_string(*ctx.stop.cycle_budget) + " wb clocks exhausted after " +
                             std::to_string(ctx.report.items_driven) + " items");
        }
        return s;
    };

    std::uint32_t data = 0;
    bool acked = false;
    for (unsigned wait = 0; wait < kAckWait && !acked; ++wait) {
        const PinSample& s = clock(pins.front());
        if (s.wb.ack_o) {
            acked = true;
            data = s.wb.dat_o;
        }
    }
    if (!acked) throw DriveTimeout("no ack for " + wb::to_string(txn));
    for (std::size_t i = 1; i < pins.size(); ++i) clock(pins[i]);
    return data;
}

CompletedItem Driver::drive_item(const SpiSequenceItem& item, std::size_t index) {
    Bench& bench = *context().bench;
    const unsigned len = item.char_len;

    SlaveState& slave = bench.slave();
    slave = configure(slave, item.slave_payload & low_mask(len), len, item.mode());
    slave.select_index = item.slave_index;

    execute(wb::Transaction::write(wb::reg::kDivider, item.divider));
    execute(wb::Transaction::write(wb::reg::kSs, 1u << item.slave_index));
    execute(wb::Transaction::write(wb::reg::kData, item.master_payload & low_mask(len)));

    CtrlFields c;
    c.char_len = len;
    c.go = true;
    c.rx_neg = item.rx_neg;
    c.tx_neg = item.tx_neg;
    c.lsb_first = item.lsb_first;
    c.ass = true;
    const std::uint64_t go_cycle = bench.cycle();
    execute(wb::Transaction::write(wb::reg::kCtrl, encode_ctrl(c)));

    const std::uint64_t bound = (std::uint64_t{item.divider} + 1) * 2 * len + kDriveMargin;
    while (execute(wb::Transaction::read(wb::reg::kCtrl)) & ctrl::kGoBsy) {
        if (bench.cycle() - go_cycle > bound) {
            throw DriveTimeout("go_bsy still set " + std::to_string(bench.cycle() - go_cycle) +
                               " wb clocks after go (limit " + std::to_string(bound) + ")");
        }
    }

    CompletedItem done;
    done.index = index;
    done.item = item;
    done.master_received = execute(wb::Transaction::read(wb::reg::kData));
    done.slave_received = bench.slave().rx_captured;
    return done;
}

void Driver::run_phase() {
    auto& ctx = context();
    for (std::size_t index = 0;; ++index) {
        if (ctx.stop.items && index >= *ctx.stop.items) break;
        auto item = seq_item_port.get_next_item();
        if (!item) break;

        CompletedItem done;
        try {
            done = drive_item(*item, index);
        } catch (const DriveTimeout&) {
            done.index = index;
            done.item = *item;
            done.slave_received = ctx.bench->slave().rx_captured;
            done.timed_out = true;
            ++ctx.report.drive_timeouts;
            ctx.bench->reset_dut();
        }
        ++ctx.report.items_driven;
        ap.write(done);
    }
}

// --- monitor -----------------------------------------------------------

Monitor::Monitor(std::string name, Component* parent) : Component(std::move(name), parent) {}

void Monitor::start_of_simulation_phase() {
    analyzer_ = TraceAnalyzer(options());
    const bool keep = context().config.keep_trace;
    context().bench->add_observer([this, keep](const PinSample& s) {
        if (keep) trace_.push_back(s);
        analyzer_.step(s);
        publish();
    });
}

void Monitor::publish() {
    auto& report = context().report;
    for (const auto& r : analyzer_.take_records()) {
        ++report.transfers_observed;
        for (auto hp : r.half_periods) report.half_periods[r.divider].insert(hp);
        ap.write(r);
    }
}

void Monitor::extract_phase() {
    analyzer_.flush();
    publish();
    auto& v = context().report.violations;
    v.insert(v.end(), analyzer_.violations().begin(), analyzer_.violations().end());
}

// --- scoreboard --------------------------------------------------------

Scoreboard::Scoreboard(std::string name, Component* parent) : Component(std::move(name), parent) {}

void Scoreboard::write_expected(const SpiSequenceItem& item) {
    pending_.push_back({issued_++, item, predict_exchange(item), std::nullopt, std::nullopt});
}

void Scoreboard::write_observed(const TransferRecord& record) {
    for (auto& p : pending_) {
        if (!p.observed) {
            p.observed = record;
            settle();
            return;
        }
    }
    throw OrphanObservation("transfer " + std::to_string(record.index) + " observed at cycle " +
                            std::to_string(record.start_cycle) + " with no item pending");
}

void Scoreboard::write_completed(const CompletedItem& completion) {
    for (auto& p : pending_) {
        if (p.index == completion.index) {
            p.completion = completion;
            settle();
            return;
        }
    }
    throw OrphanObservation("completion for item " + std::to_string(completion.index) + " with no item pending");
}

void Scoreboard::finalize(Pending& p) {
    Verdict v = check(p.expected, p.observed, *p.completion);
    ++checked_;
    if (v.pass()) ++passed_;
    mismatches_.insert(mismatches_.end(), v.mismatches.begin(), v.mismatches.end());
}

void Scoreboard::settle() {
    while (!pending_.empty() && pending_.front().completion && pending_.front().observed) {
        finalize(pending_.front());
        pending_.pop_front();
    }
}

void Scoreboard::report_phase() {
    // whatever is left never produced a record
    while (!pending_.empty()) {
        if (pending_.front().completion) finalize(pending_.front());
        pending_.pop_front();
    }
    auto& report = context().report;
    report.items_checked = checked_;
    report.items_passed = passed_;
    report.mismatches = mismatches_;
}

// --- coverage ----------------------------------------------------------

CoverageCollector::CoverageCollector(std::string name, Component* parent) : Component(std::move(name), parent) {}

void CoverageCollector::build_phase() { model_ = CoverageModel::spi_default(context().config.constraints); }

void CoverageCollector::write(const TransferRecord& record) {
    if (record.completed) model_.sample(record);
}

void CoverageCollector::report_phase() { context().report.coverage = model_; }

// --- structure ---------------------------------------------------------

void Agent::build_phase() {
    sequencer = &create<Sequencer>("spi_sequencer", "sequencer");
    driver = &create<Driver>("spi_driver", "driver");
    monitor = &create<Monitor>("spi_monitor", "monitor");
}

void Agent::connect_phase() { driver->seq_item_port.connect(*sequencer); }

void Env::build_phase() {
    agent = &create<Agent>("spi_agent", "agent");
    scoreboard = &create<Scoreboard>("spi_scoreboard", "scoreboard");
    if (context().config.topology.coverage) coverage = &create<CoverageCollector>("coverage_collector", "coverage");
}

void Env::connect_phase() {
    Scoreboard* sb = scoreboard;
    agent->sequencer->ap.connect(*sb, [sb](const SpiSequenceItem& i) { sb->write_expected(i); });
    agent->driver->ap.connect(*sb, [sb](const CompletedItem& c) { sb->write_completed(c); });
    if (!context().config.topology.connect_monitor) return;
    agent->monitor->ap.connect(*sb, [sb](const TransferRecord& r) { sb->write_observed(r); });
    if (CoverageCollector* cov = coverage) {
        agent->monitor->ap.connect(*cov, [cov](const TransferRecord& r) { cov->write(r); });
    }
}

void SpiTest::build_phase() {
    auto& ctx = context();
    ctx.bench = std::make_unique<Bench>(ctx.factory.create_dut(), ctx.config.record_waveform);
    ctx.report.seed = ctx.config.constraints.seed;
    ctx.report.dut_type = ctx.factory.dut_type();
    env = &create<Env>("spi_env", "env");
}

void SpiTest::report_phase() { context().report.cycles = context().bench->cycle(); }

}  // namespace wbspi::uvm

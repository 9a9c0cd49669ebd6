#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "wbspi/coverage.hpp"
#include "wbspi/monitor.hpp"
#include "wbspi/reference_model.hpp"
#include "wbspi/rng.hpp"
#include "wbspi/scoreboard.hpp"
#include "wbspi/sequence.hpp"
#include "wbspi/uvm/component.hpp"

namespace wbspi::uvm {

class Sequencer;

/// Driver-side pull connection to a sequencer.
class SeqItemPort : public PortBase {
public:
    SeqItemPort(Component& owner, std::string name) : PortBase(owner, std::move(name), true) {}
    void connect(Sequencer& sequencer) { sequencer_ = &sequencer; }
    std::optional<SpiSequenceItem> get_next_item();
    std::vector<const Component*> peers() const override;

private:
    Sequencer* sequencer_ = nullptr;
};

class Sequencer : public Component {
public:
    Sequencer(std::string name, Component* parent);

    void build_phase() override;

    /// Next directed item, or a fresh random one. nullopt once a directed
    /// list is exhausted. Every item handed out is published on `ap`.
    std::optional<SpiSequenceItem> next_item();

    AnalysisPort<SpiSequenceItem> ap{*this, "ap"};

private:
    Rng rng_;
    std::size_t directed_next_ = 0;
};

/// Programs the core over Wishbone for each item.
class Driver : public Component {
public:
    Driver(std::string name, Component* parent);

    void run_phase() override;

    /// Configures the slave model, writes divider/ss/data/ctrl, polls
    /// go_bsy and reads the data register back. Throws DriveTimeout when
    /// go_bsy stays up longer than (divider+1)*2*char_len + 8 clocks.
    CompletedItem drive_item(const SpiSequenceItem& item, std::size_t index);

    /// One Classic single-cycle access; strobe held until ack.
    std::uint32_t execute(const wb::Transaction& txn);

    SeqItemPort seq_item_port{*this, "seq_item_port"};
    AnalysisPort<CompletedItem> ap{*this, "ap"};

    static constexpr std::uint64_t kDriveMargin = 8;
    static constexpr unsigned kAckWait = 16;
};

/// Passive pin watcher built on TraceAnalyzer.
class Monitor : public Component {
public:
    Monitor(std::string name, Component* parent);

    void start_of_simulation_phase() override;
    void extract_phase() override;

    const std::vector<PinSample>& trace() const { return trace_; }
    const TraceAnalyzer& analyzer() const { return analyzer_; }

    AnalysisPort<TransferRecord> ap{*this, "ap"};

protected:
    virtual AnalyzerOptions options() const { return {}; }

private:
    void publish();

    TraceAnalyzer analyzer_;
    std::vector<PinSample> trace_;
};

/// Monitor that also flags register writes attempted while busy.
class StrictMonitor : public Monitor {
public:
    using Monitor::Monitor;

protected:
    AnalyzerOptions options() const override {
        AnalyzerOptions o;
        o.strict = true;
        return o;
    }
};

class Scoreboard : public Component {
public:
    Scoreboard(std::string name, Component* parent);

    void write_expected(const SpiSequenceItem& item);
    /// Throws OrphanObservation when no issued item is waiting.
    void write_observed(const TransferRecord& record);
    /// Verdicts are issued once both the record and the completion of
    /// the oldest pending item are in.
    void write_completed(const CompletedItem& completion);

    void report_phase() override;

    std::size_t checked() const { return checked_; }
    std::size_t passed() const { return passed_; }
    const std::vector<Mismatch>& mismatches() const { return mismatches_; }

protected:
    virtual Verdict check(const Exchange& expected, const std::optional<TransferRecord>& observed,
                          const CompletedItem& completion) {
        return scoreboard_check(expected, observed, completion);
    }

private:
    struct Pending {
        std::size_t index;
        SpiSequenceItem item;
        Exchange expected;
        std::optional<TransferRecord> observed;
        std::optional<CompletedItem> completion;
    };
    void settle();
    void finalize(Pending& p);

    std::deque<Pending> pending_;
    std::size_t issued_ = 0;
    std::size_t checked_ = 0;
    std::size_t passed_ = 0;
    std::vector<Mismatch> mismatches_;
};

class CoverageCollector : public Component {
public:
    CoverageCollector(std::string name, Component* parent);

    void build_phase() override;
    void write(const TransferRecord& record);
    void report_phase() override;

    const CoverageModel& model() const { return model_; }

private:
    CoverageModel model_;
};

class Agent : public Component {
public:
    using Component::Component;

    void build_phase() override;
    void connect_phase() override;

    Sequencer* sequencer = nullptr;
    Driver* driver = nullptr;
    Monitor* monitor = nullptr;
};

class Env : public Component {
public:
    using Component::Component;

    void build_phase() override;
    void connect_phase() override;

    Agent* agent = nullptr;
    Scoreboard* scoreboard = nullptr;
    CoverageCollector* coverage = nullptr;
};

/// Root. Owns the Bench (DUT from the factory) and the env.
class SpiTest : public Component {
public:
    using Component::Component;

    void build_phase() override;
    void report_phase() override;

    Env* env = nullptr;
};

}  // namespace wbspi::uvm

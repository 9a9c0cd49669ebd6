#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wbspi/bench.hpp"
#include "wbspi/coverage.hpp"
#include "wbspi/monitor.hpp"
#include "wbspi/rng.hpp"
#include "wbspi/scoreboard.hpp"
#include "wbspi/sequence.hpp"
#include "wbspi/uvm/component.hpp"
#include "wbspi/uvm/factory.hpp"
#include "wbspi/uvm/phases.hpp"

namespace wbspi::uvm {

/// Which connections the env makes. Leaving one out is how a dangling
/// port gets exercised.
struct Topology {
    bool connect_monitor = true;
    bool coverage = true;
};

struct EnvConfig {
    ConstraintSet constraints = ConstraintSet::defaults();
    Topology topology;
    Factory factory = Factory::with_defaults();
    /// When non-empty the sequencer plays these in order instead of
    /// randomizing.
    std::vector<SpiSequenceItem> directed_items;
    bool record_waveform = false;
    /// Keep every pin sample in the monitor for offline decoding.
    bool keep_trace = false;
};

struct StopCondition {
    std::optional<std::uint64_t> items;         // stop after this many items
    std::optional<std::uint64_t> cycle_budget;  // RunTimeout beyond this many wb clocks
};

struct RunReport {
    std::uint64_t seed = 0;
    std::string dut_type;
    std::size_t items_driven = 0;
    std::size_t items_checked = 0;
    std::size_t items_passed = 0;
    std::size_t drive_timeouts = 0;
    std::vector<Mismatch> mismatches;
    std::vector<Violation> violations;
    std::optional<CoverageModel> coverage;
    std::map<std::uint16_t, std::set<std::uint32_t>> half_periods;  // divider -> measured half periods
    std::size_t transfers_observed = 0;
    std::uint64_t cycles = 0;

    /// Index of the first item with a mismatch or violation.
    std::optional<std::size_t> first_detection() const;
    bool clean() const { return mismatches.empty() && violations.empty(); }
};

/// State shared by every component of one testbench.
struct TestbenchContext {
    EnvConfig config;
    Factory factory;
    std::unique_ptr<Bench> bench;
    StopCondition stop;
    RunReport report;

    /// Independent stream per component path.
    Rng stream(const std::string& path) const { return Rng::derive(config.constraints.seed, path); }
};

/// A built testbench. Owns its components and the simulation.
struct ComponentTree {
    std::unique_ptr<TestbenchContext> ctx;
    std::unique_ptr<Component> root;
    PhaseTrace trace;
    bool ran = false;

    /// Pre-order.
    std::vector<Component*> nodes() const;
    Component* find(const std::string& path) const;
    Bench& bench() const { return *ctx->bench; }
};

/// Creates the component tree and runs the build phase top-down. Throws
/// ConfigError for bad constraints, UnknownOverrideTarget for overrides
/// that name nothing.
ComponentTree build_env(EnvConfig config);

struct RunOutcome {
    PhaseTrace trace;
    RunReport report;
};

/// Runs connect through report. Throws ElaborationError on a dangling
/// or foreign connection, RunTimeout past the cycle budget. A tree can
/// be run once.
RunOutcome run_phases(ComponentTree& tree, StopCondition stop = {});

}  // namespace wbspi::uvm

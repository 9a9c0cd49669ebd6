#pragma once

#include <optional>
#include <vector>

#include "wbspi/mutants.hpp"
#include "wbspi/uvm/environment.hpp"
#include "wbspi/uvm/spi_components.hpp"

namespace runs {

struct Recorded {
    std::vector<wbspi::PinSample> trace;
    wbspi::uvm::RunReport report;
    wbspi::uvm::PhaseTrace phases;
};

struct Options {
    std::vector<wbspi::SpiSequenceItem> directed;
    std::uint64_t seed = 1;
    std::size_t items = 0;  // random items when directed is empty
    wbspi::Mutation mutant = wbspi::Mutation::None;
    bool keep_trace = true;
    bool strict = false;
};

inline Recorded record(const Options& o) {
    using namespace wbspi;
    uvm::EnvConfig cfg;
    cfg.constraints = ConstraintSet::defaults(o.seed);
    cfg.directed_items = o.directed;
    cfg.keep_trace = o.keep_trace;
    if (o.mutant != Mutation::None) install_mutant(cfg.factory, o.mutant);
    if (o.strict) cfg.factory.set_override("monitor", "strict_monitor");
    auto tree = uvm::build_env(cfg);
    uvm::StopCondition stop;
    stop.items = o.directed.empty() ? o.items : o.directed.size();
    auto out = uvm::run_phases(tree, stop);
    auto* mon = dynamic_cast<uvm::Monitor*>(tree.find("test.env.agent.monitor"));
    return {mon ? mon->trace() : std::vector<PinSample>{}, out.report, out.trace};
}

inline wbspi::SpiSequenceItem item(std::uint32_t m, std::uint32_t s, unsigned len, bool tx_neg, bool rx_neg,
                                   bool lsb, std::uint16_t div, unsigned ss = 0) {
    return {m, s, len, tx_neg, rx_neg, lsb, div, ss};
}

}  // namespace runs

#include "wbspi/uvm/phases.hpp"

#include <map>

namespace wbspi::uvm {

std::string_view phase_name(Phase p) {
    switch (p) {
        case Phase::Build: return "build";
        case Phase::Connect: return "connect";
        case Phase::Elaboration: return "elaboration";
        case Phase::Simulation: return "simulation";
        case Phase::Run: return "run";
        case Phase::Extract: return "extract";
        case Phase::Report: return "report";
    }
    return "?";
}

std::optional<std::string> phase_order_error(const PhaseTrace& trace) {
    std::map<std::string, std::vector<Phase>> per_node;
    std::optional<std::size_t> last_build;
    std::optional<std::size_t> first_connect;

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const PhaseEntry& e = trace[i];
        per_node[e.node].push_back(e.phase);
        if (e.phase == Phase::Build) last_build = i;
        if (e.phase == Phase::Connect && !first_connect) first_connect = i;
        if (e.phase == Phase::Run && e.time != 0) {
            return "run phase of " + e.node + " starts at time " + std::to_string(e.time);
        }
    }
    if (last_build && first_connect && *last_build > *first_connect) {
        return "a build entry follows the first connect entry";
    }
    for (const auto& [node, phases] : per_node) {
        if (phases.size() != kPhaseOrder.size()) {
            return node + " ran " + std::to_string(phases.size()) + " phases";
        }
        for (std::size_t k = 0; k < phases.size(); ++k) {
            if (phases[k] != kPhaseOrder[k]) {
                return node + ": phase " + std::string(phase_name(phases[k])) + " out of order";
            }
        }
    }
    return std::nullopt;
}

}  // namespace wbspi::uvm

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wbspi::uvm {

enum class Phase : std::uint8_t { Build, Connect, Elaboration, Simulation, Run, Extract, Report };

inline constexpr std::array<Phase, 7> kPhaseOrder = {
    Phase::Build, Phase::Connect, Phase::Elaboration, Phase::Simulation,
    Phase::Run,   Phase::Extract, Phase::Report,
};

std::string_view phase_name(Phase p);

struct PhaseEntry {
    Phase phase = Phase::Build;
    std::string node;  // full component path
    std::uint64_t time = 0;  // simulation time in wb clocks

    bool operator==(const PhaseEntry&) const = default;
};

using PhaseTrace = std::vector<PhaseEntry>;

/// Checks that every node went through the seven phases in order, that
/// all build entries precede all connect entries, and that run entries
/// sit at time 0. Returns a description of the first breach.
std::optional<std::string> phase_order_error(const PhaseTrace& trace);

}  // namespace wbspi::uvm

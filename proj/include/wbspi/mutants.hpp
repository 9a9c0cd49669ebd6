#pragma once

#include <array>
#include <string>
#include <string_view>

#include "wbspi/bench.hpp"
#include "wbspi/spi_core.hpp"

namespace wbspi {

namespace uvm {
class Factory;
}

/// M1..M5.
using MutantId = Mutation;

inline constexpr std::array<MutantId, 5> kAllMutants = {
    Mutation::SwapEdgeSelect, Mutation::DividerReloadOff, Mutation::DropFinalEdge,
    Mutation::EarlyRxLatch,   Mutation::IgnoreLsbFirst,
};

/// "M1".."M5"; "none" for the real core.
std::string_view mutant_id(MutantId m);
std::string_view mutant_summary(MutantId m);

/// Parses "M1".."M5". Throws UnknownMutant.
MutantId parse_mutant(std::string_view text);

/// Factory type name of a mutant core, e.g. "spi_master_core_m3".
std::string mutant_type_name(MutantId m);

/// A DUT constructor identical to the real core except for one bug.
/// Throws UnknownMutant for Mutation::None or values outside the catalog.
DutConstructor inject_fault(const DutConstructor& base, MutantId mutant);

/// Registers the mutant core with the factory and overrides the DUT type
/// with it.
void install_mutant(uvm::Factory& factory, MutantId mutant);

}  // namespace wbspi

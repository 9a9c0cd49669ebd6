#include "wbspi/mutants.hpp"

#include "wbspi/errors.hpp"
#include "wbspi/uvm/factory.hpp"

namespace wbspi {

std::string_view mutant_id(MutantId m) {
    switch (m) {
        case Mutation::None: return "none";
        case Mutation::SwapEdgeSelect: return "M1";
        case Mutation::DividerReloadOff: return "M2";
        case Mutation::DropFinalEdge: return "M3";
        case Mutation::EarlyRxLatch: return "M4";
        case Mutation::IgnoreLsbFirst: return "M5";
    }
    return "?";
}

std::string_view mutant_summary(MutantId m) {
    switch (m) {
        case Mutation::None: return "unmutated core";
        case Mutation::SwapEdgeSelect: return "tx_neg/rx_neg handling swapped";
        case Mutation::DividerReloadOff: return "divider reload off by one";
        case Mutation::DropFinalEdge: return "final sclk edge dropped";
        case Mutation::EarlyRxLatch: return "MISO latched one edge early";
        case Mutation::IgnoreLsbFirst: return "lsb_first ignored";
    }
    return "?";
}

MutantId parse_mutant(std::string_view text) {
    for (MutantId m : kAllMutants) {
        if (mutant_id(m) == text) return m;
    }
    throw UnknownMutant("unknown mutant '" + std::string(text) + "'");
}

std::string mutant_type_name(MutantId m) {
    std::string id(mutant_id(m));
    id[0] = 'm';
    return "spi_master_core_" + id;
}

DutConstructor inject_fault(const DutConstructor& base, MutantId mutant) {
    bool known = false;
    for (MutantId m : kAllMutants) known = known || m == mutant;
    if (!known) throw UnknownMutant("mutant " + std::to_string(static_cast<int>(mutant)) + " is not in the catalog");
    return [base, mutant] {
        auto dut = base();
        dut->inject(mutant);
        return dut;
    };
}

void install_mutant(uvm::Factory& factory, MutantId mutant) {
    const std::string name = mutant_type_name(mutant);
    factory.register_dut(name, inject_fault(factory.dut_constructor(uvm::kDutType), mutant));
    factory.set_type_override(uvm::kDutType, name);
}

}  // namespace wbspi

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wbspi/monitor.hpp"
#include "wbspi/spi_core.hpp"
#include "wbspi/spi_slave.hpp"
#include "wbspi/vcd.hpp"
#include "wbspi/wishbone.hpp"

namespace wbspi {

struct DutOutputs {
    bool ack_o = false;
    std::uint32_t dat_o = 0;
    SpiPins spi;
};

/// Pin-level device under test.
class DutModel {
public:
    virtual ~DutModel() = default;
    /// One wb clock. `miso` is the line from the previous clock.
    virtual DutOutputs step(const wb::Pins& in, Tri miso) = 0;
    virtual const CoreState* core() const { return nullptr; }
    /// Installs a design bug. Models without mutation support throw
    /// UnknownMutant.
    virtual void inject(Mutation mutation);
};

/// The SPI master core behind its Wishbone slave port. ack_o follows a
/// strobe on the same clock and never on two clocks in a row.
class SpiMasterDut : public DutModel {
public:
    explicit SpiMasterDut(Mutation mutation = Mutation::None);
    DutOutputs step(const wb::Pins& in, Tri miso) override;
    const CoreState* core() const override { return &core_; }
    void inject(Mutation mutation) override { core_.mutation = mutation; }

private:
    CoreState core_;
    bool prev_ack_ = false;
};

using DutConstructor = std::function<std::unique_ptr<DutModel>()>;

/// Simulation kernel: one DUT, one slave model, the wb clock, and the
/// observers that watch every sample. Single threaded; a Bench may be
/// moved to another thread but never shared.
class Bench {
public:
    explicit Bench(std::unique_ptr<DutModel> dut, bool record_waveform = false);

    /// Runs one wb clock with the master-side pins given (ack_o/dat_o
    /// fields are ignored) and returns the full sample.
    const PinSample& clock(const wb::Pins& master);

    /// Drives rst_i for one clock.
    const PinSample& reset_dut();

    std::uint64_t cycle() const { return cycle_; }
    const PinSample& last() const { return last_; }

    SlaveState& slave() { return slave_; }
    const SlaveState& slave() const { return slave_; }
    DutModel& dut() { return *dut_; }

    void add_observer(std::function<void(const PinSample&)> observer);

    /// Null unless waveform recording was requested.
    const vcd::VcdLog* waveform() const { return waveform_ ? &*waveform_ : nullptr; }

    /// One wb clock is 10 VCD ticks (100 MHz at 1 ns resolution).
    static constexpr std::uint64_t kTicksPerClock = 10;

private:
    struct WaveIds {
        vcd::SignalId clk, rst, adr, dat_i, dat_o, we, stb, cyc, ack, sel, sclk, mosi, miso, ss_n;
    };
    void record(const PinSample& s);

    std::unique_ptr<DutModel> dut_;
    SlaveState slave_;
    Tri miso_line_ = Tri::HighZ;
    std::uint64_t cycle_ = 0;
    PinSample last_;
    std::vector<std::function<void(const PinSample&)>> observers_;
    std::optional<vcd::VcdLog> waveform_;
    WaveIds ids_{};
};

}  // namespace wbspi

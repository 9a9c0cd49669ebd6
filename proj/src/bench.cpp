#include "wbspi/bench.hpp"

#include "wbspi/errors.hpp"

namespace wbspi {

void DutModel::inject(Mutation) { throw UnknownMutant("this DUT model does not support fault injection"); }

SpiMasterDut::SpiMasterDut(Mutation mutation) { core_.mutation = mutation; }

DutOutputs SpiMasterDut::step(const wb::Pins& in, Tri miso) {
    if (in.rst_i) {
        core_ = reset(core_);
        prev_ack_ = false;
        return {false, 0, output_pins(core_)};
    }

    const bool ack = in.cyc_i && in.stb_i && !prev_ack_;
    std::uint32_t data = 0;
    if (ack && wb::is_register(in.adr_i)) {
        const auto txn = in.we_i ? wb::Transaction::write(in.adr_i, in.dat_i) : wb::Transaction::read(in.adr_i);
        auto result = bus_access(core_, txn);
        core_ = result.core;
        if (!in.we_i) data = result.data;
    }
    prev_ack_ = ack;

    auto t = tick(core_, miso);
    core_ = t.core;
    return {ack, data, t.pins};
}

Bench::Bench(std::unique_ptr<DutModel> dut, bool record_waveform) : dut_(std::move(dut)) {
    if (!record_waveform) return;
    auto& w = waveform_.emplace();
    ids_.clk = w.declare("tb.wb.clk_i", 1);
    ids_.rst = w.declare("tb.wb.rst_i", 1);
    ids_.adr = w.declare("tb.wb.adr_i", 8);
    ids_.dat_i = w.declare("tb.wb.dat_i", 32);
    ids_.dat_o = w.declare("tb.wb.dat_o", 32);
    ids_.we = w.declare("tb.wb.we_i", 1);
    ids_.stb = w.declare("tb.wb.stb_i", 1);
    ids_.cyc = w.declare("tb.wb.cyc_i", 1);
    ids_.ack = w.declare("tb.wb.ack_o", 1);
    ids_.sel = w.declare("tb.wb.sel_i", 4);
    ids_.sclk = w.declare("tb.spi.sclk", 1);
    ids_.mosi = w.declare("tb.spi.mosi", 1);
    ids_.miso = w.declare("tb.spi.miso", 1);
    ids_.ss_n = w.declare("tb.spi.ss_n", 8);
}

const PinSample& Bench::clock(const wb::Pins& master) {
    wb::Pins in = master;
    in.clk_i = true;
    in.ack_o = false;
    in.dat_o = 0;

    const DutOutputs out = dut_->step(in, miso_line_);

    PinSample s;
    s.cycle = cycle_;
    s.wb = in;
    s.wb.ack_o = out.ack_o;
    s.wb.dat_o = out.dat_o;
    s.spi = out.spi;

    auto reacted = on_spi_pins(slave_, out.spi);
    slave_ = reacted.slave;
    miso_line_ = reacted.miso_out;
    s.spi.miso = miso_line_;

    last_ = s;
    if (waveform_) record(s);
    for (auto& observer : observers_) observer(last_);
    ++cycle_;
    return last_;
}

const PinSample& Bench::reset_dut() {
    wb::Pins p;
    p.rst_i = true;
    return clock(p);
}

void Bench::add_observer(std::function<void(const PinSample&)> observer) {
    observers_.push_back(std::move(observer));
}

void Bench::record(const PinSample& s) {
    auto& w = *waveform_;
    const std::uint64_t t = s.cycle * kTicksPerClock;
    w.record(t, ids_.clk, std::uint64_t{1});
    w.record(t, ids_.rst, std::uint64_t{s.wb.rst_i});
    w.record(t, ids_.adr, std::uint64_t{s.wb.adr_i});
    w.record(t, ids_.dat_i, std::uint64_t{s.wb.dat_i});
    w.record(t, ids_.dat_o, std::uint64_t{s.wb.dat_o});
    w.record(t, ids_.we, std::uint64_t{s.wb.we_i});
    w.record(t, ids_.stb, std::uint64_t{s.wb.stb_i});
    w.record(t, ids_.cyc, std::uint64_t{s.wb.cyc_i});
    w.record(t, ids_.ack, std::uint64_t{s.wb.ack_o});
    w.record(t, ids_.sel, std::uint64_t{s.wb.sel_i});
    w.record(t, ids_.sclk, std::uint64_t{s.spi.sclk});
    w.record(t, ids_.mosi, std::uint64_t{s.spi.mosi});
    w.record(t, ids_.miso, s.spi.miso);
    w.record(t, ids_.ss_n, std::uint64_t{s.spi.ss_n});
    w.record(t + kTicksPerClock / 2, ids_.clk, std::uint64_t{0});
}

}  // namespace wbspi

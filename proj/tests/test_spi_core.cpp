#include <gtest/gtest.h>

#include "support/oracle.hpp"
#include "support/rig.hpp"
#include "wbspi/errors.hpp"
#include "wbspi/rng.hpp"
#include "wbspi/spi_core.hpp"

using namespace wbspi;
namespace reg = wb::reg;

namespace {

CoreState write(CoreState c, std::uint8_t a, std::uint32_t v) {
    return bus_access(c, wb::Transaction::write(a, v)).core;
}
std::uint32_t read(const CoreState& c, std::uint8_t a) { return bus_access(c, wb::Transaction::read(a)).data; }

CoreState started(std::uint32_t payload, unsigned len, std::uint16_t divider = 0) {
    CoreState c;
    c = write(c, reg::kSs, 1);
    c = write(c, reg::kDivider, divider);
    c = write(c, reg::kData, payload);
    c = write(c, reg::kCtrl, len | ctrl::kGoBsy | ctrl::kAss);
    return tick(c, Tri::HighZ).core;
}

}  // namespace

TEST(SclkFrequency, DividerZeroHalvesClock) { EXPECT_DOUBLE_EQ(sclk_frequency(100e6, 0), 50e6); }

TEST(SclkFrequency, DividerFour) { EXPECT_DOUBLE_EQ(sclk_frequency(100e6, 4), 10e6); }

TEST(SclkFrequency, MaximalDivider) {
    const double f = 33.0e6;
    EXPECT_DOUBLE_EQ(sclk_frequency(f, 65535), f / 131072.0);
    EXPECT_DOUBLE_EQ(sclk_frequency(f, 65535), oracle::sclk_hz(f, 65535));
}

TEST(CtrlRegister, FieldsRoundTrip) {
    CtrlFields f;
    f.char_len = 17;
    f.go = true;
    f.tx_neg = true;
    f.lsb_first = true;
    f.ass = true;
    EXPECT_EQ(decode_ctrl(encode_ctrl(f)), f);
    EXPECT_EQ(transfer_length(0), 32u);
    EXPECT_EQ(transfer_length(5), 5u);
    CtrlFields full;
    full.char_len = 32;
    EXPECT_EQ(encode_ctrl(full) & ctrl::kCharLenMask, 0u);
}

TEST(CoreReset, ClearsEverything) {
    CoreState c = started(0xA5, 8, 3);
    c.mutation = Mutation::IgnoreLsbFirst;
    const CoreState r = reset(c);
    EXPECT_EQ(r.regs, RegisterFile{});
    EXPECT_EQ(r.fsm, CoreFsm::Idle);
    EXPECT_FALSE(r.sclk);
    EXPECT_EQ(output_pins(r).ss_n, 0xFF);
    EXPECT_EQ(r.mutation, Mutation::IgnoreLsbFirst);
}

TEST(CoreReset, CtrlReadsZero) { EXPECT_EQ(read(reset(CoreState{}), reg::kCtrl), 0u); }

TEST(CoreReset, MidTransferGoesIdle) {
    CoreState c = started(0xA5, 8);
    for (int i = 0; i < 5; ++i) c = tick(c, Tri::Zero).core;
    ASSERT_TRUE(busy(c));
    c = reset(c);
    EXPECT_EQ(c.fsm, CoreFsm::Idle);
    EXPECT_EQ(read(c, reg::kCtrl) & ctrl::kGoBsy, 0u);
}

TEST(BusAccess, GoStartsTransfer) {
    CoreState c;
    c = write(c, reg::kSs, 1);
    c = write(c, reg::kData, 0xA5);
    c = write(c, reg::kCtrl, 8 | ctrl::kGoBsy);
    EXPECT_TRUE(busy(c));
    EXPECT_NE(read(c, reg::kCtrl) & ctrl::kGoBsy, 0u);
    c = tick(c, Tri::HighZ).core;
    EXPECT_EQ(c.fsm, CoreFsm::Transfer);
    EXPECT_EQ(c.shift_reg, 0xA5u);
    EXPECT_EQ(c.bit_counter, 16u);
}

TEST(BusAccess, GoIsNotStored) {
    CoreState c = write(CoreState{}, reg::kCtrl, 8 | ctrl::kGoBsy);  // ss = 0: nothing to start
    EXPECT_FALSE(busy(c));
    EXPECT_EQ(read(c, reg::kCtrl), 8u);
}

TEST(BusAccess, WritesIgnoredWhileBusy) {
    CoreState c = started(0xA5, 8, 2);
    c = write(c, reg::kDivider, 99);
    EXPECT_EQ(read(c, reg::kDivider), 2u);
    c = write(c, reg::kData, 0x11);
    c = write(c, reg::kCtrl, 4 | ctrl::kGoBsy);
    EXPECT_EQ(c.regs.tx_data, 0xA5u);
    EXPECT_EQ(c.regs.ctrl & ctrl::kCharLenMask, 8u);
}

TEST(BusAccess, UnknownOffsetThrows) {
    EXPECT_THROW(bus_access(CoreState{}, wb::Transaction::write(0x1C, 0)), InvalidAddress);
}

TEST(BusAccess, ReadBackAfterExchange) {
    rig::Setup s;
    s.master = 0xA5;
    s.slave = 0x3C;
    const auto ex = rig::run(s);
    const auto want = oracle::ring_exchange(0xA5, 0x3C, 8, false);
    EXPECT_EQ(ex.master_rx, 0x0000003Cu);
    EXPECT_EQ(ex.master_rx, want.master);
    EXPECT_EQ(ex.slave_rx, want.slave);
}

TEST(Tick, DividerZeroTogglesEveryClock) {
    rig::Setup s;
    s.divider = 0;
    const auto ex = rig::run(s);
    // clocks[0] is the start clock; edges follow on every clock
    for (std::size_t i = 1; i <= 16; ++i) {
        EXPECT_NE(ex.clocks[i].pins.sclk, ex.clocks[i - 1].pins.sclk) << i;
    }
    EXPECT_FALSE(ex.clocks[16].pins.sclk);
}

TEST(Tick, HalfPeriodFollowsDivider) {
    for (std::uint16_t d : {0, 1, 2, 7, 255}) {
        rig::Setup s;
        s.divider = d;
        const auto ex = rig::run(s);
        std::vector<std::size_t> edges;
        for (std::size_t i = 1; i < ex.clocks.size(); ++i) {
            if (ex.clocks[i].pins.sclk != ex.clocks[i - 1].pins.sclk) edges.push_back(i);
        }
        ASSERT_EQ(edges.size(), 16u) << d;
        EXPECT_EQ(edges.front(), oracle::half_period(d));
        for (std::size_t k = 1; k < edges.size(); ++k) EXPECT_EQ(edges[k] - edges[k - 1], oracle::half_period(d));
        EXPECT_EQ(edges.back(), oracle::active_clocks(d, 8));
    }
}

TEST(Tick, MosiBitsOfA5MsbFirst) {
    rig::Setup s;
    s.master = 0xA5;
    s.tx_neg = true;
    s.divider = 1;
    const auto ex = rig::run(s);
    std::vector<int> at_sample, changed_on_rising;
    for (std::size_t i = 1; i < ex.clocks.size(); ++i) {
        const auto& prev = ex.clocks[i - 1].pins;
        const auto& cur = ex.clocks[i].pins;
        if (cur.sclk && !prev.sclk) {
            at_sample.push_back(prev.mosi);  // line as the rising edge arrives
            if (cur.mosi != prev.mosi) changed_on_rising.push_back(static_cast<int>(i));
        }
    }
    EXPECT_EQ(at_sample, (std::vector<int>{1, 0, 1, 0, 0, 1, 0, 1}));
    EXPECT_TRUE(changed_on_rising.empty());
}

TEST(Tick, IdleKeepsSclkLowAndPinsQuiet) {
    CoreState c;
    for (int i = 0; i < 10; ++i) {
        auto t = tick(c, Tri::One);
        c = t.core;
        EXPECT_FALSE(t.pins.sclk);
        EXPECT_EQ(t.pins.ss_n, 0xFF);
    }
}

TEST(Tick, BitCounterStaysInRange) {
    CoreState c = started(0xFFFF, 16, 1);
    while (busy(c)) {
        ASSERT_LE(c.bit_counter, 32u);
        c = tick(c, Tri::One).core;
    }
    EXPECT_FALSE(c.sclk);
}

TEST(Tick, AutoSelectFramesTransfer) {
    rig::Setup s;
    s.slave_index = 5;
    const auto ex = rig::run(s);
    EXPECT_EQ(ex.clocks.front().pins.ss_n, static_cast<std::uint8_t>(~(1u << 5)));
    EXPECT_EQ(ex.clocks.back().pins.ss_n, 0xFF);
}

TEST(Tick, RandomExchangesAreBitExact) {
    Rng rng(77);
    for (int i = 0; i < 1000; ++i) {
        rig::Setup s;
        s.len = static_cast<unsigned>(rng.uniform(1, 32));
        s.master = static_cast<std::uint32_t>(rng.next()) & oracle::mask(s.len);
        s.slave = static_cast<std::uint32_t>(rng.next()) & oracle::mask(s.len);
        s.tx_neg = rng.uniform(0, 1);
        s.rx_neg = rng.uniform(0, 1);
        s.lsb_first = rng.uniform(0, 1);
        s.divider = static_cast<std::uint16_t>(rng.uniform(0, 7));
        s.slave_index = static_cast<unsigned>(rng.uniform(0, 7));
        const auto ex = rig::run(s);
        const auto want = oracle::ring_exchange(s.master, s.slave, s.len, s.lsb_first);
        ASSERT_EQ(ex.master_rx, want.master) << "item " << i << " len " << s.len;
        ASSERT_EQ(ex.slave_rx, want.slave) << "item " << i;
        ASSERT_EQ(ex.master_rx, s.slave);
        ASSERT_EQ(ex.slave_rx, s.master);
    }
}

TEST(Tick, FullLengthTransferUsesCharLenZero) {
    rig::Setup s;
    s.len = 32;
    s.master = 0xDEADBEEF;
    s.slave = 0x01234567;
    s.lsb_first = true;
    const auto ex = rig::run(s);
    EXPECT_EQ(ex.master_rx, 0x01234567u);
    EXPECT_EQ(ex.slave_rx, 0xDEADBEEFu);
}

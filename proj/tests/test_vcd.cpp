#include <gtest/gtest.h>

#include <set>

#include "support/runs.hpp"
#include "support/vcd_reader.hpp"
#include "wbspi/bench.hpp"
#include "wbspi/errors.hpp"
#include "wbspi/rng.hpp"
#include "wbspi/vcd.hpp"

using namespace wbspi;
using namespace wbspi::vcd;

namespace {

std::vector<vcdread::Change> as_changes(const VcdLog& log) {
    std::vector<vcdread::Change> out;
    for (const auto& e : log.events()) out.push_back({e.time, e.id_code, e.value});
    return out;
}

// Same input through a log without change compression, by hand.
std::vector<vcdread::Change> compress(const std::vector<vcdread::Change>& raw, std::size_t nsig) {
    std::vector<std::string> last(nsig);
    std::vector<vcdread::Change> out;
    for (const auto& c : raw) {
        const std::size_t i = std::stoul(c.id);
        if (last[i] == c.value) continue;
        last[i] = c.value;
        out.push_back(c);
    }
    return out;
}

}  // namespace

TEST(Vcd, SameValueStoredOnce) {
    VcdLog log;
    auto s = log.declare("tb.spi.sclk", 1);
    log.record(0, s, std::uint64_t{1});
    log.record(1, s, std::uint64_t{1});
    EXPECT_EQ(log.events().size(), 1u);
}

TEST(Vcd, HighZIsZ) {
    VcdLog log;
    auto s = log.declare("tb.spi.miso", 1);
    log.record(0, s, Tri::HighZ);
    ASSERT_EQ(log.events().size(), 1u);
    EXPECT_EQ(log.events()[0].value, "z");
}

TEST(Vcd, TimeGoingBackwards) {
    VcdLog log;
    auto s = log.declare("a", 1);
    log.record(5, s, std::uint64_t{1});
    EXPECT_THROW(log.record(3, s, std::uint64_t{0}), TimeRegression);
}

TEST(Vcd, WrongWidthRejected) {
    VcdLog log;
    auto s = log.declare("a", 4);
    EXPECT_THROW(log.record(0, s, std::string("101")), std::invalid_argument);
    EXPECT_THROW(log.record(0, s, std::string("10q1")), std::invalid_argument);
}

TEST(Vcd, EmptyLogHeaderOnly) {
    VcdLog log;
    log.declare("tb.a", 1);
    log.declare("tb.b", 8);
    log.declare("tb.c", 1);
    const std::string text = log.emit();
    EXPECT_NE(text.find("$timescale 1ns $end"), std::string::npos);
    EXPECT_NE(text.find("$date"), std::string::npos);
    EXPECT_NE(text.find("$enddefinitions $end"), std::string::npos);
    EXPECT_EQ(text.find("\n#"), std::string::npos);
    const auto f = vcdread::parse(text);
    ASSERT_EQ(f.initial.size(), 3u);
    for (const auto& [id, v] : f.initial) EXPECT_EQ(v.find_first_not_of('x'), std::string::npos) << id;
    EXPECT_TRUE(f.changes.empty());
}

TEST(Vcd, ToggleAtTen) {
    VcdLog log;
    auto s = log.declare("tb.spi.sclk", 1);
    log.record(10, s, std::uint64_t{1});
    const std::string text = log.emit();
    const std::string id = log.decls()[0].id_code;
    EXPECT_NE(text.find("#10\n1" + id + "\n"), std::string::npos) << text;
}

TEST(Vcd, VectorFormat) {
    VcdLog log;
    auto s = log.declare("tb.wb.adr_i", 8);
    log.record(0, s, std::uint64_t{0x14});
    EXPECT_NE(log.emit().find("b00010100 " + log.decls()[0].id_code), std::string::npos);
    EXPECT_EQ(bits(5, 4), "0101");
}

TEST(Vcd, ScopesNestFromDottedNames) {
    VcdLog log;
    log.declare("tb.wb.clk_i", 1);
    log.declare("tb.spi.sclk", 1);
    log.declare("top", 2);
    const auto f = vcdread::parse(log.emit());
    ASSERT_EQ(f.vars.size(), 3u);
    EXPECT_EQ(f.vars[0].path, "tb.wb.clk_i");
    EXPECT_EQ(f.vars[1].path, "tb.spi.sclk");
    EXPECT_EQ(f.vars[2].path, "top");
    EXPECT_EQ(f.vars[2].width, 2u);
    EXPECT_EQ(f.timescale, "1ns");
}

TEST(Vcd, IdCodesUniqueAndPrintable) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < 20000; ++i) {
        const auto id = id_code_for(i);
        for (char c : id) ASSERT_TRUE(c >= '!' && c <= '~');
        ASSERT_TRUE(seen.insert(id).second) << i;
    }
    EXPECT_EQ(id_code_for(0), "!");
    EXPECT_EQ(id_code_for(93), "~");
    EXPECT_EQ(id_code_for(94).size(), 2u);
}

TEST(Vcd, RandomLogsRoundTrip) {
    Rng rng(1364);
    for (int round = 0; round < 100; ++round) {
        VcdLog log;
        const std::size_t nsig = rng.uniform(1, 120);  // past 94 to reach two-char ids
        std::vector<unsigned> widths;
        for (std::size_t i = 0; i < nsig; ++i) {
            widths.push_back(static_cast<unsigned>(rng.uniform(1, 40)));
            log.declare("top.m" + std::to_string(i % 5) + ".s" + std::to_string(i), widths.back());
        }
        std::vector<vcdread::Change> raw;  // id = signal index here
        std::uint64_t t = 0;
        const char alphabet[] = {'0', '1', 'z', 'x'};
        const int n = static_cast<int>(rng.uniform(0, 400));
        for (int k = 0; k < n; ++k) {
            t += rng.uniform(0, 3);
            const std::size_t s = rng.uniform(0, nsig - 1);
            std::string v;
            for (unsigned b = 0; b < widths[s]; ++b) v += alphabet[rng.uniform(0, rng.uniform(0, 1) ? 1 : 3)];
            log.record(t, s, v);
            raw.push_back({t, std::to_string(s), v});
        }
        // signals start at x, so an x record up front is itself a no-op
        std::vector<vcdread::Change> start;
        for (std::size_t i = 0; i < nsig; ++i) start.push_back({0, std::to_string(i), std::string(widths[i], 'x')});
        auto seeded = start;
        seeded.insert(seeded.end(), raw.begin(), raw.end());
        auto expect = compress(seeded, nsig);
        expect.erase(expect.begin(), expect.begin() + static_cast<long>(nsig));
        for (auto& c : expect) c.id = log.decls()[std::stoul(c.id)].id_code;

        const auto f = vcdread::parse(log.emit());
        ASSERT_EQ(f.changes, expect) << "round " << round;
        ASSERT_EQ(f.changes, as_changes(log)) << "round " << round;
        ASSERT_EQ(f.vars.size(), nsig);
    }
}

TEST(Vcd, BenchWaveformRoundTrip) {
    Bench bench(std::make_unique<SpiMasterDut>(), true);
    wb::Pins p;
    p.cyc_i = p.stb_i = true;
    p.we_i = true;
    p.adr_i = wb::reg::kSs;
    p.dat_i = 1;
    bench.clock(p);
    bench.clock(wb::Pins{});
    ASSERT_NE(bench.waveform(), nullptr);
    const auto& log = *bench.waveform();
    const auto f = vcdread::parse(log.emit());
    EXPECT_EQ(f.vars.size(), 14u);
    EXPECT_EQ(f.changes, as_changes(log));
    // clk high at 0, low at 5, high again at 10
    const auto clk = log.decls()[0].id_code;
    std::vector<std::pair<std::uint64_t, std::string>> clk_changes;
    for (const auto& c : f.changes) {
        if (c.id == clk) clk_changes.push_back({c.time, c.value});
    }
    ASSERT_GE(clk_changes.size(), 3u);
    EXPECT_EQ(clk_changes[0], (std::pair<std::uint64_t, std::string>{0, "1"}));
    EXPECT_EQ(clk_changes[1], (std::pair<std::uint64_t, std::string>{5, "0"}));
    EXPECT_EQ(clk_changes[2], (std::pair<std::uint64_t, std::string>{10, "1"}));
}

TEST(Vcd, IdenticalLogsIdenticalBytes) {
    auto make = [] {
        VcdLog log;
        auto a = log.declare("x.a", 3);
        log.record(2, a, std::uint64_t{5});
        log.record(7, a, std::string("z1z"));
        return log.emit();
    };
    EXPECT_EQ(make(), make());
}

#include <gtest/gtest.h>

#include <algorithm>

#include "support/runs.hpp"
#include "wbspi/errors.hpp"
#include "wbspi/mutants.hpp"

using namespace wbspi;

namespace {

bool has_rule(const std::vector<Violation>& v, Rule r) {
    return std::any_of(v.begin(), v.end(), [r](const Violation& x) { return x.rule == r; });
}

bool has_field(const std::vector<Mismatch>& v, const std::string& f) {
    return std::any_of(v.begin(), v.end(), [&](const Mismatch& m) { return m.field == f; });
}

}  // namespace

TEST(Mutants, Names) {
    EXPECT_EQ(mutant_id(Mutation::SwapEdgeSelect), "M1");
    EXPECT_EQ(mutant_id(Mutation::IgnoreLsbFirst), "M5");
    EXPECT_EQ(parse_mutant("M3"), Mutation::DropFinalEdge);
    EXPECT_EQ(mutant_type_name(Mutation::EarlyRxLatch), "spi_master_core_m4");
    EXPECT_THROW(parse_mutant("M9"), UnknownMutant);
    EXPECT_THROW(parse_mutant("none"), UnknownMutant);
}

TEST(Mutants, InjectNeedsCatalogEntry) {
    DutConstructor base = [] { return std::make_unique<SpiMasterDut>(); };
    EXPECT_THROW(inject_fault(base, Mutation::None), UnknownMutant);
    EXPECT_THROW(inject_fault(base, static_cast<Mutation>(42)), UnknownMutant);
    auto m = inject_fault(base, Mutation::DividerReloadOff)();
    EXPECT_EQ(m->core()->mutation, Mutation::DividerReloadOff);
}

TEST(Mutants, ModelWithoutHooksRefuses) {
    struct Plain : DutModel {
        DutOutputs step(const wb::Pins&, Tri) override { return {}; }
    };
    DutConstructor base = [] { return std::make_unique<Plain>(); };
    EXPECT_THROW(inject_fault(base, Mutation::SwapEdgeSelect)(), UnknownMutant);
}

TEST(Mutants, InstallOverridesDutType) {
    auto f = uvm::Factory::with_defaults();
    install_mutant(f, Mutation::DropFinalEdge);
    EXPECT_EQ(f.dut_type(), "spi_master_core_m3");
    EXPECT_EQ(f.create_dut()->core()->mutation, Mutation::DropFinalEdge);
    install_mutant(f, Mutation::SwapEdgeSelect);  // replaces, never stacks
    EXPECT_EQ(f.create_dut()->core()->mutation, Mutation::SwapEdgeSelect);
}

TEST(Mutants, ExactlyOneMutationPerBuild) {
    for (MutantId m : kAllMutants) {
        auto f = uvm::Factory::with_defaults();
        install_mutant(f, m);
        EXPECT_EQ(f.create_dut()->core()->mutation, m);
    }
}

TEST(Mutants, EachDetectedWithin200Items) {
    for (MutantId m : kAllMutants) {
        const auto rec = runs::record({{}, 1, 200, m, false});
        EXPECT_FALSE(rec.report.clean()) << mutant_id(m);
        ASSERT_TRUE(rec.report.first_detection().has_value()) << mutant_id(m);
        EXPECT_LT(*rec.report.first_detection(), 200u);
    }
}

TEST(Mutants, UnmutatedNeverFlagged) {
    const auto rec = runs::record({{}, 1, 1000, Mutation::None, false});
    EXPECT_TRUE(rec.report.clean());
    EXPECT_FALSE(rec.report.first_detection().has_value());
}

TEST(Mutants, SlowDividerTripsHalfPeriodRule) {
    // 3 bits at divider 3: 4 + 5*5 = 29 clocks of edges, drive bound 32
    const auto rec = runs::record({{runs::item(0x5, 0x3, 3, false, false, false, 3)}, 1, 0,
                                   Mutation::DividerReloadOff});
    ASSERT_TRUE(has_rule(rec.report.violations, Rule::HalfPeriod));
    const auto first = std::find_if(rec.report.violations.begin(), rec.report.violations.end(),
                                    [](const Violation& v) { return v.rule == Rule::HalfPeriod; });
    EXPECT_EQ(first->frame, 0u);
    EXPECT_EQ(rec.report.drive_timeouts, 0u);
    const auto recs = decode_trace(rec.trace);
    ASSERT_FALSE(recs.empty());
    // the first wait is loaded at start, every reload is one clock long
    const auto& hp = recs[0].half_periods;
    ASSERT_EQ(hp.size(), 6u);
    EXPECT_EQ(hp[0], 3u + 1u);
    for (std::size_t i = 1; i < hp.size(); ++i) EXPECT_EQ(hp[i], 3u + 2u) << i;
}

TEST(Mutants, SlowDividerOverrunsDriveBound) {
    const auto rec = runs::record({{runs::item(0xA5, 0x3C, 8, false, false, false, 3)}, 1, 0,
                                   Mutation::DividerReloadOff});
    EXPECT_EQ(rec.report.drive_timeouts, 1u);
    EXPECT_TRUE(has_field(rec.report.mismatches, "drive"));
}

TEST(Mutants, DroppedEdgeTripsEdgeCount) {
    const auto rec = runs::record({{runs::item(0xA5, 0x3C, 8, false, false, false, 1)}, 1, 0,
                                   Mutation::DropFinalEdge});
    EXPECT_TRUE(has_rule(rec.report.violations, Rule::EdgeCount));
    const auto recs = decode_trace(rec.trace);
    ASSERT_FALSE(recs.empty());
    EXPECT_EQ(recs[0].edge_count, 15u);
}

TEST(Mutants, IgnoredBitOrderShowsOnAsymmetricPayload) {
    // 0xA5 mirrors onto itself in 8 bits; in 16 it does not
    const auto rec = runs::record({{runs::item(0xA5, 0x3C, 16, false, false, true, 0)}, 1, 0,
                                   Mutation::IgnoreLsbFirst});
    EXPECT_FALSE(rec.report.mismatches.empty());
    EXPECT_TRUE(has_field(rec.report.mismatches, "master_received") || has_field(rec.report.mismatches, "mosi"));
}

TEST(Mutants, IgnoredBitOrderHidesBehindPalindromes) {
    // 0x5A and 0x81 read the same in both bit orders
    const auto rec = runs::record({{runs::item(0x5A, 0x81, 8, false, false, true, 0)}, 1, 0,
                                   Mutation::IgnoreLsbFirst});
    EXPECT_TRUE(rec.report.clean());
}

TEST(Mutants, SwappedEdgesCaughtOnAsymmetricMode) {
    const auto rec = runs::record({{runs::item(0xA5, 0x3C, 8, true, false, false, 1)}, 1, 0,
                                   Mutation::SwapEdgeSelect});
    EXPECT_FALSE(rec.report.clean());
}

TEST(Mutants, EarlyLatchCaught) {
    const auto rec = runs::record({{runs::item(0xA5, 0x3C, 8, true, false, false, 1)}, 1, 0,
                                   Mutation::EarlyRxLatch});
    EXPECT_TRUE(has_field(rec.report.mismatches, "master_received"));
}

TEST(Mutants, EarlyLatchInvisibleWhenEdgesCoincide) {
    // shift and sample on the same edge: MISO has not moved since the previous one
    for (bool neg : {false, true}) {
        const auto rec = runs::record({{runs::item(0xA5, 0x3C, 8, neg, neg, false, 1)}, 1, 0,
                                       Mutation::EarlyRxLatch});
        EXPECT_TRUE(rec.report.clean()) << neg;
    }
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wbspi/coverage.hpp"
#include "wbspi/mutants.hpp"
#include "wbspi/uvm/environment.hpp"

namespace wbspi {

enum class TestKind : std::uint8_t { Smoke, RandomRegression, DividerSweep, MutationSuite };

std::string_view test_name(TestKind t);
/// Throws ConfigError.
TestKind parse_test(std::string_view name);

struct RunConfig {
    TestKind test = TestKind::Smoke;
    std::uint64_t seed = 1;
    /// Unset means the test's own default: smoke 10, random_regression
    /// 1000, divider_sweep 4 per divider, mutation_suite 200 per mutant.
    std::optional<std::int64_t> num_items;
    std::vector<std::string> constraints;  // "KEY=LO..HI"
    std::optional<std::string> vcd_path;
    std::optional<std::string> report_path;
    std::int64_t parallel = 1;
    /// Run against a mutated core instead of the real one. Not valid
    /// for mutation_suite.
    std::optional<MutantId> mutant;
};

inline constexpr std::uint16_t kSweepDividers[] = {0, 1, 2, 7, 255};

/// Throws ConfigError naming the first bad field.
void validate(const RunConfig& config);

std::int64_t default_items(TestKind t);

/// Items for the divider sweep: for every swept divider, `per_divider`
/// char_len 8 transfers cycling through the four edge modes.
std::vector<SpiSequenceItem> sweep_items(std::uint64_t seed, std::size_t per_divider);

struct MutantResult {
    MutantId mutant = Mutation::None;
    bool detected = false;
    std::optional<std::size_t> first_detection;
    std::size_t mismatches = 0;
    std::size_t violations = 0;
};

/// Everything one seed produced.
struct SeedOutcome {
    std::uint64_t seed = 0;
    uvm::RunReport report;          // the main run (baseline for mutation_suite)
    std::vector<MutantResult> mutants;
    std::optional<std::string> vcd;  // when requested
    bool pass = false;
};

/// Runs one seed of the configured test in the calling thread.
SeedOutcome run_seed(const RunConfig& config, std::uint64_t seed);

struct RunResult {
    int exit_status = 0;  // 0 pass, 1 verification failure
    std::vector<SeedOutcome> seeds;
    CoverageModel coverage;  // bin-wise merge over seeds
    std::string text;
    nlohmann::ordered_json json;
    std::vector<std::string> files_written;
};

/// Validates, runs seed..seed+parallel-1 (one kernel per thread), merges
/// coverage and writes the requested VCD and JSON report files. With more
/// than one seed each VCD gets a ".seed<N>" suffix before its extension.
/// Throws ConfigError for configuration problems.
RunResult run(const RunConfig& config);

/// "out.vcd", 7 -> "out.seed7.vcd".
std::string seeded_path(const std::string& path, std::uint64_t seed);

/// Entry point shared by the executable and the tests. Returns the exit
/// status: 0 pass, 1 verification failure, 2 configuration error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wbspi

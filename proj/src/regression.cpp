#include "wbspi/regression.hpp"

#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "wbspi/errors.hpp"

namespace wbspi {

std::string_view test_name(TestKind t) {
    switch (t) {
        case TestKind::Smoke: return "smoke";
        case TestKind::RandomRegression: return "random_regression";
        case TestKind::DividerSweep: return "divider_sweep";
        case TestKind::MutationSuite: return "mutation_suite";
    }
    return "?";
}

TestKind parse_test(std::string_view name) {
    for (TestKind t : {TestKind::Smoke, TestKind::RandomRegression, TestKind::DividerSweep, TestKind::MutationSuite}) {
        if (test_name(t) == name) return t;
    }
    throw ConfigError("unknown test '" + std::string(name) +
                      "' (expected smoke, random_regression, divider_sweep or mutation_suite)");
}

std::int64_t default_items(TestKind t) {
    switch (t) {
        case TestKind::Smoke: return 10;
        case TestKind::RandomRegression: return 1000;
        case TestKind::DividerSweep: return 4;
        case TestKind::MutationSuite: return 200;
    }
    return 0;
}

void validate(const RunConfig& config) {
    if (config.num_items && *config.num_items < 0) throw ConfigError("num_items must be ≥ 0");
    if (config.parallel < 1) throw ConfigError("parallel must be ≥ 1");
    if (config.mutant && config.test == TestKind::MutationSuite) {
        throw ConfigError("--mutant does not combine with mutation_suite");
    }
    ConstraintSet cs = ConstraintSet::defaults(config.seed);
    for (const auto& c : config.constraints) apply_constraint_override(cs, c);
    cs.validate();
}

std::vector<SpiSequenceItem> sweep_items(std::uint64_t seed, std::size_t per_divider) {
    Rng rng = Rng::derive(seed, "divider_sweep");
    std::vector<SpiSequenceItem> items;
    for (std::uint16_t d : kSweepDividers) {
        for (std::size_t k = 0; k < per_divider; ++k) {
            SpiSequenceItem it;
            it.char_len = 8;
            it.divider = d;
            it.tx_neg = k & 1;
            it.rx_neg = (k >> 1) & 1;
            it.lsb_first = (k >> 2) & 1;
            it.master_payload = static_cast<std::uint32_t>(rng.uniform(0, 0xFF));
            it.slave_payload = static_cast<std::uint32_t>(rng.uniform(0, 0xFF));
            it.slave_index = static_cast<unsigned>(rng.uniform(0, 7));
            items.push_back(it);
        }
    }
    return items;
}

std::string seeded_path(const std::string& path, std::uint64_t seed) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    const std::string tag = ".seed" + std::to_string(seed);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash) || dot == slash + 1) {
        return path + tag;
    }
    return path.substr(0, dot) + tag + path.substr(dot);
}

namespace {

struct EnvRun {
    uvm::RunReport report;
    std::optional<std::string> vcd;
};

EnvRun run_env(uvm::EnvConfig cfg, std::size_t items, bool want_vcd) {
    cfg.record_waveform = want_vcd;
    auto tree = uvm::build_env(std::move(cfg));
    uvm::StopCondition stop;
    stop.items = items;
    auto outcome = uvm::run_phases(tree, stop);
    if (auto err = uvm::phase_order_error(outcome.trace)) throw Error("phase ordering broken: " + *err);
    EnvRun r{std::move(outcome.report), std::nullopt};
    if (want_vcd) r.vcd = tree.bench().waveform()->emit();
    return r;
}

bool all_items_pass(const uvm::RunReport& r, std::size_t items) {
    return r.clean() && r.drive_timeouts == 0 && r.items_checked == items && r.items_passed == items;
}

bool sweep_exact(const uvm::RunReport& r) {
    for (std::uint16_t d : kSweepDividers) {
        auto it = r.half_periods.find(d);
        if (it == r.half_periods.end() || it->second != std::set<std::uint32_t>{std::uint32_t{d} + 1u}) return false;
    }
    return true;
}

}  // namespace

SeedOutcome run_seed(const RunConfig& config, std::uint64_t seed) {
    const auto n = static_cast<std::size_t>(config.num_items.value_or(default_items(config.test)));
    const bool want_vcd = config.vcd_path.has_value();

    ConstraintSet cs = ConstraintSet::defaults(seed);
    if (config.test == TestKind::DividerSweep) {
        cs.set(Field::Divider, 0, 255);
        cs.pin(Field::CharLen, 8);
    }
    for (const auto& c : config.constraints) apply_constraint_override(cs, c);
    cs.validate();

    uvm::EnvConfig base;
    base.constraints = cs;
    if (config.mutant) install_mutant(base.factory, *config.mutant);

    SeedOutcome out;
    out.seed = seed;

    switch (config.test) {
        case TestKind::Smoke:
        case TestKind::RandomRegression: {
            auto r = run_env(base, n, want_vcd);
            out.report = std::move(r.report);
            out.vcd = std::move(r.vcd);
            out.pass = all_items_pass(out.report, n);
            break;
        }
        case TestKind::DividerSweep: {
            base.directed_items = sweep_items(seed, n);
            const std::size_t total = base.directed_items.size();
            auto r = run_env(base, total, want_vcd);
            out.report = std::move(r.report);
            out.vcd = std::move(r.vcd);
            out.pass = all_items_pass(out.report, total) && (total == 0 || sweep_exact(out.report));
            break;
        }
        case TestKind::MutationSuite: {
            auto r = run_env(base, n, want_vcd);
            out.report = std::move(r.report);
            out.vcd = std::move(r.vcd);
            bool all = true;
            for (MutantId m : kAllMutants) {
                uvm::EnvConfig cfg = base;
                install_mutant(cfg.factory, m);
                auto mr = run_env(cfg, n, false).report;
                MutantResult res;
                res.mutant = m;
                res.mismatches = mr.mismatches.size();
                res.violations = mr.violations.size();
                res.first_detection = mr.first_detection();
                res.detected = !mr.clean();
                all = all && res.detected;
                out.mutants.push_back(res);
            }
            out.pass = all && all_items_pass(out.report, n);
            break;
        }
    }
    return out;
}

namespace {

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

nlohmann::ordered_json mismatch_json(const Mismatch& m) {
    return {{"item", m.item}, {"field", m.field}, {"bit", m.bit}, {"detail", m.detail}};
}

void render_seed(const RunConfig& config, const SeedOutcome& s, std::string& t, nlohmann::ordered_json& j) {
    const auto& r = s.report;
    t += fmt("seed %llu: %zu/%zu items pass, %zu mismatches, %zu assertion violations, %zu drive timeouts, %llu wb clocks\n",
             static_cast<unsigned long long>(s.seed), r.items_passed, r.items_driven, r.mismatches.size(),
             r.violations.size(), r.drive_timeouts, static_cast<unsigned long long>(r.cycles));
    const std::size_t shown = 20;
    for (std::size_t i = 0; i < r.mismatches.size() && i < shown; ++i) {
        const auto& m = r.mismatches[i];
        t += "  mismatch item " + std::to_string(m.item) + " " + m.field +
             (m.bit >= 0 ? " bit " + std::to_string(m.bit) : std::string()) + ": " + m.detail + "\n";
    }
    for (std::size_t i = 0; i < r.violations.size() && i < shown; ++i) {
        const auto& v = r.violations[i];
        t += "  " + std::string(rule_id(v.rule)) + " " + std::string(rule_summary(v.rule)) + " @" +
             std::to_string(v.cycle) + " (transfer " + std::to_string(v.frame) + "): " + v.detail + "\n";
    }
    if (r.mismatches.size() > shown || r.violations.size() > shown) t += "  ...\n";

    j["seed"] = s.seed;
    j["pass"] = s.pass;
    j["dut"] = r.dut_type;
    j["items_driven"] = r.items_driven;
    j["items_checked"] = r.items_checked;
    j["items_passed"] = r.items_passed;
    j["drive_timeouts"] = r.drive_timeouts;
    j["transfers_observed"] = r.transfers_observed;
    j["cycles"] = r.cycles;
    auto mm = nlohmann::ordered_json::array();
    for (const auto& m : r.mismatches) mm.push_back(mismatch_json(m));
    j["mismatches"] = std::move(mm);
    j["violation_count"] = r.violations.size();

    if (config.test == TestKind::DividerSweep) {
        auto hp = nlohmann::ordered_json::array();
        for (std::uint16_t d : kSweepDividers) {
            std::vector<std::uint32_t> seen;
            if (auto it = r.half_periods.find(d); it != r.half_periods.end()) seen.assign(it->second.begin(), it->second.end());
            const bool ok = seen == std::vector<std::uint32_t>{std::uint32_t{d} + 1u};
            std::string list;
            for (auto v : seen) list += (list.empty() ? "" : ",") + std::to_string(v);
            t += fmt("  divider %3u: measured half-period {%s} wb clocks, expected %u  %s\n", unsigned{d}, list.c_str(),
                     unsigned{d} + 1u, ok ? "ok" : "MISMATCH");
            hp.push_back({{"divider", d}, {"expected", d + 1}, {"measured", seen}, {"ok", ok}});
        }
        j["half_periods"] = std::move(hp);
    }

    if (config.test == TestKind::MutationSuite) {
        auto ms = nlohmann::ordered_json::array();
        for (const auto& m : s.mutants) {
            std::string where = m.first_detection ? "first at item " + std::to_string(*m.first_detection) : "never";
            t += fmt("  %s %-32s %s (%zu mismatches, %zu violations, %s)\n", std::string(mutant_id(m.mutant)).c_str(),
                     std::string(mutant_summary(m.mutant)).c_str(), m.detected ? "detected" : "NOT DETECTED",
                     m.mismatches, m.violations, where.c_str());
            nlohmann::ordered_json e = {{"mutant", mutant_id(m.mutant)},
                                        {"detected", m.detected},
                                        {"mismatches", m.mismatches},
                                        {"violations", m.violations}};
            e["first_detection"] = m.first_detection ? nlohmann::ordered_json(*m.first_detection) : nullptr;
            ms.push_back(std::move(e));
        }
        j["mutants"] = std::move(ms);
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace

RunResult run(const RunConfig& config) {
    validate(config);
    const auto count = static_cast<std::size_t>(config.parallel);

    RunResult result;
    result.seeds.resize(count);
    std::vector<std::exception_ptr> errors(count);
    {
        // one kernel per seed, nothing shared
        std::vector<std::thread> workers;
        for (std::size_t i = 0; i < count; ++i) {
            workers.emplace_back([&, i] {
                try {
                    result.seeds[i] = run_seed(config, config.seed + i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        }
        for (auto& w : workers) w.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::vector<Violation> violations;
    bool pass = true;
    std::size_t items = 0;
    std::size_t passed = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& s = result.seeds[i];
        if (s.report.coverage) {
            if (i == 0) {
                result.coverage = *s.report.coverage;
            } else {
                result.coverage.merge(*s.report.coverage);
            }
        }
        violations.insert(violations.end(), s.report.violations.begin(), s.report.violations.end());
        pass = pass && s.pass;
        items += s.report.items_driven;
        passed += s.report.items_passed;
    }
    result.exit_status = pass ? 0 : 1;

    auto& j = result.json;
    j["test"] = test_name(config.test);
    j["seed"] = config.seed;
    j["parallel"] = config.parallel;
    if (config.mutant) j["mutant"] = mutant_id(*config.mutant);
    j["status"] = pass ? "pass" : "fail";
    j["items"] = items;
    j["items_passed"] = passed;
    auto runs = nlohmann::ordered_json::array();

    std::string& t = result.text;
    t += "test " + std::string(test_name(config.test));
    if (config.mutant) t += " against " + mutant_type_name(*config.mutant);
    t += "\n";
    for (const auto& s : result.seeds) {
        nlohmann::ordered_json rj;
        render_seed(config, s, t, rj);
        runs.push_back(std::move(rj));
    }
    j["runs"] = std::move(runs);

    const CoverageReport cov = report(result.coverage, violations);
    t += cov.text;
    for (auto& [k, v] : cov.json.items()) j[k] = v;
    t += fmt("result: %s (%zu/%zu items pass)\n", pass ? "PASS" : "FAIL", passed, items);

    if (config.vcd_path) {
        for (const auto& s : result.seeds) {
            const std::string path = count > 1 ? seeded_path(*config.vcd_path, s.seed) : *config.vcd_path;
            write_file(path, *s.vcd);
            result.files_written.push_back(path);
        }
    }
    if (config.report_path) {
        write_file(*config.report_path, j.dump(2) + "\n");
        result.files_written.push_back(*config.report_path);
    }
    return result;
}

}  // namespace wbspi

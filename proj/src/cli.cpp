#include <fstream>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "wbspi/errors.hpp"
#include "wbspi/regression.hpp"

namespace wbspi {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct FileSettings {
    std::map<std::string, std::string> scalars;
    std::vector<std::string> constraints;
};

// key = value per line; '#' starts a comment; "constraint" may repeat
FileSettings read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    FileSettings out;
    std::string line;
    for (int n = 1; std::getline(f, line); ++n) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(n) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        for (auto& c : key) {
            if (c == '-') c = '_';
        }
        if (key == "constraint") {
            out.constraints.push_back(value);
        } else if (key == "test" || key == "seed" || key == "num_items" || key == "vcd" || key == "report" ||
                   key == "parallel" || key == "mutant") {
            out.scalars[key] = value;
        } else {
            throw ConfigError(path + ":" + std::to_string(n) + ": unknown key '" + key + "'");
        }
    }
    return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T v{};
    if (!CLI::detail::lexical_cast(text, v)) throw ConfigError("bad value '" + text + "' for " + key);
    return v;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wishbone SPI master core regression runner", "wbspi"};
    app.require_subcommand(1);
    CLI::App* run_cmd = app.add_subcommand("run", "run one test");

    std::string test = "smoke";
    std::uint64_t seed = 1;
    std::int64_t num_items = 0;
    std::vector<std::string> constraints;
    std::string vcd;
    std::string report_path;
    std::int64_t parallel = 1;
    std::string config_path;
    std::string mutant;

    auto* o_test = run_cmd->add_option("--test", test, "smoke | random_regression | divider_sweep | mutation_suite");
    auto* o_seed = run_cmd->add_option("--seed", seed, "master seed");
    auto* o_items = run_cmd->add_option("--num-items", num_items, "items per run (test default when omitted)");
    run_cmd->add_option("--constraint", constraints, "KEY=LO..HI, repeatable")->allow_extra_args(false);
    auto* o_vcd = run_cmd->add_option("--vcd", vcd, "write the waveform here");
    auto* o_report = run_cmd->add_option("--report", report_path, "write the JSON report here");
    auto* o_parallel = run_cmd->add_option("--parallel", parallel, "number of seeds run side by side");
    run_cmd->add_option("--config", config_path, "key = value file; flags win");
    auto* o_mutant = run_cmd->add_option("--mutant", mutant, "run against a mutated core (M1..M5)");

    std::vector<const char*> argv{"wbspi"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            const FileSettings file = read_config(config_path);
            auto from_file = [&](const char* key, const CLI::Option* flag) -> const std::string* {
                if (flag->count() > 0) return nullptr;
                auto it = file.scalars.find(key);
                return it == file.scalars.end() ? nullptr : &it->second;
            };
            if (auto* v = from_file("test", o_test)) test = *v;
            if (auto* v = from_file("seed", o_seed)) seed = parse_number<std::uint64_t>("seed", *v);
            if (auto* v = from_file("num_items", o_items)) num_items = parse_number<std::int64_t>("num_items", *v);
            if (auto* v = from_file("vcd", o_vcd)) vcd = *v;
            if (auto* v = from_file("report", o_report)) report_path = *v;
            if (auto* v = from_file("mutant", o_mutant)) mutant = *v;
            if (auto* v = from_file("parallel", o_parallel)) parallel = parse_number<std::int64_t>("parallel", *v);
            // file constraints first so flags override the same field
            constraints.insert(constraints.begin(), file.constraints.begin(), file.constraints.end());
            if (file.scalars.contains("num_items") && o_items->count() == 0) cfg.num_items = num_items;
        }
        cfg.test = parse_test(test);
        cfg.seed = seed;
        if (o_items->count() > 0) cfg.num_items = num_items;
        cfg.constraints = constraints;
        if (!vcd.empty()) cfg.vcd_path = vcd;
        if (!report_path.empty()) cfg.report_path = report_path;
        cfg.parallel = parallel;
        if (!mutant.empty()) cfg.mutant = parse_mutant(mutant);

        const RunResult result = run(cfg);
        out << result.text;
        return result.exit_status;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownMutant& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownOverrideTarget& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "verification error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace wbspi

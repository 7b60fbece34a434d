#include "sgpic/config.hpp"
#include "sgpic/error.hpp"
#include "sgpic/output.hpp"
#include "sgpic/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>

using nlohmann::json;

namespace {

struct CommonOptions {
    std::optional<std::uint64_t> seed;
    int workers = 0;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
};

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw sgpic::ConfigError("cannot open config '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw sgpic::ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
}

sgpic::ScenarioConfig finish(json doc, const CommonOptions& opts)
{
    for (const auto& o : opts.overrides) {
        sgpic::apply_override(doc, o);
    }
    if (opts.seed) {
        doc["seed"] = *opts.seed;
    }
    return sgpic::config_from_json(doc);
}

void report(const sgpic::RunResult& r, const std::string& out_dir)
{
    std::cout << "steps recorded: " << r.energy.size() << ", wall " << r.wall_seconds << " s\n";
    for (const auto& f : r.fits) {
        if (f.fit) {
            std::cout << "fit " << f.name << ": rate " << f.fit->rate
                      << (f.fit->used_all_samples ? " (all samples)" : "") << '\n';
        } else {
            std::cout << "fit " << f.name << ": failed: " << f.error << '\n';
        }
    }
    std::cout << "outputs in " << out_dir << '\n';
}

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--seed", opts.seed, "Override the config seed");
    cmd->add_option("--workers", opts.workers, "Worker threads (0 = OpenMP default)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--out-dir", opts.out_dir, "Output directory");
    cmd->add_option("--override", opts.overrides, "Dotted key=value override")
        ->allow_extra_args(false);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stochastic-Galerkin particle solver for Vlasov-Poisson-BGK"};
    app.require_subcommand(1);
    CommonOptions opts;

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario from a JSON config");
    run_cmd->add_option("config", config_path, "Config file")->required();
    add_common(run_cmd, opts);

    std::string preset_name;
    std::string profile = "desk";
    bool print_only = false;
    auto* preset_cmd = app.add_subcommand("preset", "Run a named preset");
    preset_cmd->add_option("name", preset_name, "Preset name")
        ->required()
        ->check(CLI::IsMember(sgpic::preset_names()));
    preset_cmd->add_option("--profile", profile, "desk or paper")
        ->check(CLI::IsMember({"desk", "paper"}));
    preset_cmd->add_flag("--print-config", print_only, "Print the resolved config and exit");
    add_common(preset_cmd, opts);

    std::string converge_path;
    auto* converge_cmd = app.add_subcommand("converge", "Run the spectral convergence study");
    converge_cmd->add_option("config", converge_path, "Config file")->required();
    add_common(converge_cmd, opts);

    std::string csv_path;
    std::vector<double> window;
    std::string mode = "damping";
    auto* fit_cmd = app.add_subcommand("fit-rate", "Fit an exponential rate to energy.csv");
    fit_cmd->add_option("csv", csv_path, "energy.csv")->required();
    fit_cmd->add_option("--window", window, "Time window a,b")->delimiter(',')->expected(2)->required();
    fit_cmd->add_option("--mode", mode, "damping or growth")
        ->check(CLI::IsMember({"damping", "growth"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Command-line misuse is reported as a config error; help exits 0.
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (opts.workers > 0) {
            omp_set_num_threads(opts.workers);
        }
        if (*run_cmd) {
            const auto cfg = finish(read_json(config_path), opts);
            report(sgpic::run(cfg, opts.out_dir), opts.out_dir);
        } else if (*preset_cmd) {
            const auto cfg = finish(json{{"preset", preset_name}, {"profile", profile}}, opts);
            if (print_only) {
                std::cout << sgpic::config_to_json(cfg).dump(2) << '\n';
                return 0;
            }
            report(sgpic::run(cfg, opts.out_dir), opts.out_dir);
        } else if (*converge_cmd) {
            const auto cfg = finish(read_json(converge_path), opts);
            const auto result = sgpic::convergence_study(cfg, opts.out_dir);
            std::cout << "order,error\n";
            for (const auto& r : result.rows) {
                std::cout << r.order << ',' << sgpic::format_double(r.error) << '\n';
            }
        } else if (*fit_cmd) {
            const auto series = sgpic::read_energy_csv(csv_path);
            const auto fit = sgpic::fit_exponential_rate(
                series.times, series.mean, {window[0], window[1]},
                mode == "growth" ? sgpic::RateMode::Growth : sgpic::RateMode::Damping);
            std::cout << sgpic::format_double(fit.rate) << '\n';
        }
    } catch (const sgpic::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const sgpic::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

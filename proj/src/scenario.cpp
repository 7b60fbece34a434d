#include "sgpic/scenario.hpp"

#include "sgpic/error.hpp"
#include "sgpic/output.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>

namespace sgpic {

namespace {

ScenarioConfig checked(ScenarioConfig cfg)
{
    validate(cfg);
    cfg.initial.domain = cfg.domain;
    return cfg;
}

} // namespace

Simulation::Simulation(ScenarioConfig cfg)
    : cfg_(checked(std::move(cfg))), basis_(cfg_.basis()), grid_(cfg_.grid()),
      ens_(sample_initial(cfg_.initial, basis_, cfg_.particles, cfg_.seed)),
      settings_(cfg_.step_settings())
{
    if (cfg_.pool_mode == PoolMode::Initial && cfg_.nu > 0.0) {
        initial_pool_ = build_maxwellian_pool(ens_.count, cfg_.seed, 0);
    }
}

void Simulation::step()
{
    const std::string where = "step " + std::to_string(step_ + 1) + ": ";
    try {
        diag_.accumulate(strang_step(ens_, basis_, grid_, settings_, step_,
                                     initial_pool_ ? &*initial_pool_ : nullptr));
    } catch (const NumericalError& e) {
        throw NumericalError(where + e.what());
    } catch (const LogicError& e) {
        throw LogicError(where + e.what());
    } catch (const UsageError& e) {
        throw UsageError(where + e.what());
    }
    ++step_;
}

void Simulation::advance_to_step(std::uint64_t target)
{
    while (step_ < target) {
        step();
    }
}

std::vector<double> Simulation::node_energies() const
{
    return electric_energy(fields_at_all_nodes(ens_, basis_, grid_), grid_);
}

RunResult run(const ScenarioConfig& cfg, const std::filesystem::path& out_dir)
{
    const auto start = std::chrono::steady_clock::now();
    Simulation sim(cfg);
    const ScenarioConfig& c = sim.config();
    const bool write = !out_dir.empty();
    if (write) {
        std::filesystem::create_directories(out_dir);
    }

    std::map<std::uint64_t, double> dumps;
    for (const double t : c.output.dump_times) {
        dumps[static_cast<std::uint64_t>(std::llround(t / c.dt))] = t;
    }

    RunResult result;
    auto record = [&](const NodeFieldSet& fields) {
        result.energy.append(sim.time(), electric_energy(fields, sim.grid()), sim.basis());
        double drift = 0.0;
        for (std::size_t k = 0; k < fields.nodes; ++k) {
            double mass = 0.0;
            for (const double r : fields.rho_at(k)) {
                mass += r * sim.grid().dx();
            }
            const double expected = sim.ensemble().mass_at_node(sim.basis(), k);
            drift = std::max(drift, std::abs(mass - expected) / expected);
        }
        result.mass_drift.push_back(drift);
        result.mass_ledger.push_back(sim.ensemble().weight[0] *
                                     static_cast<double>(sim.ensemble().count));
    };
    auto dump = [&](const NodeFieldSet& fields, double t) {
        const MomentProfiles profiles =
            moment_profiles(compute_node_moments(sim.ensemble(), sim.basis(), sim.grid()),
                            sim.basis());
        if (write) {
            const std::string label = time_label(t);
            write_moments_csv(out_dir / ("moments_t" + label + ".csv"), sim.grid(), profiles);
            const PhaseSpaceDensity density = reconstruct_phase_space(
                sim.ensemble(), sim.basis(), sim.grid(), c.output.v_cells, c.v_range);
            write_density_csv(out_dir / ("density_mean_t" + label + ".csv"), density, false);
            write_density_csv(out_dir / ("density_variance_t" + label + ".csv"), density, true);
            if (c.output.field_dump) {
                write_field_csv(out_dir / ("field_t" + label + ".csv"), fields, sim.grid());
            }
            if (c.output.snapshot) {
                write_snapshot_csv(out_dir / ("snapshot_t" + label + ".csv"), sim.ensemble(),
                                   sim.basis().node_count());
            }
        }
        result.final_profiles = profiles;
    };
    auto observe = [&](bool force) {
        const std::uint64_t s = sim.step_index();
        const auto d = dumps.find(s);
        if (!force && s % c.output.energy_every != 0 && d == dumps.end()) {
            return;
        }
        const NodeFieldSet fields = fields_at_all_nodes(sim.ensemble(), sim.basis(), sim.grid());
        record(fields);
        if (d != dumps.end()) {
            dump(fields, d->second);
        }
    };

    const std::uint64_t n_steps = c.step_count();
    observe(true);
    while (sim.step_index() < n_steps) {
        sim.step();
        observe(sim.step_index() == n_steps);
    }
    result.diagnostics = sim.diagnostics();

    for (const auto& spec : c.fits) {
        FitOutcome outcome;
        outcome.name = spec.name;
        try {
            outcome.fit = fit_exponential_rate(result.energy.times, result.energy.mean,
                                               spec.window, spec.mode);
        } catch (const FittingError& e) {
            outcome.error = e.what();
        }
        result.fits.push_back(outcome);
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (write) {
        write_energy_csv(out_dir / "energy.csv", result.energy);
        std::ofstream log(out_dir / "run.json");
        log << run_log(c, result).dump(2) << '\n';
    }
    return result;
}

nlohmann::json run_log(const ScenarioConfig& cfg, const RunResult& result)
{
    using nlohmann::json;
    const StepDiagnostics& d = result.diagnostics;
    json fits = json::array();
    for (const auto& f : result.fits) {
        json entry{{"name", f.name}};
        if (f.fit) {
            entry["rate"] = f.fit->rate;
            entry["intercept"] = f.fit->intercept;
            entry["peaks"] = f.fit->peak_times.size();
            entry["used_all_samples"] = f.fit->used_all_samples;
        } else {
            entry["error"] = f.error;
        }
        fits.push_back(entry);
    }
    double max_drift = 0.0;
    for (const double m : result.mass_drift) {
        max_drift = std::max(max_drift, m);
    }
    return {
        {"config", config_to_json(cfg)},
        {"config_hash", config_hash(cfg)},
        {"seed", cfg.seed},
        {"nodes", cfg.node_count()},
        {"steps", cfg.step_count()},
        {"diagnostics",
         {{"replaced", d.replaced},
          {"clamped_temperatures", d.clamped_temperatures},
          {"boundary_events", d.boundary_events},
          {"multi_period_wraps", d.multi_period_wraps},
          {"collision_calls", d.collision_calls}}},
        {"mass_ledger",
         {{"times", result.energy.times},
          {"mass", result.mass_ledger},
          {"max_relative_deposit_drift", max_drift}}},
        {"fits", fits},
        {"wall_seconds", result.wall_seconds},
    };
}

ConvergenceResult convergence_study(const ScenarioConfig& cfg, const std::filesystem::path& out_dir)
{
    const ConvergenceSettings& cs = cfg.convergence;
    const auto steps = static_cast<std::uint64_t>(std::llround(cs.t_star / cfg.dt));

    ScenarioConfig ref_cfg = cfg;
    ref_cfg.order = cs.reference_order;
    ref_cfg.nodes = cs.reference_nodes;
    ref_cfg.t_final = cs.t_star;
    ref_cfg.output.dump_times.clear();
    Simulation ref(ref_cfg);
    ref.advance_to_step(steps);

    ConvergenceResult out;
    out.reference_order = cs.reference_order;
    out.reference_nodes = ref.basis().node_count();
    out.reference_energy = ref.node_energies();
    const auto points = ref.basis().nodes();
    const auto weights = ref.basis().weights();

    for (const int m : cs.orders) {
        ScenarioConfig c = ref_cfg;
        c.order = m;
        c.nodes = 0;
        Simulation sim(c);
        if (sim.ensemble().seed != ref.ensemble().seed) {
            throw LogicError("convergence: order " + std::to_string(m) +
                             " does not share the reference seed");
        }
        sim.advance_to_step(steps);
        const auto e = electric_energy_at_points(sim.ensemble(), sim.basis(), sim.grid(), points);
        double s = 0.0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            const double diff = e[k] - out.reference_energy[k];
            s += weights[k] * diff * diff;
        }
        out.rows.push_back({m, std::sqrt(s)});
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream csv(out_dir / "convergence.csv");
        csv << "order,error\n";
        for (const auto& r : out.rows) {
            csv << r.order << ',' << format_double(r.error) << '\n';
        }
        std::ofstream log(out_dir / "run.json");
        log << nlohmann::json{{"config", config_to_json(cfg)},
                              {"config_hash", config_hash(cfg)},
                              {"seed", cfg.seed},
                              {"reference_order", out.reference_order},
                              {"reference_nodes", out.reference_nodes}}
                   .dump(2)
            << '\n';
    }
    return out;
}

} // namespace sgpic

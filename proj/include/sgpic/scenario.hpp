#pragma once

#include "sgpic/config.hpp"
#include "sgpic/observables.hpp"
#include "sgpic/transport.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sgpic {

/// One run's evolving state: basis, grid and ensemble plus the step counter.
class Simulation {
public:
    explicit Simulation(ScenarioConfig cfg);

    /// Advance one splitting step. Errors are rethrown with the step index.
    void step();
    void advance_to_step(std::uint64_t target);

    double time() const { return static_cast<double>(step_) * cfg_.dt; }
    std::uint64_t step_index() const { return step_; }

    /// Field energy at every quadrature node for the current state.
    std::vector<double> node_energies() const;

    const ScenarioConfig& config() const { return cfg_; }
    const GpcBasis& basis() const { return basis_; }
    const SpatialGrid& grid() const { return grid_; }
    const ChaosEnsemble& ensemble() const { return ens_; }
    ChaosEnsemble& ensemble() { return ens_; }
    const StepDiagnostics& diagnostics() const { return diag_; }

private:
    ScenarioConfig cfg_;
    GpcBasis basis_;
    SpatialGrid grid_;
    ChaosEnsemble ens_;
    StepSettings settings_;
    std::optional<MaxwellianPool> initial_pool_;
    StepDiagnostics diag_;
    std::uint64_t step_ = 0;
};

struct FitOutcome {
    std::string name;
    std::optional<RateFit> fit;
    std::string error;
};

struct RunResult {
    EnergyTimeSeries energy;
    StepDiagnostics diagnostics;
    std::vector<FitOutcome> fits;
    /// Per recorded time: max over nodes of |sum_l rho dx - weight(z_k) N| / (weight(z_k) N).
    std::vector<double> mass_drift;
    /// weight(z) N evaluated at the mean coefficient, per recorded time.
    std::vector<double> mass_ledger;
    /// Moment profiles at the last dump time (empty if none).
    std::optional<MomentProfiles> final_profiles;
    double wall_seconds = 0.0;
};

/// Run to t_final. With a non-empty out_dir, write energy.csv, the moment,
/// density and optional field/snapshot dumps at the configured times, and
/// run.json.
RunResult run(const ScenarioConfig& cfg, const std::filesystem::path& out_dir = {});

/// run.json contents for a finished run.
nlohmann::json run_log(const ScenarioConfig& cfg, const RunResult& result);

struct ConvergenceRow {
    int order = 0;
    double error = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    int reference_order = 0;
    std::size_t reference_nodes = 0;
    std::vector<double> reference_energy;
};

/// Run every order in cfg.convergence.orders and the reference order to
/// t_star with identical draws, then compare the field energy at the
/// reference rule's nodes. Writes convergence.csv when out_dir is set.
ConvergenceResult convergence_study(const ScenarioConfig& cfg,
                                    const std::filesystem::path& out_dir = {});

} // namespace sgpic

#pragma once

#include "sgpic/gpc.hpp"
#include "sgpic/grid.hpp"
#include "sgpic/observables.hpp"
#include "sgpic/particles.hpp"
#include "sgpic/transport.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sgpic {

struct OutputSettings {
    /// Record the field energy every this many steps (step 0 always recorded).
    std::size_t energy_every = 1;
    /// Times at which moments and phase-space density are dumped.
    std::vector<double> dump_times;
    std::size_t v_cells = 200;
    bool field_dump = false;
    bool snapshot = false;
};

struct FitSpec {
    std::string name;
    Interval window;
    RateMode mode = RateMode::Damping;
};

struct ConvergenceSettings {
    std::vector<int> orders{1, 2, 3, 4, 5, 6, 7, 8};
    int reference_order = 12;
    /// 0 selects the default rule 2(M_ref + 1).
    int reference_nodes = 0;
    double t_star = 1.0;
};

/// Complete description of one run.
struct ScenarioConfig {
    std::string preset = "custom";
    std::string profile = "desk";

    std::size_t particles = 0;
    int order = 0;
    /// 0 selects the default rule 2(M + 1).
    int nodes = 0;
    int cells = 0;
    double dt = 0.0;
    double t_final = 0.0;
    double nu = 0.0;

    Interval domain{0.0, 0.0};
    Interval v_range{0.0, 0.0};
    Interval support{0.0, 1.0};
    ParticleBoundary particle_bc = ParticleBoundary::Periodic;
    FieldBoundary field_bc = FieldBoundary::Periodic;
    Shape shape = Shape::TopHat;
    InitialCondition initial;
    std::uint64_t seed = 0;

    Splitting splitting = Splitting::Strang;
    PoolMode pool_mode = PoolMode::PerStep;
    CollisionRescale collision_rescale = CollisionRescale::Global;
    ReflectRule reflect_rule = ReflectRule::Fold;
    PeriodicRule periodic_rule = PeriodicRule::Shift;
    bool suppress_field = false;

    OutputSettings output;
    std::vector<FitSpec> fits;
    ConvergenceSettings convergence;

    int node_count() const { return nodes > 0 ? nodes : 2 * (order + 1); }
    /// round(t_final / dt).
    std::uint64_t step_count() const;
    StepSettings step_settings() const;
    GpcBasis basis() const;
    SpatialGrid grid() const;
};

std::vector<std::string> preset_names();

/// Preset defaults for `profile` ("desk" or "paper").
ScenarioConfig preset_config(const std::string& name, const std::string& profile = "desk");

/// Build a config from JSON. A non-custom "preset" key seeds the defaults and
/// the remaining keys override them. Unknown keys and missing required
/// fields raise ConfigError with the offending field names.
ScenarioConfig config_from_json(const nlohmann::json& doc);

nlohmann::json config_to_json(const ScenarioConfig& cfg);

ScenarioConfig load_config(const std::filesystem::path& path);

/// Apply "a.b.c=value" to a JSON document. The value is parsed as JSON when
/// possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Throws ConfigError on any violated invariant.
void validate(const ScenarioConfig& cfg);

/// 64-bit FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

} // namespace sgpic

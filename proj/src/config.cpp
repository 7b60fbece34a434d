#include "sgpic/config.hpp"

#include "sgpic/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace sgpic {

using nlohmann::json;

std::uint64_t ScenarioConfig::step_count() const
{
    return static_cast<std::uint64_t>(std::llround(t_final / dt));
}

StepSettings ScenarioConfig::step_settings() const
{
    StepSettings s;
    s.dt = dt;
    s.nu = nu;
    s.boundary = particle_bc;
    s.reflect_rule = reflect_rule;
    s.periodic_rule = periodic_rule;
    s.splitting = splitting;
    s.pool_mode = pool_mode;
    s.collision_rescale = collision_rescale;
    s.suppress_field = suppress_field;
    s.seed = seed;
    return s;
}

GpcBasis ScenarioConfig::basis() const
{
    return GpcBasis(order, support, node_count());
}

SpatialGrid ScenarioConfig::grid() const
{
    return SpatialGrid(domain, cells, field_bc, shape);
}

namespace {

template <class E>
using NameTable = std::vector<std::pair<E, std::string>>;

const NameTable<ParticleBoundary> particle_bc_names{
    {ParticleBoundary::Periodic, "periodic"}, {ParticleBoundary::Reflecting, "reflecting"}};
const NameTable<FieldBoundary> field_bc_names{{FieldBoundary::Periodic, "periodic"},
                                              {FieldBoundary::DirichletZero, "dirichlet"}};
const NameTable<Splitting> splitting_names{{Splitting::Strang, "strang"}, {Splitting::Lie, "lie"}};
const NameTable<PoolMode> pool_names{{PoolMode::PerStep, "per-step"}, {PoolMode::Initial, "initial"}};
const NameTable<ReflectRule> reflect_names{{ReflectRule::Fold, "fold"},
                                           {ReflectRule::Literal, "literal"}};
const NameTable<PeriodicRule> periodic_names{{PeriodicRule::Shift, "shift"},
                                             {PeriodicRule::NodeWrap, "node-wrap"}};
const NameTable<CollisionRescale> rescale_names{{CollisionRescale::Global, "global"},
                                                {CollisionRescale::Cell, "cell"}};
const NameTable<Shape> shape_names{{Shape::TopHat, "top-hat"}, {Shape::Linear, "linear"}};
const NameTable<InitialKind> kind_names{{InitialKind::PerturbedMaxwellian, "perturbed-maxwellian"},
                                        {InitialKind::TwoStream, "two-stream"},
                                        {InitialKind::SodRiemann, "sod-riemann"},
                                        {InitialKind::GaussianBump, "gaussian-bump"}};
const NameTable<SamplingMode> sampling_names{{SamplingMode::Random, "random"},
                                             {SamplingMode::Quiet, "quiet"}};
const NameTable<RateMode> rate_names{{RateMode::Damping, "damping"}, {RateMode::Growth, "growth"}};

template <class E>
std::string name_of(const NameTable<E>& table, E value)
{
    for (const auto& [e, n] : table) {
        if (e == value) {
            return n;
        }
    }
    return "?";
}

template <class E>
E parse_enum(const NameTable<E>& table, const json& j, const std::string& field)
{
    if (!j.is_string()) {
        throw ConfigError("config: '" + field + "' must be a string");
    }
    const auto s = j.get<std::string>();
    std::string allowed;
    for (const auto& [e, n] : table) {
        if (n == s) {
            return e;
        }
        allowed += (allowed.empty() ? "" : ", ") + n;
    }
    throw ConfigError("config: '" + field + "' = '" + s + "' is not one of: " + allowed);
}

double get_real(const json& j, const std::string& field)
{
    if (!j.is_number()) {
        throw ConfigError("config: '" + field + "' must be a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError("config: '" + field + "' must be finite");
    }
    return v;
}

// Counts may be written as 1e5 in JSON; accept any non-negative integral value.
std::uint64_t get_count(const json& j, const std::string& field)
{
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0) {
            throw ConfigError("config: '" + field + "' must be non-negative");
        }
        return static_cast<std::uint64_t>(v);
    }
    const double v = get_real(j, field);
    if (v < 0.0 || v != std::floor(v) || v > 1.8e19) {
        throw ConfigError("config: '" + field + "' must be a non-negative integer");
    }
    return static_cast<std::uint64_t>(v);
}

int get_int(const json& j, const std::string& field)
{
    if (j.is_number_integer()) {
        return j.get<int>();
    }
    const double v = get_real(j, field);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError("config: '" + field + "' must be an integer");
    }
    return static_cast<int>(v);
}

bool get_bool(const json& j, const std::string& field)
{
    if (!j.is_boolean()) {
        throw ConfigError("config: '" + field + "' must be true or false");
    }
    return j.get<bool>();
}

Interval get_interval(const json& j, const std::string& field)
{
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError("config: '" + field + "' must be a two-element array [lo, hi]");
    }
    return {get_real(j[0], field + "[0]"), get_real(j[1], field + "[1]")};
}

// An object updates only the coefficients it names; a number sets a
// deterministic law.
AffineLaw get_affine(const json& j, const std::string& field, AffineLaw law)
{
    if (j.is_number()) {
        return {get_real(j, field), 0.0};
    }
    if (!j.is_object()) {
        throw ConfigError("config: '" + field + "' must be a number or {\"a\": .., \"b\": ..}");
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "a") {
            law.a = get_real(value, field + ".a");
        } else if (key == "b") {
            law.b = get_real(value, field + ".b");
        } else {
            throw ConfigError("config: unknown key '" + field + "." + key + "'");
        }
    }
    return law;
}

json affine_json(AffineLaw law)
{
    return {{"a", law.a}, {"b", law.b}};
}

json interval_json(Interval i)
{
    return json::array({i.lo, i.hi});
}

void parse_initial(const json& j, InitialCondition& ic)
{
    if (!j.is_object()) {
        throw ConfigError("config: 'initial' must be an object");
    }
    for (const auto& [key, value] : j.items()) {
        const std::string f = "initial." + key;
        if (key == "kind") {
            ic.kind = parse_enum(kind_names, value, f);
        } else if (key == "wave_number") {
            ic.wave_number = get_real(value, f);
        } else if (key == "amplitude") {
            ic.amplitude = get_affine(value, f, ic.amplitude);
        } else if (key == "temperature") {
            ic.temperature = get_affine(value, f, ic.temperature);
        } else if (key == "drift") {
            ic.drift = get_real(value, f);
        } else if (key == "interface") {
            ic.interface = get_affine(value, f, ic.interface);
        } else if (key == "rho_left") {
            ic.rho_left = get_real(value, f);
        } else if (key == "rho_right") {
            ic.rho_right = get_real(value, f);
        } else if (key == "temperature_left") {
            ic.temperature_left = get_affine(value, f, ic.temperature_left);
        } else if (key == "temperature_right") {
            ic.temperature_right = get_affine(value, f, ic.temperature_right);
        } else if (key == "bump_center") {
            ic.bump_center = get_real(value, f);
        } else if (key == "sampling") {
            ic.sampling = parse_enum(sampling_names, value, f);
        } else {
            throw ConfigError("config: unknown key '" + f + "'");
        }
    }
}

void parse_output(const json& j, OutputSettings& out)
{
    if (!j.is_object()) {
        throw ConfigError("config: 'output' must be an object");
    }
    for (const auto& [key, value] : j.items()) {
        const std::string f = "output." + key;
        if (key == "energy_every") {
            out.energy_every = get_count(value, f);
        } else if (key == "dump_times") {
            if (!value.is_array()) {
                throw ConfigError("config: '" + f + "' must be an array");
            }
            out.dump_times.clear();
            for (const auto& t : value) {
                out.dump_times.push_back(get_real(t, f));
            }
        } else if (key == "v_cells") {
            out.v_cells = get_count(value, f);
        } else if (key == "field_dump") {
            out.field_dump = get_bool(value, f);
        } else if (key == "snapshot") {
            out.snapshot = get_bool(value, f);
        } else {
            throw ConfigError("config: unknown key '" + f + "'");
        }
    }
}

std::vector<FitSpec> parse_fits(const json& j)
{
    if (!j.is_array()) {
        throw ConfigError("config: 'fits' must be an array");
    }
    std::vector<FitSpec> fits;
    for (std::size_t n = 0; n < j.size(); ++n) {
        const std::string base = "fits[" + std::to_string(n) + "]";
        if (!j[n].is_object()) {
            throw ConfigError("config: '" + base + "' must be an object");
        }
        FitSpec spec;
        spec.name = "fit" + std::to_string(n);
        bool has_window = false;
        for (const auto& [key, value] : j[n].items()) {
            const std::string f = base + "." + key;
            if (key == "name") {
                if (!value.is_string()) {
                    throw ConfigError("config: '" + f + "' must be a string");
                }
                spec.name = value.get<std::string>();
            } else if (key == "window") {
                spec.window = get_interval(value, f);
                has_window = true;
            } else if (key == "mode") {
                spec.mode = parse_enum(rate_names, value, f);
            } else {
                throw ConfigError("config: unknown key '" + f + "'");
            }
        }
        if (!has_window) {
            throw ConfigError("config: '" + base + ".window' is required");
        }
        fits.push_back(spec);
    }
    return fits;
}

void parse_convergence(const json& j, ConvergenceSettings& c)
{
    if (!j.is_object()) {
        throw ConfigError("config: 'convergence' must be an object");
    }
    for (const auto& [key, value] : j.items()) {
        const std::string f = "convergence." + key;
        if (key == "orders") {
            if (!value.is_array()) {
                throw ConfigError("config: '" + f + "' must be an array");
            }
            c.orders.clear();
            for (const auto& m : value) {
                c.orders.push_back(get_int(m, f));
            }
        } else if (key == "reference_order") {
            c.reference_order = get_int(value, f);
        } else if (key == "reference_nodes") {
            c.reference_nodes = get_int(value, f);
        } else if (key == "t_star") {
            c.t_star = get_real(value, f);
        } else {
            throw ConfigError("config: unknown key '" + f + "'");
        }
    }
}

ScenarioConfig periodic_base(double wave_number)
{
    ScenarioConfig c;
    c.domain = {0.0, 2.0 * std::numbers::pi / wave_number};
    c.v_range = {-6.0, 6.0};
    c.cells = 100;
    c.dt = 0.1;
    c.particle_bc = ParticleBoundary::Periodic;
    c.field_bc = FieldBoundary::Periodic;
    c.initial.domain = c.domain;
    c.initial.wave_number = wave_number;
    c.initial.temperature = {1.0, 0.0};
    c.seed = 20240607;
    return c;
}

ScenarioConfig sod_base()
{
    ScenarioConfig c;
    c.domain = {0.0, 1.0};
    c.v_range = {-10.0, 10.0};
    c.cells = 100;
    c.dt = 0.01;
    c.t_final = 0.15;
    c.nu = 1e3;
    c.particle_bc = ParticleBoundary::Reflecting;
    c.field_bc = FieldBoundary::DirichletZero;
    // With nu*dt >> 1 every particle is resampled each half step; a global pool
    // leaves multiplicative per-cell temperature noise that swamps the profile.
    c.collision_rescale = CollisionRescale::Cell;
    c.initial.kind = InitialKind::SodRiemann;
    c.initial.domain = c.domain;
    c.initial.rho_left = 1.0;
    c.initial.rho_right = 0.125;
    c.initial.interface = {0.5, 0.0};
    c.initial.temperature_left = {1.0, 0.0};
    c.initial.temperature_right = {0.8, 0.0};
    c.output.dump_times = {0.15};
    c.seed = 20240607;
    return c;
}

void apply_profile(ScenarioConfig& c, const std::string& profile, std::size_t desk_n,
                   std::size_t paper_n)
{
    if (profile == "desk") {
        c.particles = desk_n;
        c.order = 3;
        c.nodes = 8;
        c.initial.sampling = SamplingMode::Quiet;
    } else if (profile == "paper") {
        c.particles = paper_n;
        c.order = 5;
        c.nodes = 12;
        c.initial.sampling = SamplingMode::Random;
    } else {
        throw ConfigError("config: unknown profile '" + profile + "' (desk, paper)");
    }
    c.profile = profile;
}

bool is_periodic_preset(const std::string& p)
{
    return p == "landau-linear" || p == "landau-nonlinear" || p == "two-stream-linear" ||
           p == "two-stream-nonlinear" || p == "convergence-study";
}

bool is_sod_preset(const std::string& p)
{
    return p == "sod-temperature" || p == "sod-interface";
}

bool has_path(const json& doc, std::initializer_list<const char*> path)
{
    const json* node = &doc;
    for (const char* key : path) {
        if (!node->is_object() || !node->contains(key)) {
            return false;
        }
        node = &(*node)[key];
    }
    return true;
}

} // namespace

std::vector<std::string> preset_names()
{
    return {"landau-linear",   "landau-nonlinear", "two-stream-linear", "two-stream-nonlinear",
            "sod-temperature", "sod-interface",    "convergence-study", "custom"};
}

ScenarioConfig preset_config(const std::string& name, const std::string& profile)
{
    ScenarioConfig c;
    if (name == "landau-linear") {
        c = periodic_base(0.5);
        c.initial.amplitude = {0.05, 0.1};
        c.t_final = 30.0;
        apply_profile(c, profile, 100000, 10000000);
        c.output.dump_times = {0.0, 30.0};
        c.fits = {{"damping", {0.0, 30.0}, RateMode::Damping}};
    } else if (name == "landau-nonlinear") {
        c = periodic_base(0.5);
        c.initial.amplitude = {0.4, 0.6};
        c.t_final = 50.0;
        apply_profile(c, profile, 100000, 50000000);
        c.output.dump_times = {10.0, 30.0, 50.0};
        c.fits = {{"damping", {0.0, 15.0}, RateMode::Damping},
                  {"growth", {20.0, 40.0}, RateMode::Growth}};
    } else if (name == "two-stream-linear") {
        c = periodic_base(0.2);
        c.initial.kind = InitialKind::TwoStream;
        c.initial.drift = 2.4;
        c.initial.amplitude = {3e-3, 4e-3};
        c.t_final = 50.0;
        apply_profile(c, profile, 200000, 50000000);
        c.output.dump_times = {0.0, 20.0, 50.0};
        // Below N ~ 1e6 the growing mode emerges from the noise floor near t = 8.
        c.fits = {{"growth", {10.0, 25.0}, RateMode::Growth}};
    } else if (name == "two-stream-nonlinear") {
        c = periodic_base(2.0 / 13.0);
        c.initial.kind = InitialKind::TwoStream;
        c.initial.temperature = {0.3, 0.0};
        c.initial.drift = 0.99;
        c.initial.amplitude = {0.04, 0.02};
        c.t_final = 20.0;
        apply_profile(c, profile, 200000, 50000000);
        c.output.dump_times = {0.0, 15.0, 20.0};
    } else if (name == "sod-temperature") {
        c = sod_base();
        c.initial.temperature_left = {1.0, 0.25};
        c.initial.temperature_right = {0.8, 0.25};
        apply_profile(c, profile, 200000, 10000000);
    } else if (name == "sod-interface") {
        c = sod_base();
        c.initial.interface = {0.45, 0.1};
        apply_profile(c, profile, 200000, 10000000);
    } else if (name == "convergence-study") {
        c = periodic_base(0.5);
        c.initial.kind = InitialKind::GaussianBump;
        c.initial.bump_center = 6.0;
        c.initial.temperature = {0.8, 0.4};
        c.t_final = 1.0;
        apply_profile(c, profile, 100000, 1000000);
        c.initial.sampling = SamplingMode::Random;
        // Top-hat shapes make the kick integrand piecewise constant in z.
        c.shape = Shape::Linear;
        c.convergence.reference_order = profile == "paper" ? 30 : 12;
    } else if (name == "custom") {
        c.profile = profile;
    } else {
        throw ConfigError("config: unknown preset '" + name + "'");
    }
    c.preset = name;
    return c;
}

ScenarioConfig config_from_json(const json& doc)
{
    if (!doc.is_object()) {
        throw ConfigError("config: document must be a JSON object");
    }
    std::string preset = "custom";
    std::string profile = "desk";
    if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) {
            throw ConfigError("config: 'preset' must be a string");
        }
        preset = doc["preset"].get<std::string>();
    }
    if (doc.contains("profile")) {
        if (!doc["profile"].is_string()) {
            throw ConfigError("config: 'profile' must be a string");
        }
        profile = doc["profile"].get<std::string>();
    }
    ScenarioConfig c = preset_config(preset, profile);

    if (preset == "custom") {
        std::vector<std::string> missing;
        for (const char* key : {"particles", "order", "cells", "dt", "t_final", "domain",
                                "v_range", "initial"}) {
            if (!doc.contains(key)) {
                missing.emplace_back(key);
            }
        }
        if (doc.contains("initial") && doc["initial"].is_object() &&
            !doc["initial"].contains("kind")) {
            missing.emplace_back("initial.kind");
        }
        if (!missing.empty()) {
            std::string list;
            for (const auto& m : missing) {
                list += (list.empty() ? "" : ", ") + m;
            }
            throw ConfigError("config: custom run is missing required fields: " + list);
        }
    }

    for (const auto& [key, value] : doc.items()) {
        if (key == "preset" || key == "profile") {
            continue;
        } else if (key == "particles") {
            c.particles = get_count(value, key);
        } else if (key == "order") {
            c.order = get_int(value, key);
        } else if (key == "nodes") {
            c.nodes = get_int(value, key);
        } else if (key == "cells") {
            c.cells = get_int(value, key);
        } else if (key == "dt") {
            c.dt = get_real(value, key);
        } else if (key == "t_final") {
            c.t_final = get_real(value, key);
        } else if (key == "nu") {
            c.nu = get_real(value, key);
        } else if (key == "domain") {
            c.domain = get_interval(value, key);
        } else if (key == "v_range") {
            c.v_range = get_interval(value, key);
        } else if (key == "support") {
            c.support = get_interval(value, key);
        } else if (key == "particle_bc") {
            c.particle_bc = parse_enum(particle_bc_names, value, key);
        } else if (key == "field_bc") {
            c.field_bc = parse_enum(field_bc_names, value, key);
        } else if (key == "seed") {
            c.seed = get_count(value, key);
        } else if (key == "splitting") {
            c.splitting = parse_enum(splitting_names, value, key);
        } else if (key == "pool") {
            c.pool_mode = parse_enum(pool_names, value, key);
        } else if (key == "reflect_rule") {
            c.reflect_rule = parse_enum(reflect_names, value, key);
        } else if (key == "collision_rescale") {
            c.collision_rescale = parse_enum(rescale_names, value, key);
        } else if (key == "shape") {
            c.shape = parse_enum(shape_names, value, key);
        } else if (key == "periodic_rule") {
            c.periodic_rule = parse_enum(periodic_names, value, key);
        } else if (key == "suppress_field") {
            c.suppress_field = get_bool(value, key);
        } else if (key == "initial") {
            parse_initial(value, c.initial);
        } else if (key == "output") {
            parse_output(value, c.output);
        } else if (key == "fits") {
            c.fits = parse_fits(value);
        } else if (key == "convergence") {
            parse_convergence(value, c.convergence);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    c.initial.domain = c.domain;

    // The collisional nonlinear Landau runs use a smaller amplitude.
    if (preset == "landau-nonlinear" && c.nu > 0.0 && !has_path(doc, {"initial", "amplitude"})) {
        c.initial.amplitude = {0.2, 0.4};
    }

    validate(c);
    return c;
}

json config_to_json(const ScenarioConfig& c)
{
    const InitialCondition& ic = c.initial;
    json fits = json::array();
    for (const auto& f : c.fits) {
        fits.push_back({{"name", f.name},
                        {"window", interval_json(f.window)},
                        {"mode", name_of(rate_names, f.mode)}});
    }
    return {
        {"preset", c.preset},
        {"profile", c.profile},
        {"particles", c.particles},
        {"order", c.order},
        {"nodes", c.node_count()},
        {"cells", c.cells},
        {"dt", c.dt},
        {"t_final", c.t_final},
        {"nu", c.nu},
        {"domain", interval_json(c.domain)},
        {"v_range", interval_json(c.v_range)},
        {"support", interval_json(c.support)},
        {"particle_bc", name_of(particle_bc_names, c.particle_bc)},
        {"field_bc", name_of(field_bc_names, c.field_bc)},
        {"seed", c.seed},
        {"splitting", name_of(splitting_names, c.splitting)},
        {"pool", name_of(pool_names, c.pool_mode)},
        {"reflect_rule", name_of(reflect_names, c.reflect_rule)},
        {"periodic_rule", name_of(periodic_names, c.periodic_rule)},
        {"shape", name_of(shape_names, c.shape)},
        {"collision_rescale", name_of(rescale_names, c.collision_rescale)},
        {"suppress_field", c.suppress_field},
        {"initial",
         {{"kind", name_of(kind_names, ic.kind)},
          {"wave_number", ic.wave_number},
          {"amplitude", affine_json(ic.amplitude)},
          {"temperature", affine_json(ic.temperature)},
          {"drift", ic.drift},
          {"interface", affine_json(ic.interface)},
          {"rho_left", ic.rho_left},
          {"rho_right", ic.rho_right},
          {"temperature_left", affine_json(ic.temperature_left)},
          {"temperature_right", affine_json(ic.temperature_right)},
          {"bump_center", ic.bump_center},
          {"sampling", name_of(sampling_names, ic.sampling)}}},
        {"output",
         {{"energy_every", c.output.energy_every},
          {"dump_times", c.output.dump_times},
          {"v_cells", c.output.v_cells},
          {"field_dump", c.output.field_dump},
          {"snapshot", c.output.snapshot}}},
        {"fits", fits},
        {"convergence",
         {{"orders", c.convergence.orders},
          {"reference_order", c.convergence.reference_order},
          {"reference_nodes", c.convergence.reference_nodes},
          {"t_star", c.convergence.t_star}}},
    };
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

void apply_override(json& doc, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("config: override '" + assignment + "' must look like key=value");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) {
        value = text;
    }

    json* node = &doc;
    std::stringstream parts(path);
    std::string key;
    std::vector<std::string> keys;
    while (std::getline(parts, key, '.')) {
        if (key.empty()) {
            throw ConfigError("config: override path '" + path + "' has an empty component");
        }
        keys.push_back(key);
    }
    for (std::size_t n = 0; n + 1 < keys.size(); ++n) {
        if (!node->is_object()) {
            throw ConfigError("config: override path '" + path + "' crosses a non-object");
        }
        node = &(*node)[keys[n]];
        if (node->is_null()) {
            *node = json::object();
        }
    }
    if (!node->is_object()) {
        throw ConfigError("config: override path '" + path + "' crosses a non-object");
    }
    (*node)[keys.back()] = value;
}

void validate(const ScenarioConfig& c)
{
    if (c.particles < 1) {
        throw ConfigError("config: 'particles' must be >= 1");
    }
    if (c.order < 0) {
        throw ConfigError("config: 'order' must be >= 0");
    }
    if (c.nodes != 0 && c.nodes < c.order + 1) {
        throw ConfigError("config: 'nodes' must be 0 (default) or >= order+1");
    }
    if (c.cells < 1) {
        throw ConfigError("config: 'cells' must be >= 1");
    }
    if (!(c.dt > 0.0)) {
        throw ConfigError("config: 'dt' must be positive");
    }
    if (!(c.t_final >= c.dt * (1.0 - 1e-12))) {
        throw ConfigError("config: 't_final' must be >= dt");
    }
    if (!(c.nu >= 0.0)) {
        throw ConfigError("config: 'nu' must be non-negative");
    }
    if (!(c.domain.hi > c.domain.lo)) {
        throw ConfigError("config: 'domain' must have hi > lo");
    }
    if (!(c.v_range.hi > c.v_range.lo)) {
        throw ConfigError("config: 'v_range' must have hi > lo");
    }
    if (!(c.support.hi > c.support.lo)) {
        throw ConfigError("config: 'support' must have hi > lo");
    }
    if (c.output.energy_every < 1) {
        throw ConfigError("config: 'output.energy_every' must be >= 1");
    }
    if (c.output.v_cells < 1) {
        throw ConfigError("config: 'output.v_cells' must be >= 1");
    }
    for (const double t : c.output.dump_times) {
        if (t < 0.0 || t > c.t_final + 0.5 * c.dt) {
            throw ConfigError("config: 'output.dump_times' entries must lie in [0, t_final]");
        }
    }
    for (const auto& f : c.fits) {
        if (!(f.window.hi > f.window.lo)) {
            throw ConfigError("config: fit '" + f.name + "' window must have hi > lo");
        }
    }
    if (c.convergence.reference_order < 0) {
        throw ConfigError("config: 'convergence.reference_order' must be >= 0");
    }
    for (const int m : c.convergence.orders) {
        if (m < 0 || m > c.convergence.reference_order) {
            throw ConfigError("config: 'convergence.orders' must lie in [0, reference_order]");
        }
    }
    if (c.particle_bc == ParticleBoundary::Periodic && c.field_bc != FieldBoundary::Periodic) {
        throw ConfigError("config: periodic particles require a periodic field");
    }
    if (c.particle_bc == ParticleBoundary::Reflecting && c.field_bc == FieldBoundary::Periodic) {
        throw ConfigError("config: reflecting particles require a dirichlet field");
    }
    if (is_periodic_preset(c.preset) &&
        (c.particle_bc != ParticleBoundary::Periodic || c.field_bc != FieldBoundary::Periodic)) {
        throw ConfigError("config: preset '" + c.preset + "' requires periodic boundaries");
    }
    if (is_sod_preset(c.preset) && (c.particle_bc != ParticleBoundary::Reflecting ||
                                    c.field_bc != FieldBoundary::DirichletZero)) {
        throw ConfigError("config: preset '" + c.preset +
                          "' requires reflecting particles and a dirichlet field");
    }
    if (c.pool_mode == PoolMode::Initial && c.particles < 2 && c.nu > 0.0) {
        throw ConfigError("config: collisions need at least two particles");
    }
    c.initial.validate(c.support);
}

std::string config_hash(const ScenarioConfig& cfg)
{
    const std::string text = config_to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace sgpic

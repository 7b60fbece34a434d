#include "sgpic/config.hpp"
#include "sgpic/error.hpp"

#include <doctest.h>

#include <fstream>
#include <numbers>
#include <string>

using namespace sgpic;
using nlohmann::json;

namespace {

std::string config_error(const json& doc)
{
    try {
        config_from_json(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

json golden(const std::string& name)
{
    std::ifstream in(std::string(SGPIC_GOLDEN_DIR) + "/" + name);
    REQUIRE(in);
    return json::parse(in);
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("missing fields are listed by name")
{
    const auto msg = config_error(json{{"preset", "custom"}});
    for (const char* field : {"particles", "order", "cells", "dt", "t_final", "domain", "v_range", "initial"}) {
        CHECK(msg.find(field) != std::string::npos);
    }
    const auto partial = config_error(json{{"preset", "custom"}, {"particles", 10}, {"dt", 0.1}});
    CHECK(partial.find("particles") == std::string::npos);
    CHECK(partial.find("order") != std::string::npos);
}

TEST_CASE("unknown keys are rejected by name")
{
    CHECK(config_error(json{{"preset", "landau-linear"}, {"particels", 5}}).find("particels") !=
          std::string::npos);
    CHECK(config_error(json{{"preset", "landau-linear"}, {"initial", {{"amplitud", 0.1}}}})
              .find("amplitud") != std::string::npos);
    CHECK(config_error(json{{"preset", "landau-linear"}, {"shape", "spline"}}).find("shape") !=
          std::string::npos);
    CHECK_THROWS_AS(config_from_json(json::array()), ConfigError);
    CHECK_THROWS_AS(preset_config("no-such"), ConfigError);
    CHECK_THROWS_AS(preset_config("landau-linear", "huge"), ConfigError);
}

TEST_CASE("linear Landau preset")
{
    const auto c = preset_config("landau-linear");
    CHECK(c.particles == 100000);
    CHECK(c.order == 3);
    CHECK(c.node_count() == 8);
    CHECK(c.cells == 100);
    CHECK(c.dt == 0.1);
    CHECK(c.t_final == 30.0);
    CHECK(c.nu == 0.0);
    CHECK(c.initial.wave_number == 0.5);
    CHECK(c.initial.amplitude.a == 0.05);
    CHECK(c.initial.amplitude.b == 0.1);
    CHECK(c.domain.hi == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(c.step_count() == 300);
    REQUIRE(c.fits.size() == 1);
    CHECK(c.fits[0].mode == RateMode::Damping);
    CHECK(preset_config("landau-linear", "paper").particles > c.particles);
}

TEST_CASE("Sod presets")
{
    const auto t = preset_config("sod-temperature");
    CHECK(t.particle_bc == ParticleBoundary::Reflecting);
    CHECK(t.field_bc == FieldBoundary::DirichletZero);
    CHECK(t.collision_rescale == CollisionRescale::Cell);
    CHECK(t.nu == 1e3);
    const auto i = preset_config("sod-interface");
    CHECK(i.initial.interface.a == 0.45);
    CHECK(i.initial.interface.b == 0.1);
    CHECK(config_to_json(i) == golden("sod-interface.json"));
}

TEST_CASE("presets match the golden resolved config")
{
    CHECK(config_to_json(preset_config("landau-linear")) == golden("landau-linear.json"));
}

TEST_CASE("round trip through JSON")
{
    for (const auto& name : preset_names()) {
        if (name == "custom") {
            continue;
        }
        const auto c = preset_config(name);
        const auto doc = config_to_json(c);
        CHECK(config_to_json(config_from_json(doc)) == doc);
        CHECK(config_hash(config_from_json(doc)) == config_hash(c));
    }
    auto c = preset_config("landau-linear");
    const auto h = config_hash(c);
    CHECK(h.size() == 16);
    c.seed += 1;
    CHECK(config_hash(c) != h);
}

TEST_CASE("dotted overrides")
{
    json doc{{"preset", "landau-linear"}};
    apply_override(doc, "particles=5000");
    apply_override(doc, "initial.amplitude.b=0.2");
    apply_override(doc, "shape=linear");
    apply_override(doc, "output.dump_times=[1.5, 3]");
    const auto c = config_from_json(doc);
    CHECK(c.particles == 5000);
    CHECK(c.initial.amplitude.b == 0.2);
    CHECK(c.initial.amplitude.a == 0.05);
    CHECK(c.shape == Shape::Linear);
    CHECK(c.output.dump_times == std::vector<double>{1.5, 3.0});
    CHECK_THROWS_AS(apply_override(doc, "particles"), ConfigError);
    CHECK_THROWS_AS(apply_override(doc, "particles.x=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(doc, "a..b=1"), ConfigError);
}

TEST_CASE("validation")
{
    auto bad = [](auto mutate) {
        auto c = preset_config("landau-linear");
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(validate(bad([](auto& c) { c.dt = 0.0; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](auto& c) { c.t_final = 0.01; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](auto& c) { c.particles = 0; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](auto& c) { c.nodes = 3; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](auto& c) { c.nu = -1.0; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](auto& c) { c.output.dump_times = {31.0}; })), ConfigError);
    CHECK_THROWS_AS(validate(bad([](auto& c) { c.particle_bc = ParticleBoundary::Reflecting; })),
                    ConfigError);
    auto sod = preset_config("sod-temperature");
    sod.particle_bc = ParticleBoundary::Periodic;
    CHECK_THROWS_AS(validate(sod), ConfigError);
    validate(preset_config("two-stream-linear"));
}

}

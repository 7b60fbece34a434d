#include "sgpic/error.hpp"
#include "sgpic/output.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

using namespace sgpic;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "sgpic_output_test";
    fs::create_directories(dir);
    return dir / name;
}

std::vector<std::string> lines(const fs::path& p)
{
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

std::size_t columns(const std::string& line)
{
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

} // namespace

TEST_SUITE("output") {

TEST_CASE("number formatting round-trips")
{
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = dist(gen) * std::pow(10.0, i % 30 - 15);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(30.0) == "30");
}

TEST_CASE("time labels")
{
    CHECK(time_label(0.15) == "0.15");
    CHECK(time_label(30.0) == "30");
    CHECK(time_label(0.0) == "0");
    CHECK(time_label(0.1 + 0.2) == "0.3");
}

TEST_CASE("energy series round trip")
{
    const GpcBasis b(1, {0.0, 1.0}, 3);
    EnergyTimeSeries s;
    s.nodes = 3;
    s.append(0.0, std::vector<double>{0.1, 0.2, 0.30000000000000004}, b);
    s.append(0.1, std::vector<double>{1.0 / 3.0, 2.0 / 7.0, 1e-300}, b);
    const auto p = scratch("energy.csv");
    write_energy_csv(p, s);
    const auto l = lines(p);
    CHECK(l[0] == "t,mean_E,var_E,E_node0,E_node1,E_node2");
    const auto r = read_energy_csv(p);
    CHECK(r.nodes == 3);
    CHECK(r.times == s.times);
    CHECK(r.mean == s.mean);
    CHECK(r.variance == s.variance);
    CHECK(r.per_node == s.per_node);

    std::ofstream(scratch("broken.csv")) << "t,mean_E,var_E,E_node0\n0,1,x,2\n";
    CHECK_THROWS_AS(read_energy_csv(scratch("broken.csv")), ConfigError);
    CHECK_THROWS_AS(read_energy_csv(scratch("absent.csv")), ConfigError);
    CHECK_THROWS_AS(write_energy_csv(scratch("no/such/dir.csv"), s), ConfigError);
}

TEST_CASE("moment, density, field and snapshot files")
{
    const GpcBasis b(1, {0.0, 1.0}, 2);
    const SpatialGrid g({0.0, 1.0}, 4, FieldBoundary::Periodic);
    NodeCellMoments m;
    m.nodes = 2;
    m.n_cells = 4;
    m.rho.assign(8, 1.0);
    m.mean_velocity.assign(8, 0.0);
    m.temperature.assign(8, 1.0);
    write_moments_csv(scratch("moments.csv"), g, moment_profiles(m, b));
    const auto ml = lines(scratch("moments.csv"));
    CHECK(ml.size() == 5);
    CHECK(ml[0] == "cell,x,rho_mean,rho_var,rho_min,rho_max,u_mean,u_var,u_min,u_max,T_mean,T_var,T_min,T_max");
    CHECK(ml[1].rfind("0,0.125,1,0,1,1,", 0) == 0);

    ChaosEnsemble ens(3, 2, 7);
    ens.weight[0] = 1.0 / 3.0;
    for (std::size_t i = 0; i < 3; ++i) {
        ens.x_of(i)[0] = 0.2 + 0.3 * i;
        ens.v_of(i)[1] = 0.1;
    }
    const auto d = reconstruct_phase_space(ens, b, g, 5, {-1.0, 1.0});
    write_density_csv(scratch("density.csv"), d, false);
    const auto dl = lines(scratch("density.csv"));
    CHECK(dl.size() == 5);
    CHECK(columns(dl[0]) == 6);
    CHECK(dl[0].rfind("x,", 0) == 0);
    for (std::size_t r = 1; r < dl.size(); ++r) {
        CHECK(columns(dl[r]) == 6);
    }

    write_field_csv(scratch("field.csv"), fields_at_all_nodes(ens, b, g), g);
    const auto fl = lines(scratch("field.csv"));
    CHECK(fl[0] == "node,cell,x_center,rho,E");
    CHECK(fl.size() == 1 + 2 * 4);

    write_snapshot_csv(scratch("snapshot.csv"), ens, 2);
    const auto sl = lines(scratch("snapshot.csv"));
    CHECK(sl[0] == "N,M,K,seed");
    CHECK(sl[1] == "3,1,2,7");
    CHECK(sl.size() == 2 + 1 + 3);
}

}

#include "sgpic/output.hpp"

#include "sgpic/error.hpp"

#include <charconv>
#include <fstream>

namespace sgpic {

std::string format_double(double value)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, res.ptr};
}

std::string time_label(double t)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, t, std::chars_format::fixed, 6);
    std::string s(buf, res.ptr);
    while (!s.empty() && s.back() == '0') {
        s.pop_back();
    }
    if (!s.empty() && s.back() == '.') {
        s.pop_back();
    }
    return s;
}

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("output: cannot write '" + path.string() + "'");
    }
    return out;
}

} // namespace

void write_energy_csv(const std::filesystem::path& path, const EnergyTimeSeries& series)
{
    auto out = open_for_writing(path);
    out << "t,mean_E,var_E";
    for (std::size_t k = 0; k < series.nodes; ++k) {
        out << ",E_node" << k;
    }
    out << '\n';
    for (std::size_t s = 0; s < series.size(); ++s) {
        out << format_double(series.times[s]) << ',' << format_double(series.mean[s]) << ','
            << format_double(series.variance[s]);
        for (const double e : series.row(s)) {
            out << ',' << format_double(e);
        }
        out << '\n';
    }
}

namespace {

std::vector<double> parse_row(const std::string& line, const std::filesystem::path& path,
                              std::size_t line_no)
{
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t end = std::min(line.find(',', pos), line.size());
        double v = 0.0;
        const auto res = std::from_chars(line.data() + pos, line.data() + end, v);
        if (res.ec != std::errc() || res.ptr != line.data() + end) {
            throw ConfigError("output: " + path.string() + ":" + std::to_string(line_no) +
                              ": malformed number");
        }
        row.push_back(v);
        pos = end + 1;
    }
    return row;
}

} // namespace

EnergyTimeSeries read_energy_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("output: cannot open '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,mean_E,var_E", 0) != 0) {
        throw ConfigError("output: '" + path.string() + "' lacks the t,mean_E,var_E header");
    }
    std::size_t columns = 1;
    for (const char c : line) {
        columns += c == ',' ? 1 : 0;
    }
    EnergyTimeSeries series;
    series.nodes = columns - 3;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto row = parse_row(line, path, line_no);
        if (row.size() != columns) {
            throw ConfigError("output: " + path.string() + ":" + std::to_string(line_no) +
                              ": expected " + std::to_string(columns) + " columns");
        }
        series.times.push_back(row[0]);
        series.mean.push_back(row[1]);
        series.variance.push_back(row[2]);
        series.per_node.insert(series.per_node.end(), row.begin() + 3, row.end());
    }
    return series;
}

void write_moments_csv(const std::filesystem::path& path, const SpatialGrid& grid,
                       const MomentProfiles& profiles)
{
    auto out = open_for_writing(path);
    out << "cell,x";
    for (const char* q : {"rho", "u", "T"}) {
        for (const char* s : {"mean", "var", "min", "max"}) {
            out << ',' << q << '_' << s;
        }
    }
    out << '\n';
    for (std::size_t l = 0; l < grid.n_cells(); ++l) {
        out << l << ',' << format_double(grid.center(l));
        for (const ProfileStatistics* p :
             {&profiles.rho, &profiles.velocity, &profiles.temperature}) {
            out << ',' << format_double(p->mean[l]) << ',' << format_double(p->variance[l])
                << ',' << format_double(p->lower[l]) << ',' << format_double(p->upper[l]);
        }
        out << '\n';
    }
}

void write_density_csv(const std::filesystem::path& path, const PhaseSpaceDensity& density,
                       bool variance)
{
    auto out = open_for_writing(path);
    const std::size_t nx = density.n_x();
    const std::size_t nv = density.n_v();
    out << 'x';
    for (std::size_t j = 0; j < nv; ++j) {
        out << ',' << format_double(0.5 * (density.v_edges[j] + density.v_edges[j + 1]));
    }
    out << '\n';
    const auto& values = variance ? density.variance : density.mean;
    for (std::size_t l = 0; l < nx; ++l) {
        out << format_double(0.5 * (density.x_edges[l] + density.x_edges[l + 1]));
        for (std::size_t j = 0; j < nv; ++j) {
            out << ',' << format_double(values[l * nv + j]);
        }
        out << '\n';
    }
}

void write_field_csv(const std::filesystem::path& path, const NodeFieldSet& fields,
                     const SpatialGrid& grid)
{
    auto out = open_for_writing(path);
    out << "node,cell,x_center,rho,E\n";
    for (std::size_t k = 0; k < fields.nodes; ++k) {
        for (std::size_t l = 0; l < fields.n_cells; ++l) {
            out << k << ',' << l << ',' << format_double(grid.center(l)) << ','
                << format_double(fields.rho[k * fields.n_cells + l]) << ','
                << format_double(fields.e(k, l)) << '\n';
        }
    }
}

void write_snapshot_csv(const std::filesystem::path& path, const ChaosEnsemble& ens,
                        std::size_t node_count)
{
    auto out = open_for_writing(path);
    out << "N,M,K,seed\n"
        << ens.count << ',' << ens.modes - 1 << ',' << node_count << ',' << ens.seed << '\n';
    out << "i";
    for (std::size_t h = 0; h < ens.modes; ++h) {
        out << ",x" << h;
    }
    for (std::size_t h = 0; h < ens.modes; ++h) {
        out << ",v" << h;
    }
    out << '\n';
    for (std::size_t i = 0; i < ens.count; ++i) {
        out << i;
        for (const double c : ens.x_of(i)) {
            out << ',' << format_double(c);
        }
        for (const double c : ens.v_of(i)) {
            out << ',' << format_double(c);
        }
        out << '\n';
    }
}

} // namespace sgpic

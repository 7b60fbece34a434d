#include "sgpic/observables.hpp"

#include "sgpic/error.hpp"
#include "sgpic/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sgpic {

std::vector<double> electric_energy(const NodeFieldSet& fields, const SpatialGrid& grid)
{
    if (fields.n_cells != grid.n_cells()) {
        throw UsageError("observables: field set does not match grid");
    }
    std::vector<double> out(fields.nodes);
    for (std::size_t k = 0; k < fields.nodes; ++k) {
        double s = 0.0;
        for (const double e : fields.e_at(k)) {
            s += e * e;
        }
        out[k] = std::sqrt(s * grid.dx());
    }
    return out;
}

std::vector<double> electric_energy_at_points(const ChaosEnsemble& ens, const GpcBasis& basis,
                                              const SpatialGrid& grid,
                                              std::span<const double> points)
{
    if (ens.modes != basis.modes()) {
        throw UsageError("observables: ensemble/basis order mismatch");
    }
    const std::size_t m = basis.modes();
    std::vector<double> out(points.size());
    ExceptionCollector errors;
    const auto np = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t pp = 0; pp < np; ++pp) {
        errors.run([&] {
            const auto p = static_cast<std::size_t>(pp);
            std::vector<double> psi(m);
            basis.eval_all(points[p], psi);
            double w = 0.0;
            for (std::size_t h = 0; h < m; ++h) {
                w += ens.weight[h] * psi[h];
            }
            std::vector<double> xs(ens.count);
            for (std::size_t i = 0; i < ens.count; ++i) {
                const auto xc = ens.x_of(i);
                double x = 0.0;
                for (std::size_t h = 0; h < m; ++h) {
                    x += xc[h] * psi[h];
                }
                xs[i] = grid.reduce(x);
            }
            const PoissonSolution sol = solve_poisson(deposit_density(xs, w, grid), grid);
            double s = 0.0;
            for (const double e : sol.e_field) {
                s += e * e;
            }
            out[p] = std::sqrt(s * grid.dx());
        });
    }
    errors.rethrow();
    return out;
}

void EnergyTimeSeries::append(double t, std::span<const double> energies, const GpcBasis& basis)
{
    if (nodes == 0) {
        nodes = energies.size();
    }
    if (energies.size() != nodes) {
        throw UsageError("observables: energy sample has the wrong node count");
    }
    const MeanVariance mv = node_statistics(energies, basis);
    times.push_back(t);
    per_node.insert(per_node.end(), energies.begin(), energies.end());
    mean.push_back(mv.mean);
    variance.push_back(mv.variance);
}

namespace {

// Hat kernel on uniform centers: returns the left index and the share of the
// right neighbour. Position is measured in cell units from the first center.
struct HatSplit {
    long left;
    double right_share;
};

HatSplit hat_split(double position)
{
    const double f = std::floor(position);
    return {static_cast<long>(f), position - f};
}

} // namespace

DensityFrame reconstruct_density(const ChaosEnsemble& ens, const GpcBasis& basis, std::size_t k,
                                 const SpatialGrid& grid, std::size_t v_cells, Interval v_range)
{
    if (k >= basis.node_count()) {
        throw UsageError("observables: node index " + std::to_string(k) + " out of range");
    }
    if (v_cells < 1 || !(v_range.hi > v_range.lo)) {
        throw ConfigError("observables: need v_cells >= 1 and a non-empty v range");
    }
    const std::size_t nx = grid.n_cells();
    const std::size_t nv = v_cells;
    const double dx = grid.dx();
    const double dv = v_range.length() / static_cast<double>(nv);
    const bool periodic = grid.bc() == FieldBoundary::Periodic;
    const auto lx = static_cast<long>(nx);
    const auto lv = static_cast<long>(nv);

    DensityFrame frame;
    frame.n_x = nx;
    frame.n_v = nv;
    frame.values.assign(nx * nv, 0.0);
    const double w = ens.weight_at_node(basis, k);
    const double scale = w / (dx * dv);

    auto x_index = [&](long j) -> std::size_t {
        if (periodic) {
            return static_cast<std::size_t>(((j % lx) + lx) % lx);
        }
        return static_cast<std::size_t>(std::clamp(j, 0L, lx - 1));
    };
    auto v_index = [&](long j) { return static_cast<std::size_t>(std::clamp(j, 0L, lv - 1)); };

    for (std::size_t i = 0; i < ens.count; ++i) {
        const double x = grid.reduce(basis.eval_at_node(ens.x_of(i), k));
        const double v = basis.eval_at_node(ens.v_of(i), k);
        if (!v_range.contains(v)) {
            frame.clipped_mass += w;
            continue;
        }
        if (!grid.inside(x)) {
            throw LogicError("observables: particle outside the domain");
        }
        const HatSplit sx = hat_split((x - grid.x_min()) / dx - 0.5);
        const HatSplit sv = hat_split((v - v_range.lo) / dv - 0.5);
        const std::size_t x0 = x_index(sx.left);
        const std::size_t x1 = x_index(sx.left + 1);
        const std::size_t v0 = v_index(sv.left);
        const std::size_t v1 = v_index(sv.left + 1);
        const double ax = 1.0 - sx.right_share;
        const double av = 1.0 - sv.right_share;
        frame.values[x0 * nv + v0] += scale * ax * av;
        frame.values[x0 * nv + v1] += scale * ax * sv.right_share;
        frame.values[x1 * nv + v0] += scale * sx.right_share * av;
        frame.values[x1 * nv + v1] += scale * sx.right_share * sv.right_share;
    }
    return frame;
}

PhaseSpaceDensity reconstruct_phase_space(const ChaosEnsemble& ens, const GpcBasis& basis,
                                          const SpatialGrid& grid, std::size_t v_cells,
                                          Interval v_range)
{
    const std::size_t nk = basis.node_count();
    std::vector<DensityFrame> frames(nk);
    for (std::size_t k = 0; k < nk; ++k) {
        frames[k] = reconstruct_density(ens, basis, k, grid, v_cells, v_range);
    }

    PhaseSpaceDensity out;
    const std::size_t nx = grid.n_cells();
    out.x_edges.resize(nx + 1);
    for (std::size_t j = 0; j <= nx; ++j) {
        out.x_edges[j] = grid.edge(j);
    }
    out.v_edges.resize(v_cells + 1);
    const double dv = v_range.length() / static_cast<double>(v_cells);
    for (std::size_t j = 0; j <= v_cells; ++j) {
        out.v_edges[j] = v_range.lo + static_cast<double>(j) * dv;
    }

    const std::size_t bins = nx * v_cells;
    out.mean.resize(bins);
    out.variance.resize(bins);
    std::vector<double> column(nk);
    for (std::size_t b = 0; b < bins; ++b) {
        for (std::size_t k = 0; k < nk; ++k) {
            column[k] = frames[k].values[b];
        }
        const MeanVariance mv = node_statistics(column, basis);
        out.mean[b] = mv.mean;
        out.variance[b] = mv.variance;
    }
    for (std::size_t k = 0; k < nk; ++k) {
        column[k] = frames[k].clipped_mass;
    }
    out.clipped_mass = node_statistics(column, basis).mean;
    return out;
}

namespace {

ProfileStatistics profile_of(const std::vector<double>& data, std::size_t n_cells,
                             const GpcBasis& basis)
{
    const std::size_t nk = basis.node_count();
    ProfileStatistics p;
    p.mean.resize(n_cells);
    p.variance.resize(n_cells);
    p.lower.resize(n_cells);
    p.upper.resize(n_cells);
    std::vector<double> column(nk);
    for (std::size_t l = 0; l < n_cells; ++l) {
        for (std::size_t k = 0; k < nk; ++k) {
            column[k] = data[k * n_cells + l];
        }
        const MeanVariance mv = node_statistics(column, basis);
        p.mean[l] = mv.mean;
        p.variance[l] = mv.variance;
        const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
        p.lower[l] = *lo;
        p.upper[l] = *hi;
    }
    return p;
}

} // namespace

MomentProfiles moment_profiles(const NodeCellMoments& moments, const GpcBasis& basis)
{
    if (moments.nodes != basis.node_count()) {
        throw UsageError("observables: moments do not match the basis node count");
    }
    return {profile_of(moments.rho, moments.n_cells, basis),
            profile_of(moments.mean_velocity, moments.n_cells, basis),
            profile_of(moments.temperature, moments.n_cells, basis)};
}

namespace {

void least_squares(std::span<const double> t, std::span<const double> y, RateFit& fit)
{
    const auto n = static_cast<double>(t.size());
    double st = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
    }
    const double tm = st / n;
    const double ym = sy / n;
    double stt = 0.0;
    double sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        stt += (t[i] - tm) * (t[i] - tm);
        sty += (t[i] - tm) * (y[i] - ym);
    }
    if (!(stt > 0.0)) {
        throw FittingError("fit: fit points share a single time");
    }
    fit.rate = sty / stt;
    fit.intercept = ym - fit.rate * tm;
}

} // namespace

RateFit fit_exponential_rate(std::span<const double> times, std::span<const double> values,
                             Interval window, RateMode mode, std::size_t half_width)
{
    if (times.size() != values.size()) {
        throw UsageError("fit: times and values differ in length");
    }
    std::vector<double> t;
    std::vector<double> y;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!window.contains(times[i])) {
            continue;
        }
        if (!(values[i] > 0.0)) {
            throw FittingError("fit: non-positive value at t = " + std::to_string(times[i]));
        }
        t.push_back(times[i]);
        y.push_back(std::log(values[i]));
    }

    RateFit fit;
    std::vector<double> pt;
    std::vector<double> py;
    const std::size_t w = std::max<std::size_t>(half_width, 1);
    for (std::size_t i = w; i + w < t.size(); ++i) {
        bool peak = true;
        for (std::size_t j = i - w; j <= i + w && peak; ++j) {
            peak = y[j] <= y[i];
        }
        if (peak) {
            pt.push_back(t[i]);
            py.push_back(y[i]);
        }
    }

    if (pt.size() >= 3) {
        fit.peak_times = pt;
        least_squares(pt, py, fit);
        return fit;
    }
    if (mode == RateMode::Damping || t.size() < 2) {
        throw FittingError("fit: found " + std::to_string(pt.size()) + " peaks in [" +
                           std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                           "], need at least 3");
    }
    fit.used_all_samples = true;
    least_squares(t, y, fit);
    return fit;
}

} // namespace sgpic

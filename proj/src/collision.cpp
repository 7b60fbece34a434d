#include "sgpic/collision.hpp"

#include "sgpic/error.hpp"
#include "sgpic/parallel.hpp"
#include "sgpic/rng.hpp"

#include <cmath>
#include <string>

namespace sgpic {

NodeCellMoments moments_from_samples(const NodeSamples& samples, const ChaosEnsemble& ens,
                                     const GpcBasis& basis, const SpatialGrid& grid)
{
    const std::size_t nk = basis.node_count();
    const std::size_t nc = grid.n_cells();
    if (samples.nodes != nk || samples.count != ens.count || samples.v.size() != samples.x.size()) {
        throw UsageError("collision: node samples do not match ensemble/basis");
    }
    NodeCellMoments mom;
    mom.nodes = nk;
    mom.n_cells = nc;
    mom.rho.assign(nk * nc, 0.0);
    mom.mean_velocity.assign(nk * nc, 0.0);
    mom.temperature.assign(nk * nc, 0.0);
    mom.counts.assign(nk * nc, 0);

    std::vector<std::size_t> clamped(nk, 0);
    ExceptionCollector errors;
    const auto nki = static_cast<std::ptrdiff_t>(nk);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t kk = 0; kk < nki; ++kk) {
        errors.run([&] {
            const auto k = static_cast<std::size_t>(kk);
            const auto xs = samples.x_at(k);
            const auto vs = samples.v_at(k);
            std::vector<std::size_t> cell(xs.size());
            std::vector<double> sum(nc, 0.0);
            std::vector<double> dev(nc, 0.0);
            std::size_t* counts = mom.counts.data() + k * nc;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const std::size_t l = grid.cell_of(xs[i]);
                cell[i] = l;
                ++counts[l];
                sum[l] += vs[i];
            }
            double* u = mom.mean_velocity.data() + k * nc;
            for (std::size_t l = 0; l < nc; ++l) {
                u[l] = counts[l] > 0 ? sum[l] / static_cast<double>(counts[l]) : 0.0;
            }
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double d = vs[i] - u[cell[i]];
                dev[cell[i]] += d * d;
            }
            const double w = ens.weight_at_node(basis, k);
            double* t = mom.temperature.data() + k * nc;
            double* rho = mom.rho.data() + k * nc;
            for (std::size_t l = 0; l < nc; ++l) {
                rho[l] = w * static_cast<double>(counts[l]) / grid.dx();
                t[l] = counts[l] > 0 ? dev[l] / static_cast<double>(counts[l]) : 0.0;
                if (t[l] < 0.0) {
                    t[l] = 0.0;
                    ++clamped[k];
                }
            }
        });
    }
    errors.rethrow();
    for (const auto c : clamped) {
        mom.clamped_temperatures += c;
    }
    return mom;
}

NodeCellMoments compute_node_moments(const ChaosEnsemble& ens, const GpcBasis& basis,
                                     const SpatialGrid& grid)
{
    NodeSamples samples;
    realize_all_nodes(ens, basis, grid, samples, true);
    return moments_from_samples(samples, ens, basis, grid);
}

MaxwellianPool rescale_pool(std::vector<double> raw)
{
    const std::size_t n = raw.size();
    if (n < 2) {
        throw SamplingError("maxwellian pool: need at least two draws");
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const double v : raw) {
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double energy = sum_sq / (2.0 * static_cast<double>(n));
    constexpr double target_mean = 0.0;
    constexpr double target_energy = 0.5;
    const double tau_sq = (energy - 0.5 * mean * mean) /
                          (target_energy - 0.5 * target_mean * target_mean);
    if (!(tau_sq > 0.0) || !std::isfinite(tau_sq)) {
        throw SamplingError("maxwellian pool: zero sample variance");
    }
    const double tau = std::sqrt(tau_sq);
    const double lambda = mean - tau * target_mean;
    for (double& v : raw) {
        v = (v - lambda) / tau;
    }
    return MaxwellianPool{std::move(raw)};
}

MaxwellianPool build_maxwellian_pool(std::size_t count, std::uint64_t seed,
                                     std::uint64_t stream_step)
{
    if (count < 2) {
        throw SamplingError("maxwellian pool: need at least two particles");
    }
    constexpr int max_attempts = 8;
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<double> raw(count);
        const std::uint64_t step_key = stream_step ^ (attempt << 48);
        const auto ni = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
            auto gen = particle_stream(seed, static_cast<std::uint64_t>(ii), step_key,
                                       Stream::CollisionNormal);
            raw[static_cast<std::size_t>(ii)] = standard_normal(gen);
        }
        try {
            return rescale_pool(std::move(raw));
        } catch (const SamplingError&) {
        }
    }
    throw SamplingError("maxwellian pool: degenerate draws on every retry stream");
}

CollisionDiagnostics bgk_step(ChaosEnsemble& ens, const GpcBasis& basis, const SpatialGrid& grid,
                              double dt, double nu, const MaxwellianPool& pool,
                              CollisionDraws draws, CollisionRescale rescale)
{
    if (!(dt > 0.0)) {
        throw UsageError("collision: dt must be positive");
    }
    if (!(nu >= 0.0)) {
        throw UsageError("collision: nu must be non-negative");
    }
    if (pool.values.size() != ens.count) {
        throw UsageError("collision: pool size " + std::to_string(pool.values.size()) +
                         " != particle count " + std::to_string(ens.count));
    }
    CollisionDiagnostics diag;
    if (nu == 0.0) {
        return diag;
    }
    const double keep_probability = std::exp(-nu * dt);

    NodeSamples samples;
    realize_all_nodes(ens, basis, grid, samples, true);
    const NodeCellMoments mom = moments_from_samples(samples, ens, basis, grid);
    diag.clamped_temperatures = mom.clamped_temperatures;

    std::vector<double> sqrt_t(mom.temperature.size());
    for (std::size_t j = 0; j < sqrt_t.size(); ++j) {
        sqrt_t[j] = std::sqrt(mom.temperature[j]);
    }

    const std::size_t nk = basis.node_count();
    const std::size_t n = ens.count;
    const auto ni = static_cast<std::ptrdiff_t>(n);

    std::vector<char> replace(n, 0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        auto gen = particle_stream(draws.seed, i, draws.stream_step, Stream::CollisionSelect);
        replace[i] = uniform01(gen) >= keep_probability ? 1 : 0;
    }

    // Per (node, cell) shift and scale applied to the pool value.
    std::vector<double> shift(mom.rho.size(), 0.0);
    std::vector<double> scale(mom.rho.size(), 1.0);
    if (rescale == CollisionRescale::Cell) {
        std::vector<double> sum(mom.rho.size(), 0.0);
        std::vector<double> sum_sq(mom.rho.size(), 0.0);
        std::vector<std::size_t> hits(mom.rho.size(), 0);
        for (std::size_t k = 0; k < nk; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                if (replace[i] == 0) {
                    continue;
                }
                const std::size_t j = mom.index(k, grid.cell_of(samples.x[k * n + i]));
                sum[j] += pool.values[i];
                sum_sq[j] += pool.values[i] * pool.values[i];
                ++hits[j];
            }
        }
        for (std::size_t j = 0; j < hits.size(); ++j) {
            if (hits[j] < 2) {
                continue;
            }
            const double c = static_cast<double>(hits[j]);
            const double mean = sum[j] / c;
            const double var = sum_sq[j] / c - mean * mean;
            if (var > 0.0) {
                shift[j] = mean;
                scale[j] = 1.0 / std::sqrt(var);
            }
        }
    }

    std::size_t replaced = 0;
    ExceptionCollector errors;
#pragma omp parallel reduction(+ : replaced)
    {
        std::vector<double> node_values(nk);
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
            errors.run([&] {
                const auto i = static_cast<std::size_t>(ii);
                if (replace[i] == 0) {
                    return;
                }
                const double sample = pool.values[i];
                for (std::size_t k = 0; k < nk; ++k) {
                    const std::size_t l = grid.cell_of(samples.x[k * n + i]);
                    const std::size_t j = mom.index(k, l);
                    const double s = rescale == CollisionRescale::Cell
                                         ? (sample - shift[j]) * scale[j]
                                         : sample;
                    node_values[k] = mom.mean_velocity[j] + sqrt_t[j] * s;
                }
                project_into(node_values, basis, ens.v_of(i));
                ++replaced;
            });
        }
    }
    errors.rethrow();
    diag.replaced = replaced;
    return diag;
}

} // namespace sgpic

#include "sgpic/fields.hpp"

#include "sgpic/error.hpp"
#include "sgpic/parallel.hpp"

#include <cmath>
#include <string>

namespace sgpic {

std::vector<double> deposit_density(std::span<const double> positions, double weight,
                                    const SpatialGrid& grid)
{
    std::vector<double> rho(grid.n_cells(), 0.0);
    if (grid.shape() == Shape::Linear) {
        const double scale = weight / grid.dx();
        for (const double x : positions) {
            const ShapeSplit s = grid.split(x);
            rho[s.first] += scale * (1.0 - s.second_share);
            rho[s.second] += scale * s.second_share;
        }
        return rho;
    }
    std::vector<std::size_t> counts(grid.n_cells(), 0);
    for (const double x : positions) {
        ++counts[grid.cell_of(x)];
    }
    for (std::size_t l = 0; l < rho.size(); ++l) {
        rho[l] = weight * static_cast<double>(counts[l]) / grid.dx();
    }
    return rho;
}

void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> super, std::span<double> rhs)
{
    const std::size_t n = diag.size();
    if (n == 0) {
        return;
    }
    if (sub.size() != n || super.size() != n || rhs.size() != n) {
        throw UsageError("tridiagonal: band lengths must all equal the system size");
    }
    std::vector<double> c(n);
    double beta = diag[0];
    if (beta == 0.0) {
        throw NumericalError("tridiagonal: zero pivot");
    }
    rhs[0] /= beta;
    for (std::size_t j = 1; j < n; ++j) {
        c[j] = super[j - 1] / beta;
        beta = diag[j] - sub[j] * c[j];
        if (beta == 0.0) {
            throw NumericalError("tridiagonal: zero pivot");
        }
        rhs[j] = (rhs[j] - sub[j] * rhs[j - 1]) / beta;
    }
    for (std::size_t j = n - 1; j-- > 0;) {
        rhs[j] -= c[j + 1] * rhs[j + 1];
    }
}

PoissonSolution solve_poisson(std::span<const double> rho, const SpatialGrid& grid)
{
    const std::size_t n = grid.n_cells();
    if (rho.size() != n) {
        throw UsageError("poisson: density has " + std::to_string(rho.size()) +
                         " cells, grid has " + std::to_string(n));
    }
    const double dx = grid.dx();
    PoissonSolution sol;
    sol.phi.assign(n + 1, 0.0);
    sol.e_field.assign(n, 0.0);

    // Source 1 - rho at the edges, edge density averaged from the adjacent cells.
    std::vector<double> source(n + 1, 0.0);
    if (grid.bc() == FieldBoundary::Periodic) {
        double mean = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double left = rho[j == 0 ? n - 1 : j - 1];
            source[j] = 1.0 - 0.5 * (left + rho[j]);
            mean += source[j];
        }
        mean /= static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            source[j] -= mean;
        }
        source[n] = source[0];
    } else {
        for (std::size_t j = 1; j < n; ++j) {
            source[j] = 1.0 - 0.5 * (rho[j - 1] + rho[j]);
        }
    }

    // With phi_0 = phi_n = 0 both cases reduce to a tridiagonal system on the
    // interior edges; for the periodic case the dropped equation at edge 0 is
    // implied by the zero-mean source.
    if (n >= 2) {
        const std::size_t m = n - 1;
        std::vector<double> sub(m, 1.0);
        std::vector<double> diag(m, -2.0);
        std::vector<double> super(m, 1.0);
        std::vector<double> rhs(m);
        for (std::size_t j = 0; j < m; ++j) {
            rhs[j] = dx * dx * source[j + 1];
        }
        solve_tridiagonal(sub, diag, super, rhs);
        for (std::size_t j = 0; j < m; ++j) {
            sol.phi[j + 1] = rhs[j];
        }
    }

    for (std::size_t l = 0; l < n; ++l) {
        sol.e_field[l] = -(sol.phi[l + 1] - sol.phi[l]) / dx;
        if (!std::isfinite(sol.e_field[l])) {
            throw NumericalError("poisson: non-finite electric field");
        }
    }
    return sol;
}

NodeFieldSet zero_fields(std::size_t nodes, const SpatialGrid& grid)
{
    NodeFieldSet f;
    f.nodes = nodes;
    f.n_cells = grid.n_cells();
    f.rho.assign(nodes * f.n_cells, 0.0);
    f.phi.assign(nodes * (f.n_cells + 1), 0.0);
    f.e_field.assign(nodes * f.n_cells, 0.0);
    return f;
}

NodeFieldSet fields_from_samples(const NodeSamples& samples, const ChaosEnsemble& ens,
                                 const GpcBasis& basis, const SpatialGrid& grid)
{
    const std::size_t nk = basis.node_count();
    if (samples.nodes != nk || samples.count != ens.count) {
        throw UsageError("fields: node samples do not match ensemble/basis");
    }
    NodeFieldSet f = zero_fields(nk, grid);
    const std::size_t nc = grid.n_cells();
    const auto nki = static_cast<std::ptrdiff_t>(nk);
    ExceptionCollector errors;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t kk = 0; kk < nki; ++kk) {
        errors.run([&] {
        const auto k = static_cast<std::size_t>(kk);
        const auto rho = deposit_density(samples.x_at(k), ens.weight_at_node(basis, k), grid);
        const auto sol = solve_poisson(rho, grid);
        std::copy(rho.begin(), rho.end(), f.rho.begin() + static_cast<std::ptrdiff_t>(k * nc));
        std::copy(sol.phi.begin(), sol.phi.end(),
                  f.phi.begin() + static_cast<std::ptrdiff_t>(k * (nc + 1)));
        std::copy(sol.e_field.begin(), sol.e_field.end(),
                  f.e_field.begin() + static_cast<std::ptrdiff_t>(k * nc));
        });
    }
    errors.rethrow();
    return f;
}

NodeFieldSet fields_at_all_nodes(const ChaosEnsemble& ens, const GpcBasis& basis,
                                 const SpatialGrid& grid)
{
    NodeSamples samples;
    realize_all_nodes(ens, basis, grid, samples, false);
    return fields_from_samples(samples, ens, basis, grid);
}

} // namespace sgpic

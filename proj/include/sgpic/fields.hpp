#pragma once

#include "sgpic/gpc.hpp"
#include "sgpic/grid.hpp"
#include "sgpic/particles.hpp"

#include <span>
#include <vector>

namespace sgpic {

struct PoissonSolution {
    std::vector<double> phi;     // N_l + 1 edge values
    std::vector<double> e_field; // N_l cell-centre values
};

/// Per-node densities, potentials and fields, each stored row-major by node.
struct NodeFieldSet {
    std::size_t nodes = 0;
    std::size_t n_cells = 0;
    std::vector<double> rho;     // K x N_l
    std::vector<double> phi;     // K x (N_l + 1)
    std::vector<double> e_field; // K x N_l

    std::span<const double> rho_at(std::size_t k) const { return {rho.data() + k * n_cells, n_cells}; }
    std::span<const double> e_at(std::size_t k) const { return {e_field.data() + k * n_cells, n_cells}; }
    std::span<const double> phi_at(std::size_t k) const
    {
        return {phi.data() + k * (n_cells + 1), n_cells + 1};
    }
    double e(std::size_t k, std::size_t l) const { return e_field[k * n_cells + l]; }
};

/// Nearest-cell (top-hat) deposition: rho[l] = weight * count_l / dx.
std::vector<double> deposit_density(std::span<const double> positions, double weight,
                                    const SpatialGrid& grid);

/// Solve  d2phi/dx2 = 1 - rho  on the cell edges by second-order finite
/// differences; E = -dphi/dx at cell centres.
///
/// Periodic: the source is neutralized by subtracting its mean and the gauge
/// is fixed by phi[0] = 0. Dirichlet: phi = 0 at both ends.
PoissonSolution solve_poisson(std::span<const double> rho, const SpatialGrid& grid);

/// Thomas algorithm for a tridiagonal system; `rhs` is overwritten with the solution.
void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> super, std::span<double> rhs);

/// Deposit and solve independently at every quadrature node.
NodeFieldSet fields_at_all_nodes(const ChaosEnsemble& ens, const GpcBasis& basis,
                                 const SpatialGrid& grid);

/// Same, from an existing node realization.
NodeFieldSet fields_from_samples(const NodeSamples& samples, const ChaosEnsemble& ens,
                                 const GpcBasis& basis, const SpatialGrid& grid);

/// Zero field rows (used when the self-consistent field is switched off).
NodeFieldSet zero_fields(std::size_t nodes, const SpatialGrid& grid);

} // namespace sgpic

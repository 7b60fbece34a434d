#pragma once

#include "sgpic/gpc.hpp"
#include "sgpic/grid.hpp"
#include "sgpic/particles.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sgpic {

/// Cell moments at every quadrature node, row-major K x N_l.
struct NodeCellMoments {
    std::size_t nodes = 0;
    std::size_t n_cells = 0;
    std::vector<double> rho;
    std::vector<double> mean_velocity;
    std::vector<double> temperature;
    std::vector<std::size_t> counts;
    std::size_t clamped_temperatures = 0;

    std::size_t index(std::size_t k, std::size_t l) const { return k * n_cells + l; }
};

/// Per-node empirical moments: rho = w c / dx, U = mean velocity in the cell,
/// T = mean squared deviation from U. Empty cells give zeros.
NodeCellMoments compute_node_moments(const ChaosEnsemble& ens, const GpcBasis& basis,
                                     const SpatialGrid& grid);

NodeCellMoments moments_from_samples(const NodeSamples& samples, const ChaosEnsemble& ens,
                                     const GpcBasis& basis, const SpatialGrid& grid);

/// Standard-normal samples shifted and scaled to exact sample mean 0 and
/// exact sample energy sum(v^2)/(2N) = 1/2.
struct MaxwellianPool {
    std::vector<double> values;
};

/// Rescale raw draws: v <- (v - lambda) / tau with tau^2 = 2E - V^2 (targets
/// u = 0, e = 1/2). Throws SamplingError for fewer than two draws or zero spread.
MaxwellianPool rescale_pool(std::vector<double> raw);

/// Draw one normal per particle from the (seed, particle, stream_step) streams
/// and rescale. A degenerate draw is retried on the next stream.
MaxwellianPool build_maxwellian_pool(std::size_t count, std::uint64_t seed,
                                     std::uint64_t stream_step);

struct CollisionDiagnostics {
    std::size_t replaced = 0;
    std::size_t clamped_temperatures = 0;
    std::size_t attempts = 0;
};

/// Pool normalization for replaced velocities. Global uses the pool as drawn
/// (zero mean, unit variance over all particles). Cell re-standardizes the
/// pool values of the particles replaced in each cell at each node, so the
/// replacements carry that cell's (U, T) exactly.
enum class CollisionRescale { Global, Cell };

/// Selects which per-particle uniform stream decides replacement.
struct CollisionDraws {
    std::uint64_t seed = 0;
    std::uint64_t stream_step = 0;
};

/// Projected BGK relaxation over dt. Each particle draws one uniform xi shared
/// across z; if xi >= exp(-nu dt) its velocity expansion is replaced by the
/// projection of U(z) + sqrt(T(z)) * pool[i], with (U, T) taken from the cell
/// the particle occupies at each node. Positions are untouched.
CollisionDiagnostics bgk_step(ChaosEnsemble& ens, const GpcBasis& basis, const SpatialGrid& grid,
                              double dt, double nu, const MaxwellianPool& pool,
                              CollisionDraws draws,
                              CollisionRescale rescale = CollisionRescale::Global);

} // namespace sgpic

#pragma once

#include "sgpic/collision.hpp"
#include "sgpic/fields.hpp"
#include "sgpic/gpc.hpp"
#include "sgpic/grid.hpp"
#include "sgpic/particles.hpp"

#include <span>
#include <vector>

namespace sgpic {

/// E[k] = sqrt(sum_l E[k][l]^2 dx), one value per quadrature node.
std::vector<double> electric_energy(const NodeFieldSet& fields, const SpatialGrid& grid);

/// Field energy of the ensemble realized at arbitrary points of the support
/// (deposit and solve per point), positions reduced into the domain.
std::vector<double> electric_energy_at_points(const ChaosEnsemble& ens, const GpcBasis& basis,
                                              const SpatialGrid& grid,
                                              std::span<const double> points);

/// Field-energy history. per_node is row-major (steps x K).
struct EnergyTimeSeries {
    std::size_t nodes = 0;
    std::vector<double> times;
    std::vector<double> per_node;
    std::vector<double> mean;
    std::vector<double> variance;

    std::size_t size() const { return times.size(); }
    std::span<const double> row(std::size_t s) const { return {per_node.data() + s * nodes, nodes}; }

    /// Append one sample; mean and variance come from the basis quadrature.
    void append(double t, std::span<const double> energies, const GpcBasis& basis);
};

/// Hat-kernel (CIC) reconstruction of f at one node, row-major N_l x N_v.
struct DensityFrame {
    std::size_t n_x = 0;
    std::size_t n_v = 0;
    std::vector<double> values;
    /// Mass of particles whose velocity lies outside the v range.
    double clipped_mass = 0.0;
};

struct PhaseSpaceDensity {
    std::vector<double> x_edges;
    std::vector<double> v_edges;
    std::vector<double> mean;
    std::vector<double> variance;
    /// Quadrature mean of the per-node clipped mass.
    double clipped_mass = 0.0;

    std::size_t n_x() const { return x_edges.size() - 1; }
    std::size_t n_v() const { return v_edges.size() - 1; }
};

/// Linear-kernel deposition in x and v of the node-k realization, scaled by
/// weight / (dx dv). Periodic grids wrap the x kernel; otherwise the half
/// cells at the walls fold into the edge cell, as in v at the range ends.
DensityFrame reconstruct_density(const ChaosEnsemble& ens, const GpcBasis& basis, std::size_t k,
                                 const SpatialGrid& grid, std::size_t v_cells, Interval v_range);

/// Quadrature mean and variance of the per-node frames.
PhaseSpaceDensity reconstruct_phase_space(const ChaosEnsemble& ens, const GpcBasis& basis,
                                          const SpatialGrid& grid, std::size_t v_cells,
                                          Interval v_range);

/// Per-cell statistics of one moment over the quadrature nodes.
struct ProfileStatistics {
    std::vector<double> mean;
    std::vector<double> variance;
    std::vector<double> lower;
    std::vector<double> upper;
};

struct MomentProfiles {
    ProfileStatistics rho;
    ProfileStatistics velocity;
    ProfileStatistics temperature;
};

MomentProfiles moment_profiles(const NodeCellMoments& moments, const GpcBasis& basis);

enum class RateMode { Damping, Growth };

struct RateFit {
    double rate = 0.0;
    double intercept = 0.0;
    std::vector<double> peak_times;
    /// Growth mode only: too few peaks, so every sample in the window was used.
    bool used_all_samples = false;
};

/// Least-squares slope of log(values) through its local maxima in
/// [window.lo, window.hi]. A sample is a peak when it is no smaller than
/// every other sample within `half_width` on both sides.
///
/// Throws FittingError for non-positive samples in the window, and for fewer
/// than three peaks in damping mode.
RateFit fit_exponential_rate(std::span<const double> times, std::span<const double> values,
                             Interval window, RateMode mode, std::size_t half_width = 5);

} // namespace sgpic

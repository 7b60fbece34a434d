#pragma once

#include "sgpic/fields.hpp"
#include "sgpic/grid.hpp"
#include "sgpic/observables.hpp"
#include "sgpic/particles.hpp"

#include <filesystem>
#include <string>

namespace sgpic {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Label used in dump file names, e.g. 0.15 -> "0.15", 30 -> "30".
std::string time_label(double t);

/// Columns: t, mean_E, var_E, E_node0 .. E_node{K-1}.
void write_energy_csv(const std::filesystem::path& path, const EnergyTimeSeries& series);

/// Reads a file written by write_energy_csv.
EnergyTimeSeries read_energy_csv(const std::filesystem::path& path);

/// Columns: cell, x, then mean/var/min/max of rho, u and T.
void write_moments_csv(const std::filesystem::path& path, const SpatialGrid& grid,
                       const MomentProfiles& profiles);

/// First row: "x", then the v-cell centres. Each following row: x-cell centre,
/// then the N_v values of the chosen statistic.
void write_density_csv(const std::filesystem::path& path, const PhaseSpaceDensity& density,
                       bool variance);

/// Columns: node, cell, x_center, rho, E.
void write_field_csv(const std::filesystem::path& path, const NodeFieldSet& fields,
                     const SpatialGrid& grid);

/// Header "N,M,K,seed" with its values, then one row per particle:
/// index, x coefficients, v coefficients.
void write_snapshot_csv(const std::filesystem::path& path, const ChaosEnsemble& ens,
                        std::size_t node_count);

} // namespace sgpic

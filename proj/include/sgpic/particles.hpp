#pragma once

#include "sgpic/gpc.hpp"
#include "sgpic/grid.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sgpic {

/// Particle ensemble whose positions and velocities are chaos expansions.
///
/// Coefficients are stored particle-major: x[i * modes + h]. The particle
/// weight is itself an expansion so that scenarios whose total mass depends
/// on z (uncertain Sod interface) still satisfy weight(z) * N = mass(z).
struct ChaosEnsemble {
    std::size_t count = 0;
    std::size_t modes = 0;
    std::vector<double> x;
    std::vector<double> v;
    ChaosVector weight;
    std::uint64_t seed = 0;

    ChaosEnsemble() = default;
    ChaosEnsemble(std::size_t n, std::size_t n_modes, std::uint64_t seed_);

    std::span<double> x_of(std::size_t i) { return {x.data() + i * modes, modes}; }
    std::span<double> v_of(std::size_t i) { return {v.data() + i * modes, modes}; }
    std::span<const double> x_of(std::size_t i) const { return {x.data() + i * modes, modes}; }
    std::span<const double> v_of(std::size_t i) const { return {v.data() + i * modes, modes}; }

    /// Mass carried by one particle at quadrature node k.
    double weight_at_node(const GpcBasis& basis, std::size_t k) const;
    /// weight(z_k) * count.
    double mass_at_node(const GpcBasis& basis, std::size_t k) const;
};

/// Node-major realization of the whole ensemble: x[k * count + i].
struct NodeSamples {
    std::size_t nodes = 0;
    std::size_t count = 0;
    std::vector<double> x;
    std::vector<double> v;

    std::span<const double> x_at(std::size_t k) const { return {x.data() + k * count, count}; }
    std::span<const double> v_at(std::size_t k) const { return {v.data() + k * count, count}; }
};

struct NodeRealization {
    std::vector<double> positions;
    std::vector<double> velocities;
};

NodeRealization evaluate_ensemble_at_node(const ChaosEnsemble& ens, const GpcBasis& basis,
                                          std::size_t k);

/// Realize every particle at every node (parallel over particles).
void evaluate_all_nodes(const ChaosEnsemble& ens, const GpcBasis& basis, NodeSamples& out,
                        bool with_velocities = true);

/// As evaluate_all_nodes, with positions reduced into the grid's domain.
/// Every node-wise consumer (deposit, moments) reads positions through this.
void realize_all_nodes(const ChaosEnsemble& ens, const GpcBasis& basis, const SpatialGrid& grid,
                       NodeSamples& out, bool with_velocities = true);

/// a + b z.
struct AffineLaw {
    double a = 0.0;
    double b = 0.0;
    double operator()(double z) const { return a + b * z; }
};

enum class InitialKind { PerturbedMaxwellian, TwoStream, SodRiemann, GaussianBump };

/// How the per-particle base draws are produced. Random draws come from the
/// seeded per-particle streams; Quiet uses a stratified/radical-inverse
/// (Hammersley) layout that keeps initial sampling noise low.
enum class SamplingMode { Random, Quiet };

/// Initial distribution f0(x, v, z) for one of the supported families.
struct InitialCondition {
    InitialKind kind = InitialKind::PerturbedMaxwellian;
    Interval domain{0.0, 1.0};

    // perturbed Maxwellian / two-stream: density 1 + alpha(z) cos(k x)
    double wave_number = 0.5;
    AffineLaw amplitude{0.0, 0.0};
    // temperature T(z) for the periodic kinds and the Gaussian bump
    AffineLaw temperature{1.0, 0.0};
    // two-stream beam drift
    double drift = 0.0;

    // Sod: density rho_left on (x_min, interface(z)), rho_right beyond
    AffineLaw interface{0.5, 0.0};
    double rho_left = 1.0;
    double rho_right = 0.125;
    AffineLaw temperature_left{1.0, 0.0};
    AffineLaw temperature_right{0.8, 0.0};

    // Gaussian bump: rho(x) = exp(-(x - c)^2) / sqrt(pi)
    double bump_center = 6.0;

    SamplingMode sampling = SamplingMode::Random;

    /// Unnormalized density rho0(x, z).
    double density(double x, double z) const;
    /// Integral of rho0 from x_min to x.
    double cumulative_mass(double x, double z) const;
    double total_mass(double z) const { return cumulative_mass(domain.hi, z); }
    /// Local temperature T0(x, z) of the Maxwellian factor.
    double temperature_at(double x, double z) const;

    /// Throws ConfigError when alpha(z) <= -1 or T <= 0 somewhere on `support`.
    void validate(Interval support) const;
};

/// Solve cumulative_mass(x, z) = u * total_mass(z) by bisection (1e-12 in x).
double inverse_cdf(const InitialCondition& ic, double u, double z);

/// Build the initial ensemble with common random numbers across z: each
/// particle's base draws are made once and pushed through the node-wise
/// inverse transform, then projected onto the basis.
ChaosEnsemble sample_initial(const InitialCondition& ic, const GpcBasis& basis,
                             std::size_t count, std::uint64_t seed);

} // namespace sgpic

#pragma once

#include "sgpic/collision.hpp"
#include "sgpic/fields.hpp"
#include "sgpic/gpc.hpp"
#include "sgpic/grid.hpp"
#include "sgpic/particles.hpp"

#include <cstdint>
#include <optional>

namespace sgpic {

enum class ParticleBoundary { Periodic, Reflecting };

/// Reflecting rule: Fold maps x -> 2 x_b - x (velocity flipped); Literal uses
/// x -> x_b - |x - x_b| sgn(v), which leaves outward-moving particles outside
/// and hands them to the modular safeguard.
enum class ReflectRule { Fold, Literal };

/// Periodic rule: Shift moves the whole expansion by a multiple of L so its
/// mean lies in the domain (realized positions are reduced on read);
/// NodeWrap wraps each node value and re-projects. The two agree for
/// deterministic particles and, when K = M+1, at every node.
enum class PeriodicRule { Shift, NodeWrap };

enum class Splitting { Strang, Lie };

/// When the Maxwellian pool is drawn: every collision call, or once at t = 0.
enum class PoolMode { PerStep, Initial };

struct BoundaryDiagnostics {
    std::size_t particles_touched = 0;
    std::size_t multi_period_wraps = 0;
};

/// x += v dt/2 on every coefficient.
void half_drift(ChaosEnsemble& ens, double dt);

/// v_h += dt sum_k w_k E[k][cell(x_i(z_k))] psi_h(z_k), with the realized
/// position reduced into the domain first (see SpatialGrid::reduce).
void kick(ChaosEnsemble& ens, const NodeFieldSet& fields, const GpcBasis& basis,
          const SpatialGrid& grid, double dt);

/// Particles that are inside at all nodes are left untouched.
BoundaryDiagnostics apply_periodic_bc(ChaosEnsemble& ens, const GpcBasis& basis,
                                      const SpatialGrid& grid,
                                      PeriodicRule rule = PeriodicRule::Shift);

BoundaryDiagnostics apply_reflecting_bc(ChaosEnsemble& ens, const GpcBasis& basis,
                                        const SpatialGrid& grid,
                                        ReflectRule rule = ReflectRule::Fold);

/// Node-wise wrap of one position (exact modular reduction).
double wrap_periodic(double x, const SpatialGrid& grid);

/// Node-wise reflection of one (x, v) pair; returns true if it was modified.
bool reflect_node(double& x, double& v, const SpatialGrid& grid, ReflectRule rule,
                  bool& multi_fold);

struct StepSettings {
    double dt = 0.1;
    double nu = 0.0;
    ParticleBoundary boundary = ParticleBoundary::Periodic;
    ReflectRule reflect_rule = ReflectRule::Fold;
    PeriodicRule periodic_rule = PeriodicRule::Shift;
    Splitting splitting = Splitting::Strang;
    PoolMode pool_mode = PoolMode::PerStep;
    CollisionRescale collision_rescale = CollisionRescale::Global;
    bool suppress_field = false;
    std::uint64_t seed = 0;
};

struct StepDiagnostics {
    std::size_t replaced = 0;
    std::size_t clamped_temperatures = 0;
    std::size_t boundary_events = 0;
    std::size_t multi_period_wraps = 0;
    std::size_t collision_calls = 0;

    void accumulate(const StepDiagnostics& other);
};

/// Stream keys for the collision sub-steps of time step n. Strang uses two
/// halves per step, Lie a single full step.
std::uint64_t collision_stream_step(std::uint64_t step, int half);

/// Drift, BC, per-node field solve, kick, drift, BC.
StepDiagnostics transport_step(ChaosEnsemble& ens, const GpcBasis& basis,
                               const SpatialGrid& grid, const StepSettings& settings);

/// One collision sub-step of length dt_sub.
StepDiagnostics collision_substep(ChaosEnsemble& ens, const GpcBasis& basis,
                                  const SpatialGrid& grid, const StepSettings& settings,
                                  double dt_sub, std::uint64_t stream_step,
                                  const MaxwellianPool* fixed_pool);

/// Strang: C(dt/2) T(dt) C(dt/2). With Splitting::Lie: C(dt) then T(dt).
/// `fixed_pool` is used when settings.pool_mode == PoolMode::Initial.
StepDiagnostics strang_step(ChaosEnsemble& ens, const GpcBasis& basis, const SpatialGrid& grid,
                            const StepSettings& settings, std::uint64_t step,
                            const MaxwellianPool* fixed_pool = nullptr);

} // namespace sgpic

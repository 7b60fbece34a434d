#include "sgpic/transport.hpp"

#include "sgpic/error.hpp"
#include "sgpic/parallel.hpp"

#include <cmath>

namespace sgpic {

void StepDiagnostics::accumulate(const StepDiagnostics& other)
{
    replaced += other.replaced;
    clamped_temperatures += other.clamped_temperatures;
    boundary_events += other.boundary_events;
    multi_period_wraps += other.multi_period_wraps;
    collision_calls += other.collision_calls;
}

void half_drift(ChaosEnsemble& ens, double dt)
{
    const double h = 0.5 * dt;
    const auto n = static_cast<std::ptrdiff_t>(ens.x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        ens.x[j] += ens.v[j] * h;
    }
}

void kick(ChaosEnsemble& ens, const NodeFieldSet& fields, const GpcBasis& basis,
          const SpatialGrid& grid, double dt)
{
    const std::size_t nk = basis.node_count();
    const std::size_t m = basis.modes();
    if (fields.nodes != nk || fields.n_cells != grid.n_cells()) {
        throw UsageError("kick: field set does not match basis/grid");
    }
    if (ens.modes != m) {
        throw UsageError("kick: ensemble/basis order mismatch");
    }
    const auto ni = static_cast<std::ptrdiff_t>(ens.count);
    ExceptionCollector errors;
#pragma omp parallel
    {
        std::vector<double> inc(m);
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
            errors.run([&] {
                const auto i = static_cast<std::size_t>(ii);
                const auto xc = ens.x_of(i);
                for (auto& c : inc) {
                    c = 0.0;
                }
                for (std::size_t k = 0; k < nk; ++k) {
                    const double x = grid.reduce(basis.eval_at_node(xc, k));
                    double e = 0.0;
                    if (grid.shape() == Shape::TopHat) {
                        e = fields.e(k, grid.cell_of(x));
                    } else {
                        const ShapeSplit s = grid.split(x);
                        e = (1.0 - s.second_share) * fields.e(k, s.first) +
                            s.second_share * fields.e(k, s.second);
                    }
                    const auto row = basis.weighted_psi_row(k);
                    for (std::size_t h = 0; h < m; ++h) {
                        inc[h] += row[h] * e;
                    }
                }
                auto vc = ens.v_of(i);
                for (std::size_t h = 0; h < m; ++h) {
                    vc[h] += dt * inc[h];
                }
            });
        }
    }
    errors.rethrow();
}

double wrap_periodic(double x, const SpatialGrid& grid)
{
    return grid.wrap(x);
}

namespace {

bool multi_period(double x, const SpatialGrid& grid)
{
    return x < grid.x_min() - grid.length() || x > grid.x_max() + grid.length();
}

void fold(double& x, double& v, const SpatialGrid& grid)
{
    const double lo = grid.x_min();
    const double hi = grid.x_max();
    if (multi_period(x, grid)) {
        // Even number of reflections: position mod 2L, velocity unchanged.
        const double period = 2.0 * grid.length();
        x -= period * std::floor((x - lo) / period);
    }
    while (!grid.inside(x)) {
        x = x < lo ? 2.0 * lo - x : 2.0 * hi - x;
        v = -v;
    }
}

} // namespace

bool reflect_node(double& x, double& v, const SpatialGrid& grid, ReflectRule rule,
                  bool& multi_fold)
{
    if (grid.inside(x)) {
        return false;
    }
    multi_fold = multi_fold || multi_period(x, grid);
    if (rule == ReflectRule::Literal) {
        const double sgn = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
        const double xb = x < grid.x_min() ? grid.x_min() : grid.x_max();
        x = xb - std::abs(x - xb) * sgn;
        v = -v;
        if (grid.inside(x)) {
            return true;
        }
        multi_fold = true;
    }
    fold(x, v, grid);
    return true;
}

namespace {

BoundaryDiagnostics shift_periodic(ChaosEnsemble& ens, const SpatialGrid& grid)
{
    const auto ni = static_cast<std::ptrdiff_t>(ens.count);
    std::size_t touched = 0;
    std::size_t wraps = 0;
    ExceptionCollector errors;
#pragma omp parallel for schedule(static) reduction(+ : touched, wraps)
    for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
        errors.run([&] {
            double& mean = ens.x[static_cast<std::size_t>(ii) * ens.modes];
            if (grid.inside(mean)) {
                return;
            }
            if (multi_period(mean, grid)) {
                ++wraps;
            }
            mean = grid.wrap(mean);
            ++touched;
        });
    }
    errors.rethrow();
    return {touched, wraps};
}

} // namespace

BoundaryDiagnostics apply_periodic_bc(ChaosEnsemble& ens, const GpcBasis& basis,
                                      const SpatialGrid& grid, PeriodicRule rule)
{
    if (ens.modes != basis.modes()) {
        throw UsageError("periodic bc: ensemble/basis order mismatch");
    }
    if (rule == PeriodicRule::Shift) {
        return shift_periodic(ens, grid);
    }
    const std::size_t nk = basis.node_count();
    const auto ni = static_cast<std::ptrdiff_t>(ens.count);
    std::size_t touched = 0;
    std::size_t wraps = 0;
    ExceptionCollector errors;
#pragma omp parallel reduction(+ : touched, wraps)
    {
        std::vector<double> xs(nk);
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
            errors.run([&] {
                const auto i = static_cast<std::size_t>(ii);
                const auto xc = ens.x_of(i);
                bool outside = false;
                bool multi = false;
                for (std::size_t k = 0; k < nk; ++k) {
                    const double x = basis.eval_at_node(xc, k);
                    if (!grid.inside(x)) {
                        outside = true;
                        multi = multi || multi_period(x, grid);
                    }
                    xs[k] = wrap_periodic(x, grid);
                }
                if (outside) {
                    project_preserving_constants(xs, basis, ens.x_of(i));
                    ++touched;
                    if (multi) {
                        ++wraps;
                    }
                }
            });
        }
    }
    errors.rethrow();
    return {touched, wraps};
}

BoundaryDiagnostics apply_reflecting_bc(ChaosEnsemble& ens, const GpcBasis& basis,
                                        const SpatialGrid& grid, ReflectRule rule)
{
    const std::size_t nk = basis.node_count();
    const auto ni = static_cast<std::ptrdiff_t>(ens.count);
    std::size_t touched = 0;
    std::size_t wraps = 0;
    ExceptionCollector errors;
#pragma omp parallel reduction(+ : touched, wraps)
    {
        std::vector<double> xs(nk);
        std::vector<double> vs(nk);
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
            errors.run([&] {
                const auto i = static_cast<std::size_t>(ii);
                const auto xc = ens.x_of(i);
                const auto vc = ens.v_of(i);
                bool outside = false;
                bool multi = false;
                for (std::size_t k = 0; k < nk; ++k) {
                    xs[k] = basis.eval_at_node(xc, k);
                    vs[k] = basis.eval_at_node(vc, k);
                    if (reflect_node(xs[k], vs[k], grid, rule, multi)) {
                        outside = true;
                    }
                }
                if (outside) {
                    project_preserving_constants(xs, basis, ens.x_of(i));
                    project_preserving_constants(vs, basis, ens.v_of(i));
                    ++touched;
                    if (multi) {
                        ++wraps;
                    }
                }
            });
        }
    }
    errors.rethrow();
    return {touched, wraps};
}

std::uint64_t collision_stream_step(std::uint64_t step, int half)
{
    return 2 * step + static_cast<std::uint64_t>(half) + 1;
}

namespace {

BoundaryDiagnostics apply_bc(ChaosEnsemble& ens, const GpcBasis& basis, const SpatialGrid& grid,
                             const StepSettings& settings)
{
    if (settings.boundary == ParticleBoundary::Periodic) {
        return apply_periodic_bc(ens, basis, grid, settings.periodic_rule);
    }
    return apply_reflecting_bc(ens, basis, grid, settings.reflect_rule);
}

} // namespace

StepDiagnostics transport_step(ChaosEnsemble& ens, const GpcBasis& basis,
                               const SpatialGrid& grid, const StepSettings& settings)
{
    if (!(settings.dt > 0.0)) {
        throw UsageError("transport: dt must be positive");
    }
    StepDiagnostics diag;
    auto record = [&diag](const BoundaryDiagnostics& b) {
        diag.boundary_events += b.particles_touched;
        diag.multi_period_wraps += b.multi_period_wraps;
    };

    half_drift(ens, settings.dt);
    record(apply_bc(ens, basis, grid, settings));

    if (!settings.suppress_field) {
        const NodeFieldSet fields = fields_at_all_nodes(ens, basis, grid);
        kick(ens, fields, basis, grid, settings.dt);
    }

    half_drift(ens, settings.dt);
    record(apply_bc(ens, basis, grid, settings));
    return diag;
}

StepDiagnostics collision_substep(ChaosEnsemble& ens, const GpcBasis& basis,
                                  const SpatialGrid& grid, const StepSettings& settings,
                                  double dt_sub, std::uint64_t stream_step,
                                  const MaxwellianPool* fixed_pool)
{
    StepDiagnostics diag;
    if (settings.nu == 0.0) {
        return diag;
    }
    std::optional<MaxwellianPool> drawn;
    const MaxwellianPool* pool = fixed_pool;
    if (settings.pool_mode == PoolMode::PerStep || pool == nullptr) {
        if (settings.pool_mode == PoolMode::Initial) {
            throw UsageError("collision: PoolMode::Initial requires a fixed pool");
        }
        drawn = build_maxwellian_pool(ens.count, settings.seed, stream_step);
        pool = &*drawn;
    }
    const CollisionDiagnostics c =
        bgk_step(ens, basis, grid, dt_sub, settings.nu, *pool, {settings.seed, stream_step},
                 settings.collision_rescale);
    diag.replaced = c.replaced;
    diag.clamped_temperatures = c.clamped_temperatures;
    diag.collision_calls = 1;
    return diag;
}

StepDiagnostics strang_step(ChaosEnsemble& ens, const GpcBasis& basis, const SpatialGrid& grid,
                            const StepSettings& settings, std::uint64_t step,
                            const MaxwellianPool* fixed_pool)
{
    StepDiagnostics diag;
    if (settings.splitting == Splitting::Lie) {
        diag.accumulate(collision_substep(ens, basis, grid, settings, settings.dt,
                                          collision_stream_step(step, 0), fixed_pool));
        diag.accumulate(transport_step(ens, basis, grid, settings));
        return diag;
    }
    const double half = 0.5 * settings.dt;
    diag.accumulate(collision_substep(ens, basis, grid, settings, half,
                                      collision_stream_step(step, 0), fixed_pool));
    diag.accumulate(transport_step(ens, basis, grid, settings));
    diag.accumulate(collision_substep(ens, basis, grid, settings, half,
                                      collision_stream_step(step, 1), fixed_pool));
    return diag;
}

} // namespace sgpic

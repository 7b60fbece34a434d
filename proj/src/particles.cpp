#include "sgpic/particles.hpp"

#include "sgpic/error.hpp"
#include "sgpic/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sgpic {

ChaosEnsemble::ChaosEnsemble(std::size_t n, std::size_t n_modes, std::uint64_t seed_)
    : count(n), modes(n_modes), x(n * n_modes, 0.0), v(n * n_modes, 0.0),
      weight(n_modes), seed(seed_)
{
}

double ChaosEnsemble::weight_at_node(const GpcBasis& basis, std::size_t k) const
{
    return basis.eval_at_node(weight.coeffs, k);
}

double ChaosEnsemble::mass_at_node(const GpcBasis& basis, std::size_t k) const
{
    return weight_at_node(basis, k) * static_cast<double>(count);
}

NodeRealization evaluate_ensemble_at_node(const ChaosEnsemble& ens, const GpcBasis& basis,
                                          std::size_t k)
{
    if (k >= basis.node_count()) {
        throw UsageError("particles: node index " + std::to_string(k) + " out of range");
    }
    if (ens.modes != basis.modes()) {
        throw UsageError("particles: ensemble/basis order mismatch");
    }
    NodeRealization out;
    out.positions.resize(ens.count);
    out.velocities.resize(ens.count);
    for (std::size_t i = 0; i < ens.count; ++i) {
        out.positions[i] = basis.eval_at_node(ens.x_of(i), k);
        out.velocities[i] = basis.eval_at_node(ens.v_of(i), k);
    }
    return out;
}

void evaluate_all_nodes(const ChaosEnsemble& ens, const GpcBasis& basis, NodeSamples& out,
                        bool with_velocities)
{
    if (ens.modes != basis.modes()) {
        throw UsageError("particles: ensemble/basis order mismatch");
    }
    const std::size_t n = ens.count;
    const std::size_t nk = basis.node_count();
    out.nodes = nk;
    out.count = n;
    out.x.resize(nk * n);
    if (with_velocities) {
        out.v.resize(nk * n);
    }
    const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const auto xc = ens.x_of(i);
        const auto vc = ens.v_of(i);
        for (std::size_t k = 0; k < nk; ++k) {
            out.x[k * n + i] = basis.eval_at_node(xc, k);
            if (with_velocities) {
                out.v[k * n + i] = basis.eval_at_node(vc, k);
            }
        }
    }
}

void realize_all_nodes(const ChaosEnsemble& ens, const GpcBasis& basis, const SpatialGrid& grid,
                       NodeSamples& out, bool with_velocities)
{
    evaluate_all_nodes(ens, basis, out, with_velocities);
    bool bad = false;
    const auto n = static_cast<std::ptrdiff_t>(out.x.size());
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        if (!std::isfinite(out.x[j])) {
            bad = true;
            continue;
        }
        out.x[j] = grid.reduce(out.x[j]);
    }
    if (bad) {
        throw NumericalError("particles: non-finite position");
    }
}

double InitialCondition::density(double x, double z) const
{
    switch (kind) {
    case InitialKind::PerturbedMaxwellian:
    case InitialKind::TwoStream:
        return 1.0 + amplitude(z) * std::cos(wave_number * x);
    case InitialKind::SodRiemann:
        return x < interface(z) ? rho_left : rho_right;
    case InitialKind::GaussianBump:
        return std::exp(-(x - bump_center) * (x - bump_center)) / std::sqrt(std::numbers::pi);
    }
    return 0.0;
}

double InitialCondition::cumulative_mass(double x, double z) const
{
    const double x0 = domain.lo;
    switch (kind) {
    case InitialKind::PerturbedMaxwellian:
    case InitialKind::TwoStream:
        return (x - x0) + amplitude(z) / wave_number *
                              (std::sin(wave_number * x) - std::sin(wave_number * x0));
    case InitialKind::SodRiemann: {
        const double xi = interface(z);
        const double left = std::min(x, xi) - x0;
        const double right = x > xi ? x - xi : 0.0;
        return rho_left * left + rho_right * right;
    }
    case InitialKind::GaussianBump:
        return 0.5 * (std::erf(x - bump_center) - std::erf(x0 - bump_center));
    }
    return 0.0;
}

double InitialCondition::temperature_at(double x, double z) const
{
    if (kind == InitialKind::SodRiemann) {
        return x < interface(z) ? temperature_left(z) : temperature_right(z);
    }
    return temperature(z);
}

void InitialCondition::validate(Interval support) const
{
    if (!(domain.hi > domain.lo)) {
        throw ConfigError("initial: empty domain");
    }
    for (const double z : {support.lo, support.hi}) {
        switch (kind) {
        case InitialKind::PerturbedMaxwellian:
        case InitialKind::TwoStream:
            if (!(amplitude(z) > -1.0)) {
                throw ConfigError("initial: amplitude alpha(z) must exceed -1 on the support");
            }
            if (!(wave_number > 0.0)) {
                throw ConfigError("initial: wave_number must be positive");
            }
            if (!(temperature(z) > 0.0)) {
                throw ConfigError("initial: temperature must be positive on the support");
            }
            break;
        case InitialKind::GaussianBump:
            if (!(temperature(z) > 0.0)) {
                throw ConfigError("initial: temperature must be positive on the support");
            }
            break;
        case InitialKind::SodRiemann:
            if (!(temperature_left(z) > 0.0) || !(temperature_right(z) > 0.0)) {
                throw ConfigError("initial: Sod temperatures must be positive on the support");
            }
            if (!(interface(z) > domain.lo && interface(z) < domain.hi)) {
                throw ConfigError("initial: Sod interface must lie inside the domain");
            }
            if (!(rho_left > 0.0) || !(rho_right > 0.0)) {
                throw ConfigError("initial: Sod densities must be positive");
            }
            break;
        }
    }
}

double inverse_cdf(const InitialCondition& ic, double u, double z)
{
    const double mass = ic.total_mass(z);
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw ConfigError("initial: non-positive total mass, inverse CDF unresolvable");
    }
    const double target = u * mass;
    double lo = ic.domain.lo;
    double hi = ic.domain.hi;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        // On wide domains the bracket can shrink to adjacent doubles first.
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (ic.cumulative_mass(mid, z) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

struct BaseDraws {
    double position_quantile;
    double normal;
    bool upper_beam;
};

BaseDraws draws_for(const InitialCondition& ic, std::size_t i, std::size_t n, std::uint64_t seed)
{
    BaseDraws d{};
    if (ic.sampling == SamplingMode::Quiet) {
        d.position_quantile = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        if (ic.kind == InitialKind::TwoStream) {
            d.upper_beam = (i % 2) == 0;
            d.normal = normal_quantile(radical_inverse(i / 2 + 1, 2));
        } else {
            d.upper_beam = false;
            d.normal = normal_quantile(radical_inverse(i + 1, 2));
        }
        return d;
    }
    auto pos = particle_stream(seed, i, 0, Stream::InitPosition);
    auto vel = particle_stream(seed, i, 0, Stream::InitVelocity);
    auto beam = particle_stream(seed, i, 0, Stream::InitBeam);
    d.position_quantile = uniform01(pos);
    d.normal = standard_normal(vel);
    d.upper_beam = uniform01(beam) < 0.5;
    return d;
}

} // namespace

ChaosEnsemble sample_initial(const InitialCondition& ic, const GpcBasis& basis,
                             std::size_t count, std::uint64_t seed)
{
    if (count < 1) {
        throw ConfigError("particles: count must be >= 1");
    }
    ic.validate(basis.support());

    const std::size_t m = basis.modes();
    const std::size_t nk = basis.node_count();
    ChaosEnsemble ens(count, m, seed);

    std::vector<double> node_mass(nk);
    for (std::size_t k = 0; k < nk; ++k) {
        const double mass = ic.total_mass(basis.nodes()[k]);
        if (!(mass > 0.0) || !std::isfinite(mass)) {
            throw ConfigError("initial: non-positive total mass, inverse CDF unresolvable");
        }
        node_mass[k] = mass / static_cast<double>(count);
    }
    project_preserving_constants(node_mass, basis, ens.weight.coeffs);

    const auto ni = static_cast<std::ptrdiff_t>(count);
    bool failed = false;
#pragma omp parallel
    {
        std::vector<double> xs(nk);
        std::vector<double> vs(nk);
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < ni; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            const BaseDraws d = draws_for(ic, i, count, seed);
            for (std::size_t k = 0; k < nk; ++k) {
                const double z = basis.nodes()[k];
                const double x = inverse_cdf(ic, d.position_quantile, z);
                double vel = std::sqrt(ic.temperature_at(x, z)) * d.normal;
                if (ic.kind == InitialKind::TwoStream) {
                    vel += d.upper_beam ? ic.drift : -ic.drift;
                }
                xs[k] = x;
                vs[k] = vel;
                if (!std::isfinite(x) || !std::isfinite(vel)) {
#pragma omp atomic write
                    failed = true;
                }
            }
            project_preserving_constants(xs, basis, ens.x_of(i));
            project_preserving_constants(vs, basis, ens.v_of(i));
        }
    }
    if (failed) {
        throw NumericalError("particles: non-finite initial sample");
    }
    return ens;
}

} // namespace sgpic

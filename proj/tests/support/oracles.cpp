#include "oracles.hpp"

#include "sgpic/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace oracle {

std::vector<std::vector<long double>> shifted_legendre(int order)
{
    std::vector<std::vector<long double>> basis;
    for (int h = 0; h <= order; ++h) {
        // p_h(z) = sqrt(2h+1) sum_a (-1)^(h+a) C(h,a) C(h+a,a) z^a
        std::vector<long double> p(static_cast<std::size_t>(order) + 1, 0.0L);
        long double c_ha = 1.0L;
        long double c_hpa = 1.0L;
        for (int a = 0; a <= h; ++a) {
            if (a > 0) {
                c_ha = c_ha * (h - a + 1) / a;
                c_hpa = c_hpa * (h + a) / a;
            }
            const long double sign = (h + a) % 2 == 0 ? 1.0L : -1.0L;
            p[a] = sign * c_ha * c_hpa * std::sqrt(static_cast<long double>(2 * h + 1));
        }
        basis.push_back(p);
    }
    return basis;
}

long double eval_monomials(const std::vector<long double>& coeffs, long double z)
{
    long double s = 0.0L;
    for (std::size_t a = coeffs.size(); a-- > 0;) {
        s = s * z + coeffs[a];
    }
    return s;
}

void golub_welsch(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int j = 1; j < n; ++j) {
        const double b = j / std::sqrt(4.0 * j * j - 1.0);
        jacobi(j, j - 1) = b;
        jacobi(j - 1, j) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
    nodes.resize(n);
    weights.resize(n);
    for (int k = 0; k < n; ++k) {
        nodes[k] = 0.5 * (eig.eigenvalues()(k) + 1.0);
        const double v0 = eig.eigenvectors()(0, k);
        weights[k] = v0 * v0;
    }
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels)
{
    if (panels % 2 != 0) {
        ++panels;
    }
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    }
    return s * h / 3.0;
}

std::vector<double> dense_poisson(const std::vector<double>& rho, double length, bool periodic)
{
    const auto n = static_cast<int>(rho.size());
    const double dx = length / n;
    std::vector<double> source(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        if (periodic) {
            const double left = rho[(j - 1 + n) % n];
            const double right = rho[j % n];
            source[j] = 1.0 - 0.5 * (left + right);
        } else if (j > 0 && j < n) {
            source[j] = 1.0 - 0.5 * (rho[j - 1] + rho[j]);
        }
    }
    std::vector<double> phi(n + 1, 0.0);
    if (periodic) {
        double mean = 0.0;
        for (int j = 0; j < n; ++j) {
            mean += source[j];
        }
        mean /= n;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd b(n);
        for (int j = 0; j < n; ++j) {
            a(j, (j - 1 + n) % n) += 1.0;
            a(j, j) += -2.0;
            a(j, (j + 1) % n) += 1.0;
            b(j) = dx * dx * (source[j] - mean);
        }
        a.row(0).setZero();
        a(0, 0) = 1.0;
        b(0) = 0.0;
        const Eigen::VectorXd x = a.fullPivLu().solve(b);
        for (int j = 0; j < n; ++j) {
            phi[j] = x(j);
        }
        phi[n] = phi[0];
        return phi;
    }
    const int m = n + 1;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    a(0, 0) = 1.0;
    a(n, n) = 1.0;
    for (int j = 1; j < n; ++j) {
        a(j, j - 1) = 1.0;
        a(j, j) = -2.0;
        a(j, j + 1) = 1.0;
        b(j) = dx * dx * source[j];
    }
    const Eigen::VectorXd x = a.fullPivLu().solve(b);
    for (int j = 0; j < m; ++j) {
        phi[j] = x(j);
    }
    return phi;
}

BruteMoments brute_moments(const std::vector<double>& x, const std::vector<double>& v,
                           double weight, double lo, double hi, std::size_t cells)
{
    const double dx = (hi - lo) / static_cast<double>(cells);
    BruteMoments m;
    m.count.assign(cells, 0);
    m.rho.assign(cells, 0.0);
    m.u.assign(cells, 0.0);
    m.t.assign(cells, 0.0);
    for (std::size_t l = 0; l < cells; ++l) {
        const double a = lo + static_cast<double>(l) * dx;
        const double b = l + 1 == cells ? hi : a + dx;
        std::vector<double> members;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] >= a && (x[i] < b || (l + 1 == cells && x[i] <= b))) {
                members.push_back(v[i]);
            }
        }
        m.count[l] = members.size();
        m.rho[l] = weight * static_cast<double>(members.size()) / dx;
        if (members.empty()) {
            continue;
        }
        long double s = 0.0L;
        for (const double w : members) {
            s += w;
        }
        const long double mean = s / members.size();
        long double d = 0.0L;
        for (const double w : members) {
            d += (w - mean) * (w - mean);
        }
        m.u[l] = static_cast<double>(mean);
        m.t[l] = static_cast<double>(d / members.size());
    }
    return m;
}

DeterministicPic::DeterministicPic(const Setup& s)
    : s_(s), dx_((s.hi - s.lo) / s.cells), x_(s.particles), v_(s.particles)
{
    const double k = s.wave_number;
    auto cumulative = [&](double x) {
        return (x - s.lo) + s.amplitude / k * (std::sin(k * x) - std::sin(k * s.lo));
    };
    const double mass = cumulative(s.hi);
    weight_ = mass / static_cast<double>(s.particles);
    for (std::size_t i = 0; i < s.particles; ++i) {
        auto pos = sgpic::particle_stream(s.seed, i, 0, sgpic::Stream::InitPosition);
        auto vel = sgpic::particle_stream(s.seed, i, 0, sgpic::Stream::InitVelocity);
        const double target = sgpic::uniform01(pos) * mass;
        double a = s.lo;
        double b = s.hi;
        while (b - a > 1e-12) {
            const double mid = 0.5 * (a + b);
            if (cumulative(mid) < target) {
                a = mid;
            } else {
                b = mid;
            }
        }
        x_[i] = 0.5 * (a + b);
        v_[i] = std::sqrt(s.temperature) * sgpic::standard_normal(vel);
    }
}

std::size_t DeterministicPic::cell(double x) const
{
    const auto l = static_cast<std::size_t>((x - s_.lo) / dx_);
    return std::min(l, static_cast<std::size_t>(s_.cells) - 1);
}

void DeterministicPic::collide(double dt_sub, std::uint64_t stream_step)
{
    if (s_.nu == 0.0) {
        return;
    }
    const std::size_t n = x_.size();
    std::vector<double> pool(n);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto gen = sgpic::particle_stream(s_.seed, i, stream_step, sgpic::Stream::CollisionNormal);
        pool[i] = sgpic::standard_normal(gen);
        sum += pool[i];
        sum_sq += pool[i] * pool[i];
    }
    const double mean = sum / static_cast<double>(n);
    const double energy = sum_sq / (2.0 * static_cast<double>(n));
    const double tau = std::sqrt((energy - 0.5 * mean * mean) / 0.5);
    for (auto& p : pool) {
        p = (p - mean) / tau;
    }

    const auto nc = static_cast<std::size_t>(s_.cells);
    std::vector<std::size_t> count(nc, 0);
    std::vector<double> u(nc, 0.0);
    std::vector<double> t(nc, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        ++count[cell(x_[i])];
        u[cell(x_[i])] += v_[i];
    }
    for (std::size_t l = 0; l < nc; ++l) {
        u[l] = count[l] > 0 ? u[l] / static_cast<double>(count[l]) : 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double d = v_[i] - u[cell(x_[i])];
        t[cell(x_[i])] += d * d;
    }
    for (std::size_t l = 0; l < nc; ++l) {
        t[l] = count[l] > 0 ? std::sqrt(t[l] / static_cast<double>(count[l])) : 0.0;
    }

    const double keep = std::exp(-s_.nu * dt_sub);
    for (std::size_t i = 0; i < n; ++i) {
        auto gen = sgpic::particle_stream(s_.seed, i, stream_step, sgpic::Stream::CollisionSelect);
        if (sgpic::uniform01(gen) < keep) {
            continue;
        }
        const std::size_t l = cell(x_[i]);
        v_[i] = u[l] + t[l] * pool[i];
    }
}

void DeterministicPic::drift()
{
    for (std::size_t i = 0; i < x_.size(); ++i) {
        x_[i] += v_[i] * (0.5 * s_.dt);
    }
}

void DeterministicPic::wrap()
{
    const double length = s_.hi - s_.lo;
    for (auto& x : x_) {
        if (x < s_.lo || x > s_.hi) {
            x = std::clamp(x - length * std::floor((x - s_.lo) / length), s_.lo, s_.hi);
        }
    }
}

void DeterministicPic::solve_field()
{
    const auto n = static_cast<std::size_t>(s_.cells);
    std::vector<std::size_t> count(n, 0);
    for (const double x : x_) {
        ++count[cell(x)];
    }
    std::vector<double> rho(n);
    for (std::size_t l = 0; l < n; ++l) {
        rho[l] = weight_ * static_cast<double>(count[l]) / dx_;
    }
    std::vector<double> src(n);
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        src[j] = 1.0 - 0.5 * (rho[j == 0 ? n - 1 : j - 1] + rho[j]);
        mean += src[j];
    }
    mean /= static_cast<double>(n);

    // Thomas algorithm on edges 1..n-1 with phi_0 = phi_n = 0.
    const std::size_t m = n - 1;
    std::vector<double> cp(m, 0.0);
    std::vector<double> d(m);
    for (std::size_t j = 0; j < m; ++j) {
        d[j] = dx_ * dx_ * (src[j + 1] - mean);
    }
    double beta = -2.0;
    d[0] /= beta;
    for (std::size_t j = 1; j < m; ++j) {
        cp[j] = 1.0 / beta;
        beta = -2.0 - cp[j];
        d[j] = (d[j] - d[j - 1]) / beta;
    }
    for (std::size_t j = m - 1; j-- > 0;) {
        d[j] -= cp[j + 1] * d[j + 1];
    }
    std::vector<double> phi(n + 1, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        phi[j + 1] = d[j];
    }
    e_.assign(n, 0.0);
    for (std::size_t l = 0; l < n; ++l) {
        e_[l] = -(phi[l + 1] - phi[l]) / dx_;
    }
}

void DeterministicPic::step()
{
    collide(0.5 * s_.dt, 2 * step_ + 1);
    drift();
    wrap();
    solve_field();
    for (std::size_t i = 0; i < x_.size(); ++i) {
        v_[i] += s_.dt * e_[cell(x_[i])];
    }
    drift();
    wrap();
    collide(0.5 * s_.dt, 2 * step_ + 2);
    ++step_;
}

} // namespace oracle

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

/// Orthonormal shifted Legendre polynomials on [0,1] from the closed-form
/// integer coefficients. Row h holds the monomial coefficients of p_h.
std::vector<std::vector<long double>> shifted_legendre(int order);

long double eval_monomials(const std::vector<long double>& coeffs, long double z);

/// Gauss-Legendre rule on [0,1] with weights summing to one, from the
/// eigen-decomposition of the Jacobi matrix.
void golub_welsch(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Composite Simpson integral of f over [a, b] with `panels` (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int panels);

/// Dense solve of the edge-centred system phi'' = 1 - rho. Periodic: cyclic
/// N x N system in phi_0..phi_{N-1}, source mean removed, row 0 replaced by
/// phi_0 = 0. Dirichlet: phi_0 = phi_N = 0. Returns N+1 edge values.
std::vector<double> dense_poisson(const std::vector<double>& rho, double length, bool periodic);

/// Per-node, per-cell moments by direct enumeration.
struct BruteMoments {
    std::vector<std::size_t> count;
    std::vector<double> rho;
    std::vector<double> u;
    std::vector<double> t;
};
BruteMoments brute_moments(const std::vector<double>& x, const std::vector<double>& v,
                           double weight, double lo, double hi, std::size_t cells);

/// Standalone deterministic particle scheme: BGK particle collisions with a
/// rescaled Maxwellian pool and leapfrog transport with a periodic
/// finite-difference field. Shares the library's per-particle streams.
class DeterministicPic {
public:
    struct Setup {
        std::size_t particles = 0;
        int cells = 0;
        double lo = 0.0;
        double hi = 0.0;
        double dt = 0.1;
        double nu = 0.0;
        double wave_number = 0.5;
        double amplitude = 0.0;
        double temperature = 1.0;
        std::uint64_t seed = 0;
    };

    explicit DeterministicPic(const Setup& s);

    void step();
    double time() const { return static_cast<double>(step_) * s_.dt; }

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& v() const { return v_; }
    double weight() const { return weight_; }
    /// Cell-centred field from the latest solve.
    const std::vector<double>& field() const { return e_; }

private:
    void collide(double dt_sub, std::uint64_t stream_step);
    void drift();
    void wrap();
    void solve_field();
    std::size_t cell(double x) const;

    Setup s_;
    double dx_;
    double weight_;
    std::vector<double> x_;
    std::vector<double> v_;
    std::vector<double> e_;
    std::uint64_t step_ = 0;
};

} // namespace oracle

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sgpic {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Expansion coefficients of one random quantity in the chaos basis.
/// coeffs[0] is the mean; the remaining entries carry the z-dependence.
struct ChaosVector {
    std::vector<double> coeffs;

    ChaosVector() = default;
    explicit ChaosVector(std::size_t n_modes) : coeffs(n_modes, 0.0) {}
    explicit ChaosVector(std::vector<double> c) : coeffs(std::move(c)) {}

    std::size_t size() const { return coeffs.size(); }
    double operator[](std::size_t h) const { return coeffs[h]; }
    double& operator[](std::size_t h) { return coeffs[h]; }

    static ChaosVector constant(double value, std::size_t n_modes)
    {
        ChaosVector v(n_modes);
        v.coeffs[0] = value;
        return v;
    }
};

struct MeanVariance {
    double mean;
    double variance;
};

/// Orthonormal shifted-Legendre basis for a uniform random input on `support`,
/// paired with a K-point Gauss-Legendre rule whose weights sum to one.
///
/// Basis values at the nodes are tabulated at construction; the object is
/// immutable afterwards and may be shared freely between threads.
class GpcBasis {
public:
    GpcBasis(int order, Interval support, int node_count);

    /// Default rule: K = 2(M+1).
    static GpcBasis with_default_nodes(int order, Interval support);

    int order() const { return order_; }
    std::size_t modes() const { return static_cast<std::size_t>(order_) + 1; }
    std::size_t node_count() const { return nodes_.size(); }
    Interval support() const { return support_; }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    /// psi_h(z) by the three-term recurrence. Throws UsageError if h > M.
    double eval(int h, double z) const;

    /// All psi_0..psi_M at z.
    void eval_all(double z, std::span<double> out) const;

    /// psi_h(z_k), row-major K x (M+1).
    double psi(std::size_t k, std::size_t h) const { return psi_[k * modes() + h]; }
    /// w_k psi_h(z_k), row-major K x (M+1).
    double weighted_psi(std::size_t k, std::size_t h) const { return wpsi_[k * modes() + h]; }

    std::span<const double> psi_row(std::size_t k) const
    {
        return {psi_.data() + k * modes(), modes()};
    }
    std::span<const double> weighted_psi_row(std::size_t k) const
    {
        return {wpsi_.data() + k * modes(), modes()};
    }

    /// Value of the expansion at node k.
    double eval_at_node(std::span<const double> coeffs, std::size_t k) const
    {
        const double* row = psi_.data() + k * modes();
        double s = 0.0;
        for (std::size_t h = 0; h < coeffs.size(); ++h) {
            s += coeffs[h] * row[h];
        }
        return s;
    }

private:
    int order_;
    Interval support_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> psi_;
    std::vector<double> wpsi_;
};

/// Gauss-Legendre nodes/weights on [-1,1] (weights sum to 2).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

std::vector<double> eval_at_nodes(const ChaosVector& vec, const GpcBasis& basis);

/// Evaluate an expansion at an arbitrary point of the support.
double eval_expansion(std::span<const double> coeffs, const GpcBasis& basis, double z);

/// coeffs[h] = sum_k w_k values[k] psi_h(z_k).
ChaosVector project(std::span<const double> node_values, const GpcBasis& basis);

/// In-place variant writing into an existing coefficient span.
void project_into(std::span<const double> node_values, const GpcBasis& basis,
                  std::span<double> coeffs);

/// As project_into, but node data that is bitwise constant across nodes maps
/// to an exactly deterministic expansion (c, 0, ..., 0).
void project_preserving_constants(std::span<const double> node_values, const GpcBasis& basis,
                                  std::span<double> coeffs);

MeanVariance mean_variance(const ChaosVector& vec);
MeanVariance mean_variance(std::span<const double> coeffs);

/// Quadrature mean and variance of node-wise samples (variance as sum w (f - mean)^2).
MeanVariance node_statistics(std::span<const double> node_values, const GpcBasis& basis);

} // namespace sgpic

#include "sgpic/gpc.hpp"

#include "sgpic/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sgpic {

namespace {

// Legendre P_n(s) and P_n'(s) by recurrence.
void legendre_with_derivative(int n, double s, double& p, double& dp)
{
    double p0 = 1.0;
    double p1 = s;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int j = 1; j < n; ++j) {
        const double p2 = ((2.0 * j + 1.0) * s * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (s * p1 - p0) / (s * s - 1.0);
}

double to_reference(Interval support, double z)
{
    return 2.0 * (z - support.lo) / support.length() - 1.0;
}

} // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (n < 1) {
        throw ConfigError("gauss_legendre: node count must be >= 1");
    }
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double s = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p = 0.0;
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            legendre_with_derivative(n, s, p, dp);
            const double ds = p / dp;
            s -= ds;
            if (std::abs(ds) < 1e-16) {
                break;
            }
        }
        legendre_with_derivative(n, s, p, dp);
        const double w = 2.0 / ((1.0 - s * s) * dp * dp);
        // Ascending order, mirrored so the rule is exactly symmetric.
        nodes[i] = -s;
        nodes[n - 1 - i] = s;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        nodes[n / 2] = 0.0;
    }
}

GpcBasis::GpcBasis(int order, Interval support, int node_count)
    : order_(order), support_(support)
{
    if (order < 0) {
        throw ConfigError("gpc: order must be >= 0, got " + std::to_string(order));
    }
    if (!(support.hi > support.lo) || !std::isfinite(support.lo) || !std::isfinite(support.hi)) {
        throw ConfigError("gpc: degenerate support interval");
    }
    if (node_count < order + 1) {
        throw ConfigError("gpc: node_count " + std::to_string(node_count) +
                          " < order+1 = " + std::to_string(order + 1));
    }

    std::vector<double> ref_nodes;
    std::vector<double> ref_weights;
    gauss_legendre(node_count, ref_nodes, ref_weights);

    nodes_.resize(node_count);
    weights_.resize(node_count);
    double total = 0.0;
    for (int k = 0; k < node_count; ++k) {
        nodes_[k] = support.lo + 0.5 * (ref_nodes[k] + 1.0) * support.length();
        total += ref_weights[k];
    }
    for (int k = 0; k < node_count; ++k) {
        weights_[k] = ref_weights[k] / total;
    }

    const std::size_t m = modes();
    psi_.resize(node_count * m);
    wpsi_.resize(node_count * m);
    for (int k = 0; k < node_count; ++k) {
        eval_all(nodes_[k], std::span<double>(psi_.data() + k * m, m));
        for (std::size_t h = 0; h < m; ++h) {
            wpsi_[k * m + h] = weights_[k] * psi_[k * m + h];
        }
    }
}

GpcBasis GpcBasis::with_default_nodes(int order, Interval support)
{
    return GpcBasis(order, support, 2 * (order + 1));
}

double GpcBasis::eval(int h, double z) const
{
    if (h < 0 || h > order_) {
        throw UsageError("gpc: basis index " + std::to_string(h) + " outside [0," +
                         std::to_string(order_) + "]");
    }
    if (h == 0) {
        return 1.0;
    }
    const double s = to_reference(support_, z);
    double p0 = 1.0;
    double p1 = s;
    for (int j = 1; j < h; ++j) {
        const double p2 = ((2.0 * j + 1.0) * s * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return std::sqrt(2.0 * h + 1.0) * p1;
}

void GpcBasis::eval_all(double z, std::span<double> out) const
{
    if (out.size() != modes()) {
        throw UsageError("gpc: eval_all output has wrong length");
    }
    const double s = to_reference(support_, z);
    double p0 = 1.0;
    double p1 = s;
    out[0] = 1.0;
    if (order_ >= 1) {
        out[1] = std::sqrt(3.0) * s;
    }
    for (int j = 1; j < order_; ++j) {
        const double p2 = ((2.0 * j + 1.0) * s * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
        out[j + 1] = std::sqrt(2.0 * (j + 1) + 1.0) * p2;
    }
}

std::vector<double> eval_at_nodes(const ChaosVector& vec, const GpcBasis& basis)
{
    if (vec.size() != basis.modes()) {
        throw UsageError("gpc: chaos vector has " + std::to_string(vec.size()) +
                         " modes, basis has " + std::to_string(basis.modes()));
    }
    std::vector<double> out(basis.node_count());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = basis.eval_at_node(vec.coeffs, k);
    }
    return out;
}

double eval_expansion(std::span<const double> coeffs, const GpcBasis& basis, double z)
{
    if (coeffs.size() != basis.modes()) {
        throw UsageError("gpc: coefficient length mismatch");
    }
    std::vector<double> psi(basis.modes());
    basis.eval_all(z, psi);
    double s = 0.0;
    for (std::size_t h = 0; h < psi.size(); ++h) {
        s += coeffs[h] * psi[h];
    }
    return s;
}

void project_into(std::span<const double> node_values, const GpcBasis& basis,
                  std::span<double> coeffs)
{
    if (node_values.size() != basis.node_count()) {
        throw UsageError("gpc: expected " + std::to_string(basis.node_count()) +
                         " node values, got " + std::to_string(node_values.size()));
    }
    if (coeffs.size() != basis.modes()) {
        throw UsageError("gpc: coefficient length mismatch");
    }
    for (std::size_t h = 0; h < coeffs.size(); ++h) {
        coeffs[h] = 0.0;
    }
    for (std::size_t k = 0; k < node_values.size(); ++k) {
        const auto row = basis.weighted_psi_row(k);
        for (std::size_t h = 0; h < coeffs.size(); ++h) {
            coeffs[h] += row[h] * node_values[k];
        }
    }
}

void project_preserving_constants(std::span<const double> node_values, const GpcBasis& basis,
                                  std::span<double> coeffs)
{
    bool constant = !node_values.empty();
    for (std::size_t k = 1; k < node_values.size() && constant; ++k) {
        constant = node_values[k] == node_values[0];
    }
    if (!constant || coeffs.size() != basis.modes() ||
        node_values.size() != basis.node_count()) {
        project_into(node_values, basis, coeffs);
        return;
    }
    for (auto& c : coeffs) {
        c = 0.0;
    }
    coeffs[0] = node_values[0];
}

ChaosVector project(std::span<const double> node_values, const GpcBasis& basis)
{
    ChaosVector out(basis.modes());
    project_into(node_values, basis, out.coeffs);
    return out;
}

MeanVariance mean_variance(std::span<const double> coeffs)
{
    if (coeffs.empty()) {
        return {0.0, 0.0};
    }
    double var = 0.0;
    for (std::size_t h = 1; h < coeffs.size(); ++h) {
        var += coeffs[h] * coeffs[h];
    }
    return {coeffs[0], var};
}

MeanVariance mean_variance(const ChaosVector& vec)
{
    return mean_variance(std::span<const double>(vec.coeffs));
}

MeanVariance node_statistics(std::span<const double> node_values, const GpcBasis& basis)
{
    if (node_values.size() != basis.node_count()) {
        throw UsageError("gpc: node_statistics length mismatch");
    }
    const auto w = basis.weights();
    double mean = 0.0;
    for (std::size_t k = 0; k < node_values.size(); ++k) {
        mean += w[k] * node_values[k];
    }
    double var = 0.0;
    for (std::size_t k = 0; k < node_values.size(); ++k) {
        const double d = node_values[k] - mean;
        var += w[k] * d * d;
    }
    return {mean, var};
}

} // namespace sgpic

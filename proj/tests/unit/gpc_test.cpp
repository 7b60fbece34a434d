#include "oracles.hpp"

#include "sgpic/error.hpp"
#include "sgpic/gpc.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sgpic;

TEST_SUITE("gpc") {

TEST_CASE("constant basis uses the midpoint rule")
{
    const GpcBasis b(0, {0.0, 1.0}, 1);
    CHECK(b.node_count() == 1);
    CHECK(b.nodes()[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(b.weights()[0] == 1.0);
    CHECK(b.psi(0, 0) == 1.0);
}

TEST_CASE("basis values match the closed-form shifted Legendre polynomials")
{
    const GpcBasis b(2, {0.0, 1.0}, 4);
    CHECK(b.eval(1, 1.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(b.eval(2, 0.5) == doctest::Approx(-std::sqrt(5.0) / 2.0).epsilon(1e-14));
    CHECK(b.eval(2, 1.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(b.eval(0, 0.37) == 1.0);
    CHECK(std::abs(b.eval(1, 0.5)) < 1e-15);

    const int order = 10;
    const GpcBasis big(order, {0.0, 1.0}, 2 * (order + 1));
    const auto gs = oracle::shifted_legendre(order);
    for (int h = 0; h <= order; ++h) {
        for (const double z : {0.0, 0.13, 0.5, 0.77, 1.0}) {
            const auto expected = static_cast<double>(oracle::eval_monomials(gs[h], z));
            CHECK(big.eval(h, z) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("two-point rule")
{
    const GpcBasis b(1, {0.0, 1.0}, 2);
    const double d = 1.0 / (2.0 * std::sqrt(3.0));
    CHECK(b.nodes()[0] == doctest::Approx(0.5 - d).epsilon(1e-15));
    CHECK(b.nodes()[1] == doctest::Approx(0.5 + d).epsilon(1e-15));
    CHECK(b.weights()[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(b.weights()[1] == doctest::Approx(0.5).epsilon(1e-15));
    double q = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
        q += b.weights()[k] * b.nodes()[k] * b.nodes()[k];
    }
    CHECK(std::abs(q - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("nodes and weights match the Golub-Welsch rule")
{
    for (int n = 1; n <= 40; ++n) {
        std::vector<double> nodes;
        std::vector<double> weights;
        oracle::golub_welsch(n, nodes, weights);
        const GpcBasis b(0, {0.0, 1.0}, n);
        double total = 0.0;
        for (int k = 0; k < n; ++k) {
            CHECK(std::abs(b.nodes()[k] - nodes[k]) < 1e-13);
            CHECK(std::abs(b.weights()[k] - weights[k]) < 1e-13);
            CHECK(b.weights()[k] > 0.0);
            total += b.weights()[k];
        }
        CHECK(std::abs(total - 1.0) < 1e-14);
    }
}

TEST_CASE("construction errors")
{
    CHECK_THROWS_AS(GpcBasis(3, {0.0, 1.0}, 3), ConfigError);
    CHECK_THROWS_AS(GpcBasis(1, {1.0, 1.0}, 4), ConfigError);
    CHECK_THROWS_AS(GpcBasis(-1, {0.0, 1.0}, 4), ConfigError);
    const GpcBasis b(2, {0.0, 1.0}, 6);
    CHECK_THROWS_AS(b.eval(3, 0.5), UsageError);
    CHECK_THROWS_AS(b.eval(-1, 0.5), UsageError);
}

TEST_CASE("orthonormality")
{
    for (int order = 0; order <= 12; ++order) {
        for (const int nodes : {order + 1, 2 * (order + 1)}) {
            for (const Interval support : {Interval{0.0, 1.0}, Interval{-2.0, 3.5}}) {
                const GpcBasis b(order, support, nodes);
                for (std::size_t h = 0; h < b.modes(); ++h) {
                    for (std::size_t g = 0; g < b.modes(); ++g) {
                        double s = 0.0;
                        for (std::size_t k = 0; k < b.node_count(); ++k) {
                            s += b.weights()[k] * b.psi(k, h) * b.psi(k, g);
                        }
                        CHECK(std::abs(s - (h == g ? 1.0 : 0.0)) < 1e-10);
                    }
                }
            }
        }
    }
}

TEST_CASE("quadrature is exact to degree 2K-1")
{
    for (int n = 1; n <= 20; ++n) {
        const GpcBasis b(0, {0.0, 1.0}, n);
        for (int degree = 0; degree <= 2 * n - 1; ++degree) {
            long double q = 0.0L;
            for (int k = 0; k < n; ++k) {
                q += b.weights()[k] * std::pow(static_cast<long double>(b.nodes()[k]), degree);
            }
            const long double exact = 1.0L / (degree + 1);
            CHECK(static_cast<double>(std::abs(q - exact) / exact) < 1e-12);
        }
    }
}

TEST_CASE("evaluation at nodes")
{
    const GpcBasis b(3, {0.0, 1.0}, 8);
    const auto c = eval_at_nodes(ChaosVector::constant(2.5, 4), b);
    for (const double v : c) {
        CHECK(v == 2.5);
    }
    const auto p1 = eval_at_nodes(ChaosVector(std::vector<double>{0.0, 1.0, 0.0, 0.0}), b);
    for (std::size_t k = 0; k < b.node_count(); ++k) {
        CHECK(p1[k] == doctest::Approx(std::sqrt(3.0) * (2.0 * b.nodes()[k] - 1.0)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(eval_at_nodes(ChaosVector(3), b), UsageError);
}

TEST_CASE("projection")
{
    const GpcBasis b(2, {0.0, 1.0}, 4);
    std::vector<double> values(4, 1.75);
    const auto c = project(values, b);
    CHECK(std::abs(c[0] - 1.75) < 1e-15);
    CHECK(std::abs(c[1]) < 1e-15);
    CHECK(std::abs(c[2]) < 1e-15);

    for (std::size_t k = 0; k < 4; ++k) {
        values[k] = b.psi(k, 1);
    }
    const auto unit = project(values, b);
    CHECK(std::abs(unit[0]) < 1e-12);
    CHECK(std::abs(unit[1] - 1.0) < 1e-12);
    CHECK(std::abs(unit[2]) < 1e-12);

    // z^2 = 1/3 + (1/(2 sqrt 3)) psi_1 + (1/(6 sqrt 5)) psi_2 on [0,1].
    for (std::size_t k = 0; k < 4; ++k) {
        values[k] = b.nodes()[k] * b.nodes()[k];
    }
    const auto sq = project(values, b);
    CHECK(sq[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(sq[1] == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-14));
    CHECK(sq[2] == doctest::Approx(1.0 / (6.0 * std::sqrt(5.0))).epsilon(1e-14));

    CHECK_THROWS_AS(project(std::vector<double>(3, 0.0), b), UsageError);
}

TEST_CASE("constant data projects to an exactly deterministic expansion")
{
    const GpcBasis b(5, {0.0, 1.0}, 12);
    const std::vector<double> values(12, 0.1 + 0.2);
    std::vector<double> coeffs(6, 9.0);
    project_preserving_constants(values, b, coeffs);
    CHECK(coeffs[0] == 0.1 + 0.2);
    for (std::size_t h = 1; h < 6; ++h) {
        CHECK(coeffs[h] == 0.0);
    }
    std::vector<double> varying(12, 1.0);
    varying[3] = 2.0;
    std::vector<double> expected(6);
    project_into(varying, b, expected);
    project_preserving_constants(varying, b, coeffs);
    CHECK(coeffs == expected);
}

TEST_CASE("projection round trip")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int order = 0; order <= 12; ++order) {
        for (const int nodes : {order + 1, 2 * (order + 1)}) {
            const GpcBasis b(order, {0.0, 1.0}, nodes);
            ChaosVector v(b.modes());
            for (auto& c : v.coeffs) {
                c = dist(gen);
            }
            const auto back = project(eval_at_nodes(v, b), b);
            for (std::size_t h = 0; h < b.modes(); ++h) {
                CHECK(std::abs(back[h] - v[h]) < 1e-12);
            }
        }
    }
}

TEST_CASE("mean and variance")
{
    const auto a = mean_variance(ChaosVector(std::vector<double>{5.0, 0.0, 0.0}));
    CHECK(a.mean == 5.0);
    CHECK(a.variance == 0.0);
    const auto u = mean_variance(ChaosVector(std::vector<double>{0.0, 1.0, 0.0}));
    CHECK(u.mean == 0.0);
    CHECK(u.variance == 1.0);

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int order = 1; order <= 8; ++order) {
        const GpcBasis b(order, {0.0, 1.0}, 2 * (order + 1));
        ChaosVector v(b.modes());
        for (auto& c : v.coeffs) {
            c = dist(gen);
        }
        const auto mv = mean_variance(v);
        const auto q = node_statistics(eval_at_nodes(v, b), b);
        CHECK(std::abs(mv.mean - q.mean) < 1e-10);
        CHECK(std::abs(mv.variance - q.variance) < 1e-10);
        CHECK(q.variance >= 0.0);
    }
}

TEST_CASE("expansion evaluated off the nodes")
{
    const GpcBasis b(3, {0.0, 1.0}, 8);
    const std::vector<double> c{1.0, 0.5, -0.25, 0.125};
    const double z = 0.3;
    double expected = 0.0;
    for (int h = 0; h <= 3; ++h) {
        expected += c[h] * b.eval(h, z);
    }
    CHECK(eval_expansion(c, b, z) == doctest::Approx(expected).epsilon(1e-15));
    CHECK_THROWS_AS(eval_expansion(std::vector<double>{1.0}, b, z), UsageError);
}

}

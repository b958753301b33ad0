#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quatsub/field.hpp"

#include <random>

using namespace quatsub;

namespace {

MetricField heisenberg_metric() {
    std::vector<std::vector<std::string>> g = {
        {"1 + x2^2/4", "-x1*x2/4", "x2/2"},
        {"-x1*x2/4", "1 + x1^2/4", "-x1/2"},
        {"x2/2", "-x1/2", "1"},
    };
    std::vector<std::vector<ExprPtr>> e(3, std::vector<ExprPtr>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) e[i][j] = parse_expr(g[i][j], 3);
    return MetricField(3, std::move(e));
}

MetricField polar_metric() {
    std::vector<std::vector<ExprPtr>> e(2, std::vector<ExprPtr>(2));
    e[0][0] = parse_expr("1", 2);
    e[0][1] = parse_expr("0", 2);
    e[1][0] = parse_expr("0", 2);
    e[1][1] = parse_expr("x1^2", 2);
    return MetricField(2, std::move(e));
}

// residual of nabla g = 0: d_k g_ij - Gamma^l_{ki} g_lj - Gamma^l_{kj} g_il
double metric_compatibility_residual(const MetricField& g, const VectorXd& p) {
    const int n = g.dim();
    Christoffel Gam = christoffel(g, p);
    MatJet gj = g.eval_jet(p);
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double d = gj.d[k](i, j);
                for (int l = 0; l < n; ++l)
                    d -= Gam[l](k, i) * gj.val(l, j) + Gam[l](k, j) * gj.val(i, l);
                worst = std::max(worst, std::abs(d));
            }
    return worst;
}

}  // namespace

TEST_CASE("asymmetric metric grids are rejected") {
    std::vector<std::vector<ExprPtr>> e(2, std::vector<ExprPtr>(2));
    e[0][0] = parse_expr("1", 2);
    e[0][1] = parse_expr("x1", 2);
    e[1][0] = parse_expr("x2", 2);
    e[1][1] = parse_expr("1", 2);
    CHECK_THROWS_AS(MetricField(2, std::move(e)), MetricError);
}

TEST_CASE("SPD check rejects indefinite metrics") {
    std::vector<std::vector<ExprPtr>> e(2, std::vector<ExprPtr>(2));
    e[0][0] = parse_expr("1", 2);
    e[0][1] = parse_expr("0", 2);
    e[1][0] = parse_expr("0", 2);
    e[1][1] = parse_expr("x1", 2);  // non-positive for x1 <= 0
    MetricField g(2, std::move(e));
    VectorXd bad(2);
    bad << -1.0, 0.0;
    CHECK_THROWS_AS(g.require_spd(bad), MetricError);
    VectorXd good(2);
    good << 1.0, 0.0;
    CHECK_NOTHROW(g.require_spd(good));
}

TEST_CASE("flat space has vanishing Christoffel symbols") {
    MetricField g = MetricField::euclidean(4);
    VectorXd p = VectorXd::Random(4);
    Christoffel Gam = christoffel(g, p);
    for (const auto& m : Gam) CHECK(m.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("dr^2 + r^2 ds^2 reproduces the classical symbols") {
    MetricField g = polar_metric();
    VectorXd p(2);
    p << 2.0, 0.7;
    Christoffel Gam = christoffel(g, p);
    // Gamma^r_{ss} = -r, Gamma^s_{rs} = 1/r
    CHECK(Gam[0](1, 1) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(Gam[1](0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(Gam[1](1, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(Gam[0](0, 0) == doctest::Approx(0.0));
}

TEST_CASE("Christoffel symbols are torsion-free and metric-compatible") {
    MetricField g = heisenberg_metric();
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        VectorXd p(3);
        p << u(rng), u(rng), u(rng);
        Christoffel Gam = christoffel(g, p);
        for (int k = 0; k < 3; ++k)
            CHECK((Gam[k] - Gam[k].transpose()).lpNorm<Eigen::Infinity>() < 1e-12);
        CHECK(metric_compatibility_residual(g, p) < 1e-9);
    }
}

TEST_CASE("Christoffel symbols match a central finite-difference oracle") {
    // Gamma^k_{ij} = (1/2) g^{kl} (d_i g_lj + d_j g_li - d_l g_ij) with FD partials
    MetricField g = polar_metric();
    VectorXd p(2);
    p << 1.4, -0.3;
    const double h = 1e-5;
    MatrixXd d[2];
    for (int k = 0; k < 2; ++k) {
        VectorXd pp = p, pm = p;
        pp(k) += h;
        pm(k) -= h;
        d[k] = (g.eval(pp) - g.eval(pm)) / (2.0 * h);
    }
    MatrixXd ginv = g.eval(p).inverse();
    Christoffel Gam = christoffel(g, p);
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double fd = 0.0;
                for (int l = 0; l < 2; ++l)
                    fd += 0.5 * ginv(k, l) * (d[i](l, j) + d[j](l, i) - d[l](i, j));
                CHECK(std::abs(Gam[k](i, j) - fd) < 1e-6);
            }
}

TEST_CASE("the frame bracket of the nilpotent example is the center direction") {
    // X = d/dx - (y/2) d/dz, Y = d/dy + (x/2) d/dz, [X,Y] = d/dz
    VectorField X = expr_field("1, 0, 0 - x2/2", 3);
    VectorField Y = expr_field("0, 1, x1/2", 3);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        VectorXd p(3);
        p << u(rng), u(rng), u(rng);
        VectorXd br = lie_bracket(X, Y, p);
        CHECK(br(0) == doctest::Approx(0.0));
        CHECK(br(1) == doctest::Approx(0.0));
        CHECK(br(2) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("covariant differentiation is metric compatible along curves") {
    // d/dt g(V,V) = 2 g(nabla_u V, V) for a field V and direction u
    MetricField g = heisenberg_metric();
    VectorField V = expr_field("x2, sin(x1), x1*x2", 3);
    VectorXd p(3);
    p << 0.4, -0.2, 0.6;
    VectorXd u(3);
    u << 1.0, 0.5, -0.25;
    const double h = 1e-6;
    auto norm2 = [&](const VectorXd& q) {
        VectorXd v = V(q).val;
        return v.dot(g.eval(q) * v);
    };
    double lhs = (norm2(p + h * u) - norm2(p - h * u)) / (2.0 * h);
    VectorXd nv = covariant_derivative(christoffel(g, p), u, V(p));
    double rhs = 2.0 * nv.dot(g.eval(p) * V(p).val);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("matrix jet inverse differentiates correctly") {
    // d(A^{-1}) = -A^{-1} dA A^{-1}, cross-checked with finite differences
    MetricField g = heisenberg_metric();
    VectorXd p(3);
    p << 0.3, 0.9, -0.5;
    MatJet gj = g.eval_jet(p);
    MatJet inv = gj.inverse();
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
        VectorXd pp = p, pm = p;
        pp(k) += h;
        pm(k) -= h;
        MatrixXd fd = (g.eval(pp).inverse() - g.eval(pm).inverse()) / (2.0 * h);
        CHECK((inv.d[k] - fd).lpNorm<Eigen::Infinity>() < 1e-7);
    }
}

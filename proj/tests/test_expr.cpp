#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quatsub/expr.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace quatsub;

namespace {

double fd_partial(const ExprPtr& e, const VectorXd& p, int k, double h = 1e-5) {
    VectorXd pp = p, pm = p;
    pp(k) += h;
    pm(k) -= h;
    return (eval_value(*e, pp) - eval_value(*e, pm)) / (2.0 * h);
}

// Random expression over x1..xd built from +, -, *, integer powers, sin, cos.
// Safe everywhere (no division, no branch cuts).
std::string random_poly_trig(std::mt19937& rng, int dim, int depth = 3) {
    std::uniform_int_distribution<int> kind(0, depth > 0 ? 6 : 1);
    std::uniform_int_distribution<int> var(1, dim);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    switch (kind(rng)) {
        case 0: {
            std::ostringstream os;
            os << coef(rng);
            return os.str();
        }
        case 1: return "x" + std::to_string(var(rng));
        case 2:
            return "(" + random_poly_trig(rng, dim, depth - 1) + " + " +
                   random_poly_trig(rng, dim, depth - 1) + ")";
        case 3:
            return "(" + random_poly_trig(rng, dim, depth - 1) + " - " +
                   random_poly_trig(rng, dim, depth - 1) + ")";
        case 4:
            return "(" + random_poly_trig(rng, dim, depth - 1) + ")*(" +
                   random_poly_trig(rng, dim, depth - 1) + ")";
        case 5: return "sin(" + random_poly_trig(rng, dim, depth - 1) + ")";
        case 6: return "cos(" + random_poly_trig(rng, dim, depth - 1) + ")";
    }
    return "x1";
}

}  // namespace

TEST_CASE("parse errors carry position and reason") {
    CHECK_THROWS_AS(parse_expr("x3", 2), ParseError);
    CHECK_THROWS_AS(parse_expr("x1 +", 2), ParseError);
    CHECK_THROWS_AS(parse_expr("(x1 + x2", 2), ParseError);
    CHECK_THROWS_AS(parse_expr("x1 ^ x2", 2), ParseError);   // integer exponents only
    CHECK_THROWS_AS(parse_expr("x1 ^ 1.5", 2), ParseError);  // integer exponents only
    CHECK_THROWS_AS(parse_expr("foo(x1)", 2), ParseError);
    try {
        parse_expr("x1 + \n  @", 2);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("print/parse round trip is structurally stable") {
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        std::string src = random_poly_trig(rng, 3);
        ExprPtr a = parse_expr(src, 3);
        ExprPtr b = parse_expr(to_string(a), 3);
        CHECK(structurally_equal(a, b));
        VectorXd p = VectorXd::Random(3);
        CHECK(eval_value(*a, p) == doctest::Approx(eval_value(*b, p)).epsilon(1e-15));
    }
}

TEST_CASE("jet gradients and Hessians match central finite differences") {
    std::mt19937 rng(42);
    const double h = 1e-5;
    for (int t = 0; t < 100; ++t) {
        int dim = 2 + (t % 3);
        ExprPtr e = parse_expr(random_poly_trig(rng, dim), dim);
        VectorXd p = VectorXd::Random(dim);
        Jet2 j = eval_jet(*e, p);
        double scale = std::max(1.0, j.g.lpNorm<Eigen::Infinity>());
        for (int k = 0; k < dim; ++k)
            CHECK(std::abs(j.g(k) - fd_partial(e, p, k, h)) / scale < 1e-6);
        // Hessian against central differences of the jet gradient
        double hscale = std::max(1.0, j.h.lpNorm<Eigen::Infinity>());
        for (int k = 0; k < dim; ++k) {
            VectorXd pp = p, pm = p;
            pp(k) += h;
            pm(k) -= h;
            VectorXd fd = (eval_jet(*e, pp).g - eval_jet(*e, pm).g) / (2.0 * h);
            for (int l = 0; l < dim; ++l) CHECK(std::abs(j.h(l, k) - fd(l)) / hscale < 1e-6);
        }
        CHECK((j.h - j.h.transpose()).lpNorm<Eigen::Infinity>() < 1e-12);
    }
}

TEST_CASE("jets obey the chain rule on closed-form composites") {
    // f = sin(x1^2 * x2) + exp(x2)/x1 on a point away from 0
    ExprPtr e = parse_expr("sin(x1^2 * x2) + exp(x2)/x1", 2);
    VectorXd p(2);
    p << 1.3, -0.4;
    Jet2 j = eval_jet(*e, p);
    double x = p(0), y = p(1);
    CHECK(j.v == doctest::Approx(std::sin(x * x * y) + std::exp(y) / x).epsilon(1e-14));
    CHECK(j.g(0) ==
          doctest::Approx(std::cos(x * x * y) * 2 * x * y - std::exp(y) / (x * x)).epsilon(1e-13));
    CHECK(j.g(1) == doctest::Approx(std::cos(x * x * y) * x * x + std::exp(y) / x).epsilon(1e-13));
    double hxx = -std::sin(x * x * y) * 4 * x * x * y * y + std::cos(x * x * y) * 2 * y +
                 2 * std::exp(y) / (x * x * x);
    CHECK(j.h(0, 0) == doctest::Approx(hxx).epsilon(1e-12));
    double hxy = -std::sin(x * x * y) * 2 * x * y * x * x + std::cos(x * x * y) * 2 * x -
                 std::exp(y) / (x * x);
    CHECK(j.h(0, 1) == doctest::Approx(hxy).epsilon(1e-12));
}

TEST_CASE("domain guards throw DomainError") {
    ExprPtr e = parse_expr("sqrt(x1)", 1);
    VectorXd bad(1);
    bad << -1.0;
    CHECK_THROWS_AS(eval_value(*e, bad), DomainError);
    ExprPtr l = parse_expr("log(x1)", 1);
    VectorXd zero(1);
    zero << 0.0;
    CHECK_THROWS_AS(eval_jet(*l, zero), DomainError);
    ExprPtr d = parse_expr("1/x1", 1);
    CHECK_THROWS_AS(eval_value(*d, zero), DomainError);
}

TEST_CASE("maps evaluate component-wise with box enforcement") {
    SmoothMapSpec m = parse_map("x1 + x2, x1 - x2", 2, {{-1.0, 1.0}, {-1.0, 1.0}});
    CHECK(m.codomain_dim == 2);
    VectorXd p(2);
    p << 0.25, 0.5;
    VectorXd v = eval_map(m, p);
    CHECK(v(0) == doctest::Approx(0.75));
    CHECK(v(1) == doctest::Approx(-0.25));
    MatrixXd J = jacobian(m, p);
    CHECK(J(0, 0) == doctest::Approx(1.0));
    CHECK(J(1, 1) == doctest::Approx(-1.0));
    VectorXd outside(2);
    outside << 2.0, 0.0;
    CHECK_THROWS_AS(eval_jet2(m, outside), DomainError);
}

TEST_CASE("the coordinate-permutation map has the expected constant Jacobian") {
    // nine components picked out of twelve coordinates
    SmoothMapSpec m =
        parse_map("x10, x11, x12, x4, x3, x2, x8, x6, x7", 12);
    VectorXd p = VectorXd::Random(12);
    MatrixXd J = jacobian(m, p);
    CHECK(J.rows() == 9);
    // kernel is exactly coordinates 1, 5, 9
    for (int a = 0; a < 9; ++a) {
        CHECK(J(a, 0) == 0.0);
        CHECK(J(a, 4) == 0.0);
        CHECK(J(a, 8) == 0.0);
    }
    CHECK(J.row(0)(9) == 1.0);   // x10
    CHECK(J.row(3)(3) == 1.0);   // x4
    CHECK(J.row(5)(1) == 1.0);   // x2
}

TEST_CASE("numbers print with 17 significant digits and reparse exactly") {
    ExprPtr e = parse_expr("0.1 + x1*0.30000000000000004", 1);
    ExprPtr e2 = parse_expr(to_string(e), 1);
    VectorXd p(1);
    p << 1.7;
    CHECK(eval_value(*e, p) == eval_value(*e2, p));
}

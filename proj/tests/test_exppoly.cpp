#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>

#include "plq/exppoly.hpp"
#include "test_util.hpp"

using namespace plq;
using plqtest::random_exppoly;
using plqtest::random_rational;

TEST_CASE("normal form basics", "[exppoly]") {
    ExpPoly x = ExpPoly::var("x");
    ExpPoly y = ExpPoly::var("y");

    REQUIRE((x + x) == Rational(2) * x);
    REQUIRE((x - x).is_zero());
    REQUIRE((x - x) == ExpPoly::zero());
    REQUIRE(ExpPoly::exp_atom(0, "v") == ExpPoly::constant(1));
    REQUIRE(ExpPoly::var(kOne) == ExpPoly::constant(1));
    REQUIRE((expo(1, "v") * expo(-1, "v")) == ExpPoly::constant(1));
    REQUIRE((expo(Rational(1, 2), "v") * expo(Rational(1, 2), "v")) == expo(1, "v"));

    ExpPoly p = (x + ExpPoly::constant(1)) * (x - ExpPoly::constant(1));
    REQUIRE(p == x * x - ExpPoly::constant(1));
    REQUIRE(p.to_string() == "-1 + x^2");
    REQUIRE(ExpPoly::zero().to_string() == "0");
}

TEST_CASE("scalar exponential constants stay exact", "[exppoly]") {
    // e^{1/2} * e^{1/2} = e, represented on the reserved symbol.
    ExpPoly half = expo(Rational(1, 2), kOne);
    REQUIRE(half * half == expo(1, kOne));
    REQUIRE((half * half).evaluate({}) == Catch::Approx(std::exp(1.0)));

    ExpPoly x = ExpPoly::var("x");
    ExpPoly q = (x + half * ExpPoly::var("y")).pow(2);
    ExpPoly expect = x * x + Rational(2) * half * x * ExpPoly::var("y") +
                     expo(1, kOne) * ExpPoly::var("y") * ExpPoly::var("y");
    REQUIRE(q == expect);
}

TEST_CASE("product evaluation agrees with evaluated product", "[exppoly]") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const std::vector<std::string> vars = {"u", "v", "w"};
    for (int trial = 0; trial < 1000; ++trial) {
        ExpPoly a = random_exppoly(rng, vars);
        ExpPoly b = random_exppoly(rng, vars);
        std::map<std::string, double> point;
        for (const auto& v : vars) point[v] = dist(rng);
        double lhs = (a * b).evaluate(point);
        double rhs = a.evaluate(point) * b.evaluate(point);
        REQUIRE(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("derivative agrees with finite differences", "[exppoly]") {
    std::mt19937_64 rng(999);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const std::vector<std::string> vars = {"u", "v"};
    for (int trial = 0; trial < 100; ++trial) {
        ExpPoly a = random_exppoly(rng, vars);
        ExpPoly da = a.differentiate("u");
        std::map<std::string, double> point;
        for (const auto& v : vars) point[v] = dist(rng);
        double exact = da.evaluate(point);
        const double h = 1e-6;
        auto hi = point, lo = point;
        hi["u"] += h;
        lo["u"] -= h;
        double fd = (a.evaluate(hi) - a.evaluate(lo)) / (2 * h);
        REQUIRE(std::abs(exact - fd) <= 1e-5 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("derivative of exponential terms", "[exppoly]") {
    ExpPoly r = ExpPoly::var("r");
    ExpPoly e = r * expo(2, "r");
    REQUIRE(e.differentiate("r") == expo(2, "r") + Rational(2) * r * expo(2, "r"));
    REQUIRE(expo(Rational(-1, 3), "r").differentiate("r") ==
            Rational(-1, 3) * expo(Rational(-1, 3), "r"));
    REQUIRE(e.differentiate("s").is_zero());
}

TEST_CASE("substitution is simultaneous", "[exppoly]") {
    ExpPoly x = ExpPoly::var("x"), y = ExpPoly::var("y"), z = ExpPoly::var("z");
    REQUIRE(x.substitute({{"x", y}, {"y", z}}) == y);
    ExpPoly swapped = (x * y).substitute({{"x", y}, {"y", x}});
    REQUIRE(swapped == x * y);
}

TEST_CASE("affine substitution into exponentials", "[exppoly]") {
    ExpPoly e = expo(1, "r");
    ExpPoly u = ExpPoly::var("u"), v = ExpPoly::var("v");
    ExpPoly affine = Rational(2) * u - Rational(3) * v + ExpPoly::constant(Rational(1, 2));
    ExpPoly got = e.substitute({{"r", affine}});
    ExpPoly expect = expo(Rational(1, 2), kOne) * expo(2, "u") * expo(-3, "v");
    REQUIRE(got == expect);

    // exponent also scales the rate
    ExpPoly e2 = expo(Rational(-1, 2), "r");
    REQUIRE(e2.substitute({{"r", Rational(2) * u}}) == expo(-1, "u"));

    REQUIRE_THROWS_AS(e.substitute({{"r", u * u}}), NonAffineExpSubstitution);
    REQUIRE_THROWS_AS(e.substitute({{"r", u * v}}), NonAffineExpSubstitution);
    REQUIRE_THROWS_AS(e.substitute({{"r", expo(1, "u")}}), NonAffineExpSubstitution);
    REQUIRE_THROWS_AS(e.substitute({{kOne, u}}), InvalidParameter);
}

TEST_CASE("substitution of monomial slots takes arbitrary expressions", "[exppoly]") {
    ExpPoly x = ExpPoly::var("x"), u = ExpPoly::var("u");
    ExpPoly e = x * x * expo(1, "s");
    ExpPoly got = e.substitute({{"x", u + expo(2, "w")}});
    ExpPoly expect = (u + expo(2, "w")).pow(2) * expo(1, "s");
    REQUIRE(got == expect);
}

TEST_CASE("mixed monomial and exponential occurrences substitute together", "[exppoly]") {
    // r appears both polynomially and in the exponent
    ExpPoly e = ExpPoly::var("r") * expo(2, "r");
    ExpPoly shift = ExpPoly::var("r") + ExpPoly::var("s");
    ExpPoly got = e.substitute({{"r", shift}});
    ExpPoly expect = (ExpPoly::var("r") + ExpPoly::var("s")) * expo(2, "r") * expo(2, "s");
    REQUIRE(got == expect);
}

TEST_CASE("eta profile and its additivity law", "[exppoly]") {
    REQUIRE(eta_profile(0, "r") == ExpPoly::var("r"));

    // eta(r + r') = eta(r) + exp(kappa r) eta(r'), exactly in the class
    for (Rational kappa : {Rational(-2), Rational(0), Rational(1, 3)}) {
        ExpPoly lhs = eta_profile(kappa, "r").substitute(
            {{"r", ExpPoly::var("r") + ExpPoly::var("s")}});
        ExpPoly rhs = eta_profile(kappa, "r") + expo(kappa, "r") * eta_profile(kappa, "s");
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("equal normal forms imply approximate equality", "[exppoly]") {
    std::mt19937_64 rng(77);
    const std::vector<std::string> vars = {"u", "v", "w"};
    for (int trial = 0; trial < 50; ++trial) {
        ExpPoly a = random_exppoly(rng, vars);
        ExpPoly b = random_exppoly(rng, vars);
        ExpPoly lhs = (a + b) * (a - b);
        ExpPoly rhs = a * a - b * b;
        REQUIRE(lhs == rhs);
        auto res = approx_equal(lhs, rhs, rng, 50);
        REQUIRE(res.ok);
        REQUIRE(res.max_abs_diff <= 1e-12);
    }
}

TEST_CASE("residual and evaluation errors", "[exppoly]") {
    ExpPoly x = ExpPoly::var("x");
    REQUIRE(ExpPoly::zero().residual() == 0);
    REQUIRE((Rational(-3, 2) * x + ExpPoly::constant(1)).residual() == Rational(3, 2));
    REQUIRE_THROWS_AS(x.evaluate({}), UnboundVariable);
    REQUIRE(ExpPoly::constant(2).evaluate({}) == 2.0);
}

TEST_CASE("free variables exclude the reserved symbol", "[exppoly]") {
    ExpPoly e = ExpPoly::var("x") * expo(1, kOne) * expo(2, "r");
    auto vars = e.free_vars();
    REQUIRE(vars == std::set<std::string>{"x", "r"});
}

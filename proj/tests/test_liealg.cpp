#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plq/liealg.hpp"
#include "test_util.hpp"

using namespace plq;
using plqtest::random_rational;
using plqtest::random_skew;

namespace {

Cobracket zero_cobracket(int dim) {
    Cobracket d;
    d.val.assign(dim, TwoTensor(dim));
    return d;
}

} // namespace

TEST_CASE("base algebras satisfy Jacobi exactly", "[liealg]") {
    for (int n = 1; n <= 4; ++n) {
        REQUIRE(heisenberg(n).check_jacobi() == 0);
        REQUIRE(extended_heisenberg(n).check_jacobi() == 0);
    }
}

TEST_CASE("dual algebras satisfy Jacobi for random parameters", "[liealg]") {
    std::mt19937_64 rng(101);
    for (int n = 1; n <= 4; ++n)
        for (int draw = 0; draw < 5; ++draw) {
            Rational lambda = random_rational(rng);
            Rational nu = random_rational(rng, false);
            REQUIRE(dual_case(1, n, lambda).check_jacobi() == 0);
            REQUIRE(dual_case(2, n, lambda).check_jacobi() == 0);
            REQUIRE(dual_mixed(n, lambda, nu).check_jacobi() == 0);
            if (n >= 2) REQUIRE(dual_case(3, n, 0, random_skew(rng, n)).check_jacobi() == 0);
        }
}

TEST_CASE("the four cobracket families are 1-cocycles", "[liealg]") {
    std::mt19937_64 rng(202);
    for (int n = 1; n <= 3; ++n)
        for (int draw = 0; draw < 3; ++draw) {
            Rational lambda = random_rational(rng);
            Rational nu = random_rational(rng, false);
            LieAlgebra h = heisenberg(n);
            REQUIRE(check_cocycle(h, cobracket_case(1, n, lambda)) == 0);
            REQUIRE(check_cocycle(h, cobracket_case(2, n, lambda)) == 0);
            REQUIRE(check_cocycle(h, cobracket_case(4, n, lambda, nu)) == 0);
            if (n >= 2)
                REQUIRE(check_cocycle(h, cobracket_case(3, n, 0, 0, random_skew(rng, n))) == 0);
        }
}

TEST_CASE("cobracket values are co-antisymmetric", "[liealg]") {
    std::mt19937_64 rng(303);
    Rational lambda = random_rational(rng);
    for (int k : {1, 2, 4})
        REQUIRE(check_coskew(cobracket_case(k, 2, lambda, Rational(1, 3))) == 0);
    REQUIRE(check_coskew(cobracket_case(3, 2, 0, 0, random_skew(rng, 2))) == 0);
    REQUIRE(check_coskew(theta_cobracket(2)) == 0);
}

TEST_CASE("combination family has the expected closed form", "[liealg]") {
    int n = 2, dim = 2 * n + 1, z = 2 * n;
    Rational lambda(3, 2), nu(-1, 3);
    Cobracket d4 = cobracket_case(4, n, lambda, nu);
    for (int i = 0; i < n; ++i) {
        REQUIRE(d4.val[i] == TwoTensor::wedge(dim, i, z, ExpPoly::constant(lambda)));
        REQUIRE(d4.val[n + i] == TwoTensor::wedge(dim, n + i, z, ExpPoly::constant(nu)));
    }
    REQUIRE(d4.val[z].is_zero());
}

TEST_CASE("dualizing the cobrackets reproduces the dual algebras", "[liealg]") {
    std::mt19937_64 rng(404);
    for (int n = 1; n <= 4; ++n)
        for (int draw = 0; draw < 5; ++draw) {
            Rational lambda = random_rational(rng);
            Rational nu = random_rational(rng, false);
            LieAlgebra h = heisenberg(n);
            std::vector<std::string> dual_names = indexed("p", n);
            for (const auto& s : indexed("q", n)) dual_names.push_back(s);
            dual_names.push_back("r");

            REQUIRE(dualize(h, cobracket_case(1, n, lambda), dual_names)
                        .same_brackets(dual_case(1, n, lambda)));
            REQUIRE(dualize(h, cobracket_case(2, n, lambda), dual_names)
                        .same_brackets(dual_case(2, n, lambda)));
            REQUIRE(dualize(h, cobracket_case(4, n, lambda, nu), dual_names)
                        .same_brackets(dual_mixed(n, lambda, nu)));
            if (n >= 2) {
                Matrix J = random_skew(rng, n);
                REQUIRE(dualize(h, cobracket_case(3, n, 0, 0, J), dual_names)
                            .same_brackets(dual_case(3, n, 0, J)));
            }
        }
}

TEST_CASE("co-Jacobi holds: duals of the cobrackets are Lie algebras", "[liealg]") {
    std::mt19937_64 rng(505);
    int n = 3;
    Rational lambda = random_rational(rng);
    LieAlgebra h = heisenberg(n);
    std::vector<std::string> names(2 * n + 1);
    for (int i = 0; i < 2 * n + 1; ++i) names[i] = "f" + std::to_string(i);
    for (int k : {1, 2, 4})
        REQUIRE(dualize(h, cobracket_case(k, n, lambda, Rational(2, 5)), names).check_jacobi() ==
                0);
    REQUIRE(dualize(h, cobracket_case(3, n, 0, 0, random_skew(rng, n)), names).check_jacobi() == 0);
}

TEST_CASE("dualizing theta on the dual recovers the nilpotent brackets", "[liealg]") {
    int n = 3;
    LieAlgebra g = dual_case(2, n, Rational(1, 2));
    Cobracket theta = theta_cobracket(n);
    REQUIRE(check_cocycle(g, theta) == 0);

    std::vector<std::string> names = indexed("x", n);
    for (const auto& s : indexed("y", n)) names.push_back(s);
    names.push_back("z");
    REQUIRE(dualize(g, theta, names).same_brackets(heisenberg(n)));

    // theta is a 1-cocycle on all three duals
    REQUIRE(check_cocycle(dual_case(1, n, Rational(1, 2)), theta) == 0);
    Matrix J = {{0, 1, 0}, {-1, 0, 2}, {0, -2, 0}};
    REQUIRE(check_cocycle(dual_case(3, n, 0, J), theta) == 0);
}

TEST_CASE("flat r-matrix on the extension: triangular structure", "[liealg]") {
    int n = 2;
    Rational lambda(2, 3);
    LieAlgebra ge = extended_heisenberg(n);
    TwoTensor r = extended_r_matrix(1, n, lambda);

    REQUIRE(check_skew(r));
    REQUIRE(check_cybe(ge, r) == 0);

    Cobracket boundary = coboundary_from_r(ge, r);
    REQUIRE(boundary == extended_cobracket(1, n, lambda));
    REQUIRE(check_cocycle(ge, boundary) == 0);
}

TEST_CASE("paired r-matrix on the extension: quasitriangular structure", "[liealg]") {
    int n = 2;
    Rational lambda(-3, 4);
    LieAlgebra ge = extended_heisenberg(n);
    TwoTensor r = extended_r_matrix(2, n, lambda);

    REQUIRE_FALSE(check_skew(r));
    REQUIRE(check_cybe(ge, r) == 0);
    // the symmetric part is invariant
    REQUIRE(check_invariant(ge, r + r.transpose()) == 0);

    Cobracket boundary = coboundary_from_r(ge, r);
    REQUIRE(boundary == extended_cobracket(2, n, lambda));
    REQUIRE(check_cocycle(ge, boundary) == 0);
}

TEST_CASE("skew r-matrix on x-span induces the third family", "[liealg]") {
    std::mt19937_64 rng(606);
    for (int n = 2; n <= 4; ++n) {
        Matrix J = random_skew(rng, n);
        LieAlgebra h = heisenberg(n);
        TwoTensor r = skew_x_r_matrix(n, J);
        REQUIRE(check_skew(r));
        REQUIRE(check_cybe(h, r) == 0);
        REQUIRE(coboundary_from_r(h, r) == cobracket_case(3, n, 0, 0, J));
    }
}

TEST_CASE("restriction of the extended cobrackets to the nilpotent part", "[liealg]") {
    int n = 2;
    Rational lambda(5, 2);
    LieAlgebra ge = extended_heisenberg(n);
    std::vector<int> sub;
    for (int i = 0; i < 2 * n + 1; ++i) sub.push_back(i); // drop d

    for (int k : {1, 2}) {
        Cobracket restricted = restrict_cobracket(ge, extended_cobracket(k, n, lambda), sub);
        REQUIRE(restricted == cobracket_case(k, n, lambda));
    }
}

TEST_CASE("restriction escape is detected", "[liealg]") {
    int n = 1;
    LieAlgebra ge = extended_heisenberg(n);
    int x1 = 0, z = 2, d = 3;
    std::vector<int> sub = {0, 1, 2};

    // x1 (x) d - d (x) x1: its coboundary on y1 keeps mixed z,d legs
    TwoTensor r = TwoTensor::wedge(ge.dim(), x1, d);
    REQUIRE_THROWS_AS(restrict_cobracket(ge, coboundary_from_r(ge, r), sub),
                      RestrictionEscapesSubalgebra);

    // z (x) d + d (x) z: central z kills the d legs, restriction succeeds
    TwoTensor s(ge.dim());
    s.e[z][d] = ExpPoly::constant(1);
    s.e[d][z] = ExpPoly::constant(1);
    Cobracket restricted = restrict_cobracket(ge, coboundary_from_r(ge, s), sub);
    REQUIRE(restricted.val[0] ==
            ExpPoly::constant(-1) * (TwoTensor::elem(3, 2, 0) + TwoTensor::elem(3, 0, 2)));
}

TEST_CASE("Yang-Baxter residual vanishes on abelian support", "[liealg]") {
    std::mt19937_64 rng(707);
    for (int n = 1; n <= 4; ++n)
        for (int draw = 0; draw < 4; ++draw) {
            LieAlgebra h = heisenberg(n);
            TwoTensor r(h.dim());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    r.e[i][j] = ExpPoly::constant(random_rational(rng, false));
            REQUIRE(check_cybe(h, r) == 0);
        }
}

TEST_CASE("negative control: corrupted bracket violates Jacobi", "[liealg][negative]") {
    LieAlgebra bad = heisenberg(1);
    bad.add_bracket(0, 2, 0, 1); // inject [x1, z] = x1
    REQUIRE(bad.check_jacobi() > 0);
    REQUIRE(bad.check_jacobi() == 1);
}

TEST_CASE("negative control: corrupted cobracket violates the cocycle law", "[liealg][negative]") {
    LieAlgebra h = heisenberg(1);
    Cobracket bad = zero_cobracket(3);
    bad.val[2] = TwoTensor::wedge(3, 0, 1); // z now maps to x1 wedge y1
    REQUIRE(check_cocycle(h, bad) > 0);
}

TEST_CASE("negative control: non-skew J is rejected and non-invariant", "[liealg][negative]") {
    Matrix bad = {{0, 1}, {0, 0}};
    REQUIRE_THROWS_AS(dual_case(3, 2, 0, bad), InvalidParameter);
    REQUIRE_THROWS_AS(cobracket_case(3, 2, 0, 0, bad), InvalidParameter);
    REQUIRE_THROWS_AS(skew_x_r_matrix(2, bad), InvalidParameter);

    // bypassing validation: the symmetric part of x1 (x) x2 + x2 (x) x1
    // fails invariance, unlike the skew counterpart
    LieAlgebra h = heisenberg(2);
    TwoTensor r(h.dim());
    r.e[0][1] = ExpPoly::constant(1); // x1 (x) x2 only: J = [[0,1],[0,0]]
    REQUIRE(check_invariant(h, r + r.transpose()) > 0);
    REQUIRE_FALSE(check_skew(r));
}

TEST_CASE("builder preconditions", "[liealg]") {
    REQUIRE_THROWS_AS(dual_case(1, 2, 0), InvalidParameter);
    REQUIRE_THROWS_AS(dual_case(2, 2, 0), InvalidParameter);
    REQUIRE_THROWS_AS(cobracket_case(1, 2, 0), InvalidParameter);
    REQUIRE_THROWS_AS(cobracket_case(4, 2, 0, 1), InvalidParameter);
    REQUIRE_THROWS_AS(dual_case(3, 1, 0, Matrix{{0}}), InvalidParameter);
    REQUIRE_THROWS_AS(heisenberg(0), InvalidParameter);
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plq/liegroup.hpp"
#include "test_util.hpp"

using namespace plq;
using plqtest::random_rational;
using plqtest::random_skew;

namespace {

CaseParams sample_params(CaseId c, std::mt19937_64& rng, int n = 2, int m = 1) {
    CaseParams p;
    p.n = n;
    p.m = m;
    switch (c) {
        case CaseId::case1:
        case CaseId::case2:
            p.lambda = random_rational(rng);
            break;
        case CaseId::mixed:
            p.lambda = random_rational(rng);
            p.nu = random_rational(rng);
            break;
        case CaseId::case3:
            p.J = random_skew(rng, n);
            break;
        case CaseId::rieffel:
            p.pi_rates.assign(n, std::vector<Rational>(m, 0));
            p.rho_rates.assign(n, std::vector<Rational>(m, 0));
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < m; ++l) {
                    p.pi_rates[i][l] = random_rational(rng);
                    p.rho_rates[i][l] = -p.pi_rates[i][l]; // pairing-compatible
                }
            break;
        case CaseId::nonuni:
            p.pi_rates.assign(n, std::vector<Rational>(m, 0));
            p.rho_rates.assign(n, std::vector<Rational>(m, 0));
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < m; ++l) {
                    p.pi_rates[i][l] = random_rational(rng);
                    p.rho_rates[i][l] = random_rational(rng);
                }
            break;
    }
    return p;
}

const std::vector<CaseId> kAllCases = {CaseId::case1,  CaseId::case2, CaseId::case3,
                                       CaseId::mixed,  CaseId::rieffel, CaseId::nonuni};

/// The bracket pairing polynomial sum_ab Pi^ab xi_a xi'_b with differentials
/// named x1..,y1..,z and primed copies.
ExpPoly poisson_pairing(const TwoTensor& pi, int n) {
    std::vector<std::string> xi = xy_block_names(n);
    xi.push_back("z");
    ExpPoly out;
    for (int a = 0; a < pi.dim; ++a)
        for (int b = 0; b < pi.dim; ++b)
            if (!pi.e[a][b].is_zero())
                out += pi.e[a][b] * ExpPoly::var(xi[a]) * ExpPoly::var(prime(xi[b], 1));
    return out;
}

ExpPoly beta_poly(int n, int lcopy, int rcopy) {
    ExpPoly out;
    for (int i = 1; i <= n; ++i)
        out += ExpPoly::var(prime("x" + std::to_string(i), lcopy)) *
               ExpPoly::var(prime("y" + std::to_string(i), rcopy));
    return out;
}

} // namespace

TEST_CASE("catalog groups satisfy the axioms", "[liegroup]") {
    std::mt19937_64 rng(11);
    for (CaseId c : kAllCases) {
        CaseParams p = sample_params(c, rng);
        PointGroup G = build_group(c, p); // make_group throws on any residual
        REQUIRE(verify_group(G) == 0);
    }
    CaseParams hp;
    hp.n = 2;
    hp.m = 1;
    REQUIRE(verify_group(group_heisenberg(hp)) == 0);
    hp.n = 3;
    hp.m = 2;
    REQUIRE(verify_group(group_heisenberg(hp)) == 0);
    REQUIRE(verify_group(group_hmodz(2)) == 0);
    REQUIRE(verify_group(group_lines("r", 2)) == 0);
}

TEST_CASE("group laws linearize to the dual algebras", "[liegroup]") {
    std::mt19937_64 rng(22);
    for (int draw = 0; draw < 3; ++draw) {
        Rational lambda = random_rational(rng), nu = random_rational(rng);
        int n = 2;
        CaseParams p;
        p.n = n;
        p.lambda = lambda;
        REQUIRE(lie_algebra_of(build_group(CaseId::case1, p))
                    .same_brackets(dual_case(1, n, lambda)));
        REQUIRE(lie_algebra_of(build_group(CaseId::case2, p))
                    .same_brackets(dual_case(2, n, lambda)));
        p.nu = nu;
        REQUIRE(lie_algebra_of(build_group(CaseId::mixed, p))
                    .same_brackets(dual_mixed(n, lambda, nu)));
        CaseParams p3;
        p3.n = n;
        p3.J = random_skew(rng, n);
        REQUIRE(lie_algebra_of(build_group(CaseId::case3, p3))
                    .same_brackets(dual_case(3, n, 0, p3.J)));
    }
}

TEST_CASE("diagonal-family group linearizes to the expected algebra", "[liegroup]") {
    std::mt19937_64 rng(33);
    CaseParams p = sample_params(CaseId::nonuni, rng, 2, 2);
    LieAlgebra got = lie_algebra_of(build_group(CaseId::nonuni, p));

    std::vector<std::string> basis = {"p1", "p2", "q1", "q2", "r1", "r2"};
    LieAlgebra expect(basis);
    for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l) {
            if (p.pi_rates[i][l] != 0) expect.add_bracket(i, 4 + l, i, p.pi_rates[i][l]);
            if (p.rho_rates[i][l] != 0) expect.add_bracket(2 + i, 4 + l, 2 + i, p.rho_rates[i][l]);
        }
    REQUIRE(got.same_brackets(expect));
    REQUIRE(expect.check_jacobi() == 0);
}

TEST_CASE("nilpotent group linearizes to the nilpotent algebra", "[liegroup]") {
    CaseParams p;
    p.n = 3;
    p.m = 1;
    REQUIRE(lie_algebra_of(group_heisenberg(p)).same_brackets(heisenberg(3)));
}

TEST_CASE("adjoint action: closed forms at (0,0,r)", "[liegroup]") {
    int n = 2;
    SECTION("first scaling family") {
        CaseParams p;
        p.n = n;
        p.lambda = Rational(1, 2);
        auto A = adjoint_at_r(build_group(CaseId::case1, p), 2 * n);
        for (int i = 0; i < n; ++i) {
            REQUIRE(A[i][i] == expo(-p.lambda, "r"));
            REQUIRE(A[n + i][n + i] == expo(p.lambda, "r"));
        }
        REQUIRE(A[2 * n][2 * n] == ExpPoly::constant(1));
        REQUIRE(A[0][n].is_zero());
    }
    SECTION("third family shear") {
        CaseParams p;
        p.n = n;
        p.J = {{0, Rational(2)}, {Rational(-2), 0}};
        auto A = adjoint_at_r(build_group(CaseId::case3, p), 2 * n);
        // Ad(p_k) = p_k - r sum_j J_kj q_j, Ad(q_k) = q_k
        for (int k = 0; k < n; ++k) {
            REQUIRE(A[k][k] == ExpPoly::constant(1));
            for (int j = 0; j < n; ++j)
                REQUIRE(A[n + j][k] ==
                        ExpPoly::constant(-p.J[k][j]) * ExpPoly::var("r"));
            REQUIRE(A[n + k][n + k] == ExpPoly::constant(1));
        }
    }
}

TEST_CASE("adjoint matrices are algebra automorphisms", "[liegroup]") {
    std::mt19937_64 rng(44);
    for (CaseId c : {CaseId::case2, CaseId::case3, CaseId::mixed}) {
        CaseParams p = sample_params(c, rng);
        PointGroup G = build_group(c, p);
        LieAlgebra g = lie_algebra_of(G);
        auto A = adjoint_matrix(G);
        int d = G.dim();
        auto column = [&](int j) {
            Element e(d);
            for (int i = 0; i < d; ++i) e[i] = A[i][j];
            return e;
        };
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                Element lhs = g.bracket(column(i), column(j));
                Element rhs(d, ExpPoly::zero());
                for (int k = 0; k < d; ++k)
                    if (g.c(i, j, k) != 0)
                        for (int s = 0; s < d; ++s)
                            rhs[s] += ExpPoly::constant(g.c(i, j, k)) * A[s][k];
                for (int s = 0; s < d; ++s) REQUIRE((lhs[s] - rhs[s]).residual() == 0);
            }
    }
}

TEST_CASE("matched pair axioms hold across the catalog", "[liegroup]") {
    std::mt19937_64 rng(55);
    for (CaseId c : kAllCases) {
        CaseParams p = sample_params(c, rng);
        MatchedPair mp = build_matched_pair(c, p);
        REQUIRE(check_matched_pair(mp) == 0);
    }
    // multi-line variant
    CaseParams p = sample_params(CaseId::nonuni, rng, 2, 2);
    REQUIRE(check_matched_pair(build_matched_pair(CaseId::nonuni, p)) == 0);
}

TEST_CASE("derived action closed forms", "[liegroup]") {
    int n = 2;
    SECTION("second scaling family contracts both blocks") {
        CaseParams p;
        p.n = n;
        p.lambda = Rational(3, 4);
        MatchedPair mp = build_matched_pair(CaseId::case2, p);
        for (int i = 0; i < n; ++i) {
            REQUIRE(mp.alpha[i] == expo(-p.lambda, "r") * ExpPoly::var("p" + std::to_string(i + 1)));
            REQUIRE(mp.alpha[n + i] ==
                    expo(-p.lambda, "r") * ExpPoly::var("q" + std::to_string(i + 1)));
        }
    }
    SECTION("third family shears q by p") {
        CaseParams p;
        p.n = n;
        p.J = {{0, Rational(1, 3)}, {Rational(-1, 3), 0}};
        MatchedPair mp = build_matched_pair(CaseId::case3, p);
        for (int i = 0; i < n; ++i)
            REQUIRE(mp.alpha[i] == ExpPoly::var("p" + std::to_string(i + 1)));
        for (int j = 0; j < n; ++j) {
            ExpPoly expect = ExpPoly::var("q" + std::to_string(j + 1));
            for (int k = 0; k < n; ++k)
                if (p.J[k][j] != 0)
                    expect -= ExpPoly::constant(p.J[k][j]) * ExpPoly::var("r") *
                              ExpPoly::var("p" + std::to_string(k + 1));
            REQUIRE(mp.alpha[n + j] == expect);
        }
    }
}

TEST_CASE("pairing compatibility distinguishes the two diagonal families", "[liegroup]") {
    std::mt19937_64 rng(66);
    CaseParams good = sample_params(CaseId::rieffel, rng, 3, 1);
    REQUIRE(check_compatibility(good) == 0);

    CaseParams good2 = sample_params(CaseId::rieffel, rng, 3, 2);
    REQUIRE(check_compatibility(good2) == 0);

    CaseParams bad = good;
    bad.rho_rates = bad.pi_rates; // same sign on both blocks cannot compensate
    REQUIRE(check_compatibility(bad) > 0);
}

TEST_CASE("group cocycle F: closed forms from the ansatz solve", "[liegroup]") {
    int n = 2, d = 2 * n + 1;
    Rational lambda(1, 2);
    CaseParams p;
    p.n = n;
    p.lambda = lambda;

    GroupCocycleF F1 = build_F(CaseId::case1, p);
    TwoTensor expect1(d);
    for (int k = 0; k < n; ++k)
        expect1 += TwoTensor::wedge(d, k, n + k, ExpPoly::var("r"));
    REQUIRE(F1.value == expect1);

    GroupCocycleF F2 = build_F(CaseId::case2, p);
    TwoTensor expect2(d);
    for (int k = 0; k < n; ++k)
        expect2 += TwoTensor::wedge(d, k, n + k, eta_profile(-2 * lambda, "r"));
    REQUIRE(F2.value == expect2);

    // the two-parameter family with nu = -lambda degenerates to the flat profile
    CaseParams pm = p;
    pm.nu = -lambda;
    REQUIRE(build_F(CaseId::mixed, pm).value == expect1);
}

TEST_CASE("group cocycle F: defining identities hold exactly", "[liegroup]") {
    std::mt19937_64 rng(77);
    for (CaseId c : {CaseId::case1, CaseId::case2, CaseId::case3, CaseId::mixed, CaseId::rieffel}) {
        CaseParams p = sample_params(c, rng);
        PointGroup G = build_group(c, p);
        GroupCocycleF F = build_F(c, p);
        CocycleResiduals res = verify_F(G, F, theta_cobracket(p.n), p.n);
        REQUIRE(res.cocycle == 0);
        REQUIRE(res.derivative == 0);
    }
}

TEST_CASE("negative control: flat profile fails the cocycle law when scaled", "[liegroup][negative]") {
    int n = 2, d = 2 * n + 1;
    CaseParams p;
    p.n = n;
    p.lambda = Rational(1, 2);
    PointGroup G = build_group(CaseId::case2, p);
    GroupCocycleF bad;
    bad.value = TwoTensor(d);
    for (int k = 0; k < n; ++k) bad.value += TwoTensor::wedge(d, k, n + k, ExpPoly::var("r"));
    CocycleResiduals res = verify_F(G, bad, theta_cobracket(n), n);
    REQUIRE(res.cocycle > 0);
    REQUIRE(res.derivative == 0); // the derivative at 0 still matches
}

TEST_CASE("right-translated bivectors reproduce the bracket formulas", "[liegroup][poisson]") {
    std::mt19937_64 rng(88);
    int n = 2;
    Rational lambda = random_rational(rng), nu = random_rational(rng);

    SECTION("first family: linear coefficient") {
        CaseParams p;
        p.n = n;
        p.lambda = lambda;
        TwoTensor pi = poisson_from_F(build_group(CaseId::case1, p), build_F(CaseId::case1, p));
        ExpPoly expect =
            ExpPoly::var("r") * (beta_poly(n, 0, 1) - beta_poly(n, 1, 0));
        REQUIRE(poisson_pairing(pi, n) == expect);
    }
    SECTION("second family: eta coefficient") {
        CaseParams p;
        p.n = n;
        p.lambda = lambda;
        TwoTensor pi = poisson_from_F(build_group(CaseId::case2, p), build_F(CaseId::case2, p));
        ExpPoly expect = eta_profile(2 * lambda, "r") * (beta_poly(n, 0, 1) - beta_poly(n, 1, 0));
        REQUIRE(poisson_pairing(pi, n) == expect);
    }
    SECTION("third family: quadratic tail") {
        CaseParams p;
        p.n = n;
        p.J = random_skew(rng, n);
        TwoTensor pi = poisson_from_F(build_group(CaseId::case3, p), build_F(CaseId::case3, p));
        ExpPoly r = ExpPoly::var("r");
        ExpPoly expect = r * (beta_poly(n, 0, 1) - beta_poly(n, 1, 0));
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                if (p.J[k][j] != 0)
                    expect += Rational(1, 2) * r * r * ExpPoly::constant(p.J[k][j]) *
                              (ExpPoly::var("y" + std::to_string(j + 1)) *
                                   ExpPoly::var("y" + std::to_string(k + 1) + "'") -
                               ExpPoly::var("y" + std::to_string(k + 1)) *
                                   ExpPoly::var("y" + std::to_string(j + 1) + "'"));
        REQUIRE(poisson_pairing(pi, n) == expect);
    }
    SECTION("two-parameter family: combined eta coefficient") {
        CaseParams p;
        p.n = n;
        p.lambda = lambda;
        p.nu = nu;
        TwoTensor pi = poisson_from_F(build_group(CaseId::mixed, p), build_F(CaseId::mixed, p));
        ExpPoly expect =
            eta_profile(lambda + nu, "r") * (beta_poly(n, 0, 1) - beta_poly(n, 1, 0));
        REQUIRE(poisson_pairing(pi, n) == expect);
    }
}

TEST_CASE("bivectors vanish at the identity and satisfy both field laws", "[liegroup][poisson]") {
    std::mt19937_64 rng(99);
    for (CaseId c : {CaseId::case1, CaseId::case2, CaseId::case3, CaseId::mixed, CaseId::rieffel}) {
        CaseParams p = sample_params(c, rng);
        PointGroup G = build_group(c, p);
        TwoTensor pi = poisson_from_F(G, build_F(c, p));

        std::map<std::string, ExpPoly> at_e;
        for (const auto& v : G.coords) at_e.emplace(v, ExpPoly::zero());
        for (int i = 0; i < pi.dim; ++i)
            for (int j = 0; j < pi.dim; ++j)
                REQUIRE(pi.e[i][j].substitute(at_e).is_zero());

        REQUIRE(check_schouten(pi, G.coords) == 0);
        REQUIRE(check_multiplicativity(G, pi) == 0);
    }
}

TEST_CASE("negative control: constant bivector is not multiplicative", "[liegroup][negative]") {
    PointGroup plane = group_lines("u", 2);
    TwoTensor pi = TwoTensor::wedge(2, 0, 1, ExpPoly::constant(Rational(1, 3)));
    REQUIRE(check_schouten(pi, plane.coords) == 0); // still Poisson
    REQUIRE(check_multiplicativity(plane, pi) == Rational(1, 3));
}

TEST_CASE("translation Jacobians and unimodularity", "[liegroup]") {
    int n = 2;
    CaseParams hp;
    hp.n = n;
    hp.m = 1;
    PointGroup H = group_heisenberg(hp);
    REQUIRE(jacobian_of_translation(H, true) == ExpPoly::constant(1));
    REQUIRE(jacobian_of_translation(H, false) == ExpPoly::constant(1));

    CaseParams p;
    p.n = n;
    p.lambda = Rational(2, 3);
    PointGroup G1 = build_group(CaseId::case1, p);
    REQUIRE(jacobian_of_translation(G1, true) == ExpPoly::constant(1));
    REQUIRE(jacobian_of_translation(G1, false) == ExpPoly::constant(1));

    PointGroup G2 = build_group(CaseId::case2, p);
    REQUIRE(jacobian_of_translation(G2, true) == ExpPoly::constant(1));
    REQUIRE(jacobian_of_translation(G2, false) == expo(2 * n * p.lambda, "r'"));

    std::mt19937_64 rng(111);
    PointGroup R = build_group(CaseId::rieffel, sample_params(CaseId::rieffel, rng, n, 1));
    REQUIRE(jacobian_of_translation(R, false) == ExpPoly::constant(1));

    CaseParams q = sample_params(CaseId::nonuni, rng, n, 1);
    q.pi_rates = {{Rational(1)}, {Rational(2)}};
    q.rho_rates = {{Rational(1)}, {Rational(-1)}};
    PointGroup N = build_group(CaseId::nonuni, q);
    REQUIRE(jacobian_of_translation(N, true) == ExpPoly::constant(1));
    REQUIRE(jacobian_of_translation(N, false) == expo(3, "r'"));
}

TEST_CASE("group inverse closed form spot check", "[liegroup]") {
    CaseParams p;
    p.n = 1;
    p.lambda = Rational(1, 2);
    PointGroup G = build_group(CaseId::case2, p);
    REQUIRE(G.inverse[0] == ExpPoly::constant(-1) * expo(-p.lambda, "r") * ExpPoly::var("p1"));
    REQUIRE(G.inverse[1] == ExpPoly::constant(-1) * expo(-p.lambda, "r") * ExpPoly::var("q1"));
    REQUIRE(G.inverse[2] == ExpPoly::constant(-1) * ExpPoly::var("r"));
}

TEST_CASE("builder rejects malformed parameters", "[liegroup]") {
    CaseParams p;
    p.n = 2;
    p.J = {{0, 1}, {1, 0}};
    REQUIRE_THROWS_AS(build_group(CaseId::case3, p), InvalidParameter);
    CaseParams p2;
    p2.n = 2;
    REQUIRE_THROWS_AS(build_group(CaseId::case1, p2), InvalidParameter); // lambda = 0
    REQUIRE_NOTHROW(build_group(CaseId::case2, p2, false)); // degenerate abelian limit
    CaseParams p3;
    p3.n = 2;
    p3.m = 1;
    p3.pi_rates = {{Rational(1)}};
    REQUIRE_THROWS_AS(build_group(CaseId::nonuni, p3), InvalidParameter);
}

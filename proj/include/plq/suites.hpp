#pragma once

#include <chrono>
#include <random>
#include <string>

#include "plq/bialgebra.hpp"
#include "plq/config.hpp"
#include "plq/liealg.hpp"
#include "plq/liegroup.hpp"
#include "plq/report.hpp"

namespace plq {

/// Index of the cobracket/dual family backing a case at the infinitesimal
/// layer; 0 for the diagonal-rate variants, which are specified directly
/// by their groups.
inline int cobracket_kase(CaseId c) {
    switch (c) {
        case CaseId::case1: return 1;
        case CaseId::case2: return 2;
        case CaseId::case3: return 3;
        case CaseId::mixed: return 4;
        default: return 0;
    }
}

namespace suitedetail {

inline Cobracket family_cobracket(int k, const CaseParams& p) {
    switch (k) {
        case 1:
        case 2: return cobracket_case(k, p.n, p.lambda);
        case 3: return cobracket_case(3, p.n, 0, 0, p.J);
        default: return cobracket_case(4, p.n, p.lambda, p.nu);
    }
}

inline LieAlgebra family_dual(int k, const CaseParams& p) {
    switch (k) {
        case 1:
        case 2: return dual_case(k, p.n, p.lambda);
        case 3: return dual_case(3, p.n, 0, p.J);
        default: return dual_mixed(p.n, p.lambda, p.nu);
    }
}

inline void run_liealg(CaseId c, const CaseParams& p, Report& rep) {
    const std::string S = "liealg";
    rep.records.push_back(exact_record(S, "base-jacobi", heisenberg(p.n).check_jacobi()));
    int k = cobracket_kase(c);
    if (k == 0) {
        rep.records.push_back(exact_record(S, "dual-jacobi",
                                           lie_algebra_of(build_group(c, p)).check_jacobi(),
                                           "dual algebra read off from the group law"));
        return;
    }
    LieAlgebra h = heisenberg(p.n);
    Cobracket d = family_cobracket(k, p);
    rep.records.push_back(exact_record(S, "cobracket-cocycle", check_cocycle(h, d)));
    rep.records.push_back(exact_record(S, "cobracket-coskew", check_coskew(d)));

    std::vector<std::string> dn = indexed("p", p.n);
    for (const auto& s : indexed("q", p.n)) dn.push_back(s);
    dn.push_back("r");
    LieAlgebra dual = dualize(h, d, dn);
    LieAlgebra catalog = family_dual(k, p);
    rep.records.push_back(exact_record(S, "dual-jacobi", dual.check_jacobi()));
    rep.records.push_back(
        exact_record(S, "dual-matches-catalog", dual.same_brackets(catalog) ? 0 : 1));
    rep.records.push_back(
        exact_record(S, "theta-cocycle-on-dual", check_cocycle(catalog, theta_cobracket(p.n))));

    if (c == CaseId::case1 || c == CaseId::case2) {
        LieAlgebra ge = extended_heisenberg(p.n);
        TwoTensor r = extended_r_matrix(k, p.n, p.lambda);
        rep.records.push_back(exact_record(S, "r-matrix-cybe", check_cybe(ge, r)));
        rep.records.push_back(exact_record(
            S, "r-matrix-coboundary",
            coboundary_from_r(ge, r) == extended_cobracket(k, p.n, p.lambda) ? 0 : 1));
        if (c == CaseId::case1)
            rep.records.push_back(exact_record(S, "r-matrix-skew", check_skew(r) ? 0 : 1));
        else
            rep.records.push_back(exact_record(S, "r-matrix-symmetric-invariant",
                                               check_invariant(ge, r + r.transpose())));
    } else if (c == CaseId::case3) {
        TwoTensor r = skew_x_r_matrix(p.n, p.J);
        rep.records.push_back(exact_record(S, "r-matrix-cybe", check_cybe(h, r)));
        rep.records.push_back(
            exact_record(S, "r-matrix-coboundary", coboundary_from_r(h, r) == d ? 0 : 1));
    }
}

inline void run_group(CaseId c, const CaseParams& p, Report& rep) {
    const std::string S = "group";
    PointGroup G = build_group(c, p);
    rep.records.push_back(exact_record(S, "group-axioms", verify_group(G)));
    rep.records.push_back(
        exact_record(S, "matched-pair", check_matched_pair(build_matched_pair(c, p))));
    int k = cobracket_kase(c);
    if (k > 0)
        rep.records.push_back(exact_record(
            S, "linearization-matches-dual",
            lie_algebra_of(G).same_brackets(suitedetail::family_dual(k, p)) ? 0 : 1));
    else
        rep.records.push_back(
            exact_record(S, "linearization-jacobi", lie_algebra_of(G).check_jacobi()));
    if (c == CaseId::rieffel)
        rep.records.push_back(exact_record(S, "pairing-compatibility", check_compatibility(p),
                                           "rates must preserve the pairing"));
}

inline void run_poisson(CaseId c, const CaseParams& p, Report& rep) {
    const std::string S = "poisson";
    PointGroup G = build_group(c, p);
    GroupCocycleF F;
    try {
        F = build_F(c, p);
    } catch (const CocycleConditionFailure& e) {
        rep.records.push_back(
            exact_record(S, "cocycle-ansatz", 0, std::string("skipped: ") + e.what()));
        return;
    }
    CocycleResiduals res = verify_F(G, F, theta_cobracket(p.n), p.n);
    rep.records.push_back(exact_record(S, "cocycle-law", res.cocycle));
    rep.records.push_back(exact_record(S, "cocycle-derivative", res.derivative));

    TwoTensor pi = poisson_from_F(G, F);
    std::map<std::string, ExpPoly> at_e;
    for (const auto& v : G.coords) at_e.emplace(v, ExpPoly::zero());
    Rational vanish = 0;
    for (int i = 0; i < pi.dim; ++i)
        for (int j = 0; j < pi.dim; ++j)
            vanish = std::max(vanish, pi.e[i][j].substitute(at_e).residual());
    rep.records.push_back(exact_record(S, "vanishes-at-identity", vanish));
    rep.records.push_back(exact_record(S, "schouten", check_schouten(pi, G.coords)));
    rep.records.push_back(exact_record(S, "multiplicative", check_multiplicativity(G, pi)));
}

inline void run_unitary(CaseId c, const CaseParams& p, const RunConfig& cfg,
                        std::mt19937_64& rng, Report& rep) {
    const std::string S = "unitary";
    rep.records.push_back(exact_record(S, "flow-unitary", check_unitary(op_Z(c, p))));
    Rational vres = std::max(check_unitary(op_V(c, p)), check_unitary(op_VTheta(c, p)));
    rep.records.push_back(exact_record(S, "twisted-unitary", vres));
    rep.records.push_back(exact_record(
        S, "closed-form", op_residual(op_VTheta(c, p), displayed_vtheta(c, p)).max()));
    rep.records.push_back(exact_record(S, "twist-consistency", check_theta_consistency(c, p)));
    rep.records.push_back(exact_record(S, "twist-cocycle", check_cocycle_field(c, p)));

    PentagonResult pr = check_pentagon(op_VTheta(c, p), p, rng, cfg.samples);
    rep.records.push_back(exact_record(S, "pentagon-map", pr.map_residual));
    if (pr.exact)
        rep.records.push_back(
            exact_record(S, "pentagon-phase", 0, "exponents agree exactly"));
    else
        rep.records.push_back(sampled_record(
            S, "pentagon-phase", pr.phase_residual, cfg.tol,
            "sampled at " + std::to_string(cfg.samples) + " points"));

    if (cobracket_kase(c) > 0) {
        Rational lam = p.lambda != 0 ? p.lambda : Rational(1, 2);
        for (const auto& [label, residual] : degeneration_residuals(p.n, lam))
            rep.records.push_back(exact_record(S, label, residual));
    }
}

inline void run_bialgebra(CaseId c, const CaseParams& p, Report& rep) {
    const std::string S = "bialgebra";
    Rational blocks = std::max(check_unitary(block_L(c, p)), check_unitary(block_rho(c, p)));
    rep.records.push_back(exact_record(S, "blocks-unitary", blocks));
    rep.records.push_back(
        exact_record(S, "coproduct-grouplaw", check_coproduct_grouplaw(c, p)));
    rep.records.push_back(exact_record(S, "coassociativity", check_coassociativity(c, p)));
    rep.records.push_back(exact_record(S, "dual-twist", check_dual_twist_relation(c, p)));
    rep.records.push_back(
        exact_record(S, "crossed-product", check_crossed_product_relations(c, p)));
    if (c == CaseId::case1)
        rep.records.push_back(exact_record(S, "convolution-reduction",
                                           check_convolution_reduction(p.n, p.lambda)));
}

/// Deliberately broken fixtures; each record passes when the corruption
/// is detected (nonzero residual).
inline void run_selftest(const RunConfig& cfg, std::mt19937_64& rng, Report& rep) {
    const std::string S = "selftest";

    LieAlgebra badalg = heisenberg(1);
    badalg.add_bracket(0, 2, 0, 1);
    rep.records.push_back(detection_record(S, "detects-corrupted-bracket",
                                           badalg.check_jacobi(), "injected [x1, z] = x1"));

    LieAlgebra h1 = heisenberg(1);
    Cobracket badco;
    badco.val.assign(3, TwoTensor(3));
    badco.val[2] = TwoTensor::wedge(3, 0, 1);
    rep.records.push_back(detection_record(S, "detects-corrupted-cobracket",
                                           check_cocycle(h1, badco),
                                           "z mapped to x1 wedge y1"));

    LieAlgebra h2 = heisenberg(2);
    TwoTensor sym(h2.dim());
    sym.e[0][1] = ExpPoly::constant(1);
    rep.records.push_back(detection_record(S, "detects-non-skew-pairing",
                                           check_invariant(h2, sym + sym.transpose()),
                                           "symmetric part of x1 (x) x2 is not invariant"));

    CaseParams fix;
    fix.n = 1;
    fix.lambda = Rational(1, 2);
    CaseParams p = normalize_params(CaseId::case2, fix);
    PhasedOp bad = identity_op(tensor_copies(p, 2).flat());
    bad.phase = ExpPoly::var("r'") * ExpPoly::var("x1") * ExpPoly::var("x1'");
    PentagonResult pr =
        check_pentagon(compose(op_V(CaseId::case2, p), bad), p, rng, cfg.samples);
    rep.records.push_back(detection_record(S, "detects-mispaired-twist", pr.phase_residual,
                                           1e-3, "twist paired x with x' instead of y'"));

    PointGroup plane = group_lines("u", 2);
    TwoTensor cpi = TwoTensor::wedge(2, 0, 1, ExpPoly::constant(Rational(1, 3)));
    rep.records.push_back(detection_record(S, "detects-non-multiplicative-bivector",
                                           check_multiplicativity(plane, cpi),
                                           "constant bivector on the plane"));
}

} // namespace suitedetail

/// Run the configured suites and collect one record per verified identity.
inline Report run(const RunConfig& cfg) {
    validate_config(cfg);
    CaseParams p = normalize_params(cfg.c, config_case_params(cfg), true);
    std::mt19937_64 rng(cfg.seed);

    Report rep;
    rep.case_id = case_name(cfg.c);
    rep.n = p.n;
    rep.m = p.m;
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    rep.tol = cfg.tol;
    rep.suites = cfg.suites;
    if (cfg.self_test) rep.suites.push_back("selftest");
    rep.timings = cfg.timings;

    auto t0 = std::chrono::steady_clock::now();
    for (const auto& s : cfg.suites) {
        if (s == "liealg")
            suitedetail::run_liealg(cfg.c, p, rep);
        else if (s == "group")
            suitedetail::run_group(cfg.c, p, rep);
        else if (s == "poisson")
            suitedetail::run_poisson(cfg.c, p, rep);
        else if (s == "unitary")
            suitedetail::run_unitary(cfg.c, p, cfg, rng, rep);
        else if (s == "bialgebra")
            suitedetail::run_bialgebra(cfg.c, p, rep);
    }
    if (cfg.self_test) suitedetail::run_selftest(cfg, rng, rep);
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace plq

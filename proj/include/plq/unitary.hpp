#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plq/cases.hpp"
#include "plq/liegroup.hpp"
#include "plq/pointmap.hpp"

namespace plq {

/// Phased point-transform operator on an ordered coordinate list:
///
///   (W xi)(v) = prefactor(v) * ebar[phase(v)] * xi(T v),
///
/// where ebar[t] = exp(-2 pi i t).  The point map T is one component per
/// coordinate and must stay triangularly invertible; the prefactor is a
/// single positive term so that inverses and square roots stay exact.
/// Free symbols that are not coordinates act as parameters: the point map
/// never moves them and every identity below holds for all their values.
struct PhasedOp {
    std::vector<std::string> vars;
    std::vector<ExpPoly> map;
    ExpPoly prefactor = ExpPoly::constant(1);
    ExpPoly phase;
};

inline PhasedOp identity_op(std::vector<std::string> vars) {
    PhasedOp w;
    w.map = vars_of(vars);
    w.vars = std::move(vars);
    return w;
}

/// Operator product a.b.  The function sees b first, so the point flows
/// through T_a and then T_b; prefactor and phase of b are pulled back
/// along T_a.
inline PhasedOp compose(const PhasedOp& a, const PhasedOp& b) {
    if (a.vars != b.vars) throw InvalidParameter("compose: operators live on different spaces");
    try {
        auto bind = binding(a.vars, a.map);
        PhasedOp out;
        out.vars = a.vars;
        out.map = substitute_all(b.map, bind);
        out.prefactor = a.prefactor * b.prefactor.substitute(bind);
        out.phase = a.phase + b.phase.substitute(bind);
        return out;
    } catch (const NonAffineExpSubstitution& e) {
        throw OperatorClassEscape(std::string("composition left the operator class: ") + e.what());
    }
}

/// Inverse (= adjoint, for a unitary operator): the point map is inverted
/// in closed form, the prefactor is inverted and the phase negated, both
/// pulled back along the inverse map.
inline PhasedOp adjoint(const PhasedOp& w) {
    std::vector<std::string> targets;
    targets.reserve(w.vars.size());
    for (const auto& v : w.vars) targets.push_back(v + "#");
    std::vector<ExpPoly> sol;
    try {
        sol = invert_point_map(w.map, w.vars, targets);
    } catch (const NonAffineExpSubstitution& e) {
        throw OperatorClassEscape(std::string("inversion left the operator class: ") + e.what());
    }
    std::map<std::string, ExpPoly> back;
    for (std::size_t i = 0; i < w.vars.size(); ++i)
        back.emplace(targets[i], ExpPoly::var(w.vars[i]));
    PhasedOp out;
    out.vars = w.vars;
    out.map = substitute_all(sol, back);
    auto bind = binding(w.vars, out.map);
    out.prefactor = invert_single_term(w.prefactor.substitute(bind));
    out.phase = ExpPoly::zero() - w.phase.substitute(bind);
    return out;
}

/// Substitute parameter values into every field of an operator.
inline PhasedOp substitute_params(const PhasedOp& w, const std::map<std::string, ExpPoly>& bind) {
    PhasedOp out;
    out.vars = w.vars;
    out.map = substitute_all(w.map, bind);
    out.prefactor = w.prefactor.substitute(bind);
    out.phase = w.phase.substitute(bind);
    return out;
}

/// Componentwise exact residuals between two operators on the same space.
struct OpResidual {
    Rational map = 0;
    Rational prefactor = 0;
    Rational phase = 0;
    Rational max() const { return std::max(map, std::max(prefactor, phase)); }
};

inline OpResidual op_residual(const PhasedOp& a, const PhasedOp& b) {
    if (a.vars != b.vars) throw InvalidParameter("op_residual: operators live on different spaces");
    OpResidual r;
    for (std::size_t i = 0; i < a.map.size(); ++i)
        r.map = std::max(r.map, (a.map[i] - b.map[i]).residual());
    r.prefactor = (a.prefactor - b.prefactor).residual();
    r.phase = (a.phase - b.phase).residual();
    return r;
}

inline bool op_equal(const PhasedOp& a, const PhasedOp& b) {
    return a.vars == b.vars && a.map == b.map && a.prefactor == b.prefactor && a.phase == b.phase;
}

/// Equality up to a constant integer phase shift; ebar of an integer is 1,
/// so such operators act identically.
inline bool op_equal_mod_phase(const PhasedOp& a, const PhasedOp& b) {
    if (a.vars != b.vars || a.map != b.map || a.prefactor != b.prefactor) return false;
    ExpPoly d = a.phase - b.phase;
    return d.is_constant() && is_integer(d.constant_value());
}

/// Exact residual of prefactor^2 = |det J_T|; 0 certifies unitarity of the
/// transform part (the phase is unimodular by construction).
inline Rational check_unitary(const PhasedOp& w) {
    ExpPoly det = map_jacobian_det(w.map, w.vars);
    ExpPoly p2 = w.prefactor * w.prefactor;
    return std::min((p2 - det).residual(), (p2 + det).residual());
}

/// Canonical text form for reports and regression snapshots.
inline std::string op_to_string(const PhasedOp& w) {
    std::string out = "on(";
    for (std::size_t i = 0; i < w.vars.size(); ++i) {
        if (i) out += ", ";
        out += w.vars[i];
    }
    out += ")\n";
    for (std::size_t i = 0; i < w.vars.size(); ++i)
        out += "  " + w.vars[i] + " -> " + w.map[i].to_string() + "\n";
    out += "  prefactor: " + w.prefactor.to_string() + "\n";
    out += "  phase: " + w.phase.to_string() + "\n";
    return out;
}

/// Ordered tensor-factor structure: each factor is a block of coordinate
/// names, and operators are placed on factors by position (1-based).
struct FactorSpace {
    std::vector<std::vector<std::string>> factors;

    std::vector<std::string> flat() const {
        std::vector<std::string> out;
        for (const auto& f : factors)
            for (const auto& nm : f) out.push_back(nm);
        return out;
    }
};

/// One copy of the function space: the (x, y) block and the r block.
inline FactorSpace base_space(const CaseParams& p) {
    return FactorSpace{{xy_block_names(p.n), block_names("r", p.m)}};
}

/// Several copies of the function space; copy k carries k prime marks.
inline FactorSpace tensor_copies(const CaseParams& p, int copies) {
    FactorSpace out;
    for (int c = 0; c < copies; ++c) {
        out.factors.push_back(prime_all(xy_block_names(p.n), c));
        out.factors.push_back(prime_all(block_names("r", p.m), c));
    }
    return out;
}

/// Place w on the listed factor positions of a larger space, acting as the
/// identity on every other factor.
inline PhasedOp leg(const PhasedOp& w, const std::vector<int>& positions,
                    const FactorSpace& space) {
    std::set<int> uniq(positions.begin(), positions.end());
    if (uniq.size() != positions.size()) throw InvalidParameter("leg: positions must be disjoint");
    std::vector<std::string> slots;
    for (int pos : positions) {
        if (pos < 1 || pos > int(space.factors.size()))
            throw InvalidParameter("leg: factor position out of range");
        for (const auto& nm : space.factors[pos - 1]) slots.push_back(nm);
    }
    if (slots.size() != w.vars.size())
        throw InvalidParameter("leg: factor sizes do not match the operator");
    std::map<std::string, ExpPoly> ren;
    for (std::size_t i = 0; i < slots.size(); ++i) ren.emplace(w.vars[i], ExpPoly::var(slots[i]));
    PhasedOp out = identity_op(space.flat());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < out.vars.size(); ++i) index.emplace(out.vars[i], i);
    for (std::size_t i = 0; i < slots.size(); ++i)
        out.map[index.at(slots[i])] = w.map[i].substitute(ren);
    out.prefactor = w.prefactor.substitute(ren);
    out.phase = w.phase.substitute(ren);
    return out;
}

/// Translation of the first r block by the second: xi(r, r') -> xi(r + r', r').
inline PhasedOp op_X(int m = 1) {
    std::vector<std::string> r0 = block_names("r", m), r1 = prime_all(r0, 1);
    std::vector<std::string> vars = r0;
    for (const auto& s : r1) vars.push_back(s);
    PhasedOp w = identity_op(vars);
    for (int l = 0; l < m; ++l) w.map[l] = ExpPoly::var(r0[l]) + ExpPoly::var(r1[l]);
    return w;
}

/// Quotient translation: subtracts the first (x, y) block from the second.
inline PhasedOp op_Y(int n) {
    std::vector<std::string> a = xy_block_names(n), b = prime_all(a, 1);
    std::vector<std::string> vars = a;
    for (const auto& s : b) vars.push_back(s);
    PhasedOp w = identity_op(vars);
    for (int i = 0; i < 2 * n; ++i) w.map[2 * n + i] = ExpPoly::var(b[i]) - ExpPoly::var(a[i]);
    return w;
}

/// Scaling/shear operator realizing the r-action on the (x, y) block.  The
/// linear part is the inverse transpose of the matched-pair action on the
/// (p, q) block (the two blocks are dual pairings), and the prefactor is
/// the square root of the Jacobian determinant, making the operator unitary.
inline PhasedOp op_Z(CaseId c, const CaseParams& p0, bool strict = true) {
    CaseParams p = normalize_params(c, p0, strict);
    MatchedPair mp = build_matched_pair(c, p, strict);
    int n2 = 2 * p.n;
    std::vector<std::string> pq(mp.G.coords.begin(), mp.G.coords.begin() + n2);
    std::vector<std::string> targets = prime_all(pq, 2);
    std::vector<ExpPoly> inv = invert_point_map(mp.alpha, pq, targets);

    PhasedOp w = identity_op(base_space(p).flat());
    for (int i = 0; i < n2; ++i) {
        ExpPoly comp;
        for (int j = 0; j < n2; ++j) {
            ExpPoly coeff = inv[j].differentiate(targets[i]);
            if (!coeff.is_zero()) comp += coeff * ExpPoly::var(w.vars[j]);
        }
        w.map[i] = comp;
    }
    w.prefactor = sqrt_single_term(map_jacobian_det(w.map, w.vars));
    return w;
}

/// The same operator in the dual-side (p, q, r) coordinates, where the
/// point map is the matched-pair action itself.
inline PhasedOp op_Z_pq(CaseId c, const CaseParams& p0, bool strict = true) {
    CaseParams p = normalize_params(c, p0, strict);
    MatchedPair mp = build_matched_pair(c, p, strict);
    PhasedOp w;
    w.vars = mp.G.coords;
    w.map = vars_of(w.vars);
    for (int i = 0; i < 2 * p.n; ++i) w.map[i] = mp.alpha[i];
    w.prefactor = sqrt_single_term(map_jacobian_det(w.map, w.vars));
    return w;
}

/// Exponent of the twisting cocycle sigma^r on two group slots given as
/// component expressions (x block then y block, 2n each); the r block is a
/// list of variable names.
inline ExpPoly sigma_exponent(CaseId c, const CaseParams& p,
                              const std::vector<std::string>& rvars,
                              const std::vector<ExpPoly>& a, const std::vector<ExpPoly>& b) {
    if (int(rvars.size()) != p.m || int(a.size()) != 2 * p.n || int(b.size()) != 2 * p.n)
        throw InvalidParameter("sigma_exponent: slot sizes do not match the parameters");
    std::vector<ExpPoly> ax(a.begin(), a.begin() + p.n), ay(a.begin() + p.n, a.end());
    std::vector<ExpPoly> by(b.begin() + p.n, b.end());
    switch (c) {
        case CaseId::case1:
            return ExpPoly::var(rvars[0]) * beta_expr(p, 0, ax, by);
        case CaseId::case2:
            return eta_profile(2 * p.lambda, rvars[0]) * beta_expr(p, 0, ax, by);
        case CaseId::mixed:
            return eta_profile(p.lambda + p.nu, rvars[0]) * beta_expr(p, 0, ax, by);
        case CaseId::case3: {
            ExpPoly r = ExpPoly::var(rvars[0]);
            ExpPoly quad;
            for (int i = 0; i < p.n; ++i)
                for (int j = 0; j < p.n; ++j)
                    if (p.J[i][j] != 0) quad += ExpPoly::constant(p.J[i][j]) * ay[j] * by[i];
            return r * beta_expr(p, 0, ax, by) +
                   ExpPoly::constant(Rational(1, 2)) * r * r * quad;
        }
        case CaseId::rieffel: {
            ExpPoly out;
            for (int l = 0; l < p.m; ++l)
                out += ExpPoly::var(rvars[l]) * beta_expr(p, l, ax, by);
            return out;
        }
        case CaseId::nonuni: {
            ExpPoly out;
            for (int l = 0; l < p.m; ++l)
                for (int i = 0; i < p.n; ++i)
                    for (int j = 0; j < p.n; ++j)
                        if (p.beta[l][i][j] != 0) {
                            ExpPoly grow = rate_exp(p.pi_rates, i, rvars) *
                                               rate_exp(p.rho_rates, j, rvars) -
                                           ExpPoly::constant(1);
                            out += ExpPoly::constant(p.beta[l][i][j]) * grow * ax[i] * by[j];
                        }
            return out;
        }
    }
    throw InvalidParameter("unknown case");
}

inline ExpPoly sigma_exponent(CaseId c, const CaseParams& p,
                              const std::vector<std::string>& rvars,
                              const std::vector<std::string>& a_names,
                              const std::vector<std::string>& b_names) {
    return sigma_exponent(c, p, rvars, vars_of(a_names), vars_of(b_names));
}

/// The field r -> sigma^r packaged with its construction data; the
/// exponent pairs copy 0 against copy 1 over the base r block.
struct CocycleField {
    CaseId c;
    CaseParams params;
    ExpPoly exponent;
};

inline CocycleField cocycle_field(CaseId c, const CaseParams& p0, bool strict = true) {
    CaseParams p = normalize_params(c, p0, strict);
    auto xy = xy_block_names(p.n);
    ExpPoly e = sigma_exponent(c, p, block_names("r", p.m), xy, prime_all(xy, 1));
    return CocycleField{c, p, e};
}

/// Residual of the normalized-cocycle laws for sigma^r on the abelian
/// (x, y) block: vanishing on either trivial slot and at r = 0, and the
/// 2-cocycle identity
///   sigma(u, v) + sigma(u + v, w) = sigma(v, w) + sigma(u, v + w).
inline Rational check_cocycle_field(CaseId c, const CaseParams& p0, bool strict = true) {
    CaseParams p = normalize_params(c, p0, strict);
    auto rvars = block_names("r", p.m);
    auto xy = xy_block_names(p.n);
    auto u = vars_of(xy), v = vars_of(prime_all(xy, 1)), w = vars_of(prime_all(xy, 2));
    std::vector<ExpPoly> uv(2 * p.n), vw(2 * p.n), zero(2 * p.n, ExpPoly::zero());
    for (int i = 0; i < 2 * p.n; ++i) {
        uv[i] = u[i] + v[i];
        vw[i] = v[i] + w[i];
    }
    auto sig = [&](const std::vector<ExpPoly>& s, const std::vector<ExpPoly>& t) {
        return sigma_exponent(c, p, rvars, s, t);
    };
    Rational res = (sig(u, v) + sig(uv, w) - sig(v, w) - sig(u, vw)).residual();
    res = std::max(res, sig(zero, v).residual());
    res = std::max(res, sig(u, zero).residual());
    std::map<std::string, ExpPoly> at0;
    for (const auto& rn : rvars) at0.emplace(rn, ExpPoly::zero());
    res = std::max(res, sig(u, v).substitute(at0).residual());
    return res;
}

/// Pure-phase twisting operator on the doubled space: ebar of the sigma
/// exponent taken at the second copy's r block.
inline PhasedOp op_Theta(CaseId c, const CaseParams& p0, bool strict = true) {
    CaseParams p = normalize_params(c, p0, strict);
    PhasedOp w = identity_op(tensor_copies(p, 2).flat());
    auto xy = xy_block_names(p.n);
    w.phase = sigma_exponent(c, p, prime_all(block_names("r", p.m), 1), xy, prime_all(xy, 1));
    return w;
}

/// Multiplicative unitary of the matched pair, assembled from the legs
/// Z12 X24 Z12* Y13 on the doubled space.
inline PhasedOp op_V(CaseId c, const CaseParams& p0, bool strict = true) {
    CaseParams p = normalize_params(c, p0, strict);
    FactorSpace sp = tensor_copies(p, 2);
    PhasedOp z12 = leg(op_Z(c, p, strict), {1, 2}, sp);
    PhasedOp x24 = leg(op_X(p.m), {2, 4}, sp);
    PhasedOp y13 = leg(op_Y(p.n), {1, 3}, sp);
    return compose(compose(compose(z12, x24), adjoint(z12)), y13);
}

/// The twisted multiplicative unitary V followed by the twisting phase.
inline PhasedOp op_VTheta(CaseId c, const CaseParams& p0, bool strict = true) {
    CaseParams p = normalize_params(c, p0, strict);
    return compose(op_V(c, p, strict), op_Theta(c, p, strict));
}

/// Closed forms of the twisted operators, transcribed once per variant;
/// building op_VTheta by composition must reproduce these exactly.  The
/// diagonal-rate form assumes the pairing-compatible rates, under which
/// the composed prefactor collapses to 1.
inline PhasedOp displayed_vtheta(CaseId c, const CaseParams& p0, bool strict = true) {
    CaseParams p = normalize_params(c, p0, strict);
    int n = p.n;
    PhasedOp w = identity_op(tensor_copies(p, 2).flat());
    auto xy0 = xy_block_names(n), xy1 = prime_all(xy0, 1);
    auto r0 = block_names("r", p.m), r1 = prime_all(r0, 1);
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < w.vars.size(); ++i) idx.emplace(w.vars[i], i);
    auto X0 = [&](int i) { return ExpPoly::var(xy0[i]); };
    auto X1 = [&](int i) { return ExpPoly::var(xy1[i]); };
    for (int l = 0; l < p.m; ++l)
        w.map[idx.at(r0[l])] = ExpPoly::var(r0[l]) + ExpPoly::var(r1[l]);

    if (c == CaseId::case3) {
        ExpPoly rp = ExpPoly::var(r1[0]);
        for (int i = 0; i < n; ++i) {
            ExpPoly shear;
            for (int j = 0; j < n; ++j)
                if (p.J[i][j] != 0) shear += ExpPoly::constant(p.J[i][j]) * X0(n + j);
            ExpPoly tx = X0(i) - rp * shear;
            w.map[idx.at(xy0[i])] = tx;
            w.map[idx.at(xy1[i])] = X1(i) - tx;
            w.map[idx.at(xy1[n + i])] = X1(n + i) - X0(n + i);
        }
        std::vector<ExpPoly> xs(n), yd(n);
        for (int i = 0; i < n; ++i) {
            xs[i] = X0(i);
            yd[i] = X1(n + i) - X0(n + i);
        }
        ExpPoly quad;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (p.J[i][j] != 0)
                    quad += ExpPoly::constant(p.J[i][j]) * X0(n + j) * (X1(n + i) - X0(n + i));
        w.phase = rp * beta_expr(p, 0, xs, yd) -
                  ExpPoly::constant(Rational(1, 2)) * rp * rp * quad;
        return w;
    }

    std::vector<ExpPoly> sx(n), sy(n);
    switch (c) {
        case CaseId::case1:
            for (int i = 0; i < n; ++i) {
                sx[i] = expo(-p.lambda, r1[0]);
                sy[i] = expo(p.lambda, r1[0]);
            }
            break;
        case CaseId::case2:
            for (int i = 0; i < n; ++i) sx[i] = sy[i] = expo(-p.lambda, r1[0]);
            break;
        case CaseId::mixed:
            for (int i = 0; i < n; ++i) {
                sx[i] = expo(-p.lambda, r1[0]);
                sy[i] = expo(-p.nu, r1[0]);
            }
            break;
        case CaseId::rieffel:
        case CaseId::nonuni:
            for (int i = 0; i < n; ++i) {
                sx[i] = rate_exp(p.pi_rates, i, r1, -1);
                sy[i] = rate_exp(p.rho_rates, i, r1, -1);
            }
            break;
        default:
            break;
    }
    for (int i = 0; i < n; ++i) {
        w.map[idx.at(xy0[i])] = sx[i] * X0(i);
        w.map[idx.at(xy0[n + i])] = sy[i] * X0(n + i);
        w.map[idx.at(xy1[i])] = X1(i) - sx[i] * X0(i);
        w.map[idx.at(xy1[n + i])] = X1(n + i) - sy[i] * X0(n + i);
    }
    std::vector<ExpPoly> xs(n), yd(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = sx[i] * X0(i);
        yd[i] = X1(n + i) - sy[i] * X0(n + i);
    }
    switch (c) {
        case CaseId::case1:
            w.phase = ExpPoly::var(r1[0]) * beta_expr(p, 0, xs, yd);
            break;
        case CaseId::case2:
            w.phase = eta_profile(2 * p.lambda, r1[0]) * beta_expr(p, 0, xs, yd);
            w.prefactor = ExpPoly::exp_atom(-p.lambda * n, r1[0]);
            break;
        case CaseId::mixed:
            w.phase = eta_profile(p.lambda + p.nu, r1[0]) * beta_expr(p, 0, xs, yd);
            w.prefactor = ExpPoly::exp_atom(-(p.lambda + p.nu) * n / 2, r1[0]);
            break;
        case CaseId::rieffel: {
            ExpPoly ph;
            for (int l = 0; l < p.m; ++l) ph += ExpPoly::var(r1[l]) * beta_expr(p, l, xs, yd);
            w.phase = ph;
            break;
        }
        case CaseId::nonuni: {
            std::vector<ExpPoly> x0(n), grown(n);
            for (int i = 0; i < n; ++i) x0[i] = X0(i);
            for (int j = 0; j < n; ++j)
                grown[j] = rate_exp(p.rho_rates, j, r1) * X1(n + j) - X0(n + j);
            ExpPoly ph;
            for (int l = 0; l < p.m; ++l)
                ph += beta_expr(p, l, x0, grown) - beta_expr(p, l, xs, yd);
            w.phase = ph;
            ExpPoly pre = ExpPoly::constant(1);
            for (int i = 0; i < n; ++i)
                pre *= rate_exp(p.pi_rates, i, r1, Rational(-1, 2)) *
                       rate_exp(p.rho_rates, i, r1, Rational(-1, 2));
            w.prefactor = pre;
            break;
        }
        default:
            break;
    }
    return w;
}

/// Recover the pure-phase twist from the transcribed closed form: V*
/// followed by the displayed operator must equal Theta exactly.
inline Rational check_theta_consistency(CaseId c, const CaseParams& p0, bool strict = true) {
    CaseParams p = normalize_params(c, p0, strict);
    PhasedOp recovered = compose(adjoint(op_V(c, p, strict)), displayed_vtheta(c, p, strict));
    return op_residual(recovered, op_Theta(c, p, strict)).max();
}

/// Pentagon relation W12 W13 W23 = W23 W12 on a triple product space.
/// Point maps and prefactors are compared exactly; so are the phase
/// exponents, with a sampled evaluation of ebar as the fallback (operators
/// can agree although exponents differ by an integer constant).
struct PentagonResult {
    Rational map_residual = 0;
    double phase_residual = 0;
    bool exact = true;
};

inline PentagonResult check_pentagon(const PhasedOp& w, const FactorSpace& triple,
                                     int factors_per_copy, std::mt19937_64& rng,
                                     int samples = 1000, double lo = -2, double hi = 2) {
    if (int(triple.factors.size()) != 3 * factors_per_copy)
        throw InvalidParameter("check_pentagon: expected a triple product space");
    auto span = [&](int copy_a, int copy_b) {
        std::vector<int> pos;
        for (int f = 0; f < factors_per_copy; ++f) pos.push_back(copy_a * factors_per_copy + f + 1);
        for (int f = 0; f < factors_per_copy; ++f) pos.push_back(copy_b * factors_per_copy + f + 1);
        return pos;
    };
    PhasedOp w12 = leg(w, span(0, 1), triple);
    PhasedOp w13 = leg(w, span(0, 2), triple);
    PhasedOp w23 = leg(w, span(1, 2), triple);
    PhasedOp lhs = compose(compose(w12, w13), w23);
    PhasedOp rhs = compose(w23, w12);

    PentagonResult out;
    for (std::size_t i = 0; i < lhs.map.size(); ++i)
        out.map_residual = std::max(out.map_residual, (lhs.map[i] - rhs.map[i]).residual());
    out.map_residual = std::max(out.map_residual, (lhs.prefactor - rhs.prefactor).residual());

    ExpPoly d = lhs.phase - rhs.phase;
    if (d.is_zero()) return out;
    out.exact = false;
    std::set<std::string> fv = d.free_vars();
    std::uniform_real_distribution<double> dist(lo, hi);
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
        std::map<std::string, double> point;
        for (const auto& v : fv) point.emplace(v, dist(rng));
        double delta = d.evaluate(point);
        worst = std::max(worst, 2.0 * std::abs(std::sin(std::numbers::pi * delta)));
    }
    out.phase_residual = worst;
    return out;
}

inline PentagonResult check_pentagon(const PhasedOp& w, const CaseParams& p,
                                     std::mt19937_64& rng, int samples = 1000, double lo = -2,
                                     double hi = 2) {
    return check_pentagon(w, tensor_copies(p, 3), 2, rng, samples, lo, hi);
}

/// Named residuals for the parameter degenerations connecting the
/// variants: the two-rate family at nu = -lambda collapses onto the first
/// variant, switching off the rates (or the shear) leaves the plain
/// translation double with a linear phase, and a trivial twist leaves V
/// untouched.
inline std::vector<std::pair<std::string, Rational>> degeneration_residuals(
    int n, const Rational& lambda) {
    std::vector<std::pair<std::string, Rational>> out;

    CaseParams mix;
    mix.n = n;
    mix.lambda = lambda;
    mix.nu = -lambda;
    CaseParams one;
    one.n = n;
    one.lambda = lambda;
    out.emplace_back("two-rate family at nu = -lambda matches case1",
                     op_residual(op_VTheta(CaseId::mixed, mix), op_VTheta(CaseId::case1, one))
                         .max());

    int n3 = std::max(n, 2);
    CaseParams flat2;
    flat2.n = n3;
    CaseParams flat3;
    flat3.n = n3;
    flat3.J.assign(n3, std::vector<Rational>(n3, 0));
    PhasedOp a = op_VTheta(CaseId::case2, flat2, false);
    PhasedOp b = op_VTheta(CaseId::case3, flat3, false);
    out.emplace_back("case2 at lambda = 0 matches case3 at J = 0", op_residual(a, b).max());

    CaseParams pf = normalize_params(CaseId::case3, flat3, false);
    PhasedOp plain = identity_op(tensor_copies(pf, 2).flat());
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < plain.vars.size(); ++i) idx.emplace(plain.vars[i], i);
    auto xy0 = xy_block_names(n3), xy1 = prime_all(xy0, 1);
    plain.map[idx.at("r")] = ExpPoly::var("r") + ExpPoly::var("r'");
    for (int i = 0; i < 2 * n3; ++i)
        plain.map[idx.at(xy1[i])] = ExpPoly::var(xy1[i]) - ExpPoly::var(xy0[i]);
    std::vector<ExpPoly> xs(n3), yd(n3);
    for (int i = 0; i < n3; ++i) {
        xs[i] = ExpPoly::var(xy0[i]);
        yd[i] = ExpPoly::var(xy1[n3 + i]) - ExpPoly::var(xy0[n3 + i]);
    }
    plain.phase = ExpPoly::var("r'") * beta_expr(pf, 0, xs, yd);
    out.emplace_back("degenerate operator is the linear-phase translation double",
                     op_residual(a, plain).max());

    CaseParams two;
    two.n = n;
    two.lambda = lambda;
    PhasedOp v = op_V(CaseId::case2, two);
    PhasedOp trivial = identity_op(tensor_copies(normalize_params(CaseId::case2, two), 2).flat());
    out.emplace_back("zero twisting exponent leaves V unchanged",
                     op_residual(compose(v, trivial), v).max());

    out.emplace_back("case3 twist at J = 0 is the linear pairing twist",
                     op_residual(op_Theta(CaseId::case3, flat3, false),
                                 op_Theta(CaseId::case1, [&] {
                                     CaseParams q;
                                     q.n = n3;
                                     q.lambda = lambda;
                                     return q;
                                 }()))
                         .max());
    return out;
}

} // namespace plq

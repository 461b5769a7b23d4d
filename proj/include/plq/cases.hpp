#pragma once

#include <string>
#include <vector>

#include "plq/errors.hpp"
#include "plq/exppoly.hpp"
#include "plq/liealg.hpp"

namespace plq {

/// The six group/operator variants handled by the catalog.
enum class CaseId { case1, case2, case3, mixed, rieffel, nonuni };

inline const char* case_name(CaseId c) {
    switch (c) {
        case CaseId::case1: return "case1";
        case CaseId::case2: return "case2";
        case CaseId::case3: return "case3";
        case CaseId::mixed: return "mixed";
        case CaseId::rieffel: return "rieffel";
        case CaseId::nonuni: return "nonuni";
    }
    throw InvalidParameter("unknown case");
}

inline CaseId case_from_name(const std::string& s) {
    for (CaseId c : {CaseId::case1, CaseId::case2, CaseId::case3, CaseId::mixed, CaseId::rieffel,
                     CaseId::nonuni})
        if (s == case_name(c)) return c;
    throw InvalidParameter("unknown case '" + s + "'");
}

/// Parameters shared by the group, operator and coproduct layers.
///   n        number of (x, y) pairs
///   m        dimension of the center / of the acting line(s)
///   lambda   rate of the first scaling family
///   nu       second rate for the two-parameter family
///   J        skew n x n matrix for the third family
///   pi_rates, rho_rates
///            n x m rate matrices for the diagonal one-parameter-like
///            families pi(r)_ii = exp(pi_rates[i].r), likewise rho
///   beta     m bilinear n x n matrices pairing x with y into the center
struct CaseParams {
    int n = 1;
    int m = 1;
    Rational lambda = 0;
    Rational nu = 0;
    Matrix J;
    Matrix pi_rates;
    Matrix rho_rates;
    std::vector<Matrix> beta;
};

/// Round-robin default pairing: beta_l(x, y) = sum over i == l-1 (mod m)
/// of x_i y_i.  For m = 1 this is the standard inner product.
inline std::vector<Matrix> default_beta(int n, int m) {
    std::vector<Matrix> out(m, Matrix(n, std::vector<Rational>(n, 0)));
    for (int i = 0; i < n; ++i) out[i % m][i][i] = 1;
    return out;
}

inline bool uses_rate_matrices(CaseId c) {
    return c == CaseId::rieffel || c == CaseId::nonuni;
}

/// Fill defaults and validate structural requirements.  With strict = true
/// the scaling rates must also be nonzero where the constructions need
/// them (the CLI-facing contract); degeneration checks run non-strict.
inline CaseParams normalize_params(CaseId c, CaseParams p, bool strict = true) {
    if (p.n < 1) throw InvalidParameter("n must be >= 1");
    if (!uses_rate_matrices(c)) {
        if (p.m != 1) throw InvalidParameter("m must be 1 for this case");
    } else if (p.m < 1) {
        throw InvalidParameter("m must be >= 1");
    }
    switch (c) {
        case CaseId::case1:
        case CaseId::case2:
            if (strict && p.lambda == 0) throw InvalidParameter("lambda must be nonzero");
            break;
        case CaseId::case3:
            if (p.n < 2) throw InvalidParameter("third family needs n >= 2");
            require_skew(p.J, p.n);
            break;
        case CaseId::mixed:
            if (strict && p.lambda == 0) throw InvalidParameter("lambda must be nonzero");
            break;
        case CaseId::rieffel:
        case CaseId::nonuni: {
            auto fix = [&](Matrix& rates, const char* which) {
                if (rates.empty()) rates.assign(p.n, std::vector<Rational>(p.m, 0));
                if (int(rates.size()) != p.n) throw InvalidParameter(std::string(which) + " needs n rows");
                for (auto& row : rates)
                    if (int(row.size()) != p.m)
                        throw InvalidParameter(std::string(which) + " rows need m entries");
            };
            fix(p.pi_rates, "pi_rates");
            fix(p.rho_rates, "rho_rates");
            break;
        }
    }
    if (p.beta.empty()) p.beta = default_beta(p.n, p.m);
    if (int(p.beta.size()) != p.m) throw InvalidParameter("beta needs m matrices");
    for (const auto& B : p.beta) {
        if (int(B.size()) != p.n) throw InvalidParameter("beta matrices must be n x n");
        for (const auto& row : B)
            if (int(row.size()) != p.n) throw InvalidParameter("beta matrices must be n x n");
    }
    return p;
}

/// beta_l(u, v) as an expression, with u, v given as component expressions.
inline ExpPoly beta_expr(const CaseParams& p, int l, const std::vector<ExpPoly>& u,
                         const std::vector<ExpPoly>& v) {
    ExpPoly out;
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j)
            if (p.beta[l][i][j] != 0) out += ExpPoly::constant(p.beta[l][i][j]) * u[i] * v[j];
    return out;
}

/// Linear rate form pi_rates[i] . r as an exponent-ready affine expression.
inline ExpPoly rate_dot(const Matrix& rates, int i, const std::vector<std::string>& rvars) {
    ExpPoly out;
    for (std::size_t l = 0; l < rvars.size(); ++l)
        if (rates[i][l] != 0) out += ExpPoly::constant(rates[i][l]) * ExpPoly::var(rvars[l]);
    return out;
}

/// exp(pi_rates[i] . r) as an exact exponential factor.
inline ExpPoly rate_exp(const Matrix& rates, int i, const std::vector<std::string>& rvars,
                        const Rational& scale = 1) {
    ExpPoly out = ExpPoly::constant(1);
    for (std::size_t l = 0; l < rvars.size(); ++l)
        if (rates[i][l] != 0) out *= ExpPoly::exp_atom(scale * rates[i][l], rvars[l]);
    return out;
}

/// Coordinate names x1..xn, y1..yn and the center/line block; when the
/// block has one component it is named plainly ("z" or "r").
inline std::vector<std::string> xy_block_names(int n) {
    std::vector<std::string> out = indexed("x", n);
    for (const auto& s : indexed("y", n)) out.push_back(s);
    return out;
}

inline std::vector<std::string> block_names(const std::string& stem, int m) {
    if (m == 1) return {stem};
    return indexed(stem, m);
}

} // namespace plq

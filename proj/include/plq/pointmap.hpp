#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "plq/errors.hpp"
#include "plq/exppoly.hpp"

namespace plq {

/// Coordinate copy naming: copy 0 is the bare name, later copies append
/// prime marks ("x", "x'", "x''", ...).
inline std::string prime(const std::string& name, int copy) {
    std::string out = name;
    for (int i = 0; i < copy; ++i) out += '\'';
    return out;
}

inline std::vector<std::string> prime_all(const std::vector<std::string>& names, int copy) {
    std::vector<std::string> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(prime(n, copy));
    return out;
}

inline std::vector<ExpPoly> vars_of(const std::vector<std::string>& names) {
    std::vector<ExpPoly> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(ExpPoly::var(n));
    return out;
}

inline std::map<std::string, ExpPoly> binding(const std::vector<std::string>& vars,
                                              const std::vector<ExpPoly>& values) {
    if (vars.size() != values.size()) throw InvalidParameter("binding length mismatch");
    std::map<std::string, ExpPoly> out;
    for (std::size_t i = 0; i < vars.size(); ++i) out.emplace(vars[i], values[i]);
    return out;
}

inline std::vector<ExpPoly> substitute_all(const std::vector<ExpPoly>& exprs,
                                           const std::map<std::string, ExpPoly>& bind) {
    std::vector<ExpPoly> out;
    out.reserve(exprs.size());
    for (const auto& e : exprs) out.push_back(e.substitute(bind));
    return out;
}

inline bool is_single_term(const ExpPoly& e) { return e.term_count() == 1; }

/// Multiplicative inverse of a single term with no monomial part,
/// c * prod exp(a v)  ->  (1/c) * prod exp(-a v).
inline ExpPoly invert_single_term(const ExpPoly& e) {
    if (e.term_count() != 1) throw OperatorClassEscape("cannot invert a sum: " + e.to_string());
    const auto& [t, c] = *e.terms().begin();
    if (!t.powers.empty())
        throw OperatorClassEscape("cannot invert a monomial factor: " + e.to_string());
    ExpPoly out = ExpPoly::constant(Rational(1) / c);
    for (const auto& [v, a] : t.rates) out *= ExpPoly::exp_atom(-a, v);
    return out;
}

/// Square root of a single positive term whose coefficient is a perfect
/// square of rationals; exponential rates are halved.
inline ExpPoly sqrt_single_term(const ExpPoly& e) {
    if (e.term_count() != 1) throw OperatorClassEscape("square root of a sum: " + e.to_string());
    const auto& [t, c] = *e.terms().begin();
    if (!t.powers.empty() || c <= 0)
        throw OperatorClassEscape("square root outside the class: " + e.to_string());
    Integer num = numerator(c), den = denominator(c);
    Integer sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den)
        throw OperatorClassEscape("prefactor is not a perfect square: " + e.to_string());
    ExpPoly out = ExpPoly::constant(Rational(sn, sd));
    for (const auto& [v, a] : t.rates) out *= ExpPoly::exp_atom(a / 2, v);
    return out;
}

/// Jacobian matrix d exprs[i] / d vars[j].
inline std::vector<std::vector<ExpPoly>> jacobian(const std::vector<ExpPoly>& exprs,
                                                  const std::vector<std::string>& vars) {
    std::vector<std::vector<ExpPoly>> out(exprs.size(), std::vector<ExpPoly>(vars.size()));
    for (std::size_t i = 0; i < exprs.size(); ++i)
        for (std::size_t j = 0; j < vars.size(); ++j)
            out[i][j] = exprs[i].differentiate(vars[j]);
    return out;
}

namespace detail {

inline ExpPoly cofactor_det(const std::vector<std::vector<ExpPoly>>& m,
                            std::vector<int> cols, int row) {
    if (cols.empty()) return ExpPoly::constant(1);
    ExpPoly out;
    int sign = 1;
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
        const ExpPoly& pivot = m[row][cols[ci]];
        if (!pivot.is_zero()) {
            std::vector<int> rest;
            for (std::size_t cj = 0; cj < cols.size(); ++cj)
                if (cj != ci) rest.push_back(cols[cj]);
            ExpPoly sub = cofactor_det(m, rest, row + 1);
            out += ExpPoly::constant(sign) * pivot * sub;
        }
        sign = -sign;
    }
    return out;
}

} // namespace detail

/// Determinant of the Jacobian of a point map.  Fast path: find a
/// triangular elimination order (component i depending on no unresolved
/// variable but vars[i]) and multiply diagonal entries; fall back to
/// cofactor expansion.
inline ExpPoly map_jacobian_det(const std::vector<ExpPoly>& exprs,
                                const std::vector<std::string>& vars) {
    if (exprs.size() != vars.size()) throw InvalidParameter("jacobian of a non-square map");
    int n = int(vars.size());
    std::vector<bool> done(n, false);
    std::set<std::string> pending(vars.begin(), vars.end());
    ExpPoly det = ExpPoly::constant(1);
    int remaining = n;
    while (remaining > 0) {
        bool progress = false;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            bool solvable = true;
            for (const auto& w : exprs[i].free_vars())
                if (w != vars[i] && pending.count(w)) {
                    solvable = false;
                    break;
                }
            if (!solvable) continue;
            det *= exprs[i].differentiate(vars[i]);
            done[i] = true;
            pending.erase(vars[i]);
            --remaining;
            progress = true;
        }
        if (!progress) break;
    }
    if (remaining == 0) return det;
    if (n > 10) throw OperatorClassEscape("jacobian determinant: no triangular order");
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    return detail::cofactor_det(jacobian(exprs, vars), cols, 0);
}

/// Invert the point map vars -> exprs by triangular elimination: returns,
/// aligned with vars, expressions in `targets` (and whatever parameters the
/// map mentions) such that exprs(solution) = targets.  Each component must
/// be affine in its own variable with a single-term invertible coefficient.
inline std::vector<ExpPoly> invert_point_map(const std::vector<ExpPoly>& exprs,
                                             const std::vector<std::string>& vars,
                                             const std::vector<std::string>& targets) {
    if (exprs.size() != vars.size() || targets.size() != vars.size())
        throw InvalidParameter("invert_point_map: size mismatch");
    int n = int(vars.size());
    std::vector<ExpPoly> solution(n);
    std::vector<bool> solved(n, false);
    std::set<std::string> pending(vars.begin(), vars.end());
    int remaining = n;
    while (remaining > 0) {
        bool progress = false;
        for (int i = 0; i < n; ++i) {
            if (solved[i]) continue;
            const std::string& v = vars[i];
            bool ready = true;
            for (const auto& w : exprs[i].free_vars())
                if (w != v && pending.count(w)) {
                    ready = false;
                    break;
                }
            if (!ready) continue;

            ExpPoly a = exprs[i].differentiate(v);
            if (a.is_zero() || a.free_vars().count(v))
                throw OperatorClassEscape("component for '" + v + "' is not affine in it: " +
                                          exprs[i].to_string());
            ExpPoly b = exprs[i] - a * ExpPoly::var(v);
            if (b.free_vars().count(v))
                throw OperatorClassEscape("component for '" + v + "' is not affine in it: " +
                                          exprs[i].to_string());

            std::map<std::string, ExpPoly> bind;
            for (int j = 0; j < n; ++j)
                if (solved[j]) bind.emplace(vars[j], solution[j]);
            ExpPoly a2 = a.substitute(bind);
            ExpPoly b2 = b.substitute(bind);
            solution[i] = (ExpPoly::var(targets[i]) - b2) * invert_single_term(a2);
            solved[i] = true;
            pending.erase(v);
            --remaining;
            progress = true;
        }
        if (!progress)
            throw OperatorClassEscape("point map is not triangularly solvable");
    }
    return solution;
}

} // namespace plq

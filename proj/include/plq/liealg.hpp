#pragma once

#include <string>
#include <vector>

#include "plq/errors.hpp"
#include "plq/exppoly.hpp"

namespace plq {

using Element = std::vector<ExpPoly>; // coefficients against a fixed basis

/// Dense element of g (x) g with exact coefficients.
struct TwoTensor {
    int dim = 0;
    std::vector<std::vector<ExpPoly>> e;

    TwoTensor() = default;
    explicit TwoTensor(int d) : dim(d), e(d, std::vector<ExpPoly>(d)) {}

    static TwoTensor elem(int d, int i, int j, const ExpPoly& c = ExpPoly::constant(1)) {
        TwoTensor t(d);
        t.e[i][j] = c;
        return t;
    }

    /// a wedge b = a(x)b - b(x)a on basis slots.
    static TwoTensor wedge(int d, int i, int j, const ExpPoly& c = ExpPoly::constant(1)) {
        TwoTensor t(d);
        t.e[i][j] += c;
        t.e[j][i] -= c;
        return t;
    }

    TwoTensor& operator+=(const TwoTensor& o) {
        if (o.dim != dim) throw InvalidParameter("two-tensor dimension mismatch");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) e[i][j] += o.e[i][j];
        return *this;
    }
    TwoTensor& operator-=(const TwoTensor& o) {
        if (o.dim != dim) throw InvalidParameter("two-tensor dimension mismatch");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) e[i][j] -= o.e[i][j];
        return *this;
    }
    friend TwoTensor operator+(TwoTensor a, const TwoTensor& b) { return a += b; }
    friend TwoTensor operator-(TwoTensor a, const TwoTensor& b) { return a -= b; }
    friend TwoTensor operator*(const ExpPoly& s, TwoTensor t) {
        for (auto& row : t.e)
            for (auto& x : row) x = s * x;
        return t;
    }

    TwoTensor transpose() const {
        TwoTensor t(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) t.e[i][j] = e[j][i];
        return t;
    }

    bool is_zero() const {
        for (const auto& row : e)
            for (const auto& x : row)
                if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const TwoTensor& o) const { return dim == o.dim && e == o.e; }

    Rational residual() const {
        Rational best = 0;
        for (const auto& row : e)
            for (const auto& x : row) {
                Rational r = x.residual();
                if (r > best) best = r;
            }
        return best;
    }
};

/// Dense element of g (x) g (x) g; only used for residuals of identities.
struct ThreeTensor {
    int dim = 0;
    std::vector<ExpPoly> e; // flattened (i*dim + j)*dim + k

    explicit ThreeTensor(int d) : dim(d), e(std::size_t(d) * d * d) {}

    ExpPoly& at(int i, int j, int k) { return e[(std::size_t(i) * dim + j) * dim + k]; }
    const ExpPoly& at(int i, int j, int k) const {
        return e[(std::size_t(i) * dim + j) * dim + k];
    }

    Rational residual() const {
        Rational best = 0;
        for (const auto& x : e) {
            Rational r = x.residual();
            if (r > best) best = r;
        }
        return best;
    }
};

/// Finite-dimensional Lie algebra presented by structure constants against
/// a named basis.  Antisymmetry is enforced structurally; Jacobi is a check.
class LieAlgebra {
  public:
    explicit LieAlgebra(std::vector<std::string> basis)
        : basis_(std::move(basis)),
          c_(basis_.size(), std::vector<std::vector<Rational>>(
                                basis_.size(), std::vector<Rational>(basis_.size(), 0))) {}

    int dim() const { return int(basis_.size()); }
    const std::vector<std::string>& basis() const { return basis_; }

    int index(const std::string& name) const {
        for (int i = 0; i < dim(); ++i)
            if (basis_[i] == name) return i;
        throw InvalidParameter("no basis element named '" + name + "'");
    }

    /// Add c * e_k to [e_i, e_j]; the antisymmetric counterpart is implied.
    void add_bracket(int i, int j, int k, const Rational& c) {
        if (i == j) throw InvalidParameter("bracket of an element with itself");
        c_[i][j][k] += c;
        c_[j][i][k] -= c;
    }

    const Rational& c(int i, int j, int k) const { return c_[i][j][k]; }

    /// Bracket of basis elements as an Element.
    Element bracket_basis(int i, int j) const {
        Element out(dim());
        for (int k = 0; k < dim(); ++k)
            if (c_[i][j][k] != 0) out[k] = ExpPoly::constant(c_[i][j][k]);
        return out;
    }

    Element bracket(const Element& x, const Element& y) const {
        Element out(dim(), ExpPoly::zero());
        for (int i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < dim(); ++j) {
                if (y[j].is_zero()) continue;
                ExpPoly f = x[i] * y[j];
                for (int k = 0; k < dim(); ++k)
                    if (c_[i][j][k] != 0) out[k] += ExpPoly::constant(c_[i][j][k]) * f;
            }
        }
        return out;
    }

    /// Max residual of the Jacobi identity over basis triples; 0 exactly
    /// when the structure constants define a Lie algebra.
    Rational check_jacobi() const {
        Rational best = 0;
        for (int i = 0; i < dim(); ++i)
            for (int j = i + 1; j < dim(); ++j)
                for (int k = j + 1; k < dim(); ++k) {
                    Element s = bracket(bracket_basis(i, j), unit(k));
                    Element t = bracket(bracket_basis(j, k), unit(i));
                    Element u = bracket(bracket_basis(k, i), unit(j));
                    for (int m = 0; m < dim(); ++m) {
                        Rational r = (s[m] + t[m] + u[m]).residual();
                        if (r > best) best = r;
                    }
                }
        return best;
    }

    bool same_brackets(const LieAlgebra& o) const {
        return dim() == o.dim() && c_ == o.c_;
    }

    Element unit(int k) const {
        Element out(dim());
        out[k] = ExpPoly::constant(1);
        return out;
    }

    /// ad_X acting on g (x) g by derivation in both slots.
    TwoTensor ad(const Element& x, const TwoTensor& t) const {
        TwoTensor out(dim());
        for (int a = 0; a < dim(); ++a)
            for (int b = 0; b < dim(); ++b) {
                if (t.e[a][b].is_zero()) continue;
                Element left = bracket(x, unit(a));
                Element right = bracket(x, unit(b));
                for (int k = 0; k < dim(); ++k) {
                    if (!left[k].is_zero()) out.e[k][b] += t.e[a][b] * left[k];
                    if (!right[k].is_zero()) out.e[a][k] += t.e[a][b] * right[k];
                }
            }
        return out;
    }

  private:
    std::vector<std::string> basis_;
    std::vector<std::vector<std::vector<Rational>>> c_; // c_[i][j][k]
};

/// Linear map g -> g (x) g given by its values on the basis.
struct Cobracket {
    std::vector<TwoTensor> val; // one TwoTensor per basis element

    int dim() const { return int(val.size()); }

    TwoTensor of(const LieAlgebra& g, const Element& x) const {
        TwoTensor out(g.dim());
        for (int i = 0; i < g.dim(); ++i)
            if (!x[i].is_zero()) out += x[i] * val[i];
        return out;
    }

    bool operator==(const Cobracket& o) const { return val == o.val; }
};

// ---------------------------------------------------------------------------
// checks

/// Max residual of the 1-cocycle identity
///   delta([X,Y]) = ad_X delta(Y) - ad_Y delta(X)
/// over basis pairs; exact 0 on success.
inline Rational check_cocycle(const LieAlgebra& g, const Cobracket& d) {
    if (d.dim() != g.dim()) throw InvalidParameter("cobracket dimension mismatch");
    Rational best = 0;
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j) {
            TwoTensor lhs = d.of(g, g.bracket_basis(i, j));
            TwoTensor rhs = g.ad(g.unit(i), d.val[j]) - g.ad(g.unit(j), d.val[i]);
            Rational r = (lhs - rhs).residual();
            if (r > best) best = r;
        }
    return best;
}

/// Max residual of co-antisymmetry (each value must be a sum of wedges).
inline Rational check_coskew(const Cobracket& d) {
    Rational best = 0;
    for (const auto& t : d.val) {
        Rational r = (t + t.transpose()).residual();
        if (r > best) best = r;
    }
    return best;
}

inline bool check_skew(const TwoTensor& t) { return (t + t.transpose()).is_zero(); }

/// Max residual of ad_X(T) over basis X of g (invariance of T).
inline Rational check_invariant(const LieAlgebra& g, const TwoTensor& t) {
    Rational best = 0;
    for (int i = 0; i < g.dim(); ++i) {
        Rational r = g.ad(g.unit(i), t).residual();
        if (r > best) best = r;
    }
    return best;
}

/// Residual of the classical Yang-Baxter expression
///   [r12,r13] + [r12,r23] + [r13,r23]
/// as a three-tensor; exact 0 on success.
inline Rational check_cybe(const LieAlgebra& g, const TwoTensor& r) {
    int d = g.dim();
    if (r.dim != d) throw InvalidParameter("r-matrix dimension mismatch");
    ThreeTensor out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (r.e[i][j].is_zero()) continue;
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    if (r.e[k][l].is_zero()) continue;
                    ExpPoly f = r.e[i][j] * r.e[k][l];
                    for (int m = 0; m < d; ++m) {
                        // [r12,r13]: bracket in slot 1
                        if (g.c(i, k, m) != 0)
                            out.at(m, j, l) += ExpPoly::constant(g.c(i, k, m)) * f;
                        // [r12,r23]: bracket in slot 2
                        if (g.c(j, k, m) != 0)
                            out.at(i, m, l) += ExpPoly::constant(g.c(j, k, m)) * f;
                        // [r13,r23]: bracket in slot 3
                        if (g.c(j, l, m) != 0)
                            out.at(i, k, m) += ExpPoly::constant(g.c(j, l, m)) * f;
                    }
                }
        }
    return out.residual();
}

/// Coboundary cobracket delta_r(X) = ad_X(r).
inline Cobracket coboundary_from_r(const LieAlgebra& g, const TwoTensor& r) {
    Cobracket d;
    d.val.reserve(g.dim());
    for (int i = 0; i < g.dim(); ++i) d.val.push_back(g.ad(g.unit(i), r));
    return d;
}

/// Dual Lie algebra: <[f_i, f_j], e_k> = <f_i (x) f_j, delta(e_k)>, so the
/// values of delta become the structure constants of the dual.
inline LieAlgebra dualize(const LieAlgebra& g, const Cobracket& d,
                          const std::vector<std::string>& dual_names) {
    if (int(dual_names.size()) != g.dim() || d.dim() != g.dim())
        throw InvalidParameter("dualize: dimension mismatch");
    LieAlgebra out(dual_names);
    for (int k = 0; k < g.dim(); ++k)
        for (int i = 0; i < g.dim(); ++i)
            for (int j = i + 1; j < g.dim(); ++j) {
                if (d.val[k].e[i][j] != -d.val[k].e[j][i])
                    throw InvalidParameter("dualize: cobracket value is not co-antisymmetric");
                ExpPoly up = d.val[k].e[i][j];
                if (!up.is_zero()) {
                    if (!up.is_constant())
                        throw InvalidParameter("dualize: non-constant cobracket coefficient");
                    out.add_bracket(i, j, k, up.constant_value());
                }
            }
    return out;
}

/// Restrict a cobracket on g to the subalgebra spanned by the listed basis
/// indices.  Throws RestrictionEscapesSubalgebra if any value has a
/// component outside sub (x) sub.
inline Cobracket restrict_cobracket(const LieAlgebra& g, const Cobracket& d,
                                    const std::vector<int>& sub) {
    std::vector<int> pos(g.dim(), -1);
    for (int a = 0; a < int(sub.size()); ++a) pos[sub[a]] = a;
    Cobracket out;
    for (int a = 0; a < int(sub.size()); ++a) {
        const TwoTensor& t = d.val[sub[a]];
        TwoTensor cut(int(sub.size()));
        for (int i = 0; i < g.dim(); ++i)
            for (int j = 0; j < g.dim(); ++j) {
                if (t.e[i][j].is_zero()) continue;
                if (pos[i] < 0 || pos[j] < 0)
                    throw RestrictionEscapesSubalgebra(
                        "value on '" + g.basis()[sub[a]] + "' has component at (" +
                        g.basis()[i] + ", " + g.basis()[j] + ") outside the subalgebra");
                cut.e[pos[i]][pos[j]] = t.e[i][j];
            }
        out.val.push_back(cut);
    }
    return out;
}

// ---------------------------------------------------------------------------
// builders

using Matrix = std::vector<std::vector<Rational>>;

inline void require_skew(const Matrix& J, int n) {
    if (int(J.size()) != n) throw InvalidParameter("J must be n x n");
    for (const auto& row : J)
        if (int(row.size()) != n) throw InvalidParameter("J must be n x n");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (J[i][j] != -J[j][i]) throw InvalidParameter("J must be skew-symmetric");
}

inline std::vector<std::string> indexed(const std::string& stem, int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

/// (2n+1)-dimensional two-step nilpotent algebra on x1..xn, y1..yn, z with
/// [x_i, y_i] = z and z central.
inline LieAlgebra heisenberg(int n) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    std::vector<std::string> basis = indexed("x", n);
    for (const auto& s : indexed("y", n)) basis.push_back(s);
    basis.push_back("z");
    LieAlgebra g(basis);
    for (int i = 0; i < n; ++i) g.add_bracket(i, n + i, 2 * n, 1);
    return g;
}

/// The extension by a grading element d: [d, x_i] = x_i, [d, y_i] = -y_i,
/// z stays central.
inline LieAlgebra extended_heisenberg(int n) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    std::vector<std::string> basis = indexed("x", n);
    for (const auto& s : indexed("y", n)) basis.push_back(s);
    basis.push_back("z");
    basis.push_back("d");
    LieAlgebra g(basis);
    int z = 2 * n, d = 2 * n + 1;
    for (int i = 0; i < n; ++i) {
        g.add_bracket(i, n + i, z, 1);
        g.add_bracket(d, i, i, 1);
        g.add_bracket(d, n + i, n + i, -1);
    }
    return g;
}

/// Dual algebras on p1..pn, q1..qn, r for the three cobracket families.
inline LieAlgebra dual_case(int kase, int n, const Rational& lambda, const Matrix& J = {}) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    std::vector<std::string> basis = indexed("p", n);
    for (const auto& s : indexed("q", n)) basis.push_back(s);
    basis.push_back("r");
    LieAlgebra g(basis);
    int r = 2 * n;
    switch (kase) {
        case 1:
            if (lambda == 0) throw InvalidParameter("lambda must be nonzero");
            for (int i = 0; i < n; ++i) {
                g.add_bracket(i, r, i, lambda);
                g.add_bracket(n + i, r, n + i, -lambda);
            }
            break;
        case 2:
            if (lambda == 0) throw InvalidParameter("lambda must be nonzero");
            for (int i = 0; i < n; ++i) {
                g.add_bracket(i, r, i, lambda);
                g.add_bracket(n + i, r, n + i, lambda);
            }
            break;
        case 3: {
            if (n < 2) throw InvalidParameter("third family needs n >= 2");
            require_skew(J, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (J[i][j] != 0) g.add_bracket(i, r, n + j, J[i][j]);
            break;
        }
        default:
            throw InvalidParameter("case must be 1, 2 or 3");
    }
    return g;
}

/// Dual algebra of the two-parameter interpolation: [p_i, r] = lambda p_i,
/// [q_i, r] = nu q_i.
inline LieAlgebra dual_mixed(int n, const Rational& lambda, const Rational& nu) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    std::vector<std::string> basis = indexed("p", n);
    for (const auto& s : indexed("q", n)) basis.push_back(s);
    basis.push_back("r");
    LieAlgebra g(basis);
    int r = 2 * n;
    for (int i = 0; i < n; ++i) {
        if (lambda != 0) g.add_bracket(i, r, i, lambda);
        if (nu != 0) g.add_bracket(n + i, r, n + i, nu);
    }
    return g;
}

/// The four cobracket families on heisenberg(n).  kase 4 is the
/// two-parameter combination ((lambda-nu)/2lambda) d1 + ((lambda+nu)/2lambda) d2.
inline Cobracket cobracket_case(int kase, int n, const Rational& lambda,
                                const Rational& nu = 0, const Matrix& J = {}) {
    int dim = 2 * n + 1, z = 2 * n;
    Cobracket d;
    d.val.assign(dim, TwoTensor(dim));
    switch (kase) {
        case 1:
            if (lambda == 0) throw InvalidParameter("lambda must be nonzero");
            for (int i = 0; i < n; ++i) {
                d.val[i] = TwoTensor::wedge(dim, i, z, ExpPoly::constant(lambda));
                d.val[n + i] = TwoTensor::wedge(dim, n + i, z, ExpPoly::constant(-lambda));
            }
            break;
        case 2:
            if (lambda == 0) throw InvalidParameter("lambda must be nonzero");
            for (int i = 0; i < n; ++i) {
                d.val[i] = TwoTensor::wedge(dim, i, z, ExpPoly::constant(lambda));
                d.val[n + i] = TwoTensor::wedge(dim, n + i, z, ExpPoly::constant(lambda));
            }
            break;
        case 3: {
            if (n < 2) throw InvalidParameter("third family needs n >= 2");
            require_skew(J, n);
            for (int j = 0; j < n; ++j) {
                TwoTensor t(dim);
                for (int i = 0; i < n; ++i)
                    if (J[i][j] != 0) t += TwoTensor::wedge(dim, i, z, ExpPoly::constant(J[i][j]));
                d.val[n + j] = t;
            }
            break;
        }
        case 4: {
            if (lambda == 0) throw InvalidParameter("lambda must be nonzero");
            Rational a = (lambda - nu) / (2 * lambda);
            Rational b = (lambda + nu) / (2 * lambda);
            Cobracket d1 = cobracket_case(1, n, lambda);
            Cobracket d2 = cobracket_case(2, n, lambda);
            for (int i = 0; i < dim; ++i)
                d.val[i] = ExpPoly::constant(a) * d1.val[i] + ExpPoly::constant(b) * d2.val[i];
            break;
        }
        default:
            throw InvalidParameter("case must be 1..4");
    }
    return d;
}

/// Cobracket on the dual basis p, q, r sending r to sum_i p_i wedge q_i.
inline Cobracket theta_cobracket(int n) {
    int dim = 2 * n + 1;
    Cobracket d;
    d.val.assign(dim, TwoTensor(dim));
    TwoTensor t(dim);
    for (int i = 0; i < n; ++i) t += TwoTensor::wedge(dim, i, n + i);
    d.val[2 * n] = t;
    return d;
}

/// The two cobracket families on extended_heisenberg(n) (z and d both
/// mapped to 0).
inline Cobracket extended_cobracket(int kase, int n, const Rational& lambda) {
    if (lambda == 0) throw InvalidParameter("lambda must be nonzero");
    if (kase != 1 && kase != 2) throw InvalidParameter("case must be 1 or 2");
    int dim = 2 * n + 2, z = 2 * n;
    Rational ysign = (kase == 1) ? -lambda : lambda;
    Cobracket d;
    d.val.assign(dim, TwoTensor(dim));
    for (int i = 0; i < n; ++i) {
        d.val[i] = TwoTensor::wedge(dim, i, z, ExpPoly::constant(lambda));
        d.val[n + i] = TwoTensor::wedge(dim, n + i, z, ExpPoly::constant(ysign));
    }
    return d;
}

/// Classical r-matrices on extended_heisenberg(n) whose coboundaries are
/// the two extended cobracket families:
///   kase 1: lambda (z (x) d - d (x) z)            (skew, flat support)
///   kase 2: 2 lambda (sum_i x_i (x) y_i + (z (x) d + d (x) z)/2)
inline TwoTensor extended_r_matrix(int kase, int n, const Rational& lambda) {
    if (lambda == 0) throw InvalidParameter("lambda must be nonzero");
    int dim = 2 * n + 2, z = 2 * n, dd = 2 * n + 1;
    TwoTensor r(dim);
    if (kase == 1) {
        r.e[z][dd] = ExpPoly::constant(lambda);
        r.e[dd][z] = ExpPoly::constant(-lambda);
    } else if (kase == 2) {
        for (int i = 0; i < n; ++i) r.e[i][n + i] = ExpPoly::constant(2 * lambda);
        r.e[z][dd] = ExpPoly::constant(lambda);
        r.e[dd][z] = ExpPoly::constant(lambda);
    } else {
        throw InvalidParameter("case must be 1 or 2");
    }
    return r;
}

/// Skew r-matrix sum_ij J_ij x_j (x) x_i on heisenberg(n); its coboundary
/// is the third cobracket family.
inline TwoTensor skew_x_r_matrix(int n, const Matrix& J) {
    require_skew(J, n);
    int dim = 2 * n + 1;
    TwoTensor r(dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (J[i][j] != 0) r.e[j][i] = ExpPoly::constant(J[i][j]);
    return r;
}

} // namespace plq

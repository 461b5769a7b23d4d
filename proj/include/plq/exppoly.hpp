#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plq/errors.hpp"
#include "plq/rational.hpp"

namespace plq {

/// Name of the reserved symbol that is always evaluated as 1.  An
/// exponential atom on it, exp(a*ONE), is the exact scalar e^a.  It never
/// appears as a monomial factor and cannot be substituted or bound.
inline const std::string kOne = "ONE";

/// One normalized term: coeff * prod v^k * prod exp(a*v).
/// Invariants: monomial exponents >= 1, exponential rates != 0, and the
/// reserved symbol never appears among the monomial factors.
struct Term {
    std::map<std::string, unsigned> powers;
    std::map<std::string, Rational> rates;

    bool operator==(const Term& o) const { return powers == o.powers && rates == o.rates; }
    bool operator<(const Term& o) const {
        if (powers != o.powers) return powers < o.powers;
        return rates < o.rates;
    }
};

/// Exact exponential polynomial: a finite rational combination of terms
/// v1^k1...*exp(a1*w1)*...  Closed under +, *, d/dv and affine-exponent
/// substitution; equality of normal forms decides equality of functions.
class ExpPoly {
  public:
    ExpPoly() = default;

    static ExpPoly zero() { return ExpPoly(); }

    static ExpPoly constant(const Rational& c) {
        ExpPoly e;
        if (c != 0) e.terms_[Term{}] = c;
        return e;
    }

    static ExpPoly var(const std::string& name) {
        if (name == kOne) return constant(1);
        ExpPoly e;
        Term t;
        t.powers[name] = 1;
        e.terms_[t] = 1;
        return e;
    }

    /// exp(rate * name); with name == kOne this is the exact scalar e^rate.
    static ExpPoly exp_atom(const Rational& rate, const std::string& name) {
        ExpPoly e;
        Term t;
        if (rate != 0) t.rates[name] = rate;
        e.terms_[t] = 1;
        return e;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && terms_.begin()->first.powers.empty() &&
               terms_.begin()->first.rates.empty();
    }

    /// Value of a constant expression (requires is_constant()).
    Rational constant_value() const {
        if (terms_.empty()) return 0;
        if (!is_constant()) throw InvalidParameter("constant_value on non-constant expression");
        return terms_.begin()->second;
    }

    const std::map<Term, Rational>& terms() const { return terms_; }

    std::size_t term_count() const { return terms_.size(); }

    /// Free variables, reserved symbol excluded.
    std::set<std::string> free_vars() const {
        std::set<std::string> out;
        for (const auto& [t, c] : terms_) {
            for (const auto& [v, k] : t.powers) out.insert(v);
            for (const auto& [v, a] : t.rates)
                if (v != kOne) out.insert(v);
        }
        return out;
    }

    bool operator==(const ExpPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ExpPoly& o) const { return !(*this == o); }

    ExpPoly operator-() const {
        ExpPoly out = *this;
        for (auto& [t, c] : out.terms_) c = -c;
        return out;
    }

    ExpPoly& operator+=(const ExpPoly& o) {
        for (const auto& [t, c] : o.terms_) add_term(t, c);
        return *this;
    }
    ExpPoly& operator-=(const ExpPoly& o) {
        for (const auto& [t, c] : o.terms_) add_term(t, -c);
        return *this;
    }
    ExpPoly& operator*=(const ExpPoly& o) { return *this = *this * o; }
    ExpPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [t, c] : terms_) c *= s;
        return *this;
    }

    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
        ExpPoly out;
        for (const auto& [ta, ca] : a.terms_)
            for (const auto& [tb, cb] : b.terms_) out.add_term(merge(ta, tb), ca * cb);
        return out;
    }
    friend ExpPoly operator*(const Rational& s, ExpPoly e) { return e *= s; }
    friend ExpPoly operator*(ExpPoly e, const Rational& s) { return e *= s; }

    ExpPoly pow(unsigned k) const {
        ExpPoly out = constant(1);
        for (unsigned i = 0; i < k; ++i) out *= *this;
        return out;
    }

    ExpPoly differentiate(const std::string& v) const {
        ExpPoly out;
        for (const auto& [t, c] : terms_) {
            auto pit = t.powers.find(v);
            if (pit != t.powers.end()) {
                Term dt = t;
                unsigned k = pit->second;
                if (k == 1)
                    dt.powers.erase(v);
                else
                    dt.powers[v] = k - 1;
                out.add_term(dt, c * k);
            }
            auto rit = t.rates.find(v);
            if (rit != t.rates.end()) out.add_term(t, c * rit->second);
        }
        return out;
    }

    /// Simultaneous substitution.  Monomial occurrences accept any ExpPoly;
    /// occurrences inside an exponential require the binding to be affine
    /// (constant + linear), else NonAffineExpSubstitution is thrown.
    ExpPoly substitute(const std::map<std::string, ExpPoly>& bind) const {
        if (bind.count(kOne)) throw InvalidParameter("cannot bind the reserved symbol");
        ExpPoly out;
        for (const auto& [t, c] : terms_) {
            ExpPoly piece = constant(c);
            Term fixed; // untouched exponential atoms accumulate here
            for (const auto& [v, a] : t.rates) {
                auto it = bind.find(v);
                if (it == bind.end()) {
                    fixed.rates[v] = a;
                    continue;
                }
                piece *= exp_of_affine(a, it->second);
            }
            for (const auto& [v, k] : t.powers) {
                auto it = bind.find(v);
                if (it == bind.end()) {
                    fixed.powers[v] = k;
                    continue;
                }
                piece *= it->second.pow(k);
            }
            ExpPoly shell;
            shell.terms_[fixed] = 1;
            out += piece * shell;
        }
        return out;
    }

    /// Numeric evaluation; the reserved symbol is implicitly 1.
    double evaluate(const std::map<std::string, double>& point) const {
        double total = 0.0;
        for (const auto& [t, c] : terms_) {
            double factor = to_double(c);
            for (const auto& [v, k] : t.powers) factor *= std::pow(lookup(point, v), double(k));
            double rate_sum = 0.0;
            for (const auto& [v, a] : t.rates) rate_sum += to_double(a) * lookup(point, v);
            total += factor * std::exp(rate_sum);
        }
        return total;
    }

    /// Largest |coefficient|; 0 exactly when the expression is 0.
    Rational residual() const {
        Rational best = 0;
        for (const auto& [t, c] : terms_) {
            Rational a = rat_abs(c);
            if (a > best) best = a;
        }
        return best;
    }

    /// Canonical text form, deterministic for equal normal forms.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [t, c] : terms_) {
            bool neg = c < 0;
            Rational mag = rat_abs(c);
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            std::vector<std::string> factors;
            if (mag != 1 || (t.powers.empty() && t.rates.empty()))
                factors.push_back(rational_to_string(mag));
            for (const auto& [v, k] : t.powers)
                factors.push_back(k == 1 ? v : v + "^" + std::to_string(k));
            for (const auto& [v, a] : t.rates) {
                if (v == kOne)
                    factors.push_back("exp(" + rational_to_string(a) + ")");
                else if (a == 1)
                    factors.push_back("exp(" + v + ")");
                else
                    factors.push_back("exp(" + rational_to_string(a) + "*" + v + ")");
            }
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) out += "*";
                out += factors[i];
            }
        }
        return out;
    }

  private:
    std::map<Term, Rational> terms_;

    static double lookup(const std::map<std::string, double>& point, const std::string& v) {
        if (v == kOne) return 1.0;
        auto it = point.find(v);
        if (it == point.end()) throw UnboundVariable("no value for variable '" + v + "'");
        return it->second;
    }

    void add_term(const Term& t, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(t, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    static Term merge(const Term& a, const Term& b) {
        Term out = a;
        for (const auto& [v, k] : b.powers) out.powers[v] += k;
        for (const auto& [v, r] : b.rates) {
            auto [it, fresh] = out.rates.emplace(v, r);
            if (!fresh) {
                it->second += r;
                if (it->second == 0) out.rates.erase(it);
            }
        }
        return out;
    }

    /// exp(a * affine) as an ExpPoly; throws if the argument is not affine.
    static ExpPoly exp_of_affine(const Rational& a, const ExpPoly& affine) {
        Term result;
        for (const auto& [t, c] : affine.terms_) {
            if (!t.rates.empty() || t.powers.size() > 1)
                throw NonAffineExpSubstitution(
                    "exponential substituted with non-affine expression '" + affine.to_string() + "'");
            std::string v = kOne;
            if (t.powers.size() == 1) {
                if (t.powers.begin()->second != 1)
                    throw NonAffineExpSubstitution(
                        "exponential substituted with non-affine expression '" + affine.to_string() + "'");
                v = t.powers.begin()->first;
            }
            Rational rate = a * c;
            if (rate == 0) continue;
            auto [it, fresh] = result.rates.emplace(v, rate);
            if (!fresh) {
                it->second += rate;
                if (it->second == 0) result.rates.erase(it);
            }
        }
        ExpPoly out;
        out.terms_[result] = 1;
        return out;
    }
};

/// exp(kappa*v) shorthand (kappa rational, v a variable name).
inline ExpPoly expo(const Rational& kappa, const std::string& v) {
    return ExpPoly::exp_atom(kappa, v);
}

/// The profile eta_kappa(v) = (exp(kappa*v) - 1)/kappa, with the kappa = 0
/// degeneration special-cased to the polynomial v at construction time.
inline ExpPoly eta_profile(const Rational& kappa, const std::string& v) {
    if (kappa == 0) return ExpPoly::var(v);
    Rational inv = Rational(1) / kappa;
    return inv * (expo(kappa, v) - ExpPoly::constant(1));
}

struct ApproxResult {
    bool ok = true;
    double max_abs_diff = 0.0;
};

/// Monte-Carlo comparison of two expressions on a box.  Exact equality of
/// normal forms implies ok; this is the numeric cross-check direction.
inline ApproxResult approx_equal(const ExpPoly& a, const ExpPoly& b, std::mt19937_64& rng,
                                 int samples = 200, double lo = -2.0, double hi = 2.0,
                                 double tol = 1e-9) {
    std::set<std::string> vars = a.free_vars();
    for (const auto& v : b.free_vars()) vars.insert(v);
    std::uniform_real_distribution<double> dist(lo, hi);
    ApproxResult res;
    for (int s = 0; s < samples; ++s) {
        std::map<std::string, double> point;
        for (const auto& v : vars) point[v] = dist(rng);
        double d = std::abs(a.evaluate(point) - b.evaluate(point));
        if (d > res.max_abs_diff) res.max_abs_diff = d;
    }
    res.ok = res.max_abs_diff <= tol;
    return res;
}

} // namespace plq

#pragma once

#include <random>
#include <string>
#include <vector>

#include "plq/exppoly.hpp"

namespace plqtest {

using plq::ExpPoly;
using plq::Rational;

/// Small nonzero rational with numerator in [-6,6] and denominator in [1,4].
inline Rational random_rational(std::mt19937_64& rng, bool nonzero = true) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    int n = num(rng);
    while (nonzero && n == 0) n = num(rng);
    return Rational(n, den(rng));
}

/// Random skew-symmetric n x n rational matrix.
inline std::vector<std::vector<Rational>> random_skew(std::mt19937_64& rng, int n) {
    std::vector<std::vector<Rational>> J(n, std::vector<Rational>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            J[i][j] = random_rational(rng, false);
            J[j][i] = -J[i][j];
        }
    return J;
}

/// Random exponential polynomial over the given variables: up to
/// `max_terms` terms, monomial degree <= 2, exponential rates in a small
/// rational set.
inline ExpPoly random_exppoly(std::mt19937_64& rng, const std::vector<std::string>& vars,
                              int max_terms = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> pick(0, int(vars.size()) - 1);
    std::uniform_int_distribution<int> deg(0, 2);
    std::uniform_int_distribution<int> coin(0, 3);
    ExpPoly out;
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        ExpPoly term = ExpPoly::constant(random_rational(rng));
        int d = deg(rng);
        for (int i = 0; i < d; ++i) term *= ExpPoly::var(vars[pick(rng)]);
        if (coin(rng) == 0) {
            static const Rational rates[4] = {Rational(-1), Rational(-1, 2), Rational(1, 2),
                                              Rational(1)};
            term *= plq::expo(rates[coin(rng)], vars[pick(rng)]);
        }
        out += term;
    }
    return out;
}

} // namespace plqtest

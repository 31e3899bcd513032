#pragma once

#include <random>
#include <string>
#include <vector>

#include "ndsos/parser.hpp"
#include "ndsos/polynomial.hpp"

namespace ndsos::test {

inline Polynomial P(const std::string& text, const std::vector<std::string>& vars) {
    return parse_polynomial(text, vars);
}

inline Polynomial P(const std::string& text) {
    return parse_polynomial(text, infer_variables(text));
}

inline Exponent E(std::vector<int> coords) { return Exponent(std::move(coords)); }

// Deterministic random polynomials for property suites.
struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}

    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }

    Rational coefficient() {
        int num = uniform(-6, 6);
        if (num == 0) num = 1;
        Rational q(num, uniform(1, 4));
        q.canonicalize();
        return q;
    }

    Exponent exponent(std::size_t nvars, int max_deg) {
        Exponent e(nvars);
        int budget = uniform(0, max_deg);
        for (std::size_t i = 0; i < nvars; ++i) {
            int v = uniform(0, budget);
            e[i] = v;
            budget -= v;
        }
        return e;
    }

    Polynomial polynomial(std::size_t nvars, int max_deg, int max_terms, bool nonzero = true) {
        Polynomial p(nvars);
        int terms = uniform(nonzero ? 1 : 0, max_terms);
        for (int t = 0; t < terms; ++t) p.add_term(exponent(nvars, max_deg), coefficient());
        if (nonzero && p.is_zero()) p.add_term(exponent(nvars, max_deg), Rational(1));
        return p;
    }
};

}  // namespace ndsos::test

#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "ndsos/polynomial.hpp"

namespace ndsos {

// Monomial orders with 1 as the largest element: lower total degree wins,
// ties broken by lex or reverse lex on a variable permutation. On two
// variables both kinds give 1 > x > y > x^2 > xy > y^2.
struct LocalOrder {
    enum class Kind { anti_graded_lex, anti_graded_revlex };

    Kind kind = Kind::anti_graded_lex;
    std::vector<std::size_t> var_order;  // permutation; empty means identity

    static LocalOrder anti_graded_lex() { return LocalOrder{}; }
    static LocalOrder anti_graded_revlex() {
        return LocalOrder{Kind::anti_graded_revlex, {}};
    }

    // >0 when a > b in the order, 0 when equal, <0 when a < b.
    int compare(const Exponent& a, const Exponent& b) const {
        if (a.nvars() != b.nvars()) throw std::invalid_argument("order dimension mismatch");
        long da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db ? 1 : -1;  // anti-graded: lower degree is larger
        const std::size_t n = a.nvars();
        auto at = [&](std::size_t i) -> std::size_t {
            return var_order.empty() ? i : var_order[i];
        };
        if (kind == Kind::anti_graded_lex) {
            for (std::size_t i = 0; i < n; ++i) {
                int ai = a[at(i)], bi = b[at(i)];
                if (ai != bi) return ai > bi ? 1 : -1;
            }
            return 0;
        }
        // revlex: the later variables decide, and fewer of them is larger.
        for (std::size_t i = n; i-- > 0;) {
            int ai = a[at(i)], bi = b[at(i)];
            if (ai != bi) return ai < bi ? 1 : -1;
        }
        return 0;
    }

    bool greater(const Exponent& a, const Exponent& b) const { return compare(a, b) > 0; }
};

// Largest monomial of a nonzero polynomial under the order.
inline Exponent leading_monomial(const Polynomial& f, const LocalOrder& order) {
    if (f.is_zero()) throw std::invalid_argument("leading monomial of zero");
    const Exponent* best = nullptr;
    for (const auto& [e, c] : f.terms())
        if (!best || order.greater(e, *best)) best = &e;
    return *best;
}

inline Rational leading_coefficient(const Polynomial& f, const LocalOrder& order) {
    return f.coeff(leading_monomial(f, order));
}

// ecart(f) = deg f - deg LT(f); the slack Mora's reduction keeps an eye on.
inline long ecart(const Polynomial& f, const LocalOrder& order) {
    return f.degree() - leading_monomial(f, order).total_degree();
}

}  // namespace ndsos

#pragma once

#include <vector>

#include "ndsos/local_order.hpp"
#include "ndsos/polynomial.hpp"

namespace ndsos {

// Result of local division: (1+u) f = sum q_i g_i + r with u(0) = 0,
// LT(f) >= LT(q_i g_i), and LT(r) not divisible by any LT(g_i).
struct DivisionResult {
    Polynomial unit;                   // u
    std::vector<Polynomial> quotients; // one per divisor
    Polynomial remainder;              // r
};

// Weak normal form via ecart reduction: reduce by the dividing reducer of
// minimal ecart, recording the intermediate result as a new reducer whenever
// the chosen ecart is larger (which is what produces the unit 1+u). The exact
// identity is re-checked before returning.
DivisionResult mora_divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                           const LocalOrder& order);

struct ModifiedDivisionResult {
    DivisionResult base;
    Polynomial r0;          // r with the linear-leading-monomial ideal removed
    long diagram_degree;    // d = deg of the diagram part of r0
    Polynomial essential;   // degree <= d+1, no term divisible by any LT(g_i)
};

// The r0 / essential-remainder refinement: eliminate the terms of r lying in
// the monomial ideal generated by leading monomials of the divisors' linear
// parts, read off d from the Newton diagram of r0, then keep dividing
// offending terms of degree <= d+1 with a working truncation at d+1 (higher
// terms cannot feed back into lower degrees under a local order).
// Throws when r0 = 0 (no diagram to read d from).
ModifiedDivisionResult modified_mora(const Polynomial& f, const std::vector<Polynomial>& divisors,
                                     const LocalOrder& order);

}  // namespace ndsos

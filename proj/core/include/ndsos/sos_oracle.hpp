#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ndsos/newton.hpp"
#include "ndsos/polynomial.hpp"

namespace ndsos {

enum class BasisMode { newton_half, face, full_degree };

// Gram formulation of "f is a sum of squares over the monomial basis":
// a symmetric PSD matrix G with sum_{b_i+b_j = alpha} G_ij = f_alpha for
// every reachable exponent alpha.
struct GramProblem {
    Polynomial target;
    std::vector<Exponent> basis;
    // exponent -> entry pairs (i <= j); diagonal entries count once in the
    // class sum, off-diagonal pairs twice.
    std::map<Exponent, std::vector<std::pair<std::size_t, std::size_t>>> classes;
};

GramProblem build_gram_problem(const Polynomial& f, BasisMode mode,
                               const NewtonComplex* complex = nullptr,
                               const Face* face = nullptr);

struct SosVerdict {
    enum class Status { feasible, infeasible, inconclusive };
    Status status = Status::inconclusive;
    std::vector<Exponent> basis;
    std::vector<std::vector<double>> gram;  // numeric, constraint-projected
    double min_eig_estimate = 0;
    double tolerance = 0;
    std::string reason;

    bool feasible() const { return status == Status::feasible; }
};

// Numerical PSD feasibility: alternating projections between the PSD cone
// and the coefficient subspace (iteration cap 1e4, convergence 1e-10).
// Exactly infeasible coefficient patterns (a support exponent no basis pair
// can reach) short-circuit to infeasible. Infeasibility is otherwise
// certified by the limiting separating functional with margin 1e-6, else the
// verdict is inconclusive.
SosVerdict is_sos(const Polynomial& f, BasisMode mode = BasisMode::newton_half);
SosVerdict is_sos_on_face(const Polynomial& f, const NewtonComplex& complex, const Face& face);
SosVerdict solve_gram(const GramProblem& problem);

// Largest epsilon on the grid 2^-k, k = 0..40, with f_gamma - eps*p_gamma
// SOS-feasible on the face basis; nullopt when the grid is exhausted
// ("not verified in rint").
std::optional<Rational> rint_membership(const Polynomial& f_gamma, const NewtonComplex& complex,
                                        const Face& face);

// Smallest M (up to bisection resolution 2^-20 of the initial bracket) with
// f + M * sum_i x_i^(2d) SOS-feasible, for homogeneous f of degree 2d.
// Throws when no bracket below 2^64 exists, which signals an oracle problem
// rather than a property of f.
Rational diagonal_sos_bound(const Polynomial& f);

// Exact certificate backend: round the numeric Gram to denominator 2^32,
// repair every coefficient class exactly, and run rational LDL^T. Returns
// the exact squares (c_k, p_k) with sum c_k p_k^2 = f, or nullopt when the
// rounded matrix is not PSD (caller retries with more margin).
std::optional<std::vector<std::pair<Rational, Polynomial>>> exact_sos_squares(
    const GramProblem& problem);

// Convenience wrappers used by the certificate builder. Both arrange an
// interior margin before rounding and verify the result exactly.

// Splits g = (g - eps*p) + eps*p with the first part as exact squares;
// starts from the rint grid value and halves eps up to 10 times.
struct RintSplit {
    Rational eps;
    std::vector<std::pair<Rational, Polynomial>> squares;  // of g - eps*p
};
std::optional<RintSplit> exact_rint_split(const Polynomial& g, const Polynomial& p_gamma,
                                          const NewtonComplex& complex, const Face& face);

// Finds a power-of-two M with h + M * sum_i x_i^(2k) expressed as exact
// squares (h homogeneous of degree 2k); doubles M until extraction succeeds.
struct DiagonalClosure {
    Rational m;
    std::vector<std::pair<Rational, Polynomial>> squares;
};
std::optional<DiagonalClosure> exact_diagonal_closure(const Polynomial& h, Rational initial_m);

}  // namespace ndsos

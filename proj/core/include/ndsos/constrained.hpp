#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ndsos/certificate.hpp"
#include "ndsos/checkers.hpp"
#include "ndsos/mora.hpp"
#include "ndsos/polynomial.hpp"

namespace ndsos {

// min f(x) s.t. g_i(x) >= 0, h_j(x) = 0, all over shared variables.
struct PopInstance {
    std::vector<std::string> variables;
    Polynomial objective;
    std::vector<Polynomial> inequalities;
    std::vector<Polynomial> equalities;
};

// Parsed .pop file: vars/min/st lines plus the claimed minimizer and
// optional multipliers.
struct PopFile {
    PopInstance pop;
    std::vector<Rational> point;
    std::optional<std::vector<Rational>> lambda;
    std::optional<std::vector<Rational>> mu;
};

PopFile parse_pop_file(const std::string& text);

// Stationarity data at the claimed minimizer: nonnegative multipliers for
// the active inequalities, free ones for the equalities, with the gradient
// identity and complementary slackness holding exactly.
struct KktData {
    std::vector<Rational> z;
    std::vector<Rational> lambda;  // one per inequality, inactive ones zero
    std::vector<Rational> mu;      // one per equality
    std::vector<std::size_t> active;
    Polynomial lagrangian;
};

// Exact multiplier solve on the active-constraint gradients; when the system
// is underdetermined the minimum-support basic solution with lambda >= 0 is
// selected deterministically. Throws when z is infeasible or no valid
// multipliers exist.
KktData solve_multipliers(const PopInstance& pop, const std::vector<Rational>& z);

struct MembershipVerdict {
    enum class Status { certified, not_certified, inconclusive };
    Status status = Status::inconclusive;
    std::string detail;

    std::vector<Rational> lambda;
    std::vector<Rational> mu;
    bool second_order_condition = false;  // reported, never required

    // Division ledger for L_z against the scaled shifted constraints.
    std::vector<Polynomial> divisors;
    DivisionResult division;
    Polynomial r0;
    long diagram_degree = 0;
    Polynomial essential;

    std::vector<std::size_t> remainder_vars;  // indices into pop.variables
    ConditionReport checks;
    std::optional<LocalSosCertificate> certificate;  // in the remainder vars
};

// The constrained pipeline: shift to the minimizer, run the modified
// division of L_z by the scaled active constraints, and decide membership of
// the objective in the shifted quadratic module from the essential
// remainder's diagram conditions. Certification is conditional on z being a
// global minimizer, which is the caller's claim.
MembershipVerdict certify_membership(const PopInstance& pop, const KktData& kkt,
                                     const LocalOrder& order);

}  // namespace ndsos

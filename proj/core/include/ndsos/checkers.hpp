#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ndsos/bconv.hpp"
#include "ndsos/certificate.hpp"
#include "ndsos/newton.hpp"
#include "ndsos/sos_oracle.hpp"

namespace ndsos {

enum class CheckStatus { pass, fail, inconclusive };

struct Clause {
    std::string id;
    CheckStatus status = CheckStatus::pass;
    std::string evidence;
};

struct ConditionReport {
    std::string condition;
    CheckStatus status = CheckStatus::pass;
    std::vector<Clause> clauses;

    void add(Clause clause);
    bool passed() const { return status == CheckStatus::pass; }
};

// Necessary conditions for f (with f(0) = 0) to be a sum of squares of
// polynomials: even vertices, positive vertex coefficients, and facewise
// SOS membership (by the numeric oracle; inconclusive propagates).
ConditionReport check_sos_necessary(const Polynomial& f);

enum class MinimumMode { necessary, sufficient };

// Conditions for an isolated local minimum at the origin. The facewise sign
// conditions are tri-state: an SOS-style sufficient criterion passes them, a
// sampled counterexample (re-verified exactly) fails them, anything else is
// inconclusive.
ConditionReport check_isolated_minimum(const Polynomial& f, MinimumMode mode);

// Regular Newton polyhedron: even positive vertices and, per maximal face,
// every odd-or-negative support point of conv Delta(f_gamma) off the face
// lies in bconv Delta_E(f_gamma). Witnesses are recorded in the evidence.
ConditionReport check_regularity(const Polynomial& f, int bconv_depth = -1);

// Shape shortcuts that certify regularity without any bconv search: the
// quadratic plane |alpha| = 2 with positive definite diagram polynomial, or
// the weighted plane (k,..,k,1) . alpha = 2k with the diagram polynomial in
// the relative interior. Unrecognized shapes report inconclusive.
ConditionReport regularity_shortcuts(const Polynomial& f);

struct SufficiencyResult {
    ConditionReport report;
    std::string route;  // corollary | bounded-regularity | regular-rint | sufficiency-search
    std::optional<LocalSosCertificate> certificate;
};

// Verdict for membership in the sums of squares of power series via the
// weakest applicable route; on pass the certificate is constructed and
// verified exactly.
SufficiencyResult check_sufficient(const Polynomial& f);

}  // namespace ndsos

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndsos/bconv.hpp"
#include "ndsos/newton.hpp"
#include "ndsos/sos_oracle.hpp"

namespace ndsos {

// Raised when a certificate cannot be constructed honestly (hypothesis not
// verified, witness missing, inexact numeric block).
struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One term x^{2beta} * (c0 - u(x)) with c0 > 0 and u(0) = 0; a sum of squares
// of power series via the unit trick, and exactly expandable.
struct UnitResidual {
    Exponent square_base;  // 2*beta, even
    Rational constant;     // c0
    Polynomial tail;       // u
};

// Formal certificate: target = sum c_k p_k^2 + sum x^{2beta}(c0 - u),
// an exact polynomial identity checked by expansion.
struct LocalSosCertificate {
    Polynomial target;
    std::vector<std::pair<Rational, Polynomial>> squares;
    std::vector<UnitResidual> unit_residuals;
    std::map<std::string, std::string> metadata;
};

Polynomial certificate_expansion(const LocalSosCertificate& c);
// expansion - target; zero iff the identity holds.
Polynomial certificate_defect(const LocalSosCertificate& c);
// Identity plus structural invariants (even bases, c0 > 0, u(0) = 0, c > 0).
bool verify_certificate(const LocalSosCertificate& c);

// 2*alpha = beta + beta' with both even, |beta| = |alpha|-1, |beta'| = |alpha|+1.
struct OddSplit {
    Exponent alpha;
    Exponent beta;
    Exponent beta_prime;
};
OddSplit split_odd_exponent(const Exponent& alpha);

// Certificate that sum_k eps x^{beta^k} - a x^alpha + M x^{beta^t} is a sum
// of squares, with the emitted constants.
struct BinaryAbsorption {
    LocalSosCertificate cert;
    Rational m;                         // coefficient of x^{beta^t}
    Rational l;                         // zero unless 1 <= t <= N
    std::vector<Rational> c_constants;  // telescoping constants C_j
    std::vector<Rational> d_constants;  // D_j for the interior-t case
};
BinaryAbsorption binary_combination_certificate(const Rational& eps, const Rational& a, int t,
                                                const BconvWitness& witness);

// Certificate for g + a x^alpha where g is a face polynomial in the relative
// interior of its face cone. For alpha off the face a bconv witness is
// required; for alpha on the face the sum is certified directly as a face
// polynomial. a may carry either sign.
LocalSosCertificate face_monomial_certificate(const Polynomial& g, const NewtonComplex& complex,
                                              const Face& face, const Rational& a,
                                              const Exponent& alpha,
                                              const BconvWitness* witness);

// Certificate for f whose lowest homogeneous part lies in the relative
// interior of the degree-m squares cone.
LocalSosCertificate lowest_part_certificate(const Polynomial& f);

// Certificate from the diagram sufficiency conditions: even positive
// vertices, facewise relative-interior membership, and a bconv witness for
// every off-diagram monomial that is odd or negative.
LocalSosCertificate sufficiency_certificate(const Polynomial& f);

// Certificate via truncation at deg(f_Gamma)+1: diagram meets all axes,
// facewise relative interior, truncation satisfies the sufficiency
// conditions; the high tail is absorbed through a diagonal pad and the
// lowest-part construction.
LocalSosCertificate bounded_degree_certificate(const Polynomial& f);

}  // namespace ndsos

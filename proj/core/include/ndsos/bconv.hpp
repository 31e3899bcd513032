#pragma once

#include <optional>
#include <vector>

#include "ndsos/newton.hpp"

namespace ndsos {

// Witness that alpha = sum_{k=1..N} 2^-k beta^k + 2^-N beta^{N+1} with every
// beta^k an even point of the region; depth = N.
struct BconvWitness {
    Exponent target;
    std::vector<Exponent> betas;  // N+1 entries
    int depth = 0;                // N
};

enum class BconvStatus {
    member,           // witness found and verified
    absent,           // proven outside conv(Delta_E), hence outside bconv
    depth_exhausted,  // no witness up to the requested depth; not a proof
};

struct BconvResult {
    BconvStatus status;
    std::optional<BconvWitness> witness;
    int depth_searched = 0;
};

// Searches the doubling recursion 2*alpha = beta + (rest) depth-first with
// memoized dead ends; candidates are the even region points bounded
// componentwise by twice the current residual, tried in graded-lex order.
// max_depth < 0 selects the default 1 + |alpha|.
BconvResult bconv_member(const Exponent& alpha, const EvenRegion& region, int max_depth = -1);

// The N partial tails 2^{N'-2}(alpha - sum_{k<N'} 2^-k beta^k), N' = 2..N+1,
// each checked integral and nonnegative.
std::vector<Exponent> witness_tails(const BconvWitness& w);

// Exact recombination check plus region membership of every beta.
bool verify_witness(const BconvWitness& w, const EvenRegion& region);

}  // namespace ndsos

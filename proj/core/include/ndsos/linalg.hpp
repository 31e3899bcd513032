#pragma once

#include <optional>
#include <vector>

#include "ndsos/rational.hpp"

namespace ndsos {

// Dense exact-rational linear algebra, sized for desk-scale systems
// (dimensions in the tens). Row-major.
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

QMat qmat(std::size_t rows, std::size_t cols);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<std::size_t> rref(QMat& m);

std::size_t rank(QMat m);

// One solution of A x = b, or nullopt when inconsistent. Free variables are
// set to zero.
std::optional<QVec> solve(QMat a, QVec b);

// Basis of the kernel of A.
std::vector<QVec> nullspace(QMat a);

// Exact P^T A P = L D L^T with symmetric (diagonal) pivoting for a symmetric
// matrix. Succeeds iff A is positive semidefinite; then A = sum_k d_k l_k l_k^T
// with d_k >= 0 and unit lower-triangular columns l_k (in original indexing).
struct LdlResult {
    std::vector<QVec> cols;  // vectors l_k of length n, original indexing
    QVec d;                  // matching nonnegative pivots
};
std::optional<LdlResult> ldlt_psd(const QMat& a);

bool is_positive_semidefinite(const QMat& a);
bool is_positive_definite(const QMat& a);

}  // namespace ndsos

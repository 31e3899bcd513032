#include "ndsos/sos_oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "ndsos/linalg.hpp"

namespace ndsos {

namespace {

constexpr int kIterationCap = 10000;
constexpr double kConvergenceTol = 1e-10;
constexpr double kFeasibleEig = 1e-9;
constexpr double kResidualTol = 1e-9;
constexpr double kInfeasMargin = 1e-6;
constexpr int kRintGridMax = 40;
constexpr int kDyadicBits = 32;

double coeff_scale(const Polynomial& f) {
    double s = 1;
    for (const auto& [e, c] : f.terms()) s = std::max(s, std::abs(to_double(c)));
    return s;
}

std::vector<Exponent> box_points(const Exponent& lo, const Exponent& hi,
                                 const std::function<bool(const Exponent&)>& keep) {
    const std::size_t n = lo.nvars();
    double volume = 1;
    for (std::size_t i = 0; i < n; ++i) volume *= hi[i] - lo[i] + 1;
    if (volume > 2e6) throw std::runtime_error("basis enumeration box too large");
    std::vector<Exponent> out;
    Exponent cur(n);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            if (keep(cur)) out.push_back(cur);
            return;
        }
        for (int v = lo[i]; v <= hi[i]; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace

GramProblem build_gram_problem(const Polynomial& f, BasisMode mode, const NewtonComplex* complex,
                               const Face* face) {
    GramProblem out;
    out.target = f;
    const std::size_t n = f.nvars();
    if (f.is_zero()) return out;

    if (mode == BasisMode::face) {
        if (!complex || !face) throw std::invalid_argument("face mode needs a face");
        Exponent lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            int mx = 0;
            for (const auto& v : face->vertexset) mx = std::max(mx, v[i]);
            hi[i] = mx / 2 + 1;
        }
        out.basis = box_points(lo, hi, [&](const Exponent& p) {
            return complex->face_contains(*face, p.doubled());
        });
    } else {
        long top = f.degree();
        long low = f.low_degree();
        long half_hi = top / 2;
        long half_lo = (low + 1) / 2;
        Exponent lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) hi[i] = static_cast<int>(half_hi);
        if (mode == BasisMode::full_degree) {
            out.basis = box_points(lo, hi, [&](const Exponent& p) {
                return p.total_degree() <= half_hi;
            });
        } else {
            // Newton restriction: 2p inside the Newton polyhedron and within
            // the degree window. Coarser than half the support hull but sound
            // and complete for feasibility.
            NewtonComplex local = newton_diagram(f);
            out.basis = box_points(lo, hi, [&](const Exponent& p) {
                long d2 = 2 * p.total_degree();
                if (d2 > top || d2 < low) return false;
                return local.polyhedron_contains(p.doubled());
            });
        }
    }

    for (std::size_t i = 0; i < out.basis.size(); ++i)
        for (std::size_t j = i; j < out.basis.size(); ++j)
            out.classes[out.basis[i] + out.basis[j]].emplace_back(i, j);
    return out;
}

namespace {

struct NumericProblem {
    std::size_t dim;
    // Per class: entry pairs, target value, multiplicity (diag 1, offdiag 2).
    struct Class {
        std::vector<std::pair<std::size_t, std::size_t>> entries;
        double target;
        double multiplicity;
        Rational exact_target;
    };
    std::vector<Class> classes;
};

NumericProblem lower(const GramProblem& p) {
    NumericProblem out;
    out.dim = p.basis.size();
    for (const auto& [alpha, entries] : p.classes) {
        NumericProblem::Class c;
        c.entries = entries;
        c.exact_target = p.target.coeff(alpha);
        c.target = to_double(c.exact_target);
        c.multiplicity = 0;
        for (const auto& [i, j] : entries) c.multiplicity += (i == j) ? 1 : 2;
        out.classes.push_back(std::move(c));
    }
    return out;
}

void project_affine(Eigen::MatrixXd& g, const NumericProblem& np) {
    for (const auto& c : np.classes) {
        double sum = 0;
        for (const auto& [i, j] : c.entries) sum += (i == j) ? g(i, i) : 2 * g(i, j);
        double shift = (c.target - sum) / c.multiplicity;
        for (const auto& [i, j] : c.entries) {
            g(i, j) += shift;
            if (i != j) g(j, i) += shift;
        }
    }
}

void project_psd(Eigen::MatrixXd& g, double floor, double* min_eig) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    if (min_eig) *min_eig = es.eigenvalues().minCoeff();
    Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(floor);
    g = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
}

// Shared solve loop. Returns the constraint-projected iterate.
SosVerdict run_projections(const GramProblem& problem, double psd_floor) {
    SosVerdict verdict;
    verdict.basis = problem.basis;
    verdict.tolerance = kFeasibleEig;

    if (problem.target.is_zero() && problem.basis.empty()) {
        verdict.status = SosVerdict::Status::feasible;
        return verdict;
    }
    // A target coefficient no basis pair can reach is an exact obstruction.
    for (const auto& [e, c] : problem.target.terms()) {
        if (!problem.classes.count(e)) {
            verdict.status = SosVerdict::Status::infeasible;
            verdict.reason = "coefficient of " + e.str() + " unreachable from the basis";
            return verdict;
        }
    }
    if (problem.basis.empty()) {
        verdict.status = SosVerdict::Status::infeasible;
        verdict.reason = "empty basis";
        return verdict;
    }

    NumericProblem np = lower(problem);
    double scale = coeff_scale(problem.target);
    const std::size_t dim = np.dim;

    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    project_affine(g, np);

    double min_eig = 0;
    double dist = 0;
    for (int it = 0; it < kIterationCap; ++it) {
        Eigen::MatrixXd before = g;
        project_psd(g, psd_floor, &min_eig);
        Eigen::MatrixXd psd = g;
        project_affine(g, np);
        dist = (g - psd).norm();
        if (min_eig >= -kFeasibleEig * scale && dist <= kConvergenceTol * scale) break;
        if ((g - before).norm() <= 1e-14 * scale && it > 50) break;  // stalled
    }

    verdict.min_eig_estimate = min_eig;
    verdict.gram.assign(dim, std::vector<double>(dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) verdict.gram[i][j] = g(i, j);

    // The iterate satisfies the coefficient constraints by construction;
    // recheck both halves of the feasibility contract.
    double residual = 0;
    for (const auto& c : np.classes) {
        double sum = 0;
        for (const auto& [i, j] : c.entries) sum += (i == j) ? g(i, i) : 2 * g(i, j);
        residual = std::max(residual, std::abs(sum - c.target));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    double lam_min = es.eigenvalues().minCoeff();
    verdict.min_eig_estimate = lam_min;
    double l1 = 0;
    for (const auto& [e, c] : problem.target.terms()) l1 += std::abs(to_double(c));
    if (lam_min >= -kFeasibleEig * std::max(1.0, std::abs(g.trace())) &&
        residual <= kResidualTol * std::max(1.0, l1)) {
        verdict.status = SosVerdict::Status::feasible;
        return verdict;
    }

    // Separating functional from the projection gap: constant on the
    // constraint subspace and nonpositive on the PSD cone when valid.
    Eigen::MatrixXd psd = g;
    project_psd(psd, 0.0, nullptr);
    Eigen::MatrixXd gap = g - psd;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gap_es(gap);
    double gap_max_eig = gap_es.eigenvalues().maxCoeff();
    double dual_value = 0;
    bool uniform = true;
    for (const auto& c : np.classes) {
        double y = 0;
        for (const auto& [i, j] : c.entries) {
            double v = gap(i, j);
            y += (i == j) ? v : 2 * v;
        }
        y /= c.multiplicity;
        for (const auto& [i, j] : c.entries)
            if (std::abs(gap(i, j) - y) > 1e-7 * scale) uniform = false;
        dual_value += y * c.target;
    }
    if (uniform && gap_max_eig <= 1e-7 * scale && dual_value >= kInfeasMargin * scale) {
        verdict.status = SosVerdict::Status::infeasible;
        verdict.reason = "separating functional with positive dual value";
        return verdict;
    }
    verdict.status = SosVerdict::Status::inconclusive;
    verdict.reason = "projection iteration did not certify either way";
    return verdict;
}

}  // namespace

SosVerdict solve_gram(const GramProblem& problem) { return run_projections(problem, 0.0); }

SosVerdict is_sos(const Polynomial& f, BasisMode mode) {
    if (f.is_zero()) {
        SosVerdict v;
        v.status = SosVerdict::Status::feasible;
        return v;
    }
    return solve_gram(build_gram_problem(f, mode));
}

SosVerdict is_sos_on_face(const Polynomial& f, const NewtonComplex& complex, const Face& face) {
    if (f.is_zero()) {
        SosVerdict v;
        v.status = SosVerdict::Status::feasible;
        return v;
    }
    for (const auto& [e, c] : f.terms())
        if (!complex.face_contains(face, e))
            throw std::invalid_argument("face mode requires support on the face");
    return solve_gram(build_gram_problem(f, BasisMode::face, &complex, &face));
}

std::optional<Rational> rint_membership(const Polynomial& f_gamma, const NewtonComplex& complex,
                                        const Face& face) {
    Polynomial p = principal_polynomial(complex, face);
    for (int k = 0; k <= kRintGridMax; ++k) {
        Rational eps = rat_pow(Rational(1, 2), k);
        Polynomial g = f_gamma - p * eps;
        if (g.is_zero()) return eps;
        SosVerdict v = is_sos_on_face(g, complex, face);
        if (!v.feasible()) continue;
        // Tiny eps values fall below the numeric tolerance; confirm the grid
        // hit with an exact decomposition so the verdict has no false
        // positives.
        GramProblem problem = build_gram_problem(g, BasisMode::face, &complex, &face);
        if (exact_sos_squares(problem)) return eps;
    }
    return std::nullopt;
}

Rational diagonal_sos_bound(const Polynomial& f) {
    const std::size_t n = f.nvars();
    if (f.is_zero()) return Rational(0);
    if (!f.is_homogeneous() || f.degree() % 2 != 0)
        throw std::invalid_argument("diagonal bound requires a homogeneous even-degree polynomial");
    const int d2 = static_cast<int>(f.degree());

    auto padded = [&](const Rational& m) {
        Polynomial g = f;
        for (std::size_t i = 0; i < n; ++i) {
            Exponent e(n);
            e[i] = d2;
            g.add_term(e, m);
        }
        return g;
    };
    auto feasible = [&](const Rational& m) { return is_sos(padded(m)).feasible(); };

    if (feasible(Rational(0))) return Rational(0);
    Rational hi(1);
    const Rational cap = rat_pow(Rational(2), 64);
    while (!feasible(hi)) {
        hi *= 2;
        if (hi > cap)
            throw std::runtime_error("diagonal bound bracket exceeded 2^64; oracle trouble");
    }
    Rational lo(0);
    Rational resolution = hi * rat_pow(Rational(1, 2), 20);
    while (hi - lo > resolution) {
        Rational mid = (hi + lo) / 2;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::optional<std::vector<std::pair<Rational, Polynomial>>> exact_sos_squares(
    const GramProblem& problem) {
    const std::size_t n = problem.target.nvars();
    if (problem.target.is_zero()) return std::vector<std::pair<Rational, Polynomial>>{};
    for (const auto& [e, c] : problem.target.terms())
        if (!problem.classes.count(e)) return std::nullopt;

    SosVerdict v = run_projections(problem, 1e-7);
    if (v.status == SosVerdict::Status::infeasible) return std::nullopt;
    const std::size_t dim = problem.basis.size();
    if (v.gram.size() != dim) return std::nullopt;

    // Round to dyadic rationals, then repair each coefficient class exactly
    // by an even spread over its entries.
    QMat g = qmat(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            Rational r = rat_round_dyadic((v.gram[i][j] + v.gram[j][i]) / 2, kDyadicBits);
            g[i][j] = r;
            g[j][i] = r;
        }
    for (const auto& [alpha, entries] : problem.classes) {
        Rational sum(0), mult(0);
        for (const auto& [i, j] : entries) {
            sum += (i == j) ? g[i][i] : 2 * g[i][j];
            mult += (i == j) ? 1 : 2;
        }
        Rational deficit = problem.target.coeff(alpha) - sum;
        if (deficit == 0) continue;
        Rational shift = deficit / mult;
        for (const auto& [i, j] : entries) {
            g[i][j] += shift;
            if (i != j) g[j][i] += shift;
        }
    }

    auto ldl = ldlt_psd(g);
    if (!ldl) return std::nullopt;

    std::vector<std::pair<Rational, Polynomial>> squares;
    for (std::size_t k = 0; k < ldl->d.size(); ++k) {
        if (ldl->d[k] == 0) continue;
        Polynomial p(n);
        for (std::size_t i = 0; i < dim; ++i)
            if (ldl->cols[k][i] != 0) p.add_term(problem.basis[i], ldl->cols[k][i]);
        squares.emplace_back(ldl->d[k], std::move(p));
    }

    Polynomial check(n);
    for (const auto& [c, p] : squares) check = check + p * p * c;
    if (!(check == problem.target)) return std::nullopt;
    return squares;
}

std::optional<RintSplit> exact_rint_split(const Polynomial& g, const Polynomial& p_gamma,
                                          const NewtonComplex& complex, const Face& face) {
    auto eps0 = rint_membership(g, complex, face);
    if (!eps0) return std::nullopt;
    Rational eps = *eps0;
    for (int tries = 0; tries <= 10; ++tries) {
        Polynomial h = g - p_gamma * eps;
        if (h.is_zero()) return RintSplit{eps, {}};
        GramProblem problem = build_gram_problem(h, BasisMode::face, &complex, &face);
        auto squares = exact_sos_squares(problem);
        if (squares) return RintSplit{eps, std::move(*squares)};
        eps /= 2;
    }
    return std::nullopt;
}

std::optional<DiagonalClosure> exact_diagonal_closure(const Polynomial& h, Rational initial_m) {
    const std::size_t n = h.nvars();
    if (h.is_zero()) return DiagonalClosure{Rational(0), {}};
    if (!h.is_homogeneous() || h.degree() % 2 != 0)
        throw std::invalid_argument("diagonal closure requires homogeneous even degree");
    const int d2 = static_cast<int>(h.degree());
    Rational m = initial_m > 0 ? initial_m : Rational(1);
    const Rational cap = rat_pow(Rational(2), 40);
    while (m <= cap) {
        Polynomial g = h;
        for (std::size_t i = 0; i < n; ++i) {
            Exponent e(n);
            e[i] = d2;
            g.add_term(e, m);
        }
        GramProblem problem = build_gram_problem(g, BasisMode::newton_half);
        auto squares = exact_sos_squares(problem);
        if (squares) return DiagonalClosure{m, std::move(*squares)};
        m *= 2;
    }
    return std::nullopt;
}

}  // namespace ndsos

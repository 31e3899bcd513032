#include "ndsos/checkers.hpp"

#include <algorithm>
#include <random>

#include "ndsos/linalg.hpp"
#include "ndsos/parser.hpp"

namespace ndsos {

namespace {

void require_zero_at_origin(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    if (f.coeff(Exponent(f.nvars())) != 0)
        throw std::invalid_argument("polynomial must vanish at the origin");
}

CheckStatus combine(CheckStatus a, CheckStatus b) {
    if (a == CheckStatus::fail || b == CheckStatus::fail) return CheckStatus::fail;
    if (a == CheckStatus::inconclusive || b == CheckStatus::inconclusive)
        return CheckStatus::inconclusive;
    return CheckStatus::pass;
}

std::string face_name(const Face& face) {
    std::string s = "face{";
    for (std::size_t i = 0; i < face.lattice_points.size(); ++i) {
        if (i) s += " ";
        s += face.lattice_points[i].str();
    }
    return s + "}";
}

void check_vertices(const NewtonComplex& complex, const Polynomial& f, ConditionReport& report) {
    Clause even{"vertices-even", CheckStatus::pass, ""};
    Clause positive{"vertex-coefficients-positive", CheckStatus::pass, ""};
    for (const auto& v : complex.vertices()) {
        if (!v.is_even() && even.status == CheckStatus::pass) {
            even.status = CheckStatus::fail;
            even.evidence = "odd vertex " + v.str();
        }
        if (f.coeff(v) <= 0 && positive.status == CheckStatus::pass) {
            positive.status = CheckStatus::fail;
            positive.evidence = "coefficient " + rat_str(f.coeff(v)) + " at vertex " + v.str();
        }
    }
    report.add(std::move(even));
    report.add(std::move(positive));
}

// Deterministic sample points: a coarse dyadic grid first, then seeded
// random dyadic points, about `budget` in total. All coordinates are exact
// rationals so counterexamples can be re-verified exactly.
std::vector<std::vector<Rational>> sample_points(std::size_t n, std::size_t budget) {
    std::vector<std::vector<Rational>> points;
    // Grid {+-1, +-1/2, +-1/4, +-1/8}^n capped by the budget.
    std::vector<Rational> axis;
    for (int k = 0; k < 4; ++k) {
        axis.push_back(rat_pow(Rational(1, 2), k));
        axis.push_back(-rat_pow(Rational(1, 2), k));
    }
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        std::vector<Rational> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = axis[idx[i]];
        points.push_back(std::move(p));
        if (points.size() >= budget) return points;
        std::size_t i = 0;
        while (i < n && ++idx[i] == axis.size()) idx[i++] = 0;
        if (i == n) break;
    }
    std::mt19937 gen(20240505);
    std::uniform_int_distribution<int> num(-256, 256);
    while (points.size() < budget) {
        std::vector<Rational> p(n);
        bool nonzero = true;
        for (std::size_t i = 0; i < n; ++i) {
            int v = num(gen);
            if (v == 0) nonzero = false;
            Rational q(v, 256);
            q.canonicalize();
            p[i] = q;
        }
        if (nonzero) points.push_back(std::move(p));
    }
    return points;
}

// Tri-state facewise sign check shared by both minimum modes.
Clause face_sign_clause(const Polynomial& fg, const NewtonComplex& complex, const Face& face,
                        bool strict) {
    Clause clause{strict ? "face-positive-off-hyperplanes" : "face-nonnegative",
                  CheckStatus::inconclusive, face_name(face)};
    // Sampling falsification with exact confirmation.
    const std::size_t budget = 100000;
    auto points = sample_points(fg.nvars(), budget);
    for (const auto& p : points) {
        double approx = 0;
        for (const auto& [e, c] : fg.terms()) {
            double term = to_double(c);
            for (std::size_t i = 0; i < fg.nvars(); ++i)
                for (int k = 0; k < e[i]; ++k) term *= to_double(p[i]);
            approx += term;
        }
        if (approx > 1e-7) continue;
        bool off_hyperplanes = true;
        for (const auto& x : p)
            if (x == 0) off_hyperplanes = false;
        if (strict && !off_hyperplanes) continue;
        Rational exact = fg.evaluate(p);
        if (exact < 0 || (strict && exact == 0)) {
            clause.status = CheckStatus::fail;
            std::string pt = "(";
            for (std::size_t i = 0; i < p.size(); ++i)
                pt += (i ? "," : "") + rat_str(p[i]);
            clause.evidence += " value " + rat_str(exact) + " at " + pt + ")";
            return clause;
        }
    }
    if (strict) {
        // f_gamma >= eps p_gamma > 0 off the coordinate hyperplanes.
        try {
            if (auto eps = rint_membership(fg, complex, face)) {
                clause.status = CheckStatus::pass;
                clause.evidence += " via eps=" + rat_str(*eps);
                return clause;
            }
        } catch (const std::invalid_argument&) {
            // No even point on the face: fall through as inconclusive.
        }
    } else {
        SosVerdict v = is_sos_on_face(fg, complex, face);
        if (v.feasible()) {
            clause.status = CheckStatus::pass;
            return clause;
        }
    }
    return clause;
}

}  // namespace

void ConditionReport::add(Clause clause) {
    status = combine(status, clause.status);
    clauses.push_back(std::move(clause));
}

ConditionReport check_sos_necessary(const Polynomial& f) {
    require_zero_at_origin(f);
    ConditionReport report;
    report.condition = "sos-necessary";
    NewtonComplex complex = newton_diagram(f);
    check_vertices(complex, f, report);
    for (const auto& face : complex.faces()) {
        if (face.dim == 0) continue;  // covered by the vertex clauses
        Polynomial fg = face_restriction(f, complex, face);
        SosVerdict v = is_sos_on_face(fg, complex, face);
        Clause clause{"face-sos", CheckStatus::pass, face_name(face)};
        if (v.status == SosVerdict::Status::infeasible) {
            clause.status = CheckStatus::fail;
            clause.evidence += " " + v.reason;
        } else if (v.status == SosVerdict::Status::inconclusive) {
            clause.status = CheckStatus::inconclusive;
        }
        report.add(std::move(clause));
    }
    return report;
}

ConditionReport check_isolated_minimum(const Polynomial& f, MinimumMode mode) {
    require_zero_at_origin(f);
    ConditionReport report;
    report.condition =
        mode == MinimumMode::necessary ? "isolated-minimum-necessary" : "isolated-minimum-sufficient";
    NewtonComplex complex = newton_diagram(f);

    Clause axes{"diagram-meets-axes", CheckStatus::pass, ""};
    if (!complex.meets_all_axes()) {
        axes.status = CheckStatus::fail;
        axes.evidence = "some coordinate axis carries no support point";
    }
    report.add(std::move(axes));
    check_vertices(complex, f, report);

    for (const auto& face : complex.faces()) {
        Polynomial fg = face_restriction(f, complex, face);
        if (face.dim == 0) {
            // Sign conditions at a vertex are the two clauses above.
            continue;
        }
        report.add(face_sign_clause(fg, complex, face, mode == MinimumMode::sufficient));
    }
    return report;
}

ConditionReport check_regularity(const Polynomial& f, int bconv_depth) {
    require_zero_at_origin(f);
    ConditionReport report;
    report.condition = "regular-newton-polyhedron";
    NewtonComplex complex = newton_diagram(f);
    check_vertices(complex, f, report);

    for (std::size_t idx : complex.maximal_faces()) {
        const Face& face = complex.faces()[idx];
        Polynomial fg = face_restriction(f, complex, face);
        NewtonComplex hull = newton_diagram(fg);
        EvenRegion region = even_region(fg);
        for (const auto& [alpha, c] : f.terms()) {
            if (!(alpha.total_degree() % 2 == 1 || !alpha.is_even() || c < 0)) continue;
            if (complex.face_contains(face, alpha)) continue;
            if (!hull.polyhedron_contains(alpha)) continue;
            Clause clause{"bad-monomial-in-bconv", CheckStatus::pass,
                          alpha.str() + " against " + face_name(face)};
            auto res = bconv_member(alpha, region, bconv_depth);
            if (res.status == BconvStatus::member) {
                std::string betas;
                for (const auto& b : res.witness->betas) betas += b.str();
                clause.evidence += " witness " + betas;
            } else if (res.status == BconvStatus::absent) {
                clause.status = CheckStatus::fail;
                clause.evidence += " proven outside the dyadic hull";
            } else {
                clause.status = CheckStatus::inconclusive;
                clause.evidence +=
                    " no witness up to depth " + std::to_string(res.depth_searched);
            }
            report.add(std::move(clause));
        }
    }
    return report;
}

ConditionReport regularity_shortcuts(const Polynomial& f) {
    require_zero_at_origin(f);
    ConditionReport report;
    report.condition = "regularity-shortcuts";
    NewtonComplex complex = newton_diagram(f);

    auto maximal = complex.maximal_faces();
    if (maximal.size() != 1) {
        report.add({"shape", CheckStatus::inconclusive, "diagram has several maximal faces"});
        return report;
    }
    const Face& face = complex.faces()[maximal[0]];
    const auto& w = face.support_hyperplane.weights;
    const long v = face.support_hyperplane.offset;
    const std::size_t n = f.nvars();

    // Quadratic plane |alpha| = 2 with positive definite diagram polynomial.
    bool plane2 = v == 2;
    for (long wi : w) plane2 = plane2 && wi == 1;
    if (plane2) {
        Polynomial fg = face_restriction(f, complex, face);
        QMat m = qmat(n, n);
        for (const auto& [e, c] : fg.terms()) {
            std::vector<std::size_t> vars;
            for (std::size_t i = 0; i < n; ++i)
                for (int k = 0; k < e[i]; ++k) vars.push_back(i);
            if (vars[0] == vars[1]) {
                m[vars[0]][vars[0]] = c;
            } else {
                m[vars[0]][vars[1]] = c / 2;
                m[vars[1]][vars[0]] = c / 2;
            }
        }
        Clause clause{"quadratic-plane", CheckStatus::pass, "|alpha| = 2"};
        if (!is_positive_definite(m)) {
            clause.status = CheckStatus::inconclusive;
            clause.evidence += ", diagram polynomial not positive definite";
        }
        report.add(std::move(clause));
        return report;
    }

    // Weighted plane (k,..,k,1) . alpha = 2k for some slot and k >= 1.
    for (std::size_t slot = 0; slot < n; ++slot) {
        if (w[slot] != 1) continue;
        long k = 0;
        bool shape = true;
        for (std::size_t i = 0; i < n && shape; ++i) {
            if (i == slot) continue;
            if (k == 0) k = w[i];
            if (w[i] != k) shape = false;
        }
        if (n == 1) k = v / 2;
        if (!shape || k < 1 || v != 2 * k) continue;
        Polynomial fg = face_restriction(f, complex, face);
        Clause clause{"almost-quadratic-plane", CheckStatus::pass,
                      "k = " + std::to_string(k) + ", slot " + std::to_string(slot)};
        auto eps = rint_membership(fg, complex, face);
        if (!eps) {
            clause.status = CheckStatus::inconclusive;
            clause.evidence += ", relative interior not verified";
        }
        report.add(std::move(clause));
        return report;
    }

    report.add({"shape", CheckStatus::inconclusive, "plane shape not recognized"});
    return report;
}

SufficiencyResult check_sufficient(const Polynomial& f) {
    require_zero_at_origin(f);
    SufficiencyResult out;
    out.report.condition = "power-series-sos-sufficient";
    NewtonComplex complex = newton_diagram(f);
    check_vertices(complex, f, out.report);
    if (out.report.status == CheckStatus::fail) return out;

    const long d = complex.diagram_degree();
    Polynomial f0 = f.truncate_degree(d + 1);
    Polynomial tail = f - f0;
    Polynomial diagram_only(f.nvars());
    for (const auto& face : complex.faces())
        for (const auto& e : face.lattice_points)
            if (diagram_only.coeff(e) == 0) diagram_only.add_term(e, f.coeff(e));

    // Facewise relative interior, needed by every route.
    for (std::size_t idx : complex.maximal_faces()) {
        const Face& face = complex.faces()[idx];
        Polynomial fg = face_restriction(f, complex, face);
        Clause clause{"face-relative-interior", CheckStatus::pass, face_name(face)};
        std::optional<Rational> eps;
        try {
            eps = rint_membership(fg, complex, face);
        } catch (const std::invalid_argument&) {
            eps = std::nullopt;
        }
        if (eps)
            clause.evidence += " eps=" + rat_str(*eps);
        else
            clause.status = CheckStatus::inconclusive;
        out.report.add(std::move(clause));
    }
    if (out.report.status != CheckStatus::pass) return out;

    // Regularity of the certifying polynomial (f itself, or the truncation
    // when a high tail is split off): shortcuts first, then the search.
    const Polynomial& reg_target = tail.is_zero() ? f : f0;
    bool via_shortcut = false;
    {
        ConditionReport quick = regularity_shortcuts(reg_target);
        if (quick.passed()) {
            via_shortcut = true;
            for (auto& c : quick.clauses) out.report.add(std::move(c));
        } else {
            ConditionReport full = check_regularity(reg_target);
            for (auto& c : full.clauses) out.report.add(std::move(c));
        }
    }
    if (out.report.status != CheckStatus::pass) return out;

    if (!tail.is_zero()) {
        Clause axes{"diagram-meets-axes", CheckStatus::pass, ""};
        if (!complex.meets_all_axes()) {
            axes.status = CheckStatus::inconclusive;
            axes.evidence = "tail truncation needs all axes met";
        }
        out.report.add(std::move(axes));
        if (out.report.status != CheckStatus::pass) return out;
        out.route = (f0 == diagram_only) ? "corollary" : "bounded-regularity";
    } else {
        out.route = via_shortcut ? "regular-rint" : "sufficiency-search";
    }

    try {
        out.certificate = tail.is_zero() ? sufficiency_certificate(f)
                                         : bounded_degree_certificate(f);
    } catch (const CertificateError& err) {
        out.report.add({"certificate-construction", CheckStatus::inconclusive, err.what()});
        return out;
    }
    if (!verify_certificate(*out.certificate)) {
        out.certificate.reset();
        out.report.add({"certificate-verification", CheckStatus::inconclusive,
                        "constructed certificate failed exact verification"});
    }
    return out;
}

}  // namespace ndsos

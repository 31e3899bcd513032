#include "ndsos/constrained.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ndsos/linalg.hpp"
#include "ndsos/parser.hpp"

namespace ndsos {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(rat_from_string(tok));
    return out;
}

std::vector<Rational> gradient_at(const Polynomial& f, const std::vector<Rational>& z) {
    std::vector<Rational> grad(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) grad[i] = f.derivative(i).evaluate(z);
    return grad;
}

bool is_zero_vec(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

PopFile parse_pop_file(const std::string& text) {
    PopFile out;
    std::vector<std::string> vars;
    std::optional<std::string> min_line;
    std::vector<std::pair<std::string, bool>> constraints;  // text, is_inequality
    std::optional<std::string> point_line, lambda_line, mu_line;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto colon = t.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("pop file line without a keyword: " + t);
        std::string key = trim(t.substr(0, colon));
        std::string rest = trim(t.substr(colon + 1));
        if (key == "vars") {
            std::istringstream vs(rest);
            std::string name;
            while (vs >> name) vars.push_back(name);
        } else if (key == "min") {
            min_line = rest;
        } else if (key == "st") {
            auto geq = rest.rfind(">=");
            auto eq = rest.rfind('=');
            if (geq != std::string::npos && trim(rest.substr(geq + 2)) == "0") {
                constraints.emplace_back(trim(rest.substr(0, geq)), true);
            } else if (eq != std::string::npos && trim(rest.substr(eq + 1)) == "0") {
                constraints.emplace_back(trim(rest.substr(0, eq)), false);
            } else {
                throw std::invalid_argument("constraint must end with '>= 0' or '= 0': " + rest);
            }
        } else if (key == "point") {
            point_line = rest;
        } else if (key == "lambda") {
            lambda_line = rest;
        } else if (key == "mu") {
            mu_line = rest;
        } else {
            throw std::invalid_argument("unknown pop file keyword: " + key);
        }
    }
    if (!min_line) throw std::invalid_argument("pop file needs a 'min:' line");
    if (!point_line) throw std::invalid_argument("pop file needs a 'point:' line");
    if (vars.empty()) {
        std::string all = *min_line;
        for (const auto& [c, kind] : constraints) all += " + " + c;
        vars = infer_variables(all);
    }
    out.pop.variables = vars;
    out.pop.objective = parse_polynomial(*min_line, vars);
    for (const auto& [c, inequality] : constraints) {
        Polynomial p = parse_polynomial(c, vars);
        (inequality ? out.pop.inequalities : out.pop.equalities).push_back(std::move(p));
    }
    out.point = parse_rational_list(*point_line);
    if (out.point.size() != vars.size())
        throw std::invalid_argument("point dimension does not match the variables");
    if (lambda_line) out.lambda = parse_rational_list(*lambda_line);
    if (mu_line) out.mu = parse_rational_list(*mu_line);
    return out;
}

KktData solve_multipliers(const PopInstance& pop, const std::vector<Rational>& z) {
    const std::size_t n = pop.variables.size();
    if (z.size() != n) throw std::invalid_argument("point dimension mismatch");

    for (const auto& h : pop.equalities)
        if (h.evaluate(z) != 0) throw std::invalid_argument("point violates an equality");
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < pop.inequalities.size(); ++i) {
        Rational v = pop.inequalities[i].evaluate(z);
        if (v < 0) throw std::invalid_argument("point violates an inequality");
        if (v == 0) active.push_back(i);
    }

    // Columns: gradients of active inequalities then equalities.
    std::vector<std::vector<Rational>> cols;
    for (std::size_t i : active) cols.push_back(gradient_at(pop.inequalities[i], z));
    for (const auto& h : pop.equalities) cols.push_back(gradient_at(h, z));
    std::vector<Rational> target = gradient_at(pop.objective, z);
    const std::size_t na = active.size();
    const std::size_t total = cols.size();

    auto build = [&](const std::vector<std::size_t>& pick) {
        QMat m = qmat(n, pick.size());
        for (std::size_t j = 0; j < pick.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) m[i][j] = cols[pick[j]][i];
        return m;
    };

    // Minimum-support basic solution with nonnegative inequality
    // multipliers, deterministic by subset order.
    std::optional<std::vector<Rational>> best;
    std::optional<std::vector<std::size_t>> best_pick;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> search = [&](std::size_t start) {
        if (best && pick.size() >= best_pick->size()) return;
        if (!pick.empty() || is_zero_vec(target)) {
            auto sol = solve(build(pick), target);
            if (sol) {
                bool ok = true;
                for (std::size_t j = 0; j < pick.size(); ++j)
                    if (pick[j] < na && (*sol)[j] < 0) ok = false;
                if (ok && (!best || pick.size() < best_pick->size())) {
                    best = sol;
                    best_pick = pick;
                }
            }
        }
        if (pick.size() == std::min(n, total)) return;
        for (std::size_t c = start; c < total; ++c) {
            pick.push_back(c);
            search(c + 1);
            pick.pop_back();
        }
    };
    search(0);
    if (!best) throw std::invalid_argument("no valid multipliers: stationarity fails at the point");

    KktData out;
    out.z = z;
    out.active = active;
    out.lambda.assign(pop.inequalities.size(), Rational(0));
    out.mu.assign(pop.equalities.size(), Rational(0));
    for (std::size_t j = 0; j < best_pick->size(); ++j) {
        std::size_t c = (*best_pick)[j];
        if (c < na)
            out.lambda[active[c]] = (*best)[j];
        else
            out.mu[c - na] = (*best)[j];
    }
    out.lagrangian = pop.objective;
    for (std::size_t i = 0; i < pop.inequalities.size(); ++i)
        out.lagrangian = out.lagrangian - pop.inequalities[i] * out.lambda[i];
    for (std::size_t j = 0; j < pop.equalities.size(); ++j)
        out.lagrangian = out.lagrangian - pop.equalities[j] * out.mu[j];

    if (!is_zero_vec(gradient_at(out.lagrangian, z)))
        throw std::logic_error("multiplier solve left a nonzero gradient");
    return out;
}

namespace {

// Positive definiteness of the Lagrangian Hessian on the kernel of the
// binding gradients; informational only.
bool second_order_condition(const PopInstance& pop, const KktData& kkt) {
    const std::size_t n = pop.variables.size();
    QMat hess = qmat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            hess[i][j] = kkt.lagrangian.derivative(i).derivative(j).evaluate(kkt.z);

    QMat rows;
    for (std::size_t i = 0; i < pop.inequalities.size(); ++i) {
        if (kkt.lambda[i] == 0) continue;
        auto grad = gradient_at(pop.inequalities[i], kkt.z);
        if (is_zero_vec(grad)) continue;
        rows.push_back(grad);
    }
    for (const auto& h : pop.equalities) {
        auto grad = gradient_at(h, kkt.z);
        if (!is_zero_vec(grad)) rows.push_back(grad);
    }
    std::vector<QVec> kernel;
    if (rows.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            QVec e(n, Rational(0));
            e[i] = 1;
            kernel.push_back(std::move(e));
        }
    } else {
        kernel = nullspace(rows);
    }
    if (kernel.empty()) return true;  // trivial subspace
    QMat restricted = qmat(kernel.size(), kernel.size());
    for (std::size_t a = 0; a < kernel.size(); ++a)
        for (std::size_t b = 0; b < kernel.size(); ++b) {
            Rational sum(0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    sum += kernel[a][i] * hess[i][j] * kernel[b][j];
            restricted[a][b] = sum;
        }
    return is_positive_definite(restricted);
}

}  // namespace

MembershipVerdict certify_membership(const PopInstance& pop, const KktData& kkt,
                                     const LocalOrder& order) {
    MembershipVerdict out;
    out.lambda = kkt.lambda;
    out.mu = kkt.mu;
    out.second_order_condition = second_order_condition(pop, kkt);

    Polynomial lz = kkt.lagrangian.shift_to_point(kkt.z);
    if (lz.is_zero()) {
        out.status = MembershipVerdict::Status::inconclusive;
        out.detail = "shifted Lagrangian is identically zero";
        return out;
    }

    for (std::size_t i = 0; i < pop.inequalities.size(); ++i) {
        if (kkt.lambda[i] == 0) continue;
        if (is_zero_vec(gradient_at(pop.inequalities[i], kkt.z))) continue;
        Polynomial shifted = pop.inequalities[i].shift_to_point(kkt.z);
        out.divisors.push_back(shifted * kkt.lambda[i]);
    }
    for (const auto& h : pop.equalities) {
        Polynomial shifted = h.shift_to_point(kkt.z);
        if (!shifted.is_zero()) out.divisors.push_back(shifted);
    }

    ModifiedDivisionResult division;
    try {
        division = modified_mora(lz, out.divisors, order);
    } catch (const std::runtime_error& err) {
        out.status = MembershipVerdict::Status::inconclusive;
        out.detail = err.what();
        return out;
    }
    out.division = division.base;
    out.r0 = division.r0;
    out.diagram_degree = division.diagram_degree;
    out.essential = division.essential;

    if (out.essential.is_zero()) {
        out.status = MembershipVerdict::Status::not_certified;
        out.detail = "essential remainder vanished; nothing to certify against";
        return out;
    }

    out.remainder_vars = out.essential.appearing_vars();
    if (out.remainder_vars.empty()) {
        out.status = MembershipVerdict::Status::not_certified;
        out.detail = "essential remainder is a nonzero constant";
        return out;
    }
    Polynomial squeezed = out.essential.project_to_vars(out.remainder_vars);

    SufficiencyResult suff = check_sufficient(squeezed);
    out.checks = suff.report;
    out.checks.condition = "essential-remainder-" + out.checks.condition;
    {
        NewtonComplex complex = newton_diagram(squeezed);
        Clause axes{"remainder-meets-axes", CheckStatus::pass, ""};
        if (!complex.meets_all_axes()) {
            axes.status = CheckStatus::fail;
            axes.evidence = "an appearing variable has no axis point on the diagram";
        }
        out.checks.add(std::move(axes));
    }

    if (out.checks.status == CheckStatus::fail) {
        out.status = MembershipVerdict::Status::not_certified;
        out.detail = "essential remainder fails a diagram condition";
        return out;
    }
    if (out.checks.status == CheckStatus::inconclusive || !suff.certificate) {
        out.status = MembershipVerdict::Status::inconclusive;
        out.detail = "essential remainder conditions not decided";
        return out;
    }
    out.certificate = suff.certificate;
    out.status = MembershipVerdict::Status::certified;
    out.detail = "essential remainder certified via route " + suff.route;
    return out;
}

}  // namespace ndsos

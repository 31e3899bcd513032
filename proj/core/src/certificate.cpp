#include "ndsos/certificate.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "ndsos/parser.hpp"

namespace ndsos {

namespace {

std::string plain(const Polynomial& p) {
    return to_string(p, default_variables(p.nvars()));
}

Polynomial monomial_square_root(const Exponent& even) {
    return Polynomial::monomial(even.halved(), Rational(1));
}

// Sum of x^alpha over all even alpha of total degree deg (the principal
// polynomial of the full plane slice |alpha| = deg).
Polynomial plane_principal(std::size_t n, long deg) {
    Polynomial out(n);
    Exponent cur(n);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i + 1 == n) {
            if (left % 2 == 0) {
                cur[i] = static_cast<int>(left);
                out.add_term(cur, Rational(1));
            }
            return;
        }
        for (long v = 0; v <= left; v += 2) {
            cur[i] = static_cast<int>(v);
            rec(i + 1, left - v);
        }
    };
    if (deg % 2 != 0) throw std::invalid_argument("plane principal of odd degree");
    rec(0, deg);
    return out;
}

struct PlaneSplit {
    Rational eps;
    std::vector<std::pair<Rational, Polynomial>> squares;  // of f - eps * plane principal
};

// Grid search + exact extraction for f (homogeneous 2m) against the full
// plane principal polynomial.
std::optional<PlaneSplit> exact_plane_rint_split(const Polynomial& f2m) {
    Polynomial p = plane_principal(f2m.nvars(), f2m.degree());
    std::optional<Rational> grid_eps;
    for (int k = 0; k <= 40; ++k) {
        Rational eps = rat_pow(Rational(1, 2), k);
        Polynomial g = f2m - p * eps;
        if (g.is_zero() || is_sos(g).feasible()) {
            grid_eps = eps;
            break;
        }
    }
    if (!grid_eps) return std::nullopt;
    Rational eps = *grid_eps;
    for (int tries = 0; tries <= 10; ++tries) {
        Polynomial g = f2m - p * eps;
        if (g.is_zero()) return PlaneSplit{eps, {}};
        auto squares = exact_sos_squares(build_gram_problem(g, BasisMode::newton_half));
        if (squares) return PlaneSplit{eps, std::move(*squares)};
        eps /= 2;
    }
    return std::nullopt;
}

void append_squares(LocalSosCertificate& cert,
                    const std::vector<std::pair<Rational, Polynomial>>& squares) {
    for (const auto& s : squares) cert.squares.push_back(s);
}

// Internal consistency gate: every constructed certificate is re-expanded.
void finalize(LocalSosCertificate& cert) {
    if (!verify_certificate(cert))
        throw std::logic_error("constructed certificate failed exact verification: defect " +
                               plain(certificate_defect(cert)));
}

}  // namespace

Polynomial certificate_expansion(const LocalSosCertificate& c) {
    Polynomial out(c.target.nvars());
    for (const auto& [coef, p] : c.squares) out = out + p * p * coef;
    for (const auto& r : c.unit_residuals) {
        Polynomial unit = Polynomial::constant(c.target.nvars(), r.constant) - r.tail;
        out = out + Polynomial::monomial(r.square_base, Rational(1)) * unit;
    }
    return out;
}

Polynomial certificate_defect(const LocalSosCertificate& c) {
    return certificate_expansion(c) - c.target;
}

bool verify_certificate(const LocalSosCertificate& c) {
    for (const auto& [coef, p] : c.squares) {
        if (coef <= 0) return false;
        if (p.nvars() != c.target.nvars()) return false;
    }
    for (const auto& r : c.unit_residuals) {
        if (!r.square_base.is_even()) return false;
        if (r.constant <= 0) return false;
        if (r.tail.coeff(Exponent(c.target.nvars())) != 0) return false;
    }
    return certificate_defect(c).is_zero();
}

OddSplit split_odd_exponent(const Exponent& alpha) {
    long total = alpha.total_degree();
    if (total % 2 == 0) throw std::invalid_argument("exponent has even total degree");
    const long k2 = total - 1;  // 2k
    const std::size_t n = alpha.nvars();
    Exponent beta(n);
    long prefix = 0;
    std::size_t s = 0;
    while (s < n && prefix + 2 * alpha[s] <= k2) {
        beta[s] = 2 * alpha[s];
        prefix += 2 * alpha[s];
        ++s;
    }
    if (s < n) beta[s] = static_cast<int>(k2 - prefix);
    Exponent beta_prime = alpha.doubled() - beta;
    return OddSplit{alpha, beta, beta_prime};
}

BinaryAbsorption binary_combination_certificate(const Rational& eps, const Rational& a, int t,
                                                const BconvWitness& witness) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    const int big_n = witness.depth;
    if (t < 1 || t > big_n + 1) throw std::invalid_argument("t out of range");
    const std::size_t n = witness.target.nvars();

    BinaryAbsorption out;
    LocalSosCertificate& cert = out.cert;
    cert.target = Polynomial(n);
    for (const auto& beta : witness.betas) cert.target.add_term(beta, eps);
    cert.target.add_term(witness.target, -a);

    if (a == 0) {
        out.m = 0;
        for (const auto& beta : witness.betas)
            cert.squares.emplace_back(eps, monomial_square_root(beta));
        finalize(cert);
        return out;
    }

    std::vector<Exponent> tails = witness_tails(witness);  // tails[j-1] pairs with beta^j

    if (t == big_n + 1) {
        // Pure telescoping: C_1 = a/(2 eps), C_j = C_{j-1}^2 / 2, M = eps C_N^2.
        std::vector<Rational> cs;
        cs.push_back(a / (2 * eps));
        for (int j = 2; j <= big_n; ++j) cs.push_back(cs.back() * cs.back() / 2);
        for (int j = 1; j <= big_n; ++j) {
            Polynomial inner = monomial_square_root(witness.betas[j - 1]) -
                               Polynomial::monomial(tails[j - 1], cs[j - 1]);
            cert.squares.emplace_back(eps, inner);
        }
        out.m = eps * cs.back() * cs.back();
        out.c_constants = cs;
        cert.target.add_term(witness.betas[big_n], out.m);
        Rational leftover = eps + out.m - eps * cs.back() * cs.back();
        cert.squares.emplace_back(leftover, monomial_square_root(witness.betas[big_n]));
        finalize(cert);
        return out;
    }

    // Interior t: telescope up to t-1, park the residual on L x^{beta^t},
    // then continue on the eps budgets; L is chosen so the final residual
    // fits under eps, then doubled.
    std::vector<Rational> cs;
    if (t >= 2) {
        cs.push_back(a / (2 * eps));
        for (int j = 2; j <= t - 1; ++j) cs.push_back(cs.back() * cs.back() / 2);
    }
    Rational entering = (t == 1) ? a : eps * cs.back() * cs.back();

    auto final_residual = [&](const Rational& l_val) {
        Rational r = entering * entering / (4 * l_val);
        for (int j = t + 1; j <= big_n; ++j) r = r * r / (4 * eps);
        return r;
    };
    Rational l_val(1);
    while (final_residual(l_val) >= eps) l_val *= 2;
    l_val *= 2;
    out.l = l_val;

    for (int j = 1; j <= t - 1; ++j) {
        Polynomial inner = monomial_square_root(witness.betas[j - 1]) -
                           Polynomial::monomial(tails[j - 1], cs[j - 1]);
        cert.squares.emplace_back(eps, inner);
    }
    {
        Polynomial inner = monomial_square_root(witness.betas[t - 1]) -
                           Polynomial::monomial(tails[t - 1], entering / (2 * l_val));
        cert.squares.emplace_back(l_val, inner);
    }
    Rational res = entering * entering / (4 * l_val);
    for (int j = t + 1; j <= big_n; ++j) {
        out.d_constants.push_back(res / (2 * eps));
        Polynomial inner = monomial_square_root(witness.betas[j - 1]) -
                           Polynomial::monomial(tails[j - 1], res / (2 * eps));
        cert.squares.emplace_back(eps, inner);
        res = res * res / (4 * eps);
    }
    out.c_constants = cs;
    out.m = l_val + eps;
    cert.target.add_term(witness.betas[t - 1], out.m);
    // eps + M - L = 2 eps stays on beta^t, eps - res on the last beta.
    cert.squares.emplace_back(2 * eps, monomial_square_root(witness.betas[t - 1]));
    if (eps - res > 0)
        cert.squares.emplace_back(eps - res, monomial_square_root(witness.betas[big_n]));
    else if (eps - res < 0)
        throw std::logic_error("interior-t residual exceeded budget");
    finalize(cert);
    return out;
}

LocalSosCertificate face_monomial_certificate(const Polynomial& g, const NewtonComplex& complex,
                                              const Face& face, const Rational& a,
                                              const Exponent& alpha,
                                              const BconvWitness* witness) {
    const std::size_t n = g.nvars();
    LocalSosCertificate cert;
    cert.target = g + Polynomial::monomial(alpha, a);

    Polynomial p_gamma = principal_polynomial(complex, face);
    const WeightVector& h = face.support_hyperplane;

    if (a == 0) {
        auto split = exact_rint_split(g, p_gamma, complex, face);
        if (!split)
            throw CertificateError("relative-interior membership not verified for " + plain(g));
        append_squares(cert, split->squares);
        for (const auto& [e, c] : p_gamma.terms())
            cert.squares.emplace_back(split->eps, monomial_square_root(e));
        cert.metadata["eps"] = rat_str(split->eps);
        finalize(cert);
        return cert;
    }

    if (h.dot(alpha) == h.offset) {
        // The perturbed monomial stays on the face: certify the sum directly
        // as a face polynomial.
        GramProblem problem = build_gram_problem(cert.target, BasisMode::face, &complex, &face);
        auto squares = exact_sos_squares(problem);
        if (!squares)
            throw CertificateError("face polynomial with on-face perturbation is not SOS: " +
                                   plain(cert.target));
        append_squares(cert, *squares);
        finalize(cert);
        return cert;
    }

    if (!witness) throw CertificateError("off-face monomial needs a bconv witness");
    EvenRegion region = even_region(g);
    if (!verify_witness(*witness, region))
        throw CertificateError("invalid bconv witness for " + alpha.str());

    const int big_n = witness->depth;
    int t = 0;
    for (int k = 1; k <= big_n + 1; ++k)
        if (h.dot(witness->betas[k - 1]) > h.offset) {
            t = k;
            break;
        }
    if (t == 0)
        throw CertificateError("witness has no point off the face; inputs are inconsistent");

    auto split = exact_rint_split(g, p_gamma, complex, face);
    if (!split)
        throw CertificateError("relative-interior membership not verified for " + plain(g));
    const Rational eps = split->eps;
    const Rational eps_b = eps / (big_n + 2);

    BinaryAbsorption bin = binary_combination_certificate(eps_b, -a, t, *witness);

    // Middle block: eps*p_gamma - eps_b * sum_k x^{beta^k} - M x^{beta^t}.
    // On-face even points keep positive budgets; off-face beta monomials are
    // hooked below an even support base as unit residuals.
    std::map<Exponent, int> count;
    for (const auto& beta : witness->betas) count[beta] += 1;
    std::map<Exponent, Rational> negative;  // off-face monomial -> coefficient to absorb
    for (const auto& [beta, cnt] : count) {
        if (h.dot(beta) == h.offset) continue;
        negative[beta] += eps_b * cnt;
    }
    negative[witness->betas[t - 1]] += bin.m;

    std::map<Exponent, std::vector<std::pair<Exponent, Rational>>> hooks;  // base -> (omega, c)
    for (const auto& [m_exp, coef] : negative) {
        std::optional<Exponent> base;
        for (const auto& b : region.bases())
            if (m_exp.dominates(b) && (!base || b < *base)) base = b;
        if (!base)
            throw CertificateError("no even support point under " + m_exp.str());
        hooks[*base].emplace_back(m_exp - *base, coef);
    }

    Polynomial middle_check(n);
    for (const auto& [e, c] : p_gamma.terms()) {
        Rational budget = eps - eps_b * (count.count(e) ? count.at(e) : 0);
        if (budget <= 0) throw std::logic_error("face budget exhausted");
        auto it = hooks.find(e);
        if (it == hooks.end()) {
            cert.squares.emplace_back(budget, monomial_square_root(e));
            middle_check.add_term(e, budget);
        } else {
            UnitResidual r;
            r.square_base = e;
            r.constant = budget;
            r.tail = Polynomial(n);
            for (const auto& [omega, coef] : it->second) r.tail.add_term(omega, coef);
            middle_check.add_term(e, budget);
            for (const auto& [omega, coef] : it->second) middle_check.add_term(e + omega, -coef);
            cert.unit_residuals.push_back(std::move(r));
        }
    }
    // The assembled middle block must equal its definition exactly.
    Polynomial middle_def = p_gamma * eps;
    for (const auto& beta : witness->betas) middle_def.add_term(beta, -eps_b);
    middle_def.add_term(witness->betas[t - 1], -bin.m);
    if (!(middle_check - middle_def).is_zero())
        throw std::logic_error("middle block assembly mismatch");

    append_squares(cert, split->squares);
    append_squares(cert, bin.cert.squares);
    cert.metadata["eps"] = rat_str(eps);
    cert.metadata["eps_binary"] = rat_str(eps_b);
    cert.metadata["M"] = rat_str(bin.m);
    cert.metadata["t"] = std::to_string(t);
    finalize(cert);
    return cert;
}

namespace {

// Assembler for the layered construction used by lowest_part_certificate.
// Groups the odd-degree terms by their even split target and closes each
// degree block with a diagonal pad.
struct OddHookBlock {
    std::vector<std::pair<Rational, Polynomial>> squares;
    Polynomial excess;  // homogeneous of one degree higher, to be closed
};

// Assembles sum_{beta} budget_beta x^beta + sum_alpha f_alpha x^alpha as
// completed squares; budgets must cover each beta(alpha). Returns the
// leftover negative even part -sum f_alpha^2/(4 share) x^{beta'}.
OddHookBlock hook_odd_terms(const Polynomial& odd_slice,
                            const std::map<Exponent, Rational>& budgets) {
    const std::size_t n = odd_slice.nvars();
    OddHookBlock out;
    out.excess = Polynomial(n);
    std::map<Exponent, std::vector<std::pair<Exponent, Rational>>> grouped;
    for (const auto& [alpha, c] : odd_slice.terms()) {
        OddSplit split = split_odd_exponent(alpha);
        grouped[split.beta].emplace_back(alpha, c);
    }
    std::map<Exponent, Rational> spent;
    for (const auto& [beta, list] : grouped) {
        auto it = budgets.find(beta);
        if (it == budgets.end() || it->second <= 0)
            throw CertificateError("no even budget available at " + beta.str());
        Rational share = it->second / static_cast<long>(list.size());
        for (const auto& [alpha, c] : list) {
            Exponent beta_prime = alpha.doubled() - beta;
            Polynomial inner = monomial_square_root(beta) +
                               Polynomial::monomial(beta_prime.halved(), c / (2 * share));
            out.squares.emplace_back(share, inner);
            out.excess.add_term(beta_prime, -c * c / (4 * share));
        }
        spent[beta] = it->second;
    }
    // Budgets not consumed by a hook stay as plain squares.
    for (const auto& [beta, budget] : budgets) {
        if (spent.count(beta) || budget == 0) continue;
        if (budget < 0) throw std::logic_error("negative budget");
        out.squares.emplace_back(budget, monomial_square_root(beta));
    }
    return out;
}

Polynomial diagonal_poly(std::size_t n, long deg, const Rational& coef) {
    Polynomial out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Exponent e(n);
        e[i] = static_cast<int>(deg);
        out.add_term(e, coef);
    }
    return out;
}

}  // namespace

LocalSosCertificate lowest_part_certificate(const Polynomial& f) {
    const std::size_t n = f.nvars();
    if (f.is_zero()) throw std::invalid_argument("certificate of the zero polynomial");
    if (f.coeff(Exponent(n)) != 0)
        throw CertificateError("nonzero constant term");
    const long low = f.low_degree();
    if (low % 2 != 0)
        throw CertificateError("lowest homogeneous part has odd degree");
    const long m = low / 2;
    Polynomial lowest = f.homogeneous_part(low);

    auto split = exact_plane_rint_split(lowest);
    if (!split)
        throw CertificateError(
            "lowest homogeneous part not verified in the relative interior: " + plain(lowest));

    LocalSosCertificate cert;
    cert.target = f;
    cert.metadata["eps_grid"] = rat_str(split->eps);

    Polynomial p_plane = plane_principal(n, low);
    const long t_deg = (f.degree() + 1) / 2;

    if (t_deg <= m) {  // homogeneous input
        append_squares(cert, split->squares);
        for (const auto& [e, c] : p_plane.terms())
            cert.squares.emplace_back(split->eps, monomial_square_root(e));
        finalize(cert);
        return cert;
    }

    const Rational eps = split->eps / 2;  // each layer block carries eps * p_plane

    // Probe the diagonal requirement of every closure block, then retry the
    // whole assembly with a single doubled pad.
    auto assemble = [&](const Rational& pad) -> std::optional<LocalSosCertificate> {
        LocalSosCertificate out;
        out.target = f;
        out.metadata = cert.metadata;
        out.metadata["pad"] = rat_str(pad);
        // f - lowest = sum of the slice blocks below; lowest splits into the
        // rint part plus two copies of eps * p_plane.
        append_squares(out, split->squares);

        // First copy: axis unit residuals absorbing -pad x_i^(2k) for all
        // k = m+1..t; remaining plane points as plain squares.
        for (std::size_t i = 0; i < n; ++i) {
            Exponent corner(n);
            corner[i] = static_cast<int>(low);
            UnitResidual r;
            r.square_base = corner;
            r.constant = eps;
            r.tail = Polynomial(n);
            for (long k = m + 1; k <= t_deg; ++k) {
                Exponent e(n);
                e[i] = static_cast<int>(2 * k - low);
                r.tail.add_term(e, pad);
            }
            out.unit_residuals.push_back(std::move(r));
        }
        for (const auto& [e, c] : p_plane.terms()) {
            bool corner = false;
            for (std::size_t i = 0; i < n; ++i)
                if (e[i] == low) corner = true;
            if (!corner) out.squares.emplace_back(eps, monomial_square_root(e));
        }

        try {
            // Layer k = m+1: eps * p_plane + odd slice (2m+1) + (pad/4) diag.
            std::map<Exponent, Rational> budgets;
            for (const auto& [e, c] : p_plane.terms()) budgets[e] = eps;
            OddHookBlock g1 = hook_odd_terms(f.homogeneous_part(2 * m + 1), budgets);
            for (auto& s : g1.squares) out.squares.push_back(std::move(s));
            {
                Polynomial tail_block = g1.excess + diagonal_poly(n, 2 * m + 2, pad / 4);
                auto sq = exact_sos_squares(build_gram_problem(tail_block, BasisMode::newton_half));
                if (!sq) return std::nullopt;
                append_squares(out, *sq);
            }

            // Layers k = m+2..t: odd slice 2k-1 hooked on its own split
            // points, plus two diagonal closures per layer.
            for (long k = m + 2; k <= t_deg; ++k) {
                Polynomial odd = f.homogeneous_part(2 * k - 1);
                std::map<Exponent, Rational> layer_budgets;
                Polynomial beta_sum(n);
                for (const auto& [alpha, c] : odd.terms()) {
                    Exponent beta = split_odd_exponent(alpha).beta;
                    layer_budgets[beta] += 1;
                    beta_sum.add_term(beta, 1);
                }
                OddHookBlock gk = hook_odd_terms(odd, layer_budgets);
                for (auto& s : gk.squares) out.squares.push_back(std::move(s));
                {
                    Polynomial tail_block = gk.excess + diagonal_poly(n, 2 * k, pad / 4);
                    auto sq =
                        exact_sos_squares(build_gram_problem(tail_block, BasisMode::newton_half));
                    if (!sq) return std::nullopt;
                    append_squares(out, *sq);
                }
                {
                    Polynomial comp = diagonal_poly(n, 2 * k - 2, pad / 4) - beta_sum;
                    auto sq =
                        exact_sos_squares(build_gram_problem(comp, BasisMode::newton_half));
                    if (!sq) return std::nullopt;
                    append_squares(out, *sq);
                }
            }

            // Even slices with half the pad, k = m+1..t.
            for (long k = m + 1; k <= t_deg; ++k) {
                Polynomial block =
                    f.homogeneous_part(2 * k) + diagonal_poly(n, 2 * k, pad / 2);
                auto sq = exact_sos_squares(build_gram_problem(block, BasisMode::newton_half));
                if (!sq) return std::nullopt;
                append_squares(out, *sq);
            }
            // Final quarter pad at the top degree.
            for (std::size_t i = 0; i < n; ++i) {
                Exponent e(n);
                e[i] = static_cast<int>(t_deg);
                out.squares.emplace_back(pad / 4, Polynomial::monomial(e, Rational(1)));
            }
        } catch (const CertificateError&) {
            return std::nullopt;
        }

        if (!verify_certificate(out)) return std::nullopt;
        return out;
    };

    Rational pad(1);
    for (int attempt = 0; attempt < 24; ++attempt) {
        auto out = assemble(pad);
        if (out) return std::move(*out);
        pad *= 2;
    }
    throw CertificateError("diagonal pad search failed for " + plain(f));
}

namespace {

struct BadMonomial {
    Exponent alpha;
    Rational coeff;
    std::size_t face_index;
    BconvWitness witness;
};

}  // namespace

LocalSosCertificate sufficiency_certificate(const Polynomial& f) {
    const std::size_t n = f.nvars();
    if (f.is_zero()) throw std::invalid_argument("certificate of the zero polynomial");
    if (f.coeff(Exponent(n)) != 0) throw CertificateError("nonzero constant term");

    NewtonComplex complex = newton_diagram(f);
    for (const auto& v : complex.vertices()) {
        if (!v.is_even())
            throw CertificateError("odd diagram vertex " + v.str());
        if (f.coeff(v) <= 0)
            throw CertificateError("nonpositive coefficient at diagram vertex " + v.str());
    }

    std::vector<std::size_t> maximal = complex.maximal_faces();
    std::vector<Polynomial> face_polys;
    std::vector<NewtonComplex> face_hulls;
    std::vector<EvenRegion> face_regions;
    std::set<Exponent> diagram_support;
    for (std::size_t idx : maximal) {
        const Face& face = complex.faces()[idx];
        Polynomial fg = face_restriction(f, complex, face);
        for (const auto& e : face.lattice_points) diagram_support.insert(e);
        face_hulls.push_back(newton_diagram(fg));
        face_regions.push_back(even_region(fg));
        face_polys.push_back(std::move(fg));
    }
    // Non-maximal faces only contribute points already on maximal ones.
    for (const auto& face : complex.faces())
        for (const auto& e : face.lattice_points) diagram_support.insert(e);

    LocalSosCertificate cert;
    cert.target = f;

    // Off-diagram terms: even positives are plain squares, the rest need a
    // face whose hull contains them and a bconv witness.
    std::vector<BadMonomial> bads;
    for (const auto& [alpha, c] : f.terms()) {
        if (diagram_support.count(alpha)) continue;
        if (alpha.is_even() && c > 0) {
            cert.squares.emplace_back(c, monomial_square_root(alpha));
            continue;
        }
        bool placed = false;
        for (std::size_t fi = 0; fi < maximal.size() && !placed; ++fi) {
            if (!face_hulls[fi].polyhedron_contains(alpha)) continue;
            auto res = bconv_member(alpha, face_regions[fi]);
            if (res.status != BconvStatus::member) continue;
            bads.push_back(BadMonomial{alpha, c, fi, std::move(*res.witness)});
            placed = true;
        }
        if (!placed)
            throw CertificateError("no bconv witness for off-diagram monomial " + alpha.str());
    }

    std::vector<std::size_t> bad_count(maximal.size(), 0);
    for (const auto& b : bads) bad_count[b.face_index] += 1;

    // Multiplicity of each diagram point over the maximal faces and the
    // number of faces that consume an eps share at that point.
    std::map<Exponent, long> multiplicity, consuming;
    for (std::size_t fi = 0; fi < maximal.size(); ++fi) {
        const Face& face = complex.faces()[maximal[fi]];
        for (const auto& e : face.lattice_points) {
            multiplicity[e] += 1;
            if (bad_count[fi] > 0) consuming[e] += 1;
        }
    }

    Rational eps(1, 2);
    for (int attempt = 0;; ++attempt) {
        if (attempt > 10) throw CertificateError("face block extraction kept failing");
        LocalSosCertificate trial = cert;
        bool ok = true;
        try {
            for (const auto& b : bads) {
                const Face& face = complex.faces()[maximal[b.face_index]];
                Polynomial scaled =
                    face_polys[b.face_index] * (eps / static_cast<long>(bad_count[b.face_index]));
                LocalSosCertificate block = face_monomial_certificate(
                    scaled, complex, face, b.coeff, b.alpha, &b.witness);
                for (auto& s : block.squares) trial.squares.push_back(std::move(s));
                for (auto& r : block.unit_residuals)
                    trial.unit_residuals.push_back(std::move(r));
            }
            // Remainder: diagram terms scaled by (1 - eps * consuming),
            // partitioned across maximal faces by multiplicity.
            for (std::size_t fi = 0; fi < maximal.size(); ++fi) {
                const Face& face = complex.faces()[maximal[fi]];
                Polynomial part(n);
                for (const auto& e : face.lattice_points) {
                    Rational w = (1 - eps * consuming[e]);
                    part.add_term(e, f.coeff(e) * w / multiplicity[e]);
                }
                if (part.is_zero()) continue;
                auto sq = exact_sos_squares(
                    build_gram_problem(part, BasisMode::face, &complex, &face));
                if (!sq) {
                    ok = false;
                    break;
                }
                append_squares(trial, *sq);
            }
        } catch (const CertificateError&) {
            ok = false;
        }
        if (ok && verify_certificate(trial)) {
            trial.metadata["eps"] = rat_str(eps);
            return trial;
        }
        eps /= 2;
    }
}

LocalSosCertificate bounded_degree_certificate(const Polynomial& f) {
    const std::size_t n = f.nvars();
    if (f.is_zero()) throw std::invalid_argument("certificate of the zero polynomial");
    NewtonComplex complex = newton_diagram(f);
    if (!complex.meets_all_axes())
        throw CertificateError("diagram does not meet all coordinate axes");
    const long d = complex.diagram_degree();
    if (d % 2 != 0) throw CertificateError("diagram degree is odd");

    Polynomial f0 = f.truncate_degree(d + 1);
    Polynomial tail = f - f0;
    if (tail.is_zero()) return sufficiency_certificate(f);

    // Even points of the whole diagram.
    std::set<Exponent> even_points;
    for (std::size_t idx : complex.maximal_faces())
        for (const auto& e : complex.face_integer_points(complex.faces()[idx]))
            if (e.is_even()) even_points.insert(e);
    Polynomial p_diagram(n);
    for (const auto& e : even_points) p_diagram.add_term(e, Rational(1));
    if (p_diagram.is_zero()) throw CertificateError("diagram carries no even point");

    // Axis intercepts of the diagram (vertices, hence even).
    std::vector<long> axis_deg(n, -1);
    for (const auto& e : even_points) {
        for (std::size_t i = 0; i < n; ++i) {
            bool axis = e[i] > 0;
            for (std::size_t j = 0; j < n && axis; ++j)
                if (j != i && e[j] != 0) axis = false;
            if (axis && (axis_deg[i] < 0 || e[i] < axis_deg[i])) axis_deg[i] = e[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (axis_deg[i] < 0)
            throw CertificateError("no even diagram point on a coordinate axis");

    Rational eps(1, 2);
    for (const auto& v : complex.vertices()) eps = std::min(eps, Rational(f.coeff(v) / 2));

    for (int attempt = 0;; ++attempt) {
        if (attempt > 10) throw CertificateError("truncation split kept failing");
        try {
            LocalSosCertificate inner = sufficiency_certificate(f0 - p_diagram * eps);

            // The top block's pad must make its lowest part interior.
            Rational pad(1);
            for (int pad_try = 0;; ++pad_try) {
                if (pad_try > 24) throw CertificateError("tail pad search failed");
                Polynomial top = tail + diagonal_poly(n, d + 2, pad);
                LocalSosCertificate top_cert;
                try {
                    top_cert = lowest_part_certificate(top);
                } catch (const CertificateError&) {
                    pad *= 2;
                    continue;
                }

                LocalSosCertificate out;
                out.target = f;
                out.metadata["eps"] = rat_str(eps);
                out.metadata["pad"] = rat_str(pad);
                for (auto& s : inner.squares) out.squares.push_back(std::move(s));
                for (auto& r : inner.unit_residuals) out.unit_residuals.push_back(std::move(r));
                // eps * p_diagram - pad * sum x_i^{d+2} as axis units plus squares.
                for (std::size_t i = 0; i < n; ++i) {
                    Exponent corner(n);
                    corner[i] = static_cast<int>(axis_deg[i]);
                    UnitResidual r;
                    r.square_base = corner;
                    r.constant = eps;
                    Exponent rest(n);
                    rest[i] = static_cast<int>(d + 2 - axis_deg[i]);
                    r.tail = Polynomial::monomial(rest, pad);
                    out.unit_residuals.push_back(std::move(r));
                }
                for (const auto& e : even_points) {
                    bool used_axis = false;
                    for (std::size_t i = 0; i < n; ++i) {
                        bool axis = e[i] == axis_deg[i];
                        for (std::size_t j = 0; j < n && axis; ++j)
                            if (j != i && e[j] != 0) axis = false;
                        if (axis && e[i] > 0) used_axis = true;
                    }
                    if (!used_axis) out.squares.emplace_back(eps, monomial_square_root(e));
                }
                for (auto& s : top_cert.squares) out.squares.push_back(std::move(s));
                for (auto& r : top_cert.unit_residuals)
                    out.unit_residuals.push_back(std::move(r));
                if (!verify_certificate(out))
                    throw std::logic_error("assembled truncation certificate has a defect: " +
                                           plain(certificate_defect(out)));
                return out;
            }
        } catch (const CertificateError&) {
            eps /= 2;
        }
    }
}

}  // namespace ndsos

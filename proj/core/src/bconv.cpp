#include "ndsos/bconv.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace ndsos {

namespace {

// Even region points within the componentwise box [0, bound], graded-lex.
std::vector<Exponent> even_candidates(const EvenRegion& region, const Exponent& bound) {
    const std::size_t n = bound.nvars();
    std::vector<Exponent> out;
    Exponent cur(n);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            if (region.contains(cur)) out.push_back(cur);
            return;
        }
        for (int v = 0; v <= bound[i]; v += 2) {
            cur[i] = v;
            rec(i + 1);
        }
        cur[i] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
        long da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a < b;
    });
    return out;
}

struct Search {
    const EvenRegion& region;
    const NewtonComplex* hull;  // conv(Delta_E); null when the region holds 0
    std::map<std::pair<Exponent, int>, bool> dead;  // (residual, depth) -> no witness
    long budget = 2000000;
    bool budget_hit = false;

    // Every residual is itself a dyadic combination of region points, so a
    // residual outside conv(Delta_E) kills the branch.
    bool plausible(const Exponent& res) const { return !hull || hull->polyhedron_contains(res); }

    bool run(const Exponent& res, int depth, std::vector<Exponent>& betas) {
        if (--budget < 0) {
            budget_hit = true;
            return false;
        }
        if (!plausible(res)) return false;
        auto key = std::make_pair(res, depth);
        if (dead.count(key)) return false;
        Exponent bound = res.doubled();
        if (depth == 1) {
            for (const auto& beta : even_candidates(region, bound)) {
                Exponent rest = bound - beta;
                if (region.contains(rest)) {
                    betas.push_back(beta);
                    betas.push_back(rest);
                    return true;
                }
            }
            dead[key] = false;
            return false;
        }
        for (const auto& beta : even_candidates(region, bound)) {
            betas.push_back(beta);
            if (run(bound - beta, depth - 1, betas)) return true;
            betas.pop_back();
        }
        dead[key] = false;
        return false;
    }
};

}  // namespace

BconvResult bconv_member(const Exponent& alpha, const EvenRegion& region, int max_depth) {
    if (alpha.nvars() != region.nvars()) throw std::invalid_argument("bconv dimension mismatch");
    if (region.empty()) return {BconvStatus::absent, std::nullopt, 0};
    if (max_depth < 0) max_depth = 1 + static_cast<int>(alpha.total_degree());
    if (max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");

    // Outside conv(Delta_E) there is no dyadic combination at any depth. A
    // zero base makes the region (and its hull) everything, so skip the test.
    bool zero_base = false;
    for (const auto& b : region.bases())
        if (b.is_zero()) zero_base = true;
    std::optional<NewtonComplex> hull;
    if (!zero_base) {
        Polynomial marker(region.nvars());
        for (const auto& b : region.bases()) marker.add_term(b, Rational(1));
        hull = newton_diagram(marker);
        if (!hull->polyhedron_contains(alpha)) return {BconvStatus::absent, std::nullopt, max_depth};
    }

    Search search{region, hull ? &*hull : nullptr, {}};
    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<Exponent> betas;
        if (search.run(alpha, depth, betas)) {
            BconvWitness w{alpha, std::move(betas), depth};
            if (!verify_witness(w, region)) throw std::logic_error("bconv witness failed verification");
            return {BconvStatus::member, std::move(w), depth};
        }
        if (search.budget_hit) break;
    }
    return {BconvStatus::depth_exhausted, std::nullopt, max_depth};
}

std::vector<Exponent> witness_tails(const BconvWitness& w) {
    const std::size_t n = w.target.nvars();
    const int big_n = w.depth;
    if (static_cast<int>(w.betas.size()) != big_n + 1 || big_n < 1)
        throw std::invalid_argument("malformed witness");
    std::vector<Exponent> tails;
    for (int np = 2; np <= big_n + 1; ++np) {
        std::vector<Rational> tail(n);
        for (std::size_t i = 0; i < n; ++i) tail[i] = Rational(w.target[i]);
        for (int k = 1; k < np; ++k) {
            Rational weight = rat_pow(Rational(1, 2), k);
            for (std::size_t i = 0; i < n; ++i) tail[i] -= weight * Rational(w.betas[k - 1][i]);
        }
        Rational scale = rat_pow(Rational(2), np - 2);
        std::vector<int> coords(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational v = tail[i] * scale;
            if (v.get_den() != 1 || v < 0)
                throw std::invalid_argument("witness tail not a nonnegative integer");
            coords[i] = static_cast<int>(v.get_num().get_si());
        }
        tails.emplace_back(std::move(coords));
    }
    return tails;
}

bool verify_witness(const BconvWitness& w, const EvenRegion& region) {
    const int big_n = w.depth;
    if (big_n < 1 || static_cast<int>(w.betas.size()) != big_n + 1) return false;
    const std::size_t n = w.target.nvars();
    for (const auto& beta : w.betas) {
        if (beta.nvars() != n || !beta.is_even()) return false;
        if (!region.contains_even_translate(beta)) return false;
    }
    std::vector<Rational> sum(n, Rational(0));
    for (int k = 1; k <= big_n; ++k) {
        Rational weight = rat_pow(Rational(1, 2), k);
        for (std::size_t i = 0; i < n; ++i) sum[i] += weight * Rational(w.betas[k - 1][i]);
    }
    Rational last = rat_pow(Rational(1, 2), big_n);
    for (std::size_t i = 0; i < n; ++i) sum[i] += last * Rational(w.betas[big_n][i]);
    for (std::size_t i = 0; i < n; ++i)
        if (sum[i] != Rational(w.target[i])) return false;
    try {
        witness_tails(w);
    } catch (const std::invalid_argument&) {
        return false;
    }
    return true;
}

}  // namespace ndsos

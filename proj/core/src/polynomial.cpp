#include "ndsos/polynomial.hpp"

#include <algorithm>

namespace ndsos {

namespace {

// Binomial coefficients up to the needed row, exact.
Rational binom(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    Rational out(1);
    for (int i = 0; i < k; ++i) {
        out *= Rational(n - i);
        out /= Rational(i + 1);
    }
    return out;
}

}  // namespace

Polynomial Polynomial::shift_to_point(const std::vector<Rational>& z) const {
    if (z.size() != nvars_) throw std::invalid_argument("shift dimension mismatch");
    Polynomial out(nvars_);
    // (x+z)^alpha expanded term by term via the binomial theorem.
    for (const auto& [alpha, c] : terms_) {
        std::vector<std::pair<Exponent, Rational>> partial{{Exponent(nvars_), c}};
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (alpha[i] == 0) continue;
            std::vector<std::pair<Exponent, Rational>> next;
            for (const auto& [e, w] : partial) {
                if (z[i] == 0) {
                    Exponent e2 = e;
                    e2[i] = alpha[i];
                    next.emplace_back(std::move(e2), w);
                    continue;
                }
                for (int k = 0; k <= alpha[i]; ++k) {
                    Exponent e2 = e;
                    e2[i] = k;
                    next.emplace_back(std::move(e2), w * binom(alpha[i], k) * rat_pow(z[i], alpha[i] - k));
                }
            }
            partial = std::move(next);
        }
        for (auto& [e, w] : partial) out.add_term(e, w);
    }
    // Dropping the constant term subtracts f(z) exactly.
    out.add_term(Exponent(nvars_), -out.coeff(Exponent(nvars_)));
    return out;
}

std::vector<std::pair<long, Polynomial>> Polynomial::weighted_components(const WeightVector& a) const {
    if (is_zero()) throw std::invalid_argument("weighted components of the zero polynomial");
    std::map<long, Polynomial> layers;
    for (const auto& [e, c] : terms_) {
        long w = a.dot(e);
        auto it = layers.find(w);
        if (it == layers.end()) it = layers.emplace(w, Polynomial(nvars_)).first;
        it->second.add_term(e, c);
    }
    std::vector<std::pair<long, Polynomial>> out;
    out.reserve(layers.size());
    for (auto& [w, p] : layers) out.emplace_back(w, std::move(p));
    return out;
}

Polynomial Polynomial::project_to_vars(const std::vector<std::size_t>& keep) const {
    Polynomial out(keep.size());
    std::vector<bool> kept(nvars_, false);
    for (std::size_t i : keep) {
        if (i >= nvars_) throw std::invalid_argument("projection variable out of range");
        kept[i] = true;
    }
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i] > 0 && !kept[i])
                throw std::invalid_argument("projection drops an occurring variable");
        std::vector<int> coords;
        coords.reserve(keep.size());
        for (std::size_t i : keep) coords.push_back(e[i]);
        out.add_term(Exponent(std::move(coords)), c);
    }
    return out;
}

Polynomial expand_combination(const std::vector<CombinationPart>& parts,
                              std::size_t nvars_if_empty) {
    if (parts.empty()) return Polynomial(nvars_if_empty);
    std::size_t n = parts.front().poly.nvars();
    Polynomial out(n);
    for (const auto& part : parts) {
        if (part.poly.nvars() != n) throw std::invalid_argument("combination dimension mismatch");
        if (part.squared)
            out = out + part.poly * part.poly * part.scale;
        else
            out = out + part.poly * part.scale;
    }
    return out;
}

}  // namespace ndsos

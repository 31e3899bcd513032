#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ndsos/exponent.hpp"
#include "ndsos/rational.hpp"

namespace ndsos {

// Sparse multivariate polynomial over the rationals, keyed by exponent
// vector. Invariants: no stored coefficient is zero, every key has length
// nvars(). Values are immutable in spirit; all operations return new
// polynomials, so instances can be shared freely across threads.
class Polynomial {
  public:
    using TermMap = std::map<Exponent, Rational>;

    Polynomial() : nvars_(0) {}
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial monomial(Exponent e, Rational c) {
        Polynomial p(e.nvars());
        if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
        return p;
    }

    static Polynomial constant(std::size_t nvars, Rational c) {
        return monomial(Exponent(nvars), std::move(c));
    }

    static Polynomial variable(std::size_t nvars, std::size_t i, int power = 1) {
        Exponent e(nvars);
        e[i] = power;
        return monomial(std::move(e), Rational(1));
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rational coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (const auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    void add_term(const Exponent& e, const Rational& c) {
        if (e.nvars() != nvars_) throw std::invalid_argument("term dimension mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    long degree() const {  // max total degree; -1 for the zero polynomial
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
        return d;
    }

    long low_degree() const {  // min total degree; -1 for the zero polynomial
        long d = -1;
        for (const auto& [e, c] : terms_)
            if (d < 0 || e.total_degree() < d) d = e.total_degree();
        return d;
    }

    bool is_homogeneous() const {
        long d = -1;
        for (const auto& [e, c] : terms_) {
            if (d < 0) d = e.total_degree();
            else if (e.total_degree() != d) return false;
        }
        return true;
    }

    Polynomial operator-() const {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
        return out;
    }

    Polynomial operator+(const Polynomial& rhs) const {
        check_dim(rhs);
        Polynomial out(*this);
        for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
        return out;
    }

    Polynomial operator-(const Polynomial& rhs) const {
        check_dim(rhs);
        Polynomial out(*this);
        for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
        return out;
    }

    Polynomial operator*(const Polynomial& rhs) const {
        check_dim(rhs);
        Polynomial out(nvars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : rhs.terms_) out.add_term(e1 + e2, c1 * c2);
        return out;
    }

    Polynomial operator*(const Rational& s) const {
        Polynomial out(nvars_);
        if (s == 0) return out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
        return out;
    }

    friend Polynomial operator*(const Rational& s, const Polynomial& p) { return p * s; }

    bool operator==(const Polynomial& rhs) const {
        return nvars_ == rhs.nvars_ && terms_ == rhs.terms_;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (point.size() != nvars_) throw std::invalid_argument("evaluation dimension mismatch");
        Rational sum(0);
        for (const auto& [e, c] : terms_) {
            Rational term = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] != 0) term *= rat_pow(point[i], e[i]);
            sum += term;
        }
        return sum;
    }

    Polynomial derivative(std::size_t var) const {
        if (var >= nvars_) throw std::invalid_argument("derivative variable out of range");
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent d = e;
            d[var] -= 1;
            out.add_term(d, c * Rational(e[var]));
        }
        return out;
    }

    // Substitutes x -> x + z and drops the constant term, i.e. returns
    // g(x) = f(x+z) - f(z); g(0) = 0 exactly.
    Polynomial shift_to_point(const std::vector<Rational>& z) const;

    // Homogeneous slice of total degree d.
    Polynomial homogeneous_part(long d) const {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_)
            if (e.total_degree() == d) out.terms_.emplace(e, c);
        return out;
    }

    // Terms with total degree <= d.
    Polynomial truncate_degree(long d) const {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_)
            if (e.total_degree() <= d) out.terms_.emplace(e, c);
        return out;
    }

    Polynomial filter(const std::function<bool(const Exponent&)>& keep) const {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_)
            if (keep(e)) out.terms_.emplace(e, c);
        return out;
    }

    // Splits f into A-weighted layers: returns (w', f_{w'}) sorted by
    // increasing weight; the components sum to f and have disjoint supports.
    std::vector<std::pair<long, Polynomial>> weighted_components(const WeightVector& a) const;

    // Kills variables not listed, failing if any dropped variable occurs.
    // Used to restrict a remainder to its appearing variables.
    Polynomial project_to_vars(const std::vector<std::size_t>& keep) const;

    // Indices of variables that actually occur.
    std::vector<std::size_t> appearing_vars() const {
        std::vector<bool> seen(nvars_, false);
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] > 0) seen[i] = true;
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (seen[i]) out.push_back(i);
        return out;
    }

  private:
    void check_dim(const Polynomial& rhs) const {
        if (nvars_ != rhs.nvars_) throw std::invalid_argument("polynomial dimension mismatch");
    }

    std::size_t nvars_;
    TermMap terms_;
};

// One summand of a certificate-style combination: c * p^2 when squared,
// otherwise c * p.
struct CombinationPart {
    Rational scale;
    Polynomial poly;
    bool squared = true;
};

// Expands sum(c_i * p_i^2) + sum(c_j * p_j) exactly. nvars_if_empty fixes the
// dimension of the empty sum.
Polynomial expand_combination(const std::vector<CombinationPart>& parts,
                              std::size_t nvars_if_empty = 0);

}  // namespace ndsos

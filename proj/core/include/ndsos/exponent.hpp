#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndsos {

// Exponent vector of a monomial: nonnegative machine integers. Degrees in
// scope are small, so int32 with checked addition is plenty.
class Exponent {
  public:
    Exponent() = default;
    explicit Exponent(std::size_t nvars) : c_(nvars, 0) {}
    explicit Exponent(std::vector<int> coords) : c_(std::move(coords)) {
        for (int v : c_)
            if (v < 0) throw std::invalid_argument("negative exponent");
    }

    std::size_t nvars() const { return c_.size(); }
    int operator[](std::size_t i) const { return c_[i]; }
    int& operator[](std::size_t i) { return c_[i]; }
    const std::vector<int>& coords() const { return c_; }

    long total_degree() const {
        long s = 0;
        for (int v : c_) s += v;
        return s;
    }

    bool is_even() const {
        for (int v : c_)
            if (v % 2 != 0) return false;
        return true;
    }

    bool is_zero() const {
        for (int v : c_)
            if (v != 0) return false;
        return true;
    }

    // Componentwise domination: *this >= other in every coordinate.
    bool dominates(const Exponent& other) const {
        check_dim(other);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] < other.c_[i]) return false;
        return true;
    }

    Exponent operator+(const Exponent& other) const {
        check_dim(other);
        Exponent out(*this);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            long s = static_cast<long>(out.c_[i]) + other.c_[i];
            if (s > (1L << 30)) throw std::overflow_error("exponent overflow");
            out.c_[i] = static_cast<int>(s);
        }
        return out;
    }

    // Requires *this >= other componentwise.
    Exponent operator-(const Exponent& other) const {
        check_dim(other);
        Exponent out(*this);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            out.c_[i] -= other.c_[i];
            if (out.c_[i] < 0) throw std::invalid_argument("exponent subtraction went negative");
        }
        return out;
    }

    Exponent doubled() const {
        Exponent out(*this);
        for (auto& v : out.c_) {
            if (v > (1 << 29)) throw std::overflow_error("exponent overflow");
            v *= 2;
        }
        return out;
    }

    // Requires every coordinate even.
    Exponent halved() const {
        Exponent out(*this);
        for (auto& v : out.c_) {
            if (v % 2 != 0) throw std::invalid_argument("halving an odd exponent");
            v /= 2;
        }
        return out;
    }

    auto operator<=>(const Exponent&) const = default;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(c_[i]);
        }
        return s + ")";
    }

  private:
    void check_dim(const Exponent& other) const {
        if (c_.size() != other.c_.size()) throw std::invalid_argument("exponent dimension mismatch");
    }

    std::vector<int> c_;
};

// Integer supporting-hyperplane data (A, v): A in Z_+^n \ {0}, and when
// attached to a polynomial f, v = min{A.alpha : alpha in supp f}.
struct WeightVector {
    std::vector<long> weights;
    long offset = 0;

    long dot(const Exponent& e) const {
        if (weights.size() != e.nvars()) throw std::invalid_argument("weight dimension mismatch");
        long s = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * e[i];
        return s;
    }

    bool strictly_positive() const {
        for (long w : weights)
            if (w <= 0) return false;
        return !weights.empty();
    }
};

}  // namespace ndsos

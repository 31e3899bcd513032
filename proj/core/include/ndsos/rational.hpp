#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ndsos {

// Exact arbitrary-precision rational. All core arithmetic is exact; doubles
// appear only inside the numerical SOS oracle.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p" or "p/q" with optional sign.
inline Rational rat_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// q^e for machine-size exponents, e may be negative when q != 0.
inline Rational rat_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0 && e < 0) throw std::invalid_argument("zero to negative power");
    Rational base = e < 0 ? Rational(1 / q) : q;
    unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), n);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), n);
    out.canonicalize();
    return out;
}

// Nearest rational with denominator 2^bits; used when rounding numeric Gram
// matrices back into exact arithmetic.
inline Rational rat_round_dyadic(double x, int bits = 32) {
    if (bits < 0 || bits > 62) throw std::invalid_argument("bad dyadic precision");
    Rational scale = rat_pow(Rational(2), bits);
    double scaled = x * to_double(scale);
    mpz_class num;
    mpf_class tmp(scaled, 128);
    mpz_set_f(num.get_mpz_t(), mpf_class(tmp + (scaled >= 0 ? 0.5 : -0.5)).get_mpf_t());
    Rational out(num, scale.get_num());
    out.canonicalize();
    return out;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

}  // namespace ndsos

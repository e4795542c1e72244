#pragma once

#include <gmpxx.h>

#include <string>

namespace kharmonic {

// Exact rational scalar. All certified computations (polynomial coefficients,
// Sturm sequences, interval endpoints, invariant cross-checks) run on this
// type; doubles appear only at reporting boundaries.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Every finite double is a dyadic rational, so this conversion is exact.
inline Rational rat_from_double(double x) { return Rational(x); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline int sign(const Rational& r) { return sgn(r); }

inline Rational abs_rat(const Rational& r) { return abs(r); }

// base^e for e >= 0 (exact).
inline Rational pow_rat(const Rational& base, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return out;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

}  // namespace kharmonic

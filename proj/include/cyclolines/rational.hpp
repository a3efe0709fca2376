#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyclolines {

/// Exact arbitrary-precision rational, the coefficient type of every exact
/// scalar in this library.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool fits_int64(const BigInt& z) {
    return z.fits_slong_p() || (sizeof(long) == 8 && z.fits_slong_p());
}

/// Narrow to int64, throwing if precision would be lost.  JSON output uses
/// this: coefficients of every construction shipped here are tiny, but a
/// silent overflow would corrupt a certificate.
inline std::int64_t to_int64(const BigInt& z) {
    if (!z.fits_slong_p())
        throw std::overflow_error("integer exceeds 64-bit JSON range: " + z.get_str());
    return static_cast<std::int64_t>(z.get_si());
}

inline std::string to_string(const Rational& r) {
    return r.get_str();
}

}  // namespace cyclolines

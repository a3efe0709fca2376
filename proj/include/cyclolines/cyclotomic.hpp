#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclolines/rational.hpp"

namespace cyclolines {

/// Exact element of the cyclotomic field Q(zeta_n).
///
/// A value is stored as its order n together with phi(n) rational
/// coordinates in the power basis {zeta_n^0, ..., zeta_n^{phi(n)-1}},
/// reduced modulo the n-th cyclotomic polynomial.  Two values compare
/// equal iff they have identical coordinates after promotion to the least
/// common order.  Values are immutable and safe to share across threads.
class Cyclotomic {
public:
    /// Zero, represented in Q(zeta_1) = Q.
    Cyclotomic();
    Cyclotomic(long value);  // NOLINT(google-explicit-constructor): rationals embed
    Cyclotomic(const Rational& value);  // NOLINT(google-explicit-constructor)

    /// zeta_n^k in canonical form; the result has multiplicative order
    /// n / gcd(n, k).  Rejects n < 1.
    static Cyclotomic root_of_unity(int n, long k);

    /// Exact square root of a nonnegative integer, assembled from quadratic
    /// Gauss sums: sqrt(2) = zeta_8 + zeta_8^-1 and, for odd primes p,
    /// sum_x zeta_p^{x^2} which equals sqrt(p) or i*sqrt(p) by p mod 4.
    static Cyclotomic sqrt_of_integer(long m);

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    /// True iff all coordinates above the constant term vanish.
    bool is_rational() const;
    Rational rational_value() const;  // throws unless is_rational()

    Cyclotomic conjugate() const;  // zeta_n -> zeta_n^{n-1}, then reduce
    Cyclotomic abs_squared() const { return *this * conjugate(); }
    Cyclotomic inverse() const;  // throws on zero

    /// Re-express in Q(zeta_m).  Promotion (order() | m) always succeeds;
    /// otherwise the value must already lie in the subfield Q(zeta_m).
    Cyclotomic to_order(int m) const;
    std::optional<Cyclotomic> try_to_order(int m) const;

    /// Numeric evaluation at zeta_n = exp(2*pi*i/n).
    std::complex<double> to_float() const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& rhs);
    Cyclotomic& operator-=(const Cyclotomic& rhs);
    Cyclotomic& operator*=(const Cyclotomic& rhs);
    Cyclotomic& operator/=(const Cyclotomic& rhs);

    friend Cyclotomic operator+(Cyclotomic lhs, const Cyclotomic& rhs) { return lhs += rhs; }
    friend Cyclotomic operator-(Cyclotomic lhs, const Cyclotomic& rhs) { return lhs -= rhs; }
    friend Cyclotomic operator*(Cyclotomic lhs, const Cyclotomic& rhs) { return lhs *= rhs; }
    friend Cyclotomic operator/(Cyclotomic lhs, const Cyclotomic& rhs) { return lhs /= rhs; }

    friend bool operator==(const Cyclotomic& lhs, const Cyclotomic& rhs);
    friend bool operator!=(const Cyclotomic& lhs, const Cyclotomic& rhs) { return !(lhs == rhs); }

    /// Human-readable form, e.g. "1/2 + 3*z8^2" with z8 = zeta_8.
    std::string to_string() const;

    /// Deterministic key of the coordinates at a fixed order; used for
    /// hashing collections of scalars that share a common order.
    std::string key_at_order(int m) const;

    /// Promotion cap for mixed-order arithmetic (default 4096).
    static int max_order();
    static void set_max_order(int cap);

private:
    Cyclotomic(int order, std::vector<Rational> reduced);

    int order_;
    std::vector<Rational> coeffs_;  // size phi(order_), reduced mod Phi_n
};

/// n-th cyclotomic polynomial over Z, low-degree first, monic, cached.
const std::vector<BigInt>& cyclotomic_polynomial(int n);

int euler_phi(int n);

// Free-function spellings used by generic code and by Eigen (via ADL).
inline Cyclotomic conj(const Cyclotomic& x) { return x.conjugate(); }
inline Cyclotomic abs2(const Cyclotomic& x) { return x.abs_squared(); }
Cyclotomic real(const Cyclotomic& x);
Cyclotomic imag(const Cyclotomic& x);

inline Cyclotomic root_of_unity(int n, long k) { return Cyclotomic::root_of_unity(n, k); }
inline Cyclotomic abs_squared(const Cyclotomic& x) { return x.abs_squared(); }
inline std::complex<double> to_float(const Cyclotomic& x) { return x.to_float(); }

}  // namespace cyclolines

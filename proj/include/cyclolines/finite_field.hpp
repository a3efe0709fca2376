#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cyclolines {

bool is_prime(std::int64_t n);
bool is_prime_power(std::int64_t q, int* p_out = nullptr, int* n_out = nullptr);

/// GF(p^n) with elements packed as base-p digit strings in [0, p^n).
///
/// The modulus is the first primitive monic polynomial of degree n in
/// ascending packed order, so every field built for given (p, n) is
/// identical across runs.  Multiplication runs on log/antilog tables over
/// the stored primitive element; the trace table is precomputed.
class FiniteField {
public:
    static FiniteField make(int p, int n);

    int characteristic() const { return p_; }
    int degree() const { return n_; }
    std::int64_t order() const { return q_; }
    /// Modulus coefficients c_0..c_n, low degree first, c_n = 1.
    const std::vector<int>& modulus() const { return modulus_; }

    int zero() const { return 0; }
    int one() const { return 1; }
    /// The stored generator of the multiplicative group (class of x).
    int primitive_element() const { return alpha_to_[1 % (q_ - 1)]; }

    int add(int a, int b) const;
    int neg(int a) const;
    int sub(int a, int b) const { return add(a, neg(b)); }
    int mul(int a, int b) const;
    int inv(int a) const;
    int pow(int a, std::int64_t e) const;
    int frobenius(int a) const { return pow_p(a, 1); }
    /// a^(p^i)
    int pow_p(int a, int iterations) const;
    /// Absolute trace to GF(p), a value in [0, p).
    int trace(int a) const { return trace_[static_cast<std::size_t>(a)]; }
    /// Relative trace onto the subfield GF(p^m); m must divide n.  The
    /// result is returned as an element of this field.
    int relative_trace(int a, int m) const;

    /// Scalar multiple by c in GF(p).
    int scalar_mul(int c, int a) const;
    /// Digits of a, length n, over GF(p).
    std::vector<int> coords(int a) const;
    int from_coords(const std::vector<int>& digits) const;

    /// Discrete log w.r.t. the primitive element; a must be nonzero.
    std::int64_t log(int a) const;
    int exp(std::int64_t e) const { return alpha_to_[static_cast<std::size_t>(((e % (q_ - 1)) + (q_ - 1)) % (q_ - 1))]; }

    std::string describe() const;

    static std::int64_t order_cap();
    static void set_order_cap(std::int64_t cap);

private:
    FiniteField() = default;

    int p_ = 0;
    int n_ = 0;
    std::int64_t q_ = 0;
    std::vector<int> modulus_;
    std::vector<int> alpha_to_;   // size q-1
    std::vector<std::int64_t> index_of_;  // size q, -1 for 0
    std::vector<int> trace_;      // size q
};

}  // namespace cyclolines

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cyclolines/finite_field.hpp"

namespace cyclolines {

/// The Galois ring GR(4^n) = Z4[x]/(h), h the Hensel lift of the first
/// primitive binary polynomial of degree n.  Elements are packed base-4
/// digit strings.  The Teichmuller set T = {0} u {xi^j} is enumerated at
/// construction together with the x + 2y decomposition table, the Frobenius
/// and the trace to Z4.
class GaloisRing {
public:
    static GaloisRing make(int n);

    int degree() const { return n_; }
    std::int64_t size() const { return size_; }     // 4^n
    std::int64_t residue_order() const { return two_n_; }  // 2^n
    const std::vector<int>& modulus() const { return h_; }

    int zero() const { return 0; }
    int one() const { return 1; }
    int xi() const;  // class of x, multiplicative order 2^n - 1

    int add(int a, int b) const;
    int neg(int a) const;
    int sub(int a, int b) const { return add(a, neg(b)); }
    int mul(int a, int b) const;
    int pow(int a, std::int64_t e) const;
    int scalar_mul(int c, int a) const;  // c in Z4

    /// Teichmuller set in fixed order: [0, 1, xi, xi^2, ...].
    const std::vector<int>& teichmuller() const { return teich_; }
    bool in_teichmuller(int a) const;
    /// Unique decomposition a = x + 2y with x, y in T.
    std::pair<int, int> decompose(int a) const;
    /// Unique b in T with b*b = a; input must be in T.
    int teich_sqrt(int a) const;
    /// The Teichmuller representative congruent to the GF(2^n) element
    /// (packed bits) mod 2.
    int teich_lift(int field_element) const;
    /// Reduction mod 2 as a packed GF(2^n) element.
    int mod2(int a) const;

    /// Frobenius: (x + 2y) -> x^2 + 2y^2 for x, y in T.
    int frobenius(int a) const;
    /// Ring trace sum of Frobenius iterates; a value in Z4.
    int trace(int a) const { return trace_[static_cast<std::size_t>(a)]; }

    std::string describe() const;

private:
    GaloisRing() = default;

    std::vector<int> digits(int a) const;

    int n_ = 0;
    std::int64_t size_ = 0;
    std::int64_t two_n_ = 0;
    std::vector<int> h_;            // coefficients over Z4, low first, monic
    std::vector<int> teich_;        // size 2^n
    std::vector<int> teich_index_;  // size 4^n, -1 if not in T
    std::vector<int> lift_;         // GF(2^n) packed -> T element
    std::vector<int> trace_;        // size 4^n, values in Z4
};

}  // namespace cyclolines

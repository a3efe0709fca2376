#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclolines/finite_field.hpp"

namespace cyclolines {

/// A finite commutative semifield: an abelian additive group with a
/// distributive, zero-divisor-free commutative multiplication and identity.
/// Operations are table-backed, so semifields stay at desk scale (order cap
/// default 512; Dickson of order 81 is the stress instance).
class Semifield {
public:
    enum class Kind { Field, Dickson, Custom };

    static Semifield from_field(const FiniteField& F);
    /// Dickson double of GF(q0): (a,b)*(c,d) = (ac + j*(bd)^sigma, ad + bc)
    /// with sigma the p^sigma_power Frobenius (default p) and j the first
    /// nonsquare.  Requires q0 odd and sigma nontrivial.
    static Semifield dickson(std::int64_t q0, int sigma_power = 1,
                             std::optional<int> nonsquare = std::nullopt);
    /// Arbitrary tables, for negative tests; axioms are NOT assumed.
    static Semifield from_tables(int p, int dim, std::vector<int> add_table,
                                 std::vector<int> mul_table, std::string name);

    Kind kind() const { return kind_; }
    std::int64_t order() const { return q_; }
    int characteristic() const { return p_; }
    int dim() const { return dim_; }  // q = p^dim
    const std::string& name() const { return name_; }

    int zero() const { return 0; }
    int one() const { return one_; }
    int add(int a, int b) const { return add_[idx(a, b)]; }
    int mul(int a, int b) const { return mul_[idx(a, b)]; }
    int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
    int sub(int a, int b) const { return add(a, neg(b)); }

    /// Coordinates over GF(p), length dim().
    std::vector<int> coords(int a) const;
    int from_coords(const std::vector<int>& digits) const;

    /// First witness (a, b, c) with (a*b)*c != a*(b*c), if any.
    std::optional<std::array<int, 3>> nonassociativity_witness() const;

    static std::int64_t order_cap();
    static void set_order_cap(std::int64_t cap);

private:
    Semifield() = default;
    std::size_t idx(int a, int b) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + static_cast<std::size_t>(b);
    }

    Kind kind_ = Kind::Custom;
    std::int64_t q_ = 0;
    int p_ = 0;
    int dim_ = 0;
    int one_ = 1;
    std::string name_;
    std::vector<int> add_, mul_, neg_;
};

/// Outcome of the exhaustive semifield axiom check.  `ok` iff all four
/// axioms plus commutativity hold; the first counterexample is recorded.
struct SemifieldReport {
    bool additive_group = false;
    bool no_zero_divisors = false;
    bool distributive = false;
    bool has_identity = false;
    bool commutative = false;
    bool ok = false;
    std::string failure;  // empty when ok
};

SemifieldReport semifield_verify(const Semifield& E);

/// Exhaustive affine-plane check over AG(2,E): the translations T_{a,b} and
/// shears S_{u,v} preserve incidence, and H_{u,b} = T_{u,b} S_{u,0} obeys
/// H_{u,b} H_{v,d} = H_{u+v, b+d+u*v}.
struct AffinePlaneReport {
    bool translations_ok = false;
    bool shears_ok = false;
    bool hughes_product_ok = false;
    bool ok = false;
    std::string failure;
};

AffinePlaneReport affine_plane_check(const Semifield& E, std::int64_t cap = 32);

/// The rank-n free Z4-module over an even-order semifield, with basis the
/// lifts of the GF(2)-coordinate basis and multiplication extended linearly
/// from e_i * e_j = lift(e_i o e_j).  Carries the coordinatewise scalar product
/// into Z4.  Module elements are packed base-4 digit strings of length n.
class Z4ModuleEmbedding {
public:
    explicit Z4ModuleEmbedding(const Semifield& E);

    int rank() const { return n_; }
    std::int64_t size() const { return std::int64_t{1} << (2 * n_); }

    int hat(int semifield_element) const;  // coordinatewise lift, digits in {0,1}
    int add(int u, int v) const;
    int neg(int u) const;
    int scalar_mul(int c, int u) const;
    int mul(int u, int v) const;
    int square(int u) const { return mul(u, u); }
    /// sum_i u_i v_i mod 4
    int scalar_product(int u, int v) const;

private:
    std::vector<int> digits(int u) const;

    const Semifield* E_;
    int n_ = 0;
    std::vector<int> basis_products_;  // n*n lifted products e_i o e_j
};

}  // namespace cyclolines

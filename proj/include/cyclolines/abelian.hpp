#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyclolines/cyclotomic.hpp"
#include "cyclolines/semifield.hpp"

namespace cyclolines {

/// A finite abelian group with an explicitly labelled character group.
/// Elements and character labels are indices in [0, order); index 0 is the
/// identity and label 0 the trivial character.  Every character takes
/// values in the group of N-th roots of unity, N = character_root_order():
/// chi_label(g) = zeta_N ^ character_exponent(label, g).
class AbelianGroup {
public:
    virtual ~AbelianGroup() = default;

    virtual std::int64_t order() const = 0;
    virtual int op(int a, int b) const = 0;
    virtual int inverse(int a) const = 0;
    int identity() const { return 0; }

    virtual int character_root_order() const = 0;
    virtual int character_exponent(int label, int g) const = 0;

    /// A generating set; multiplicativity checks only need these.
    virtual std::vector<int> generators() const = 0;
    virtual std::string element_name(int g) const;
    virtual std::string describe() const = 0;

    bool is_subgroup(const std::vector<int>& subset) const;
};

/// Exhaustive group-axiom check (associativity, commutativity, identity,
/// inverses) for |G| <= cap; beyond the cap associativity is checked on all
/// (g, h, generator) triples, which generators propagate to every triple.
/// Throws std::logic_error with the first counterexample.
void verify_group_axioms(const AbelianGroup& G, std::int64_t full_cap = 128);

/// Z_{d1} x ... x Z_{dr} with mixed-radix element and label encoding.
class ProductGroup final : public AbelianGroup {
public:
    explicit ProductGroup(std::vector<int> moduli);
    static ProductGroup cyclic(int n) { return ProductGroup({n}); }

    std::int64_t order() const override { return order_; }
    int op(int a, int b) const override;
    int inverse(int a) const override;
    int character_root_order() const override { return root_order_; }
    int character_exponent(int label, int g) const override;
    std::vector<int> generators() const override;
    std::string element_name(int g) const override;
    std::string describe() const override;

    const std::vector<int>& moduli() const { return moduli_; }
    std::vector<int> tuple(int g) const;
    int from_tuple(const std::vector<int>& t) const;

private:
    std::vector<int> moduli_;
    std::int64_t order_;
    int root_order_;
};

/// The Hughes group of a commutative semifield E: pairs (u, b) with
/// H_{u,b} H_{v,d} = H_{u+v, b+d+u o v}, encoded as u + q*b.  Characters are
/// the explicit semifield characters: for odd q the exponent of omega = zeta_p
/// is <2a, x> + <b, 2y - x o x>; for even q the exponent of i = zeta_4 is the
/// analogous expression evaluated in the rank-n Z4 module lifted from E.
class HughesGroup final : public AbelianGroup {
public:
    explicit HughesGroup(Semifield E);

    std::int64_t order() const override { return q_ * q_; }
    int op(int a, int b) const override;
    int inverse(int a) const override;
    int character_root_order() const override { return root_order_; }
    int character_exponent(int label, int g) const override;
    std::vector<int> generators() const override;
    std::string element_name(int g) const override;
    std::string describe() const override;

    const Semifield& semifield() const { return E_; }
    int encode(int u, int b) const { return static_cast<int>(u + q_ * b); }
    std::pair<int, int> decode(int g) const { return {static_cast<int>(g % q_), static_cast<int>(g / q_)}; }

    /// The forbidden subgroup N = {H_{0,y}} of the canonical relative
    /// difference sets, in canonical element order.
    std::vector<int> forbidden_subgroup() const;
    /// The relative difference set H_0 = {H_{u,0}}.
    std::vector<int> h0() const;

private:
    Semifield E_;
    std::int64_t q_;
    int root_order_;
    int dim_;
    // per element: coords(x) and coords(2y - x o x) over GF(p) (odd) or the
    // packed module vectors hat(x) and 2*hat(y) - hat(x)^2 (even)
    std::vector<std::vector<int>> elem_x_;
    std::vector<std::vector<int>> elem_m_;
    std::vector<int> elem_x_packed_, elem_m_packed_;
    std::unique_ptr<Z4ModuleEmbedding> module_;
    // per label: coords(2a), coords(b) (odd) or packed 2*hat(a), hat(b) (even)
    std::vector<std::vector<int>> lab_a_, lab_b_;
    std::vector<int> lab_a_packed_, lab_b_packed_;
};

/// A single character; a thin view over its group.
struct Character {
    const AbelianGroup* group = nullptr;
    int label = 0;

    int exponent(int g) const { return group->character_exponent(label, g); }
    Cyclotomic value(int g) const;
    bool is_trivial() const;
    /// Exact sum over a subset, assembled from an exponent histogram.
    Cyclotomic sum_over(const std::vector<int>& subset) const;
};

/// All |G| characters, validated: multiplicative on generators against every
/// element (which forces multiplicativity everywhere), pairwise distinct,
/// and exactly |G| of them.  Throws on violation: a failure here means the
/// group arithmetic upstream is broken.
std::vector<Character> characters_of(const AbelianGroup& G);

/// Labels of the characters trivial on every element of N.
std::vector<int> annihilator_labels(const AbelianGroup& G, const std::vector<int>& N);
/// Partition of all labels by their restriction to N (cosets of the
/// annihilator).  Deterministic: classes ordered by smallest label.
std::vector<std::vector<int>> labels_by_restriction(const AbelianGroup& G,
                                                    const std::vector<int>& N);

/// Element of the integral group ring Z[G].
class GroupRingElement {
public:
    GroupRingElement(const AbelianGroup& G);
    static GroupRingElement from_subset(const AbelianGroup& G, const std::vector<int>& subset);

    std::int64_t coeff(int g) const { return coeff_[static_cast<std::size_t>(g)]; }
    std::int64_t& coeff(int g) { return coeff_[static_cast<std::size_t>(g)]; }
    const AbelianGroup& group() const { return *group_; }

    /// Coefficients transported by inversion: (S^-1)_g = S_{g^-1}.
    GroupRingElement inverted() const;
    GroupRingElement operator*(const GroupRingElement& rhs) const;  // convolution
    GroupRingElement& operator+=(const GroupRingElement& rhs);

private:
    const AbelianGroup* group_;
    std::vector<std::int64_t> coeff_;
};

struct DifferenceSetCheck {
    bool ok = false;
    std::int64_t v = 0, k = 0, lambda = 0;
    std::optional<int> witness;  // first element whose coefficient deviates
    std::string message;
};

/// Verifies D D^-1 = k 1_G + lambda (G - 1_G) in Z[G].
DifferenceSetCheck is_difference_set(const AbelianGroup& G, const std::vector<int>& D,
                                     std::int64_t v, std::int64_t k, std::int64_t lambda);

struct RelativeDifferenceSetCheck {
    bool ok = false;
    std::int64_t m = 0, n = 0, k = 0, lambda = 0;
    bool semiregular = false;
    std::optional<int> witness;
    std::string message;
};

/// Verifies D D^-1 = |D| 1_G + lambda (G - N) with lambda inferred from the
/// first element outside N; also classifies semiregularity (m = k).
RelativeDifferenceSetCheck is_relative_difference_set(const AbelianGroup& G,
                                                      const std::vector<int>& N,
                                                      const std::vector<int>& D);

/// The classical Singer (q^2+q+1, q+1, 1) difference set: residues i with
/// Tr_{GF(q^3)/GF(q)}(gamma^i) = 0 for the stored primitive gamma.
struct SingerSet {
    std::int64_t v = 0;
    std::vector<int> D;
};
SingerSet singer_difference_set(std::int64_t q);

/// Exhaustive lexicographic search for a (v, k, lambda) difference set in
/// Z_v; independent difference-counting oracle, v <= 40.
std::optional<std::vector<int>> brute_force_difference_set(int v, int k, int lambda);

/// psi(S) = sum_{g in S} psi(g), exact.
Cyclotomic character_sum_over(const Character& chi, const std::vector<int>& subset);

}  // namespace cyclolines

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cyclolines/constructions.hpp"
#include "cyclolines/finite_field.hpp"
#include "cyclolines/galois_ring.hpp"

namespace cyclolines {

/// One generalized Pauli operator D_(a,b) = X(a) Z(b): a q x q monomial
/// unitary stored as a column permutation plus per-column root-of-unity
/// phases (column u carries phase zeta^phase_exp[u] at row perm[u]).
struct PauliOperator {
    int a = 0, b = 0;
    int root_order = 1;
    std::vector<int> perm;
    std::vector<int> phase_exp;

    CycMatrix to_matrix() const;
};

/// The family of generalized Pauli operators over GF(q), odd q (phases are
/// p-th roots via the additive characters omega^tr(.)), or over the
/// Teichmuller set of GR(4^n) for q = 2^n (phases are powers of i, and the
/// shift is u -> u + a + 2 sqrt(ua)).  Labels a, b index field elements
/// (odd) or Teichmuller positions (even).
class PauliSystem {
public:
    static PauliSystem odd(FiniteField F);
    static PauliSystem even(GaloisRing R);

    bool is_even() const { return std::holds_alternative<GaloisRing>(ctx_); }
    std::int64_t q() const { return q_; }
    int root_order() const { return is_even() ? 4 : field().characteristic(); }
    const FiniteField& field() const { return std::get<FiniteField>(ctx_); }
    const GaloisRing& ring() const { return std::get<GaloisRing>(ctx_); }

    PauliOperator make(int a, int b) const;
    CycMatrix matrix(int a, int b) const { return make(a, b).to_matrix(); }

    /// b pairing with a slope: b = 2ac (odd) or b = ac (even).
    int slope_b(int a, int c) const;

    /// phi_{c,d} = sum_x zeta^tr(c x^2 + 2 d x) e_x.
    CycVector eigenvector(int c, int d) const;
    /// Columns phi_{c,d}, d in label order: the common eigenbasis of the
    /// commuting class { D_(a, slope_b(a,c)) : a }.
    CycMatrix eigenbasis(int c) const;
    /// zeta^{-tr(c a^2 + 2 d a)}.
    Cyclotomic eigenvalue(int a, int c, int d) const;

    std::vector<PauliOperator> all_operators() const;  // q^2 of them, (a,b) order
    /// The slope classes {D_(a, slope_b(a,c))}_a for each c, plus the
    /// Z-class {D_(0,b)}_b; every class contains D_(0,0) = I.
    std::vector<std::vector<std::pair<int, int>>> slope_partition() const;

    /// The q eigenbases plus the standard basis as a certified MubFamily.
    MubFamily eigenbasis_family() const;

    std::string describe() const;

private:
    explicit PauliSystem(std::variant<FiniteField, GaloisRing> ctx);

    std::variant<FiniteField, GaloisRing> ctx_;
    std::int64_t q_ = 0;
};

bool monomiality_check(const CycMatrix& M);
bool monomiality_check(const std::vector<CycMatrix>& ops);

struct NiceErrorBasisReport {
    bool ok = false;
    bool orthogonal = false;
    bool closed_mod_phase = false;
    std::int64_t classes = 0;  // distinct operators modulo scalars
    std::string failure;
};

/// Conditions for a nice error basis: pairwise trace-orthogonality
/// tr(D^dagger D') = 0 and closure up to scalars forming a group of order
/// q^2 (identity present, products stay in the set modulo a scalar).
NiceErrorBasisReport nice_error_basis_check(const std::vector<CycMatrix>& ops);

struct CommutingPartitionReport {
    bool ok = false;
    bool sizes_ok = false;       // (a) |C_i| = q including the shared identity
    bool identity_ok = false;    // (b) I in every class
    bool commuting_ok = false;   // (c) classes commute internally
    bool orthogonal_ok = false;  // (d) pairwise trace-orthogonality across C
    bool eigenbasis_ok = false;  // common eigenbasis exists and matches
    std::string failure;
};

/// Verifies the four maximal-commuting-basis conditions on label classes
/// (the identity label (0,0) is shared by all classes), then checks each
/// class is simultaneously diagonalized by the matching eigenbasis(c) or by
/// the standard basis for the Z-class.
CommutingPartitionReport maximal_commuting_partition_check(
    const PauliSystem& P, const std::vector<std::vector<std::pair<int, int>>>& classes);

}  // namespace cyclolines

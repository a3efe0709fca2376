#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclolines/constructions.hpp"
#include "cyclolines/eigen_support.hpp"

namespace cyclolines {

/// A square matrix over a scalar backend with its Schur inverse cached and
/// the cheap structural flags precomputed; the spin-model flag stays
/// Unknown until is_spin_model has run.
struct TypeIIMatrix {
    enum class Tri { Yes, No, Unknown };

    ScalarBackend backend;
    std::variant<CycMatrix, CplxMatrix> entries;
    std::variant<CycMatrix, CplxMatrix> schur_inv;
    bool type_ii = false;
    bool flat = false;
    bool unitary_up_to_scale = false;
    Tri spin_model = Tri::Unknown;
    std::string meta;

    static TypeIIMatrix wrap(CycMatrix M, std::string meta);
    static TypeIIMatrix wrap(CplxMatrix M, std::string meta, double tol);

    Eigen::Index order() const;
    const CycMatrix& exact() const { return std::get<CycMatrix>(entries); }
    const CplxMatrix& floating() const { return std::get<CplxMatrix>(entries); }
};

// Schur calculus.  The all-ones matrix is the Schur identity; the Schur
// inverse requires every entry nonzero.
CycMatrix schur_product(const CycMatrix& M, const CycMatrix& N);
CycMatrix schur_inverse(const CycMatrix& M);
CplxMatrix schur_product(const CplxMatrix& M, const CplxMatrix& N);
CplxMatrix schur_inverse(const CplxMatrix& M);

struct TypeIICheck {
    bool ok = false;
    int row = -1, col = -1;  // witness entry of M M^{o-T} - vI
    std::string message;
};

/// M M^{o-T} = vI.
TypeIICheck is_type_ii(const CycMatrix& M);
TypeIICheck is_type_ii(const CplxMatrix& M, double tol);

struct TwoOfThreeReport {
    bool type_ii = false;
    bool unitary_up_to_scale = false;
    bool flat = false;
    /// any two of the three imply the third: exactly-two-true is impossible
    bool consistent = false;
};

TwoOfThreeReport two_of_three_check(const CycMatrix& M);
TwoOfThreeReport two_of_three_check(const CplxMatrix& M, double tol);

/// The Schur ratio M_{i/j} = (M e_i) o (M e_j)^{o-}.
CycVector schur_ratio(const CycMatrix& M, int i, int j);
CplxVector schur_ratio(const CplxMatrix& M, int i, int j);

struct SpinCheck {
    bool ok = false;
    int i = -1, j = -1;  // witness ratio on failure
    std::string message;
};

/// A type-II W is a spin model iff every ratio W_{i/j} is an eigenvector of
/// W; the eigenvalue is read off the first coordinate.
SpinCheck is_spin_model(const CycMatrix& W);
SpinCheck is_spin_model(const CplxMatrix& W, double tol);

/// Potts model (a-1)I + J with a = (-v + 2 +- sqrt(v^2-4v))/2.  Exact when
/// v^2 - 4v is a perfect square (v = 4 gives a = -1); otherwise float, with
/// complex a for v < 4.
struct PottsMatrix {
    int v = 0;
    bool exact = false;
    CycMatrix exact_matrix;
    CplxMatrix float_matrix;
    std::string a_text;
};
PottsMatrix potts(int v, int sign = +1);

/// Circulant with ij-entry theta^((i-j)^2).  The default theta is
/// zeta_{2n} for even n and zeta_n for odd n: theta^2 is then a primitive
/// n-th root and theta^(n^2) = 1, which makes the matrix a genuine flat
/// exact spin model.
CycMatrix quadratic_circulant(int n);
CycMatrix quadratic_circulant(int n, const Cyclotomic& theta);

/// D_j = diag of column j of A^{o-} for unnormalized flat A (unit-modulus
/// entries, A A^dagger = nI); the diagonal entries are unit-modulus.
std::vector<CycMatrix> spin_diagonals(const CycMatrix& A);

struct SpinDualityReport {
    bool ok = false;
    bool identity_ok = false;        // braid form A D_j A = mu_j D_j A D_j with |mu_j|^2 = n
    bool diagonal_constant = false;  // diag(A) constant
    bool trace_constant = false;     // tr(D_j) equal across j
    bool colsum_constant = false;    // column sums of A^{o-} equal
    std::vector<Cyclotomic> mu;      // per-j scalar, |mu|^2 = n
    int witness_j = -1;
    std::string message;
};

/// The diagonal-conjugation identity D_j A_u D_j^-1 = A_u^-1 D_j A_u for the
/// unitary normalization A_u = A/sqrt(n), checked exactly in braid form
/// A D_j A = mu_j D_j A D_j together with the constancy consequences.
SpinDualityReport spin_duality_check(const CycMatrix& A);

/// The three bases {standard, columns of A, columns of D_j A}, certified.
MubFamily spin_mub_triple(const CycMatrix& A, int j);

struct MubSubsetsReport {
    int candidate_bases = 0;  // I, A, D_0 A, ..., D_{n-1} A
    /// pairwise unbiasedness table over candidates (upper triangle i < j)
    std::vector<std::vector<bool>> unbiased;
    std::vector<bool> orthogonal;  // candidate is an orthogonal basis
    /// maximal subsets (by inclusion) that form MUB families
    std::vector<std::vector<int>> maximal_families;
};

/// Tests the full family {I, A, D_1 A, ...} pairwise and reports which
/// subsets form mutually unbiased families.
MubSubsetsReport spin_family_mub_subsets(const CycMatrix& A);

}  // namespace cyclolines

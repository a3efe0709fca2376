#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclolines/abelian.hpp"
#include "cyclolines/galois_ring.hpp"
#include "cyclolines/lineset.hpp"

namespace cyclolines {

/// One flat equiangular line per character of G, restricted to a certified
/// (v, k, 1)-difference set D (columns chi_a(d), d in canonical order).
/// The result is flat, has squared vector norm k, and is certified
/// equiangular at alpha = (k-1)/k^2 before being returned.
LineSet eal_from_difference_set(const AbelianGroup& G, const std::vector<int>& D);
LineSet singer_equiangular_lines(std::int64_t q);

struct MubFamily {
    LineSet lines;
    bool includes_standard_basis = false;
    std::vector<std::string> basis_labels;
};

/// Character bases of a certified semiregular (k, n, k, lambda) relative
/// difference set: one basis per coset of the annihilator of N, plus the
/// standard basis.  Certified by is_mub_family before returning.
MubFamily mubs_from_rds(const AbelianGroup& G, const std::vector<int>& N,
                        const std::vector<int>& D);
/// Hughes-group route: q+1 mutually unbiased bases of C^q for a commutative
/// semifield of order q.
MubFamily mubs_from_semifield(const Semifield& E);

/// Wootters-Fields bases: odd q via omega^tr(alpha x^2 + x y), even q = 2^n
/// via i^tr(alpha x^2 + 2 y x) over the Teichmuller set.
MubFamily wf_odd(std::int64_t q);
MubFamily wf_even(int n);
/// Alltop bases omega^tr((x+alpha)^3 + y (x+alpha)); requires char > 3.
MubFamily alltop(std::int64_t q);

/// The W_alpha / A_alpha matrices as raw unnormalized column matrices.
CycMatrix wf_odd_matrix(const FiniteField& F, int alpha);
CycMatrix wf_even_matrix(const GaloisRing& R, int alpha_index);
CycMatrix alltop_matrix(const FiniteField& F, int alpha);

struct AlltopWfCertificate {
    std::int64_t q = 0;
    bool ok = false;
    std::string message;
    CycMatrix unitary;             // A_0^* / sqrt(q), exactly unitary
    std::vector<int> perm;         // vector-level permutation, A-family order
    std::vector<Cyclotomic> scalars;
    CertificateReport check;       // result of equivalence_certificate_check
};

/// Pre-multiplying by A_0^* maps A_alpha to W_{-1/(12 alpha)} up to the
/// column map y -> (3 alpha^2 + y)/(6 alpha), A_0 to I and I to W_0.  The
/// permutation is discovered by column matching and then asserted against
/// the closed form in both directions.
AlltopWfCertificate alltop_wf_equivalence(std::int64_t q);

/// Hoggar's 64 lines in C^8: the Pauli cube orbit of
/// (0, 0, s, t, s, -s, 0, r) with s = zeta_8, t = zeta_8^7, r = sqrt 2.
LineSet hoggar();
CycVector hoggar_fiducial();

/// Orbit {A v : A in {I,X,Y,Z}^(tensor k)} with all 4^k labels kept;
/// proportional vectors are reported by predicates, never deduplicated.
LineSet pauli_orbit(const CycVector& v, int k);
LineSet pauli_orbit(const CplxVector& v, int k, double tolerance);

struct FiducialDiagnostics {
    int d = 0;
    bool exact = false;                  // true when sqrt(d+1) is an integer
    std::vector<Rational> alpha_exact;   // empty in float mode
    std::vector<double> alpha;
    std::vector<double> l;               // l_i = sqrt(d+1) (d alpha_i - 1)
    std::vector<bool> l_odd;
    bool all_odd = false;
    std::string message;
};

/// The squared-coordinate profile alpha_i = |v_i|^2 / |v|^2 and the odd
/// integers l_i solving alpha_i = (sqrt(d+1) + l_i) / (d sqrt(d+1)); all l_i
/// odd is necessary (not sufficient) for the Pauli orbit to be equiangular.
FiducialDiagnostics fiducial_diagnostics(const CycVector& v, double tolerance = 1e-9);
FiducialDiagnostics fiducial_diagnostics(const CplxVector& v, double tolerance = 1e-9);

/// alpha_i alpha_j = (d+1 + l_i l_j + (l_i+l_j) sqrt(d+1)) / (d^2 (d+1)) is
/// rational iff l_i = -l_j or sqrt(d+1) is rational.
bool alpha_product_rational(int d, long li, long lj);

struct SchurExtraction {
    ProductGroup dual = ProductGroup({1});  // the character group of the Schur group
    std::vector<int> forbidden;  // annihilator of the basis containing all-ones
    std::vector<int> D;          // the coordinate-projection characters
    RelativeDifferenceSetCheck cert;
    std::string message;
};

/// Reverses the character construction: Schur-normalizes the non-standard
/// bases,
/// verifies they form a group under entrywise multiplication (witness pair
/// on failure), and certifies the coordinate projections as a semiregular
/// (k, n, k, lambda) relative difference set in the dual group.
SchurExtraction extract_rds_from_schur_group(const MubFamily& family);

}  // namespace cyclolines

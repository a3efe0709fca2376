#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cyclolines/eigen_support.hpp"
#include "cyclolines/rational.hpp"
#include "cyclolines/scalar_backend.hpp"

namespace cyclolines {

using Partition = std::vector<std::vector<int>>;

/// Columns of `vectors` span the lines.  Vectors are stored unnormalized
/// with exact squared norms cached; predicates always compare normalized
/// ratios |<u,v>|^2 / (|u|^2 |v|^2), which stay rational for every
/// construction in this library.
template <typename Scalar>
struct VectorFamily {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
    std::vector<Scalar> norm2;
    std::optional<Partition> partition;
    std::string meta;
};

class LineSet {
public:
    ScalarBackend backend;
    std::variant<VectorFamily<Cyclotomic>, VectorFamily<std::complex<double>>> family;

    /// Builds an exact line set: entries are promoted to one common
    /// cyclotomic order, squared norms are computed and cached, vectors are
    /// checked nonzero and partition parts (when present) checked to have
    /// exactly dim vectors covering every index once.
    static LineSet exact(CycMatrix columns, std::optional<Partition> partition, std::string meta);
    static LineSet floating(CplxMatrix columns, std::optional<Partition> partition,
                            std::string meta, double tolerance = 1e-9);

    Eigen::Index dim() const;
    Eigen::Index count() const;
    bool is_exact() const { return backend.is_exact(); }
    const VectorFamily<Cyclotomic>& exact_family() const;
    const VectorFamily<std::complex<double>>& float_family() const;
    const std::optional<Partition>& partition() const;
    const std::string& meta() const;

    /// Common cyclotomic order of the exact entries.
    int cyclotomic_order() const;
    /// Numeric copy (exact entries evaluated), same partition and meta.
    LineSet to_float(double tolerance = 1e-9) const;
};

// ---------------------------------------------------------------------------
// predicates

struct EquiangularReport {
    enum class Fail { None, TooFewLines, DuplicateLine, UnequalAngle, ZeroAngleRejected };
    bool ok = false;
    Fail kind = Fail::None;
    /// Normalized squared common angle alpha = a^2, exact in Exact mode.
    std::optional<Rational> alpha;     // when rational
    std::string alpha_text;            // always set on success
    double alpha_float = 0.0;
    std::optional<std::pair<int, int>> witness;
    std::string message;
};

/// All distinct-pair normalized squared inner products equal (and below 1).
/// Orthonormal families count as equiangular with alpha = 0 unless
/// `require_positive_angle` is set.
EquiangularReport is_equiangular(const LineSet& ls, bool require_positive_angle = false);

struct MubReport {
    bool ok = false;
    int bases = 0;
    std::int64_t dim = 0;
    std::optional<std::pair<int, int>> witness;
    std::string message;
};

/// Within-basis orthogonality and cross-basis normalized squared inner
/// products exactly 1/dim; requires a partition.  Also asserts the
/// bases-count sanity bound b <= dim + 1.
MubReport is_mub_family(const LineSet& ls);

/// Every coordinate of every vector has the same squared modulus.
bool is_flat(const LineSet& ls);

/// Relative bound m <= (k - k a)/(1 - k a) for lines at angle alpha in C^k.
/// Exact rational; requires k*alpha < 1.
Rational relative_bound(std::int64_t k, const Rational& alpha);
bool relative_bound_met_with_equality(std::int64_t m, std::int64_t k, const Rational& alpha);
inline std::int64_t flat_equiangular_cap(std::int64_t k) { return k * k - k + 1; }

// ---------------------------------------------------------------------------
// Gram matrices

struct GramReport {
    std::int64_t m = 0;
    bool exact = true;
    /// Strictly-upper entries (i < j), row-major; diagonal entries are 1.
    std::vector<Cyclotomic> exact_values;
    std::vector<double> float_values;
    /// value text -> multiplicity, sorted by text.
    std::vector<std::pair<std::string, std::int64_t>> histogram;

    std::size_t index(int i, int j) const;  // i < j
};

GramReport gram(const LineSet& ls);

/// Streams normalized squared inner products as CSV without materializing
/// the report: header row,col,num,den in Exact mode (entries must be
/// rational) or row,col,value in Float mode.
void export_gram_csv(const LineSet& ls, std::ostream& out);

// ---------------------------------------------------------------------------
// restricted equivalence

template <typename Scalar>
struct ColumnMatch {
    std::vector<int> perm;       // column i of A ~ column perm[i] of B
    std::vector<Scalar> scalars; // B_col = scalar * A_col
};

/// Greedy exact matching of columns up to a nonzero scalar.
std::optional<ColumnMatch<Cyclotomic>> match_columns_up_to_phase(const CycMatrix& A,
                                                                 const CycMatrix& B);
std::optional<ColumnMatch<std::complex<double>>> match_columns_up_to_phase(const CplxMatrix& A,
                                                                           const CplxMatrix& B,
                                                                           double tol);

struct CertificateReport {
    bool ok = false;
    std::string message;
};

/// Checks U unitary (exactly, U*U^dagger = I) and U a_i s_i = b_{perm(i)}
/// for every vector.  The scalars absorb the projective freedom; they are
/// unit-modulus whenever the matched vectors have equal norms.
CertificateReport equivalence_certificate_check(const LineSet& A, const LineSet& B,
                                                const CycMatrix& U, const std::vector<int>& perm,
                                                const std::vector<Cyclotomic>& scalars);

/// True iff the two exact families contain the same lines: a perfect
/// column matching up to scalars exists, and when both carry partitions the
/// matching maps bases onto bases.
bool projectively_equal(const LineSet& A, const LineSet& B);

}  // namespace cyclolines

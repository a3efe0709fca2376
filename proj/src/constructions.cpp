#include "cyclolines/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cyclolines {

namespace {

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << "]";
    return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// equiangular lines from difference sets

LineSet eal_from_difference_set(const AbelianGroup& G, const std::vector<int>& D) {
    std::vector<int> d_sorted = D;
    std::sort(d_sorted.begin(), d_sorted.end());
    const std::int64_t v = G.order();
    const std::int64_t k = static_cast<std::int64_t>(d_sorted.size());
    DifferenceSetCheck cert = is_difference_set(G, d_sorted, v, k, 1);
    if (!cert.ok)
        throw std::invalid_argument("eal_from_difference_set: (G, D) is not a certified (v,k,1) set: " +
                                    cert.message);

    const int N = G.character_root_order();
    CycMatrix cols(k, v);
    for (int label = 0; label < v; ++label)
        for (std::int64_t r = 0; r < k; ++r)
            cols(r, label) = Cyclotomic::root_of_unity(
                N, G.character_exponent(label, d_sorted[static_cast<std::size_t>(r)]));

    std::ostringstream meta;
    meta << "eal-from-difference-set group=" << G.describe() << " params=(" << v << "," << k
         << ",1) D=" << join_ints(d_sorted);
    LineSet ls = LineSet::exact(std::move(cols), std::nullopt, meta.str());

    EquiangularReport rep = is_equiangular(ls);
    Rational want(k - 1);
    want /= Rational(k * k);
    if (!rep.ok || !rep.alpha || *rep.alpha != want)
        throw std::logic_error("eal_from_difference_set: output failed its equiangularity certificate");
    if (!is_flat(ls)) throw std::logic_error("eal_from_difference_set: output is not flat");
    return ls;
}

LineSet singer_equiangular_lines(std::int64_t q) {
    SingerSet s = singer_difference_set(q);
    ProductGroup G = ProductGroup::cyclic(static_cast<int>(s.v));
    LineSet ls = eal_from_difference_set(G, s.D);
    std::ostringstream meta;
    meta << "singer-eal q=" << q << " " << ls.meta();
    return LineSet::exact(ls.exact_family().vectors, std::nullopt, meta.str());
}

// ---------------------------------------------------------------------------
// MUBs from relative difference sets

MubFamily mubs_from_rds(const AbelianGroup& G, const std::vector<int>& N,
                        const std::vector<int>& D) {
    // Coordinate order within the vectors is the order of D as given; the
    // construction wrappers pass the canonical element order, and the
    // Schur-group reversal relies on passing its own coordinate order.
    const std::vector<int>& d_sorted = D;
    RelativeDifferenceSetCheck cert = is_relative_difference_set(G, N, d_sorted);
    if (!cert.ok)
        throw std::invalid_argument("mubs_from_rds: not a relative difference set: " + cert.message);
    if (!cert.semiregular)
        throw std::invalid_argument("mubs_from_rds: set is not semiregular (m != k)");

    const std::int64_t k = cert.k;
    const std::int64_t n = cert.n;
    const int root = G.character_root_order();

    std::vector<std::vector<int>> classes = labels_by_restriction(G, N);
    if (static_cast<std::int64_t>(classes.size()) != n)
        throw std::logic_error("mubs_from_rds: expected n character classes");

    CycMatrix cols(k, n * k + k);
    Partition parts;
    MubFamily fam;
    Eigen::Index col = 0;
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        if (static_cast<std::int64_t>(classes[ci].size()) != k)
            throw std::logic_error("mubs_from_rds: character class has wrong size");
        std::vector<int> part;
        for (int label : classes[ci]) {
            for (std::int64_t r = 0; r < k; ++r)
                cols(r, col) = Cyclotomic::root_of_unity(
                    root, G.character_exponent(label, d_sorted[static_cast<std::size_t>(r)]));
            part.push_back(static_cast<int>(col));
            ++col;
        }
        parts.push_back(std::move(part));
        fam.basis_labels.push_back("coset-of-label-" + std::to_string(classes[ci].front()));
    }
    // standard basis
    std::vector<int> std_part;
    for (std::int64_t r = 0; r < k; ++r) {
        for (std::int64_t x = 0; x < k; ++x) cols(x, col) = Cyclotomic(x == r ? 1 : 0);
        std_part.push_back(static_cast<int>(col));
        ++col;
    }
    parts.push_back(std::move(std_part));
    fam.basis_labels.push_back("standard");
    fam.includes_standard_basis = true;

    std::ostringstream meta;
    meta << "mubs-from-rds group=" << G.describe() << " params=(" << cert.m << "," << cert.n << ","
         << cert.k << "," << cert.lambda << ") D=" << join_ints(d_sorted);
    fam.lines = LineSet::exact(std::move(cols), parts, meta.str());

    MubReport rep = is_mub_family(fam.lines);
    if (!rep.ok)
        throw std::logic_error("mubs_from_rds: output failed its MUB certificate: " + rep.message);
    return fam;
}

MubFamily mubs_from_semifield(const Semifield& E) {
    HughesGroup G(E);
    MubFamily fam = mubs_from_rds(G, G.forbidden_subgroup(), G.h0());
    std::ostringstream meta;
    meta << "mubs-from-semifield " << E.name() << " q=" << E.order() << " | " << fam.lines.meta();
    fam.lines = LineSet::exact(fam.lines.exact_family().vectors, fam.lines.partition(), meta.str());
    return fam;
}

// ---------------------------------------------------------------------------
// Wootters-Fields and Alltop matrices

CycMatrix wf_odd_matrix(const FiniteField& F, int alpha) {
    const std::int64_t q = F.order();
    const int p = F.characteristic();
    CycMatrix W(q, q);
    for (int y = 0; y < q; ++y)
        for (int x = 0; x < q; ++x) {
            int e = F.trace(F.add(F.mul(alpha, F.mul(x, x)), F.mul(x, y)));
            W(x, y) = Cyclotomic::root_of_unity(p, e);
        }
    return W;
}

CycMatrix wf_even_matrix(const GaloisRing& R, int alpha_index) {
    const std::int64_t q = R.residue_order();
    const std::vector<int>& T = R.teichmuller();
    const int alpha = T[static_cast<std::size_t>(alpha_index)];
    CycMatrix W(q, q);
    for (int yi = 0; yi < q; ++yi)
        for (int xi = 0; xi < q; ++xi) {
            int x = T[static_cast<std::size_t>(xi)];
            int y = T[static_cast<std::size_t>(yi)];
            int e = R.trace(R.add(R.mul(alpha, R.mul(x, x)), R.scalar_mul(2, R.mul(y, x))));
            W(xi, yi) = Cyclotomic::root_of_unity(4, e);
        }
    return W;
}

CycMatrix alltop_matrix(const FiniteField& F, int alpha) {
    const std::int64_t q = F.order();
    const int p = F.characteristic();
    CycMatrix A(q, q);
    for (int y = 0; y < q; ++y)
        for (int x = 0; x < q; ++x) {
            int xa = F.add(x, alpha);
            int e = F.trace(F.add(F.mul(xa, F.mul(xa, xa)), F.mul(y, xa)));
            A(x, y) = Cyclotomic::root_of_unity(p, e);
        }
    return A;
}

namespace {

// Assembles { M_alpha : alpha } plus the standard basis into a certified
// MubFamily.
MubFamily family_from_matrices(const std::vector<CycMatrix>& mats,
                               const std::vector<std::string>& labels, const std::string& meta) {
    const Eigen::Index q = mats.front().rows();
    CycMatrix cols(q, static_cast<Eigen::Index>(mats.size()) * q + q);
    Partition parts;
    MubFamily fam;
    Eigen::Index col = 0;
    for (std::size_t mi = 0; mi < mats.size(); ++mi) {
        std::vector<int> part;
        for (Eigen::Index y = 0; y < q; ++y) {
            cols.col(col) = mats[mi].col(y);
            part.push_back(static_cast<int>(col));
            ++col;
        }
        parts.push_back(std::move(part));
        fam.basis_labels.push_back(labels[mi]);
    }
    std::vector<int> std_part;
    for (Eigen::Index r = 0; r < q; ++r) {
        for (Eigen::Index x = 0; x < q; ++x) cols(x, col) = Cyclotomic(x == r ? 1 : 0);
        std_part.push_back(static_cast<int>(col));
        ++col;
    }
    parts.push_back(std::move(std_part));
    fam.basis_labels.push_back("standard");
    fam.includes_standard_basis = true;
    fam.lines = LineSet::exact(std::move(cols), parts, meta);

    MubReport rep = is_mub_family(fam.lines);
    if (!rep.ok) throw std::logic_error("matrix family failed its MUB certificate: " + rep.message);
    return fam;
}

}  // namespace

MubFamily wf_odd(std::int64_t q) {
    int p = 0, n = 0;
    if (!is_prime_power(q, &p, &n) || p == 2)
        throw std::invalid_argument("wf_odd: q must be an odd prime power");
    FiniteField F = FiniteField::make(p, n);
    std::vector<CycMatrix> mats;
    std::vector<std::string> labels;
    for (int alpha = 0; alpha < q; ++alpha) {
        mats.push_back(wf_odd_matrix(F, alpha));
        labels.push_back("W_" + std::to_string(alpha));
    }
    return family_from_matrices(mats, labels, "wf-odd q=" + std::to_string(q));
}

MubFamily wf_even(int n) {
    GaloisRing R = GaloisRing::make(n);
    const std::int64_t q = R.residue_order();
    std::vector<CycMatrix> mats;
    std::vector<std::string> labels;
    for (int ai = 0; ai < q; ++ai) {
        mats.push_back(wf_even_matrix(R, ai));
        labels.push_back("W_T" + std::to_string(ai));
    }
    return family_from_matrices(mats, labels, "wf-even q=" + std::to_string(q));
}

MubFamily alltop(std::int64_t q) {
    int p = 0, n = 0;
    if (!is_prime_power(q, &p, &n))
        throw std::invalid_argument("alltop: q must be a prime power");
    if (p <= 3)
        throw std::invalid_argument("alltop: requires characteristic p > 3, got p = " + std::to_string(p));
    FiniteField F = FiniteField::make(p, n);
    std::vector<CycMatrix> mats;
    std::vector<std::string> labels;
    for (int alpha = 0; alpha < q; ++alpha) {
        mats.push_back(alltop_matrix(F, alpha));
        labels.push_back("A_" + std::to_string(alpha));
    }
    return family_from_matrices(mats, labels, "alltop q=" + std::to_string(q));
}

// ---------------------------------------------------------------------------
// Alltop <-> Wootters-Fields equivalence

AlltopWfCertificate alltop_wf_equivalence(std::int64_t q) {
    AlltopWfCertificate cert;
    cert.q = q;
    int p = 0, n = 0;
    if (!is_prime_power(q, &p, &n) || p <= 3)
        throw std::invalid_argument("alltop_wf_equivalence: requires characteristic p > 3");
    FiniteField F = FiniteField::make(p, n);
    const int qi = static_cast<int>(q);

    std::vector<CycMatrix> A(static_cast<std::size_t>(qi));
    std::vector<CycMatrix> W(static_cast<std::size_t>(qi));
    for (int a = 0; a < qi; ++a) {
        A[static_cast<std::size_t>(a)] = alltop_matrix(F, a);
        W[static_cast<std::size_t>(a)] = wf_odd_matrix(F, a);
    }
    CycMatrix identity(qi, qi);
    for (int r = 0; r < qi; ++r)
        for (int c = 0; c < qi; ++c) identity(r, c) = Cyclotomic(r == c ? 1 : 0);

    // U = A_0^* / sqrt(q), exactly unitary since A_0 A_0^* = q I.
    Cyclotomic inv_sqrt_q = Cyclotomic::sqrt_of_integer(q).inverse();
    CycMatrix U = A[0].adjoint() * inv_sqrt_q;

    // prime-subfield constants, packed as digit 0; 12 and 6 are invertible
    // since p > 3
    const int twelve = 12 % p;
    const int six = 6 % p;
    const int three = 3 % p;

    // family layout: A-side blocks A_0..A_{q-1} then I; B-side W_0..W_{q-1} then I
    auto a_col = [&](int alpha, int y) { return alpha * qi + y; };
    auto w_col = [&](int beta, int y) { return beta * qi + y; };
    const int identity_block = qi * qi;

    cert.perm.assign(static_cast<std::size_t>(qi * qi + qi), -1);
    cert.scalars.assign(static_cast<std::size_t>(qi * qi + qi), Cyclotomic(0));

    for (int alpha = 0; alpha < qi; ++alpha) {
        CycMatrix M = U * A[static_cast<std::size_t>(alpha)];
        if (alpha == 0) {
            // A_0 maps to the identity basis
            auto match = match_columns_up_to_phase(M, identity);
            if (!match) {
                cert.message = "A_0 does not map to the identity basis";
                return cert;
            }
            for (int y = 0; y < qi; ++y) {
                cert.perm[static_cast<std::size_t>(a_col(0, y))] = identity_block + match->perm[static_cast<std::size_t>(y)];
                cert.scalars[static_cast<std::size_t>(a_col(0, y))] = match->scalars[static_cast<std::size_t>(y)];
            }
            continue;
        }
        // predicted target: beta = -1/(12 alpha), column map
        // y -> (3 alpha^2 + y)/(6 alpha).  Dividing column y by its x = 0
        // entry leaves exponent (-x^2 + 2x(3 alpha^2 + y))/(12 alpha), so
        // the linear coefficient carries a 1/(6 alpha), not 1/6.
        int beta = F.neg(F.inv(F.mul(twelve, alpha)));
        auto match = match_columns_up_to_phase(M, W[static_cast<std::size_t>(beta)]);
        if (!match) {
            cert.message = "A_" + std::to_string(alpha) + " does not match W_" + std::to_string(beta);
            return cert;
        }
        int three_alpha_sq = F.mul(three, F.mul(alpha, alpha));
        int six_alpha = F.mul(six, alpha);
        int inv_six_alpha = F.inv(six_alpha);
        for (int y = 0; y < qi; ++y) {
            int target = F.mul(F.add(three_alpha_sq, y), inv_six_alpha);
            if (match->perm[static_cast<std::size_t>(y)] != target) {
                cert.message = "column map mismatch at alpha=" + std::to_string(alpha) +
                               " y=" + std::to_string(y) + ": discovered " +
                               std::to_string(match->perm[static_cast<std::size_t>(y)]) + ", formula gives " +
                               std::to_string(target);
                return cert;
            }
            // inverse direction: y = 6 alpha t - 3 alpha^2
            int back = F.sub(F.mul(six_alpha, target), three_alpha_sq);
            if (back != y) {
                cert.message = "column map is not inverted by y = 6 alpha t - 3 alpha^2 at alpha=" +
                               std::to_string(alpha);
                return cert;
            }
            cert.perm[static_cast<std::size_t>(a_col(alpha, y))] = w_col(beta, target);
            cert.scalars[static_cast<std::size_t>(a_col(alpha, y))] = match->scalars[static_cast<std::size_t>(y)];
        }
    }
    // the identity basis maps to W_0
    {
        CycMatrix M = U * identity;
        auto match = match_columns_up_to_phase(M, W[0]);
        if (!match) {
            cert.message = "I does not map to W_0";
            return cert;
        }
        for (int y = 0; y < qi; ++y) {
            cert.perm[static_cast<std::size_t>(identity_block + y)] = w_col(0, match->perm[static_cast<std::size_t>(y)]);
            cert.scalars[static_cast<std::size_t>(identity_block + y)] = match->scalars[static_cast<std::size_t>(y)];
        }
    }

    // assemble both families as line sets and run the certificate check
    CycMatrix acols(qi, qi * qi + qi), wcols(qi, qi * qi + qi);
    for (int alpha = 0; alpha < qi; ++alpha)
        for (int y = 0; y < qi; ++y) {
            acols.col(a_col(alpha, y)) = A[static_cast<std::size_t>(alpha)].col(y);
            wcols.col(w_col(alpha, y)) = W[static_cast<std::size_t>(alpha)].col(y);
        }
    for (int y = 0; y < qi; ++y) {
        acols.col(identity_block + y) = identity.col(y);
        wcols.col(identity_block + y) = identity.col(y);
    }
    LineSet als = LineSet::exact(std::move(acols), std::nullopt, "alltop family q=" + std::to_string(q));
    LineSet wls = LineSet::exact(std::move(wcols), std::nullopt, "wf family q=" + std::to_string(q));
    cert.unitary = U;
    cert.check = equivalence_certificate_check(als, wls, U, cert.perm, cert.scalars);
    cert.ok = cert.check.ok;
    if (!cert.ok && cert.message.empty()) cert.message = cert.check.message;
    return cert;
}

// ---------------------------------------------------------------------------
// Hoggar lines and Pauli orbits

namespace {

// Applies the single-qubit operator with label g in {0=I, 1=X, 2=Y, 3=Z} to
// qubit `bit` (0 = most significant) of w.  Y = XZ = [[0,-1],[1,0]].
template <typename Scalar, int Rows>
void apply_single_qubit(Eigen::Matrix<Scalar, Rows, 1>& w, int g, int bit, int k) {
    if (g == 0) return;
    const Eigen::Index mask = Eigen::Index{1} << (k - 1 - bit);
    const Eigen::Index d = w.size();
    for (Eigen::Index u = 0; u < d; ++u) {
        if (u & mask) continue;
        Eigen::Index v = u | mask;
        Scalar a = w(u), b = w(v);
        switch (g) {
            case 1:  // X
                w(u) = b;
                w(v) = a;
                break;
            case 2:  // Y = XZ: e0 -> e1, e1 -> -e0
                w(u) = -b;
                w(v) = a;
                break;
            default:  // Z
                w(v) = -b;
                break;
        }
    }
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> pauli_orbit_columns(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v, int k) {
    const Eigen::Index d = Eigen::Index{1} << k;
    if (v.size() != d) throw std::invalid_argument("pauli_orbit: vector dimension is not 2^k");
    const Eigen::Index count = Eigen::Index{1} << (2 * k);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cols(d, count);
    for (Eigen::Index label = 0; label < count; ++label) {
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = v;
        Eigen::Index rest = label;
        // label digits base 4, most significant digit = qubit 0
        for (int bit = k - 1; bit >= 0; --bit) {
            apply_single_qubit(w, static_cast<int>(rest % 4), bit, k);
            rest /= 4;
        }
        cols.col(label) = w;
    }
    return cols;
}

}  // namespace

CycVector hoggar_fiducial() {
    Cyclotomic s = Cyclotomic::root_of_unity(8, 1);
    Cyclotomic t = Cyclotomic::root_of_unity(8, 7);
    Cyclotomic r = Cyclotomic::root_of_unity(8, 1) + Cyclotomic::root_of_unity(8, 7);
    CycVector v(8);
    v << Cyclotomic(0), Cyclotomic(0), s, t, s, -s, Cyclotomic(0), r;
    return v;
}

LineSet pauli_orbit(const CycVector& v, int k) {
    CycMatrix cols = pauli_orbit_columns<Cyclotomic>(v, k);
    return LineSet::exact(std::move(cols), std::nullopt, "pauli-orbit k=" + std::to_string(k));
}

LineSet pauli_orbit(const CplxVector& v, int k, double tolerance) {
    CplxMatrix cols = pauli_orbit_columns<std::complex<double>>(v, k);
    return LineSet::floating(std::move(cols), std::nullopt, "pauli-orbit k=" + std::to_string(k),
                             tolerance);
}

LineSet hoggar() {
    LineSet orbit = pauli_orbit(hoggar_fiducial(), 3);
    LineSet ls = LineSet::exact(orbit.exact_family().vectors, std::nullopt, "hoggar 64 lines in C^8");
    EquiangularReport rep = is_equiangular(ls);
    Rational ninth(1, 9);
    ninth.canonicalize();
    if (!rep.ok || !rep.alpha || *rep.alpha != ninth)
        throw std::logic_error("hoggar: orbit failed the equiangularity certificate");
    return ls;
}

// ---------------------------------------------------------------------------
// fiducial diagnostics

namespace {

FiducialDiagnostics diagnostics_from_alpha(int d, const std::vector<Rational>& alpha_exact,
                                           const std::vector<double>& alpha_float, double tol) {
    FiducialDiagnostics diag;
    diag.d = d;
    diag.alpha = alpha_float;
    long root = std::lround(std::sqrt(static_cast<double>(d + 1)));
    diag.exact = (root * root == d + 1) && !alpha_exact.empty();
    diag.alpha_exact = alpha_exact;
    diag.all_odd = true;
    for (int i = 0; i < d; ++i) {
        if (diag.exact) {
            // l = sqrt(d+1) (d alpha - 1), exact
            Rational l = Rational(root) * (Rational(d) * alpha_exact[static_cast<std::size_t>(i)] - 1);
            l.canonicalize();
            diag.l.push_back(l.get_d());
            bool odd = (l.get_den() == 1) && (l.get_num() % 2 != 0);
            diag.l_odd.push_back(odd);
        } else {
            double l = std::sqrt(static_cast<double>(d + 1)) *
                       (d * alpha_float[static_cast<std::size_t>(i)] - 1.0);
            diag.l.push_back(l);
            double nearest = std::round(l);
            bool odd = std::abs(l - nearest) <= tol && (std::llround(nearest) % 2 != 0);
            diag.l_odd.push_back(odd);
        }
        if (!diag.l_odd.back()) diag.all_odd = false;
    }
    diag.message = diag.all_odd ? "all l_i odd integers"
                                : "some l_i is not an odd integer; orbit cannot be equiangular";
    return diag;
}

}  // namespace

FiducialDiagnostics fiducial_diagnostics(const CycVector& v, double tolerance) {
    const int d = static_cast<int>(v.size());
    Cyclotomic norm2(0);
    for (int i = 0; i < d; ++i) norm2 += v(i).abs_squared();
    if (norm2.is_zero()) throw std::invalid_argument("fiducial_diagnostics: zero vector");
    std::vector<Rational> alpha_exact;
    std::vector<double> alpha_float;
    bool rational = norm2.is_rational();
    for (int i = 0; i < d; ++i) {
        Cyclotomic a2 = v(i).abs_squared();
        rational = rational && a2.is_rational();
    }
    for (int i = 0; i < d; ++i) {
        Cyclotomic a2 = v(i).abs_squared();
        if (rational) {
            Rational a = a2.rational_value() / norm2.rational_value();
            a.canonicalize();
            alpha_exact.push_back(a);
            alpha_float.push_back(a.get_d());
        } else {
            alpha_float.push_back(a2.to_float().real() / norm2.to_float().real());
        }
    }
    return diagnostics_from_alpha(d, alpha_exact, alpha_float, tolerance);
}

FiducialDiagnostics fiducial_diagnostics(const CplxVector& v, double tolerance) {
    const int d = static_cast<int>(v.size());
    double norm2 = v.squaredNorm();
    if (norm2 <= tolerance) throw std::invalid_argument("fiducial_diagnostics: zero vector");
    std::vector<double> alpha_float;
    for (int i = 0; i < d; ++i) alpha_float.push_back(std::norm(v(i)) / norm2);
    return diagnostics_from_alpha(d, {}, alpha_float, tolerance);
}

bool alpha_product_rational(int d, long li, long lj) {
    long root = std::lround(std::sqrt(static_cast<double>(d + 1)));
    if (root * root == d + 1) return true;
    return li == -lj;
}

// ---------------------------------------------------------------------------
// Schur-group extraction: reversing the character construction

namespace {

// Decomposition of an explicit small abelian group (op table closure) into
// cyclic factors of prime-power order, with the element <-> tuple maps.
struct SmallDecomposition {
    std::vector<int> moduli;
    std::vector<int> element_of_tuple;  // ProductGroup element index -> group element
    std::vector<int> tuple_of_element;
};

class SmallGroup {
public:
    SmallGroup(int order, std::function<int(int, int)> op) : order_(order), op_(std::move(op)) {
        inv_.assign(static_cast<std::size_t>(order_), -1);
        for (int g = 0; g < order_; ++g)
            for (int h = 0; h < order_; ++h)
                if (op_(g, h) == 0) inv_[static_cast<std::size_t>(g)] = h;
        for (int g = 0; g < order_; ++g)
            if (inv_[static_cast<std::size_t>(g)] < 0) throw std::logic_error("SmallGroup: missing inverse");
    }
    int order() const { return order_; }
    int op(int a, int b) const { return op_(a, b); }
    int inverse(int a) const { return inv_[static_cast<std::size_t>(a)]; }
    int pow(int g, std::int64_t e) const {
        int r = 0;
        e %= order_;
        if (e < 0) e += order_;
        for (std::int64_t i = 0; i < e; ++i) r = op_(r, g);
        return r;
    }
    int element_order(int g) const {
        int r = g, n = 1;
        while (r != 0) {
            r = op_(r, g);
            ++n;
        }
        return n;
    }
    std::vector<int> generated(const std::vector<int>& gens) const {
        std::set<int> seen{0};
        std::vector<int> frontier{0};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int g : frontier)
                for (int gen : gens) {
                    int h = op_(g, gen);
                    if (seen.insert(h).second) next.push_back(h);
                }
            frontier = std::move(next);
        }
        return {seen.begin(), seen.end()};
    }

private:
    int order_;
    std::function<int(int, int)> op_;
    std::vector<int> inv_;
};

// Basis of an abelian p-group given as an explicit subset closed under op:
// split off a maximal-order cyclic factor via a greedy inclusion-maximal
// complement, recurse.
void p_group_basis(const SmallGroup& G, const std::vector<int>& elements,
                   std::vector<int>& basis_out) {
    if (elements.size() <= 1) return;
    int b = elements.front();
    int best = 1;
    for (int g : elements) {
        int o = G.element_order(g);
        if (o > best) {
            best = o;
            b = g;
        }
    }
    std::set<int> cyc;
    {
        int r = 0;
        do {
            cyc.insert(r);
            r = G.op(r, b);
        } while (r != 0);
    }
    std::vector<int> comp{0};
    std::set<int> comp_set{0};
    for (int g : elements) {
        if (comp_set.count(g)) continue;
        std::vector<int> gens(comp.begin(), comp.end());
        gens.push_back(g);
        std::vector<int> t = G.generated(gens);
        bool clean = true;
        for (int h : t)
            if (h != 0 && cyc.count(h)) {
                clean = false;
                break;
            }
        if (clean) {
            comp = t;
            comp_set = std::set<int>(t.begin(), t.end());
        }
    }
    if (static_cast<std::size_t>(best) * comp.size() != elements.size())
        throw std::logic_error("p_group_basis: complement size mismatch");
    basis_out.push_back(b);
    p_group_basis(G, comp, basis_out);
}

SmallDecomposition decompose_abelian(const SmallGroup& G) {
    const int v = G.order();
    // primary components
    std::vector<int> basis;
    for (std::int64_t p = 2; p <= v; ++p) {
        if (v % p != 0 || !is_prime(p)) continue;
        std::vector<int> component;
        for (int g = 0; g < v; ++g) {
            int o = G.element_order(g);
            bool ppow = true;
            while (o > 1) {
                if (o % p != 0) {
                    ppow = false;
                    break;
                }
                o = static_cast<int>(o / p);
            }
            if (ppow) component.push_back(g);
        }
        p_group_basis(G, component, basis);
    }
    SmallDecomposition dec;
    for (int b : basis) dec.moduli.push_back(G.element_order(b));
    std::int64_t prod = 1;
    for (int d : dec.moduli) prod *= d;
    if (prod != v) throw std::logic_error("decompose_abelian: basis orders do not multiply to |G|");

    dec.element_of_tuple.assign(static_cast<std::size_t>(v), -1);
    dec.tuple_of_element.assign(static_cast<std::size_t>(v), -1);
    // enumerate all tuples mixed-radix and map to products of basis powers
    std::vector<int> tup(dec.moduli.size(), 0);
    for (int t = 0; t < v; ++t) {
        int g = 0;
        int rest = t;
        for (std::size_t i = 0; i < dec.moduli.size(); ++i) {
            int e = rest % dec.moduli[i];
            rest /= dec.moduli[i];
            g = G.op(g, G.pow(basis[i], e));
        }
        if (dec.tuple_of_element[static_cast<std::size_t>(g)] != -1)
            throw std::logic_error("decompose_abelian: tuple map is not injective");
        dec.element_of_tuple[static_cast<std::size_t>(t)] = g;
        dec.tuple_of_element[static_cast<std::size_t>(g)] = t;
    }
    return dec;
}

}  // namespace

SchurExtraction extract_rds_from_schur_group(const MubFamily& family) {
    if (!family.lines.is_exact())
        throw std::invalid_argument("extract_rds_from_schur_group: requires an exact family");
    if (!family.lines.partition())
        throw std::invalid_argument("extract_rds_from_schur_group: requires a partition");
    const auto& F = family.lines.exact_family();
    const Eigen::Index k = family.lines.dim();

    // locate the standard basis part (one nonzero coordinate per vector)
    const Partition& parts = *family.lines.partition();
    int std_part = -1;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        bool all_monomial = true;
        for (int idx : parts[p]) {
            int nonzero = 0;
            for (Eigen::Index r = 0; r < k; ++r)
                if (!F.vectors(r, idx).is_zero()) ++nonzero;
            if (nonzero != 1) {
                all_monomial = false;
                break;
            }
        }
        if (all_monomial) {
            std_part = static_cast<int>(p);
            break;
        }
    }
    if (std_part < 0)
        throw std::invalid_argument("extract_rds_from_schur_group: family has no standard basis part");

    // collect the Schur-normalized character vectors
    std::vector<int> members;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        if (static_cast<int>(p) == std_part) continue;
        for (int idx : parts[p]) members.push_back(idx);
    }
    const int nk = static_cast<int>(members.size());

    const int order = family.lines.cyclotomic_order();
    auto vector_key = [&](const CycVector& v) {
        std::string key;
        for (Eigen::Index r = 0; r < k; ++r) {
            key += v(r).key_at_order(order);
            key += '|';
        }
        return key;
    };

    std::vector<CycVector> vecs;
    std::unordered_map<std::string, int> index_of;
    for (int i = 0; i < nk; ++i) {
        CycVector v = F.vectors.col(members[static_cast<std::size_t>(i)]);
        for (Eigen::Index r = 0; r < k; ++r)
            if (!(v(r).abs_squared() == Cyclotomic(1)))
                throw std::invalid_argument(
                    "extract_rds_from_schur_group: non-flat basis vector (entry of non-unit modulus at "
                    "row " + std::to_string(r) + ")");
        index_of.emplace(vector_key(v), i);
        vecs.push_back(std::move(v));
    }
    if (static_cast<int>(index_of.size()) != nk)
        throw std::invalid_argument("extract_rds_from_schur_group: repeated vectors in the family");

    SchurExtraction out;

    // identity: the all-ones vector
    CycVector ones(k);
    for (Eigen::Index r = 0; r < k; ++r) ones(r) = Cyclotomic(1);
    auto id_it = index_of.find(vector_key(ones));
    if (id_it == index_of.end()) {
        out.message = "not a Schur group: the all-ones vector is missing";
        out.cert.message = out.message;
        return out;
    }
    const int id_idx = id_it->second;

    // closure under Schur multiplication; witness pair on failure
    std::vector<std::vector<int>> table(static_cast<std::size_t>(nk),
                                        std::vector<int>(static_cast<std::size_t>(nk), -1));
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nk; ++j) {
            CycVector prod(k);
            for (Eigen::Index r = 0; r < k; ++r) prod(r) = vecs[static_cast<std::size_t>(i)](r) * vecs[static_cast<std::size_t>(j)](r);
            auto it = index_of.find(vector_key(prod));
            if (it == index_of.end()) {
                out.message = "not Schur-closed: product of vectors " + std::to_string(i) + " and " +
                              std::to_string(j) + " leaves the family";
                out.cert.message = out.message;
                return out;
            }
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = it->second;
        }

    // relabel so the identity sits at index 0
    std::vector<int> relabel(static_cast<std::size_t>(nk));
    for (int i = 0; i < nk; ++i) relabel[static_cast<std::size_t>(i)] = i;
    std::swap(relabel[0], relabel[static_cast<std::size_t>(id_idx)]);
    std::vector<int> position(static_cast<std::size_t>(nk));
    for (int i = 0; i < nk; ++i) position[static_cast<std::size_t>(relabel[static_cast<std::size_t>(i)])] = i;

    SmallGroup gamma(nk, [&](int a, int b) {
        int raw = table[static_cast<std::size_t>(relabel[static_cast<std::size_t>(a)])]
                       [static_cast<std::size_t>(relabel[static_cast<std::size_t>(b)])];
        return position[static_cast<std::size_t>(raw)];
    });

    SmallDecomposition dec = decompose_abelian(gamma);
    ProductGroup dual(dec.moduli);
    const int N = dual.character_root_order();

    // each coordinate projection is a character of Gamma; express it as a
    // dual-group label via its values on the basis elements
    std::unordered_map<std::string, int> root_exponent;
    for (int e = 0; e < N; ++e)
        root_exponent.emplace(Cyclotomic::root_of_unity(N, e).key_at_order(N), e);
    auto gamma_entry_exp = [&](int gamma_elt, Eigen::Index row) {
        const Cyclotomic& val = vecs[static_cast<std::size_t>(relabel[static_cast<std::size_t>(gamma_elt)])](row);
        auto it = root_exponent.find(val.key_at_order(N));
        if (it == root_exponent.end())
            throw std::logic_error("Schur group entry is not an N-th root of unity");
        return it->second;
    };

    std::vector<int> D;  // projection characters, kept in coordinate order
    for (Eigen::Index row = 0; row < k; ++row) {
        // label components from the values on the basis elements
        std::vector<int> label_tuple;
        for (std::size_t bi = 0; bi < dec.moduli.size(); ++bi) {
            std::vector<int> unit(dec.moduli.size(), 0);
            unit[bi] = 1;
            int basis_elt = dec.element_of_tuple[static_cast<std::size_t>(dual.from_tuple(unit))];
            int e = gamma_entry_exp(basis_elt, row);
            int d = dec.moduli[bi];
            if ((e * d) % N != 0)
                throw std::logic_error("projection character has wrong order on a basis element");
            label_tuple.push_back((e * d / N) % d);
        }
        int label = dual.from_tuple(label_tuple);
        // verify against every group element
        for (int g = 0; g < nk; ++g) {
            int elt = dec.element_of_tuple[static_cast<std::size_t>(g)];
            if (dual.character_exponent(label, g) != gamma_entry_exp(elt, row))
                throw std::logic_error("projection character mismatch");
        }
        D.push_back(label);
    }
    if (std::set<int>(D.begin(), D.end()).size() != static_cast<std::size_t>(k))
        throw std::logic_error("coordinate projections are not pairwise distinct characters");

    // B1 = the basis containing the all-ones vector, mapped into Gamma
    std::vector<int> b1_gamma;
    {
        int member_pos = -1;
        // which part holds the identity vector
        int id_member = members[static_cast<std::size_t>(id_idx)];
        for (std::size_t p = 0; p < parts.size(); ++p) {
            if (static_cast<int>(p) == std_part) continue;
            for (int idx : parts[p])
                if (idx == id_member) member_pos = static_cast<int>(p);
        }
        for (int idx : parts[static_cast<std::size_t>(member_pos)]) {
            // position of this member in the Gamma labelling
            int mi = -1;
            for (int i = 0; i < nk; ++i)
                if (members[static_cast<std::size_t>(i)] == idx) mi = i;
            b1_gamma.push_back(dec.tuple_of_element[static_cast<std::size_t>(position[static_cast<std::size_t>(mi)])]);
        }
    }
    // N := annihilator of B1 inside the dual group
    std::vector<int> b1_elements;
    for (int g : b1_gamma) b1_elements.push_back(g);
    std::vector<int> forbidden;
    for (int label = 0; label < dual.order(); ++label) {
        bool trivial = true;
        for (int g : b1_elements)
            if (dual.character_exponent(label, g) != 0) {
                trivial = false;
                break;
            }
        if (trivial) forbidden.push_back(label);
    }

    out.cert = is_relative_difference_set(dual, forbidden, D);
    out.dual = std::move(dual);
    out.forbidden = std::move(forbidden);
    out.D = std::move(D);
    if (!out.cert.ok) out.message = "extracted set failed certification: " + out.cert.message;
    return out;
}

}  // namespace cyclolines

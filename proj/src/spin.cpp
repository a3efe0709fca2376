#include "cyclolines/spin.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cyclolines {

namespace {

void require_same_shape(Eigen::Index r1, Eigen::Index c1, Eigen::Index r2, Eigen::Index c2) {
    if (r1 != r2 || c1 != c2) throw std::invalid_argument("schur operation: shape mismatch");
}

template <typename Mat>
Mat schur_product_impl(const Mat& M, const Mat& N) {
    require_same_shape(M.rows(), M.cols(), N.rows(), N.cols());
    Mat R(M.rows(), M.cols());
    for (Eigen::Index c = 0; c < M.cols(); ++c)
        for (Eigen::Index r = 0; r < M.rows(); ++r) R(r, c) = M(r, c) * N(r, c);
    return R;
}

}  // namespace

CycMatrix schur_product(const CycMatrix& M, const CycMatrix& N) { return schur_product_impl(M, N); }
CplxMatrix schur_product(const CplxMatrix& M, const CplxMatrix& N) { return schur_product_impl(M, N); }

namespace {

template <typename Mat>
bool has_zero_entry(const Mat& M, double tol) {
    for (Eigen::Index c = 0; c < M.cols(); ++c)
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            if constexpr (std::is_same_v<typename Mat::Scalar, Cyclotomic>) {
                (void)tol;
                if (M(r, c).is_zero()) return true;
            } else {
                if (std::abs(M(r, c)) <= tol) return true;
            }
        }
    return false;
}

}  // namespace

TypeIIMatrix TypeIIMatrix::wrap(CycMatrix M, std::string meta) {
    TypeIIMatrix t;
    t.backend = ScalarBackend::exact();
    t.meta = std::move(meta);
    TwoOfThreeReport rep = two_of_three_check(M);
    t.type_ii = rep.type_ii;
    t.flat = rep.flat;
    t.unitary_up_to_scale = rep.unitary_up_to_scale;
    if (!has_zero_entry(M, 0.0)) t.schur_inv = schur_inverse(M);
    t.entries = std::move(M);
    return t;
}

TypeIIMatrix TypeIIMatrix::wrap(CplxMatrix M, std::string meta, double tol) {
    TypeIIMatrix t;
    t.backend = ScalarBackend::floating(tol);
    t.meta = std::move(meta);
    TwoOfThreeReport rep = two_of_three_check(M, tol);
    t.type_ii = rep.type_ii;
    t.flat = rep.flat;
    t.unitary_up_to_scale = rep.unitary_up_to_scale;
    if (!has_zero_entry(M, tol)) t.schur_inv = schur_inverse(M);
    t.entries = std::move(M);
    return t;
}

Eigen::Index TypeIIMatrix::order() const {
    return backend.is_exact() ? exact().rows() : floating().rows();
}

CycMatrix schur_inverse(const CycMatrix& M) {
    CycMatrix R(M.rows(), M.cols());
    for (Eigen::Index c = 0; c < M.cols(); ++c)
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            if (M(r, c).is_zero())
                throw std::domain_error("schur_inverse: zero entry at (" + std::to_string(r) + "," +
                                        std::to_string(c) + ")");
            R(r, c) = M(r, c).inverse();
        }
    return R;
}

CplxMatrix schur_inverse(const CplxMatrix& M) {
    CplxMatrix R(M.rows(), M.cols());
    for (Eigen::Index c = 0; c < M.cols(); ++c)
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            if (M(r, c) == std::complex<double>(0.0, 0.0))
                throw std::domain_error("schur_inverse: zero entry");
            R(r, c) = 1.0 / M(r, c);
        }
    return R;
}

TypeIICheck is_type_ii(const CycMatrix& M) {
    TypeIICheck res;
    if (M.rows() != M.cols()) {
        res.message = "matrix is not square";
        return res;
    }
    const Eigen::Index v = M.rows();
    CycMatrix prod = M * schur_inverse(M).transpose();
    for (Eigen::Index r = 0; r < v; ++r)
        for (Eigen::Index c = 0; c < v; ++c) {
            Cyclotomic want = (r == c) ? Cyclotomic(static_cast<long>(v)) : Cyclotomic(0);
            if (!(prod(r, c) == want)) {
                res.row = static_cast<int>(r);
                res.col = static_cast<int>(c);
                res.message = "M M^{o-T} entry (" + std::to_string(r) + "," + std::to_string(c) +
                              ") is " + prod(r, c).to_string();
                return res;
            }
        }
    res.ok = true;
    return res;
}

TypeIICheck is_type_ii(const CplxMatrix& M, double tol) {
    TypeIICheck res;
    if (M.rows() != M.cols()) {
        res.message = "matrix is not square";
        return res;
    }
    const Eigen::Index v = M.rows();
    CplxMatrix prod = M * schur_inverse(M).transpose();
    for (Eigen::Index r = 0; r < v; ++r)
        for (Eigen::Index c = 0; c < v; ++c) {
            std::complex<double> want = (r == c) ? std::complex<double>(static_cast<double>(v), 0.0)
                                                 : std::complex<double>(0.0, 0.0);
            if (std::abs(prod(r, c) - want) > tol) {
                res.row = static_cast<int>(r);
                res.col = static_cast<int>(c);
                res.message = "M M^{o-T} deviates at (" + std::to_string(r) + "," + std::to_string(c) + ")";
                return res;
            }
        }
    res.ok = true;
    return res;
}

namespace {

bool exactly_two(bool a, bool b, bool c) { return (a + b + c) == 2; }

bool unitary_up_to_scale_exact(const CycMatrix& M) {
    if (M.rows() != M.cols()) return false;
    CycMatrix G = M * M.adjoint();
    Cyclotomic scale = G(0, 0);
    if (scale.is_zero()) return false;
    for (Eigen::Index r = 0; r < M.rows(); ++r)
        for (Eigen::Index c = 0; c < M.cols(); ++c) {
            Cyclotomic want = (r == c) ? scale : Cyclotomic(0);
            if (!(G(r, c) == want)) return false;
        }
    return true;
}

bool flat_exact(const CycMatrix& M) {
    Cyclotomic first = M(0, 0).abs_squared();
    for (Eigen::Index c = 0; c < M.cols(); ++c)
        for (Eigen::Index r = 0; r < M.rows(); ++r)
            if (!(M(r, c).abs_squared() == first)) return false;
    return true;
}

}  // namespace

TwoOfThreeReport two_of_three_check(const CycMatrix& M) {
    TwoOfThreeReport rep;
    bool schur_invertible = true;
    for (Eigen::Index c = 0; c < M.cols() && schur_invertible; ++c)
        for (Eigen::Index r = 0; r < M.rows(); ++r)
            if (M(r, c).is_zero()) {
                schur_invertible = false;
                break;
            }
    rep.type_ii = schur_invertible && is_type_ii(M).ok;
    rep.unitary_up_to_scale = unitary_up_to_scale_exact(M);
    rep.flat = flat_exact(M);
    rep.consistent = !exactly_two(rep.type_ii, rep.unitary_up_to_scale, rep.flat);
    return rep;
}

TwoOfThreeReport two_of_three_check(const CplxMatrix& M, double tol) {
    TwoOfThreeReport rep;
    bool schur_invertible = true;
    for (Eigen::Index c = 0; c < M.cols() && schur_invertible; ++c)
        for (Eigen::Index r = 0; r < M.rows(); ++r)
            if (std::abs(M(r, c)) <= tol) {
                schur_invertible = false;
                break;
            }
    rep.type_ii = schur_invertible && is_type_ii(M, tol).ok;
    if (M.rows() == M.cols()) {
        CplxMatrix G = M * M.adjoint();
        double scale = G(0, 0).real();
        rep.unitary_up_to_scale = scale > tol;
        for (Eigen::Index r = 0; r < M.rows() && rep.unitary_up_to_scale; ++r)
            for (Eigen::Index c = 0; c < M.cols(); ++c) {
                std::complex<double> want = (r == c) ? std::complex<double>(scale, 0.0)
                                                     : std::complex<double>(0.0, 0.0);
                if (std::abs(G(r, c) - want) > tol * scale) {
                    rep.unitary_up_to_scale = false;
                    break;
                }
            }
    }
    rep.flat = true;
    double first = std::norm(M(0, 0));
    for (Eigen::Index c = 0; c < M.cols() && rep.flat; ++c)
        for (Eigen::Index r = 0; r < M.rows(); ++r)
            if (std::abs(std::norm(M(r, c)) - first) > tol) {
                rep.flat = false;
                break;
            }
    rep.consistent = !exactly_two(rep.type_ii, rep.unitary_up_to_scale, rep.flat);
    return rep;
}

CycVector schur_ratio(const CycMatrix& M, int i, int j) {
    CycVector r(M.rows());
    for (Eigen::Index u = 0; u < M.rows(); ++u) {
        if (M(u, j).is_zero()) throw std::domain_error("schur_ratio: zero entry in denominator column");
        r(u) = M(u, i) / M(u, j);
    }
    return r;
}

CplxVector schur_ratio(const CplxMatrix& M, int i, int j) {
    CplxVector r(M.rows());
    for (Eigen::Index u = 0; u < M.rows(); ++u) r(u) = M(u, i) / M(u, j);
    return r;
}

SpinCheck is_spin_model(const CycMatrix& W) {
    SpinCheck res;
    TypeIICheck t2 = is_type_ii(W);
    if (!t2.ok) {
        res.message = "not a type-II matrix: " + t2.message;
        return res;
    }
    const Eigen::Index v = W.rows();
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) {
            CycVector r = schur_ratio(W, i, j);
            CycVector wr = W * r;
            Cyclotomic mu = wr(0) / r(0);
            for (Eigen::Index u = 0; u < v; ++u) {
                if (!(wr(u) == mu * r(u))) {
                    res.i = i;
                    res.j = j;
                    res.message = "ratio W_{" + std::to_string(i) + "/" + std::to_string(j) +
                                  "} is not an eigenvector";
                    return res;
                }
            }
        }
    res.ok = true;
    return res;
}

SpinCheck is_spin_model(const CplxMatrix& W, double tol) {
    SpinCheck res;
    TypeIICheck t2 = is_type_ii(W, tol);
    if (!t2.ok) {
        res.message = "not a type-II matrix: " + t2.message;
        return res;
    }
    const Eigen::Index v = W.rows();
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) {
            CplxVector r = schur_ratio(W, i, j);
            CplxVector wr = W * r;
            // deterministic eigenvalue extraction from the first coordinate,
            // residual measured relative to |r|
            std::complex<double> mu = wr(0) / r(0);
            double resid = (wr - mu * r).norm() / r.norm();
            if (resid > tol) {
                res.i = i;
                res.j = j;
                res.message = "ratio residual " + std::to_string(resid) + " exceeds tolerance";
                return res;
            }
        }
    res.ok = true;
    return res;
}

PottsMatrix potts(int v, int sign) {
    if (v < 1) throw std::invalid_argument("potts: order must be positive");
    if (sign != 1 && sign != -1) throw std::invalid_argument("potts: sign must be +1 or -1");
    PottsMatrix P;
    P.v = v;
    const std::int64_t disc = static_cast<std::int64_t>(v) * v - 4 * v;
    std::int64_t root = disc >= 0 ? std::llround(std::sqrt(static_cast<double>(disc))) : -1;
    if (disc >= 0 && root * root == disc && (v % 2 == root % 2)) {
        // a is rational (v = 4 gives a = -1)
        Rational a(-v + 2 + sign * root, 2);
        a.canonicalize();
        P.exact = true;
        P.a_text = a.get_str();
        P.exact_matrix.resize(v, v);
        for (int r = 0; r < v; ++r)
            for (int c = 0; c < v; ++c)
                P.exact_matrix(r, c) = (r == c) ? Cyclotomic(a) : Cyclotomic(1);
        return P;
    }
    std::complex<double> root_c = disc >= 0
                                      ? std::complex<double>(std::sqrt(static_cast<double>(disc)), 0.0)
                                      : std::complex<double>(0.0, std::sqrt(static_cast<double>(-disc)));
    std::complex<double> a = (std::complex<double>(-v + 2, 0.0) + static_cast<double>(sign) * root_c) / 2.0;
    std::ostringstream text;
    text << a.real();
    if (std::abs(a.imag()) > 0) text << (a.imag() >= 0 ? "+" : "") << a.imag() << "i";
    P.a_text = text.str();
    P.float_matrix.resize(v, v);
    for (int r = 0; r < v; ++r)
        for (int c = 0; c < v; ++c)
            P.float_matrix(r, c) = (r == c) ? a : std::complex<double>(1.0, 0.0);
    return P;
}

CycMatrix quadratic_circulant(int n) {
    // theta^2 must be a primitive n-th root AND d -> theta^(d^2) must be
    // n-periodic (theta^(n^2) = 1), or the matrix is not a circulant and
    // the ratio vectors stop being eigenvectors.  zeta_{2n} satisfies both
    // for even n; odd n needs ord(theta) | n, e.g. theta = zeta_n.
    int order = (n % 2 == 0) ? 2 * n : n;
    return quadratic_circulant(n, Cyclotomic::root_of_unity(order, 1));
}

CycMatrix quadratic_circulant(int n, const Cyclotomic& theta) {
    if (n < 2) throw std::invalid_argument("quadratic_circulant: n must be at least 2");
    CycMatrix W(n, n);
    // powers of theta cached up to the largest square
    std::vector<Cyclotomic> pow(static_cast<std::size_t>(n) * n + 1, Cyclotomic(1));
    for (std::size_t e = 1; e < pow.size(); ++e) pow[e] = pow[e - 1] * theta;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            int d = r - c;
            W(r, c) = pow[static_cast<std::size_t>(d) * d];
        }
    return W;
}

std::vector<CycMatrix> spin_diagonals(const CycMatrix& A) {
    const Eigen::Index n = A.rows();
    if (!flat_exact(A) || !(A(0, 0).abs_squared() == Cyclotomic(1)))
        throw std::invalid_argument("spin_diagonals: A must be flat with unit-modulus entries");
    CycMatrix Ainv = schur_inverse(A);
    std::vector<CycMatrix> ds;
    for (Eigen::Index j = 0; j < n; ++j) {
        CycMatrix D(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
                D(r, c) = (r == c) ? Ainv(r, j) : Cyclotomic(0);
        ds.push_back(std::move(D));
    }
    return ds;
}

SpinDualityReport spin_duality_check(const CycMatrix& A) {
    SpinDualityReport rep;
    const Eigen::Index n = A.rows();
    if (n != A.cols()) throw std::invalid_argument("spin_duality_check: square matrix required");
    if (!flat_exact(A) || !(A(0, 0).abs_squared() == Cyclotomic(1)))
        throw std::invalid_argument("spin_duality_check: A must be flat with unit-modulus entries");
    if (!unitary_up_to_scale_exact(A))
        throw std::invalid_argument("spin_duality_check: A must be unitary up to scale");

    std::vector<CycMatrix> ds = spin_diagonals(A);
    const Cyclotomic n_scalar(static_cast<long>(n));

    rep.identity_ok = true;
    for (Eigen::Index j = 0; j < n && rep.identity_ok; ++j) {
        // braid form of D_j A_u D_j^-1 = A_u^-1 D_j A_u at the unitary
        // normalization A_u = A/sqrt(n):  A D_j A = mu_j D_j A D_j with
        // |mu_j|^2 = n
        CycMatrix lhs = A * ds[static_cast<std::size_t>(j)] * A;
        CycMatrix rhs = ds[static_cast<std::size_t>(j)] * A * ds[static_cast<std::size_t>(j)];
        Cyclotomic mu(0);
        bool found = false;
        for (Eigen::Index c = 0; c < n && !found; ++c)
            for (Eigen::Index r = 0; r < n && !found; ++r)
                if (!rhs(r, c).is_zero()) {
                    mu = lhs(r, c) / rhs(r, c);
                    found = true;
                }
        bool match = found;
        for (Eigen::Index c = 0; c < n && match; ++c)
            for (Eigen::Index r = 0; r < n && match; ++r)
                match = (lhs(r, c) == mu * rhs(r, c));
        if (!match || !(mu.abs_squared() == n_scalar)) {
            rep.identity_ok = false;
            rep.witness_j = static_cast<int>(j);
            rep.message = "diagonal-conjugation identity fails at column " + std::to_string(j);
        } else {
            rep.mu.push_back(std::move(mu));
        }
    }

    rep.diagonal_constant = true;
    for (Eigen::Index r = 1; r < n; ++r)
        if (!(A(r, r) == A(0, 0))) {
            rep.diagonal_constant = false;
            if (rep.message.empty()) rep.message = "diagonal of A is not constant";
            break;
        }

    rep.trace_constant = true;
    Cyclotomic tr0(0);
    for (Eigen::Index j = 0; j < n; ++j) {
        Cyclotomic tr(0);
        for (Eigen::Index r = 0; r < n; ++r) tr += ds[static_cast<std::size_t>(j)](r, r);
        if (j == 0)
            tr0 = tr;
        else if (!(tr == tr0)) {
            rep.trace_constant = false;
            if (rep.message.empty()) rep.message = "tr(D_j) is not constant across j";
            break;
        }
    }

    rep.colsum_constant = true;
    CycMatrix Ainv = schur_inverse(A);
    Cyclotomic cs0(0);
    for (Eigen::Index j = 0; j < n; ++j) {
        Cyclotomic cs(0);
        for (Eigen::Index r = 0; r < n; ++r) cs += Ainv(r, j);
        if (j == 0)
            cs0 = cs;
        else if (!(cs == cs0)) {
            rep.colsum_constant = false;
            if (rep.message.empty()) rep.message = "column sums of A^{o-} are not constant";
            break;
        }
    }

    rep.ok = rep.identity_ok && rep.diagonal_constant && rep.trace_constant && rep.colsum_constant;
    return rep;
}

MubFamily spin_mub_triple(const CycMatrix& A, int j) {
    const Eigen::Index n = A.rows();
    std::vector<CycMatrix> ds = spin_diagonals(A);
    if (j < 0 || j >= static_cast<int>(n)) throw std::invalid_argument("spin_mub_triple: bad column index");
    CycMatrix DA = ds[static_cast<std::size_t>(j)] * A;

    CycMatrix cols(n, 3 * n);
    Partition parts(3);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index x = 0; x < n; ++x) cols(x, r) = Cyclotomic(x == r ? 1 : 0);
        parts[0].push_back(static_cast<int>(r));
    }
    for (Eigen::Index c = 0; c < n; ++c) {
        cols.col(n + c) = A.col(c);
        parts[1].push_back(static_cast<int>(n + c));
    }
    for (Eigen::Index c = 0; c < n; ++c) {
        cols.col(2 * n + c) = DA.col(c);
        parts[2].push_back(static_cast<int>(2 * n + c));
    }
    MubFamily fam;
    fam.includes_standard_basis = true;
    fam.basis_labels = {"standard", "A", "D_" + std::to_string(j) + " A"};
    fam.lines = LineSet::exact(std::move(cols), parts,
                               "spin-mub-triple j=" + std::to_string(j));
    MubReport rep = is_mub_family(fam.lines);
    if (!rep.ok) throw std::logic_error("spin_mub_triple: triple failed is_mub_family: " + rep.message);
    return fam;
}

MubSubsetsReport spin_family_mub_subsets(const CycMatrix& A) {
    const Eigen::Index n = A.rows();
    std::vector<CycMatrix> candidates;
    CycMatrix identity(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) identity(r, c) = Cyclotomic(r == c ? 1 : 0);
    candidates.push_back(identity);
    candidates.push_back(A);
    for (const CycMatrix& D : spin_diagonals(A)) candidates.push_back(D * A);

    const int b = static_cast<int>(candidates.size());
    MubSubsetsReport rep;
    rep.candidate_bases = b;

    auto columns_orthogonal = [&](const CycMatrix& M) {
        CycMatrix G = M.adjoint() * M;
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
                if (r != c && !G(r, c).is_zero()) return false;
        return true;
    };
    auto pair_unbiased = [&](const CycMatrix& M, const CycMatrix& N) {
        // normalized |<m_i, n_j>|^2 = 1/n for all columns
        for (Eigen::Index i = 0; i < n; ++i) {
            Cyclotomic ni(0);
            for (Eigen::Index r = 0; r < n; ++r) ni += M(r, i).abs_squared();
            for (Eigen::Index j = 0; j < n; ++j) {
                Cyclotomic nj(0);
                for (Eigen::Index r = 0; r < n; ++r) nj += N(r, j).abs_squared();
                Cyclotomic ip(0);
                for (Eigen::Index r = 0; r < n; ++r) ip += M(r, i).conjugate() * N(r, j);
                if (!(ip.abs_squared() * Cyclotomic(static_cast<long>(n)) == ni * nj)) return false;
            }
        }
        return true;
    };

    rep.orthogonal.resize(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i) rep.orthogonal[static_cast<std::size_t>(i)] = columns_orthogonal(candidates[static_cast<std::size_t>(i)]);
    rep.unbiased.assign(static_cast<std::size_t>(b), std::vector<bool>(static_cast<std::size_t>(b), false));
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j) {
            bool u = pair_unbiased(candidates[static_cast<std::size_t>(i)], candidates[static_cast<std::size_t>(j)]);
            rep.unbiased[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = u;
            rep.unbiased[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = u;
        }

    // maximal cliques in the unbiasedness graph over orthogonal candidates
    std::vector<std::vector<int>> families;
    const int limit = 1 << b;
    for (int mask = 1; mask < limit; ++mask) {
        bool valid = true;
        std::vector<int> members;
        for (int i = 0; i < b && valid; ++i) {
            if (!(mask & (1 << i))) continue;
            if (!rep.orthogonal[static_cast<std::size_t>(i)]) valid = false;
            for (int j = i + 1; j < b && valid; ++j)
                if ((mask & (1 << j)) && !rep.unbiased[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) valid = false;
            members.push_back(i);
        }
        if (!valid || members.size() < 2) continue;
        // keep only inclusion-maximal sets
        bool extendable = false;
        for (int extra = 0; extra < b && !extendable; ++extra) {
            if (mask & (1 << extra)) continue;
            if (!rep.orthogonal[static_cast<std::size_t>(extra)]) continue;
            bool fits = true;
            for (int i : members)
                if (!rep.unbiased[static_cast<std::size_t>(i)][static_cast<std::size_t>(extra)]) {
                    fits = false;
                    break;
                }
            extendable = fits;
        }
        if (!extendable) families.push_back(members);
    }
    rep.maximal_families = std::move(families);
    return rep;
}

}  // namespace cyclolines

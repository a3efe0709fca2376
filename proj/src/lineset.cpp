#include "cyclolines/lineset.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cyclolines/parallel.hpp"

namespace cyclolines {

namespace {

void check_partition(const Partition& parts, Eigen::Index dim, Eigen::Index m) {
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    for (const auto& part : parts) {
        if (static_cast<Eigen::Index>(part.size()) != dim)
            throw std::invalid_argument("partition part has " + std::to_string(part.size()) +
                                        " vectors, expected " + std::to_string(dim));
        for (int idx : part) {
            if (idx < 0 || idx >= m) throw std::invalid_argument("partition index out of range");
            if (seen[static_cast<std::size_t>(idx)]) throw std::invalid_argument("partition repeats index " + std::to_string(idx));
            seen[static_cast<std::size_t>(idx)] = 1;
        }
    }
    for (Eigen::Index i = 0; i < m; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            throw std::invalid_argument("partition misses index " + std::to_string(i));
}

// -------------------------------------------------------------------------
// fast exact engine for families whose entries are all zero or N-th roots
// of unity (character constructions, Pauli eigenbases, circulants).  A pair
// inner product reduces to an exponent histogram; its squared modulus is an
// integer polynomial in zeta_N compared exactly after reduction mod Phi_N.

struct UnitEncoding {
    int N = 1;
    int phi = 1;
    std::vector<std::int64_t> phi_poly;  // Phi_N, low degree first, monic
    Eigen::Index dim = 0, m = 0;
    std::vector<std::int32_t> exps;  // column-major m blocks of dim; -1 = zero entry
    std::vector<std::int64_t> norm2;

    const std::int32_t* column(Eigen::Index j) const { return exps.data() + j * dim; }
};

std::optional<UnitEncoding> try_unit_encode(const VectorFamily<Cyclotomic>& F, int N) {
    UnitEncoding enc;
    enc.N = N;
    const auto& phi_big = cyclotomic_polynomial(N);
    enc.phi = static_cast<int>(phi_big.size()) - 1;
    enc.phi_poly.resize(phi_big.size());
    for (std::size_t i = 0; i < phi_big.size(); ++i) {
        if (!phi_big[i].fits_slong_p()) return std::nullopt;
        enc.phi_poly[i] = phi_big[i].get_si();
    }
    enc.dim = F.vectors.rows();
    enc.m = F.vectors.cols();
    enc.exps.assign(static_cast<std::size_t>(enc.dim * enc.m), -1);

    std::unordered_map<std::string, std::int32_t> root_key;
    for (int e = 0; e < N; ++e)
        root_key.emplace(Cyclotomic::root_of_unity(N, e).key_at_order(N), e);

    for (Eigen::Index j = 0; j < enc.m; ++j) {
        std::int64_t nonzero = 0;
        for (Eigen::Index r = 0; r < enc.dim; ++r) {
            const Cyclotomic& x = F.vectors(r, j);
            if (x.is_zero()) continue;
            auto it = root_key.find(x.key_at_order(N));
            if (it == root_key.end()) return std::nullopt;
            enc.exps[static_cast<std::size_t>(j * enc.dim + r)] = it->second;
            ++nonzero;
        }
        enc.norm2.push_back(nonzero);
        if (!(F.norm2[static_cast<std::size_t>(j)] == Cyclotomic(static_cast<long>(nonzero))))
            return std::nullopt;  // cached norm disagrees; fall back to the generic path
    }
    return enc;
}

// Scratch buffers reused across pairs by one worker.
struct PairScratch {
    std::vector<std::int64_t> counts;  // size N
    std::vector<std::int64_t> w;       // size N, |ip|^2 exponent polynomial
};

// w = reduced polynomial of |<u,v>|^2 in zeta_N; returns span of length phi.
void pair_abs2_poly(const UnitEncoding& enc, Eigen::Index i, Eigen::Index j, PairScratch& s) {
    const int N = enc.N;
    s.counts.assign(static_cast<std::size_t>(N), 0);
    const std::int32_t* u = enc.column(i);
    const std::int32_t* v = enc.column(j);
    for (Eigen::Index r = 0; r < enc.dim; ++r) {
        if (u[r] < 0 || v[r] < 0) continue;
        int d = v[r] - u[r];  // <u,v> sums conj(u_r) v_r = zeta^(v_r - u_r)
        if (d < 0) d += N;
        ++s.counts[static_cast<std::size_t>(d)];
    }
    // |z|^2 = sum_d (sum_e c_e c_{e+d}) zeta^d : cyclic autocorrelation
    s.w.assign(static_cast<std::size_t>(N), 0);
    for (int e = 0; e < N; ++e) {
        std::int64_t ce = s.counts[static_cast<std::size_t>(e)];
        if (ce == 0) continue;
        for (int f = 0; f < N; ++f) {
            std::int64_t cf = s.counts[static_cast<std::size_t>(f)];
            if (cf == 0) continue;
            int d = f - e;
            if (d < 0) d += N;
            s.w[static_cast<std::size_t>(d)] += ce * cf;
        }
    }
    // reduce mod Phi_N
    for (int d = N - 1; d >= enc.phi; --d) {
        std::int64_t c = s.w[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        s.w[static_cast<std::size_t>(d)] = 0;
        for (int t = 0; t < enc.phi; ++t)
            s.w[static_cast<std::size_t>(d - enc.phi + t)] -= c * enc.phi_poly[static_cast<std::size_t>(t)];
    }
}

// first lexicographic violating pair (i < j), scanning pair predicates in
// parallel row blocks; `ok(i, j, scratch)` must be pure.
template <typename PairOk>
std::optional<std::pair<int, int>> scan_pairs(Eigen::Index m, PairOk&& ok) {
    if (m < 2) return std::nullopt;
    std::vector<std::optional<std::pair<int, int>>> results(
        static_cast<std::size_t>(parallel_chunk_count(m)));
    std::atomic<int> stop_chunk{std::numeric_limits<int>::max()};

    int chunks = parallel_chunks(m, [&](std::int64_t begin, std::int64_t end, int chunk) {
        if (chunk > stop_chunk.load(std::memory_order_relaxed)) return;
        PairScratch scratch;
        for (std::int64_t i = begin; i < end; ++i) {
            for (std::int64_t j = i + 1; j < m; ++j) {
                if (!ok(static_cast<int>(i), static_cast<int>(j), scratch)) {
                    results[static_cast<std::size_t>(chunk)] = {static_cast<int>(i), static_cast<int>(j)};
                    int prev = stop_chunk.load();
                    while (chunk < prev && !stop_chunk.compare_exchange_weak(prev, chunk)) {
                    }
                    return;
                }
            }
        }
    });
    for (int c = 0; c < chunks; ++c)
        if (results[static_cast<std::size_t>(c)]) return results[static_cast<std::size_t>(c)];
    return std::nullopt;
}

// Exact normalized squared inner product of a generic pair; the cross
// multiplied form avoids division: value(i,j) == p/q iff q*abs2 == p*np.
struct GenericPair {
    const VectorFamily<Cyclotomic>* F;
    Cyclotomic abs2_ip(int i, int j) const {
        Cyclotomic ip(0);
        for (Eigen::Index r = 0; r < F->vectors.rows(); ++r)
            ip += F->vectors(r, i).conjugate() * F->vectors(r, j);
        return ip.abs_squared();
    }
    Cyclotomic norm_prod(int i, int j) const {
        return F->norm2[static_cast<std::size_t>(i)] * F->norm2[static_cast<std::size_t>(j)];
    }
};

std::string pair_text(const std::optional<std::pair<int, int>>& w) {
    if (!w) return "";
    return "(" + std::to_string(w->first) + "," + std::to_string(w->second) + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// LineSet

LineSet LineSet::exact(CycMatrix columns, std::optional<Partition> partition, std::string meta) {
    if (columns.cols() == 0 || columns.rows() == 0)
        throw std::invalid_argument("LineSet: empty vector family");
    int N = 1;
    for (Eigen::Index j = 0; j < columns.cols(); ++j)
        for (Eigen::Index r = 0; r < columns.rows(); ++r)
            N = static_cast<int>(std::lcm<std::int64_t>(N, columns(r, j).order()));
    VectorFamily<Cyclotomic> F;
    F.vectors.resize(columns.rows(), columns.cols());
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        Cyclotomic n2(0);
        for (Eigen::Index r = 0; r < columns.rows(); ++r) {
            F.vectors(r, j) = columns(r, j).to_order(N);
            n2 += F.vectors(r, j).abs_squared();
        }
        if (n2.is_zero()) throw std::invalid_argument("LineSet: zero vector at column " + std::to_string(j));
        F.norm2.push_back(n2);
    }
    if (partition) check_partition(*partition, columns.rows(), columns.cols());
    F.partition = std::move(partition);
    F.meta = std::move(meta);
    LineSet ls;
    ls.backend = ScalarBackend::exact();
    ls.family = std::move(F);
    return ls;
}

LineSet LineSet::floating(CplxMatrix columns, std::optional<Partition> partition, std::string meta,
                          double tolerance) {
    if (columns.cols() == 0 || columns.rows() == 0)
        throw std::invalid_argument("LineSet: empty vector family");
    VectorFamily<std::complex<double>> F;
    F.vectors = std::move(columns);
    for (Eigen::Index j = 0; j < F.vectors.cols(); ++j) {
        double n2 = F.vectors.col(j).squaredNorm();
        if (n2 <= tolerance) throw std::invalid_argument("LineSet: zero vector at column " + std::to_string(j));
        F.norm2.push_back({n2, 0.0});
    }
    if (partition) check_partition(*partition, F.vectors.rows(), F.vectors.cols());
    F.partition = std::move(partition);
    F.meta = std::move(meta);
    LineSet ls;
    ls.backend = ScalarBackend::floating(tolerance);
    ls.family = std::move(F);
    return ls;
}

Eigen::Index LineSet::dim() const {
    return is_exact() ? exact_family().vectors.rows() : float_family().vectors.rows();
}

Eigen::Index LineSet::count() const {
    return is_exact() ? exact_family().vectors.cols() : float_family().vectors.cols();
}

const VectorFamily<Cyclotomic>& LineSet::exact_family() const {
    return std::get<VectorFamily<Cyclotomic>>(family);
}

const VectorFamily<std::complex<double>>& LineSet::float_family() const {
    return std::get<VectorFamily<std::complex<double>>>(family);
}

const std::optional<Partition>& LineSet::partition() const {
    return is_exact() ? exact_family().partition : float_family().partition;
}

const std::string& LineSet::meta() const {
    return is_exact() ? exact_family().meta : float_family().meta;
}

int LineSet::cyclotomic_order() const {
    if (!is_exact()) throw std::logic_error("cyclotomic_order on a float line set");
    int N = 1;
    const auto& F = exact_family();
    for (Eigen::Index j = 0; j < F.vectors.cols(); ++j)
        for (Eigen::Index r = 0; r < F.vectors.rows(); ++r)
            N = static_cast<int>(std::lcm<std::int64_t>(N, F.vectors(r, j).order()));
    return N;
}

LineSet LineSet::to_float(double tolerance) const {
    if (!is_exact()) return *this;
    const auto& F = exact_family();
    CplxMatrix cols(F.vectors.rows(), F.vectors.cols());
    for (Eigen::Index j = 0; j < F.vectors.cols(); ++j)
        for (Eigen::Index r = 0; r < F.vectors.rows(); ++r) cols(r, j) = F.vectors(r, j).to_float();
    return floating(std::move(cols), F.partition, F.meta, tolerance);
}

// ---------------------------------------------------------------------------
// equiangularity

EquiangularReport is_equiangular(const LineSet& ls, bool require_positive_angle) {
    EquiangularReport rep;
    const Eigen::Index m = ls.count();
    if (m < 2) {
        rep.kind = EquiangularReport::Fail::TooFewLines;
        rep.message = "need at least two lines";
        return rep;
    }

    if (ls.is_exact()) {
        const auto& F = ls.exact_family();
        GenericPair gp{&F};
        // reference value from the first pair
        Cyclotomic ref_num = gp.abs2_ip(0, 1);
        Cyclotomic ref_den = gp.norm_prod(0, 1);

        std::optional<std::pair<int, int>> witness;
        auto enc = try_unit_encode(F, ls.cyclotomic_order());
        if (enc) {
            // reference as reduced integer polynomial; norms are integers here
            PairScratch rs;
            pair_abs2_poly(*enc, 0, 1, rs);
            std::vector<std::int64_t> ref_w(rs.w.begin(), rs.w.begin() + enc->phi);
            std::int64_t ref_np = enc->norm2[0] * enc->norm2[1];
            witness = scan_pairs(m, [&](int i, int j, PairScratch& s) {
                pair_abs2_poly(*enc, i, j, s);
                for (int t = 0; t < enc->phi; ++t) {
                    std::int64_t lhs = s.w[static_cast<std::size_t>(t)] * ref_np;
                    std::int64_t rhs = ref_w[static_cast<std::size_t>(t)] *
                                       (enc->norm2[static_cast<std::size_t>(i)] * enc->norm2[static_cast<std::size_t>(j)]);
                    if (lhs != rhs) return false;
                }
                return true;
            });
        } else {
            witness = scan_pairs(m, [&](int i, int j, PairScratch&) {
                return gp.abs2_ip(i, j) * ref_den == ref_num * gp.norm_prod(i, j);
            });
        }
        if (witness) {
            rep.kind = EquiangularReport::Fail::UnequalAngle;
            rep.witness = witness;
            rep.message = "pair " + pair_text(witness) + " deviates from the first-pair angle";
            return rep;
        }
        // all pairs share the first-pair value; classify it
        Cyclotomic alpha = ref_num / ref_den;
        if (alpha == Cyclotomic(1)) {
            rep.kind = EquiangularReport::Fail::DuplicateLine;
            rep.witness = {{0, 1}};
            rep.message = "normalized squared inner product 1: duplicate lines";
            return rep;
        }
        if (alpha.is_zero() && require_positive_angle) {
            rep.kind = EquiangularReport::Fail::ZeroAngleRejected;
            rep.message = "orthonormal family rejected because a positive angle was required";
            return rep;
        }
        rep.ok = true;
        if (alpha.is_rational()) rep.alpha = alpha.rational_value();
        rep.alpha_text = alpha.to_string();
        rep.alpha_float = alpha.to_float().real();
        return rep;
    }

    const auto& F = ls.float_family();
    const double tol = ls.backend.tolerance;
    auto value = [&](int i, int j) {
        std::complex<double> ip = F.vectors.col(i).dot(F.vectors.col(j));
        return std::norm(ip) / (F.norm2[static_cast<std::size_t>(i)].real() * F.norm2[static_cast<std::size_t>(j)].real());
    };
    double ref = value(0, 1);
    auto witness = scan_pairs(m, [&](int i, int j, PairScratch&) {
        return std::abs(value(i, j) - ref) <= tol;
    });
    if (witness) {
        rep.kind = EquiangularReport::Fail::UnequalAngle;
        rep.witness = witness;
        rep.message = "pair " + pair_text(witness) + " deviates from the first-pair angle";
        return rep;
    }
    if (std::abs(ref - 1.0) <= tol) {
        rep.kind = EquiangularReport::Fail::DuplicateLine;
        rep.witness = {{0, 1}};
        rep.message = "normalized squared inner product 1: duplicate lines";
        return rep;
    }
    if (ref <= tol && require_positive_angle) {
        rep.kind = EquiangularReport::Fail::ZeroAngleRejected;
        rep.message = "orthonormal family rejected because a positive angle was required";
        return rep;
    }
    rep.ok = true;
    rep.alpha_float = ref;
    rep.alpha_text = std::to_string(ref);
    return rep;
}

// ---------------------------------------------------------------------------
// mutually unbiased bases

MubReport is_mub_family(const LineSet& ls) {
    if (!ls.partition()) throw std::invalid_argument("is_mub_family: partition required");
    MubReport rep;
    rep.dim = ls.dim();
    rep.bases = static_cast<int>(ls.partition()->size());
    const Eigen::Index m = ls.count();
    const std::int64_t k = ls.dim();

    if (rep.bases > k + 1) {
        rep.message = "too many bases: " + std::to_string(rep.bases) + " > dim+1";
        return rep;
    }
    std::vector<int> part_of(static_cast<std::size_t>(m), -1);
    for (std::size_t p = 0; p < ls.partition()->size(); ++p)
        for (int idx : (*ls.partition())[p]) part_of[static_cast<std::size_t>(idx)] = static_cast<int>(p);

    std::optional<std::pair<int, int>> witness;
    if (ls.is_exact()) {
        const auto& F = ls.exact_family();
        auto enc = try_unit_encode(F, ls.cyclotomic_order());
        if (enc) {
            witness = scan_pairs(m, [&](int i, int j, PairScratch& s) {
                pair_abs2_poly(*enc, i, j, s);
                const bool same = part_of[static_cast<std::size_t>(i)] == part_of[static_cast<std::size_t>(j)];
                std::int64_t target0 = 0;
                if (!same) {
                    // k * value == norm product
                    std::int64_t np = enc->norm2[static_cast<std::size_t>(i)] * enc->norm2[static_cast<std::size_t>(j)];
                    if (np % k != 0) return false;
                    target0 = np / k;
                }
                if (s.w[0] != target0) return false;
                for (int t = 1; t < enc->phi; ++t)
                    if (s.w[static_cast<std::size_t>(t)] != 0) return false;
                return true;
            });
        } else {
            GenericPair gp{&F};
            witness = scan_pairs(m, [&](int i, int j, PairScratch&) {
                Cyclotomic v = gp.abs2_ip(i, j);
                if (part_of[static_cast<std::size_t>(i)] == part_of[static_cast<std::size_t>(j)])
                    return v.is_zero();
                return v * Cyclotomic(static_cast<long>(k)) == gp.norm_prod(i, j);
            });
        }
    } else {
        const auto& F = ls.float_family();
        const double tol = ls.backend.tolerance;
        witness = scan_pairs(m, [&](int i, int j, PairScratch&) {
            std::complex<double> ip = F.vectors.col(i).dot(F.vectors.col(j));
            double v = std::norm(ip) /
                       (F.norm2[static_cast<std::size_t>(i)].real() * F.norm2[static_cast<std::size_t>(j)].real());
            double target = (part_of[static_cast<std::size_t>(i)] == part_of[static_cast<std::size_t>(j)]) ? 0.0 : 1.0 / static_cast<double>(k);
            return std::abs(v - target) <= tol;
        });
    }

    if (witness) {
        rep.witness = witness;
        bool same = part_of[static_cast<std::size_t>(witness->first)] == part_of[static_cast<std::size_t>(witness->second)];
        rep.message = std::string(same ? "within-basis orthogonality" : "cross-basis unbiasedness") +
                      " fails at pair " + pair_text(witness);
        return rep;
    }
    rep.ok = true;
    return rep;
}

// ---------------------------------------------------------------------------

bool is_flat(const LineSet& ls) {
    if (ls.is_exact()) {
        const auto& F = ls.exact_family();
        for (Eigen::Index j = 0; j < F.vectors.cols(); ++j) {
            Cyclotomic first = F.vectors(0, j).abs_squared();
            for (Eigen::Index r = 1; r < F.vectors.rows(); ++r)
                if (!(F.vectors(r, j).abs_squared() == first)) return false;
        }
        return true;
    }
    const auto& F = ls.float_family();
    const double tol = ls.backend.tolerance;
    for (Eigen::Index j = 0; j < F.vectors.cols(); ++j) {
        double first = std::norm(F.vectors(0, j));
        for (Eigen::Index r = 1; r < F.vectors.rows(); ++r)
            if (std::abs(std::norm(F.vectors(r, j)) - first) > tol) return false;
    }
    return true;
}

Rational relative_bound(std::int64_t k, const Rational& alpha) {
    Rational ka = Rational(k) * alpha;
    if (ka >= 1) throw std::domain_error("relative_bound requires k*alpha < 1");
    Rational num = Rational(k) - ka;
    Rational den = Rational(1) - ka;
    Rational r = num / den;
    r.canonicalize();
    return r;
}

bool relative_bound_met_with_equality(std::int64_t m, std::int64_t k, const Rational& alpha) {
    return Rational(m) == relative_bound(k, alpha);
}

// ---------------------------------------------------------------------------
// Gram

std::size_t GramReport::index(int i, int j) const {
    if (i >= j) throw std::invalid_argument("GramReport::index wants i < j");
    std::int64_t ii = i;
    return static_cast<std::size_t>(ii * (2 * m - ii - 1) / 2 + (j - i - 1));
}

GramReport gram(const LineSet& ls) {
    GramReport rep;
    rep.m = ls.count();
    rep.exact = ls.is_exact();
    std::map<std::string, std::int64_t> hist;
    if (ls.is_exact()) {
        const auto& F = ls.exact_family();
        GenericPair gp{&F};
        for (int i = 0; i < rep.m; ++i)
            for (int j = i + 1; j < rep.m; ++j) {
                Cyclotomic v = gp.abs2_ip(i, j) / gp.norm_prod(i, j);
                ++hist[v.to_string()];
                rep.exact_values.push_back(std::move(v));
            }
    } else {
        const auto& F = ls.float_family();
        for (int i = 0; i < rep.m; ++i)
            for (int j = i + 1; j < rep.m; ++j) {
                std::complex<double> ip = F.vectors.col(i).dot(F.vectors.col(j));
                double v = std::norm(ip) /
                           (F.norm2[static_cast<std::size_t>(i)].real() * F.norm2[static_cast<std::size_t>(j)].real());
                std::ostringstream key;
                key.precision(12);
                key << v;
                ++hist[key.str()];
                rep.float_values.push_back(v);
            }
    }
    rep.histogram.assign(hist.begin(), hist.end());
    return rep;
}

void export_gram_csv(const LineSet& ls, std::ostream& out) {
    const Eigen::Index m = ls.count();
    if (ls.is_exact()) {
        out << "row,col,num,den\n";
        const auto& F = ls.exact_family();
        GenericPair gp{&F};
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                Cyclotomic v = gp.abs2_ip(i, j) / gp.norm_prod(i, j);
                if (!v.is_rational())
                    throw std::domain_error("gram entry (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") is not rational: " + v.to_string() + "; use JSON output");
                Rational r = v.rational_value();
                out << i << "," << j << "," << r.get_num().get_str() << "," << r.get_den().get_str() << "\n";
            }
        return;
    }
    out << "row,col,value\n";
    const auto& F = ls.float_family();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::complex<double> ip = F.vectors.col(i).dot(F.vectors.col(j));
            double v = std::norm(ip) /
                       (F.norm2[static_cast<std::size_t>(i)].real() * F.norm2[static_cast<std::size_t>(j)].real());
            out << i << "," << j << "," << v << "\n";
        }
}

// ---------------------------------------------------------------------------
// restricted equivalence

std::optional<ColumnMatch<Cyclotomic>> match_columns_up_to_phase(const CycMatrix& A,
                                                                 const CycMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) return std::nullopt;
    const Eigen::Index m = A.cols();
    ColumnMatch<Cyclotomic> match;
    match.perm.assign(static_cast<std::size_t>(m), -1);
    match.scalars.assign(static_cast<std::size_t>(m), Cyclotomic(0));
    std::vector<char> used(static_cast<std::size_t>(m), 0);
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::Index r0 = -1;
        for (Eigen::Index r = 0; r < A.rows(); ++r)
            if (!A(r, i).is_zero()) {
                r0 = r;
                break;
            }
        if (r0 < 0) return std::nullopt;
        bool found = false;
        for (Eigen::Index j = 0; j < m && !found; ++j) {
            if (used[static_cast<std::size_t>(j)] || B(r0, j).is_zero()) continue;
            Cyclotomic s = B(r0, j) / A(r0, i);
            bool all = true;
            for (Eigen::Index r = 0; r < A.rows() && all; ++r)
                all = (B(r, j) == A(r, i) * s);
            if (all) {
                match.perm[static_cast<std::size_t>(i)] = static_cast<int>(j);
                match.scalars[static_cast<std::size_t>(i)] = std::move(s);
                used[static_cast<std::size_t>(j)] = 1;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    return match;
}

std::optional<ColumnMatch<std::complex<double>>> match_columns_up_to_phase(const CplxMatrix& A,
                                                                           const CplxMatrix& B,
                                                                           double tol) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) return std::nullopt;
    const Eigen::Index m = A.cols();
    ColumnMatch<std::complex<double>> match;
    match.perm.assign(static_cast<std::size_t>(m), -1);
    match.scalars.assign(static_cast<std::size_t>(m), 0.0);
    std::vector<char> used(static_cast<std::size_t>(m), 0);
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::Index r0 = -1;
        double best = tol;
        for (Eigen::Index r = 0; r < A.rows(); ++r)
            if (std::abs(A(r, i)) > best) {
                r0 = r;
                best = std::abs(A(r, i));
            }
        if (r0 < 0) return std::nullopt;
        bool found = false;
        for (Eigen::Index j = 0; j < m && !found; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            std::complex<double> s = B(r0, j) / A(r0, i);
            if ((B.col(j) - s * A.col(i)).norm() <= tol * A.rows()) {
                match.perm[static_cast<std::size_t>(i)] = static_cast<int>(j);
                match.scalars[static_cast<std::size_t>(i)] = s;
                used[static_cast<std::size_t>(j)] = 1;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    return match;
}

CertificateReport equivalence_certificate_check(const LineSet& A, const LineSet& B,
                                                const CycMatrix& U, const std::vector<int>& perm,
                                                const std::vector<Cyclotomic>& scalars) {
    CertificateReport rep;
    if (!A.is_exact() || !B.is_exact()) {
        rep.message = "certificate check requires exact line sets";
        return rep;
    }
    if (A.dim() != B.dim() || A.count() != B.count()) {
        rep.message = "dimension or cardinality mismatch";
        return rep;
    }
    const Eigen::Index k = A.dim();
    const Eigen::Index m = A.count();
    if (U.rows() != k || U.cols() != k) {
        rep.message = "unitary has wrong shape";
        return rep;
    }
    if (static_cast<Eigen::Index>(perm.size()) != m || static_cast<Eigen::Index>(scalars.size()) != m) {
        rep.message = "permutation or scalar list has wrong length";
        return rep;
    }
    std::vector<char> hit(static_cast<std::size_t>(m), 0);
    for (int p : perm) {
        if (p < 0 || p >= m || hit[static_cast<std::size_t>(p)]) {
            rep.message = "perm is not a permutation";
            return rep;
        }
        hit[static_cast<std::size_t>(p)] = 1;
    }

    CycMatrix gram_u = U * U.adjoint();
    for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c) {
            Cyclotomic want = (r == c) ? Cyclotomic(1) : Cyclotomic(0);
            if (!(gram_u(r, c) == want)) {
                rep.message = "U is not unitary (entry " + std::to_string(r) + "," + std::to_string(c) +
                              " of U U* is " + gram_u(r, c).to_string() + ")";
                return rep;
            }
        }

    CycMatrix image = U * A.exact_family().vectors;
    const auto& bvec = B.exact_family().vectors;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (scalars[static_cast<std::size_t>(i)].is_zero()) {
            rep.message = "scalar " + std::to_string(i) + " is zero";
            return rep;
        }
        for (Eigen::Index r = 0; r < k; ++r) {
            if (!(image(r, i) * scalars[static_cast<std::size_t>(i)] == bvec(r, perm[static_cast<std::size_t>(i)]))) {
                rep.message = "vector " + std::to_string(i) + " does not map to its target at row " +
                              std::to_string(r);
                return rep;
            }
        }
    }
    rep.ok = true;
    return rep;
}

bool projectively_equal(const LineSet& A, const LineSet& B) {
    if (!A.is_exact() || !B.is_exact()) throw std::invalid_argument("projectively_equal requires exact sets");
    if (A.dim() != B.dim() || A.count() != B.count()) return false;
    auto match = match_columns_up_to_phase(A.exact_family().vectors, B.exact_family().vectors);
    if (!match) return false;
    if (A.partition() && B.partition()) {
        std::vector<int> part_b(static_cast<std::size_t>(B.count()), -1);
        for (std::size_t p = 0; p < B.partition()->size(); ++p)
            for (int idx : (*B.partition())[p]) part_b[static_cast<std::size_t>(idx)] = static_cast<int>(p);
        for (const auto& part : *A.partition()) {
            int target = part_b[static_cast<std::size_t>(match->perm[static_cast<std::size_t>(part.front())])];
            for (int idx : part)
                if (part_b[static_cast<std::size_t>(match->perm[static_cast<std::size_t>(idx)])] != target) return false;
        }
    }
    return true;
}

}  // namespace cyclolines

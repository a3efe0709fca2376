#include "cyclolines/pauli.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cyclolines {

CycMatrix PauliOperator::to_matrix() const {
    const Eigen::Index q = static_cast<Eigen::Index>(perm.size());
    CycMatrix M(q, q);
    for (Eigen::Index r = 0; r < q; ++r)
        for (Eigen::Index c = 0; c < q; ++c) M(r, c) = Cyclotomic(0);
    for (Eigen::Index u = 0; u < q; ++u)
        M(perm[static_cast<std::size_t>(u)], u) =
            Cyclotomic::root_of_unity(root_order, phase_exp[static_cast<std::size_t>(u)]);
    return M;
}

PauliSystem::PauliSystem(std::variant<FiniteField, GaloisRing> ctx) : ctx_(std::move(ctx)) {
    q_ = is_even() ? ring().residue_order() : field().order();
}

PauliSystem PauliSystem::odd(FiniteField F) {
    if (F.characteristic() == 2) throw std::invalid_argument("PauliSystem::odd: field has even order");
    return PauliSystem(std::variant<FiniteField, GaloisRing>(std::move(F)));
}

PauliSystem PauliSystem::even(GaloisRing R) {
    return PauliSystem(std::variant<FiniteField, GaloisRing>(std::move(R)));
}

PauliOperator PauliSystem::make(int a, int b) const {
    PauliOperator D;
    D.a = a;
    D.b = b;
    D.root_order = root_order();
    const int q = static_cast<int>(q_);
    D.perm.resize(static_cast<std::size_t>(q));
    D.phase_exp.resize(static_cast<std::size_t>(q));
    if (!is_even()) {
        const FiniteField& F = field();
        for (int u = 0; u < q; ++u) {
            D.perm[static_cast<std::size_t>(u)] = F.add(u, a);
            D.phase_exp[static_cast<std::size_t>(u)] = F.trace(F.mul(b, u));
        }
        return D;
    }
    const GaloisRing& R = ring();
    const std::vector<int>& T = R.teichmuller();
    const int ra = T[static_cast<std::size_t>(a)];
    const int rb = T[static_cast<std::size_t>(b)];
    for (int ui = 0; ui < q; ++ui) {
        int u = T[static_cast<std::size_t>(ui)];
        // X(a): e_u -> e_{u + a + 2 sqrt(ua)}, the Teichmuller element
        // congruent to u + a mod 2
        int shift = R.add(R.add(u, ra), R.scalar_mul(2, R.teich_sqrt(R.mul(u, ra))));
        int ti = -1;
        for (int j = 0; j < q; ++j)
            if (T[static_cast<std::size_t>(j)] == shift) ti = j;
        if (ti < 0) throw std::logic_error("even Pauli shift left the Teichmuller set");
        D.perm[static_cast<std::size_t>(ui)] = ti;
        D.phase_exp[static_cast<std::size_t>(ui)] = R.trace(R.scalar_mul(2, R.mul(rb, u)));
    }
    return D;
}

int PauliSystem::slope_b(int a, int c) const {
    if (!is_even()) {
        const FiniteField& F = field();
        int ac = F.mul(a, c);
        return F.add(ac, ac);
    }
    const GaloisRing& R = ring();
    const std::vector<int>& T = R.teichmuller();
    int prod = R.mul(T[static_cast<std::size_t>(a)], T[static_cast<std::size_t>(c)]);
    for (int j = 0; j < q_; ++j)
        if (T[static_cast<std::size_t>(j)] == prod) return j;
    throw std::logic_error("slope product left the Teichmuller set");
}

CycVector PauliSystem::eigenvector(int c, int d) const {
    const int q = static_cast<int>(q_);
    CycVector v(q);
    if (!is_even()) {
        const FiniteField& F = field();
        const int p = F.characteristic();
        for (int x = 0; x < q; ++x) {
            int dx = F.mul(d, x);
            int e = F.trace(F.add(F.mul(c, F.mul(x, x)), F.add(dx, dx)));
            v(x) = Cyclotomic::root_of_unity(p, e);
        }
        return v;
    }
    const GaloisRing& R = ring();
    const std::vector<int>& T = R.teichmuller();
    const int rc = T[static_cast<std::size_t>(c)];
    const int rd = T[static_cast<std::size_t>(d)];
    for (int xi = 0; xi < q; ++xi) {
        int x = T[static_cast<std::size_t>(xi)];
        int e = R.trace(R.add(R.mul(rc, R.mul(x, x)), R.scalar_mul(2, R.mul(rd, x))));
        v(xi) = Cyclotomic::root_of_unity(4, e);
    }
    return v;
}

CycMatrix PauliSystem::eigenbasis(int c) const {
    const int q = static_cast<int>(q_);
    CycMatrix B(q, q);
    for (int d = 0; d < q; ++d) B.col(d) = eigenvector(c, d);
    return B;
}

Cyclotomic PauliSystem::eigenvalue(int a, int c, int d) const {
    if (!is_even()) {
        const FiniteField& F = field();
        int da = F.mul(d, a);
        int e = F.trace(F.add(F.mul(c, F.mul(a, a)), F.add(da, da)));
        return Cyclotomic::root_of_unity(F.characteristic(), -e);
    }
    const GaloisRing& R = ring();
    const std::vector<int>& T = R.teichmuller();
    int ra = T[static_cast<std::size_t>(a)];
    int e = R.trace(R.add(R.mul(T[static_cast<std::size_t>(c)], R.mul(ra, ra)),
                          R.scalar_mul(2, R.mul(T[static_cast<std::size_t>(d)], ra))));
    return Cyclotomic::root_of_unity(4, -e);
}

std::vector<PauliOperator> PauliSystem::all_operators() const {
    std::vector<PauliOperator> ops;
    for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) ops.push_back(make(a, b));
    return ops;
}

std::vector<std::vector<std::pair<int, int>>> PauliSystem::slope_partition() const {
    std::vector<std::vector<std::pair<int, int>>> classes;
    for (int c = 0; c < q_; ++c) {
        std::vector<std::pair<int, int>> cls;
        for (int a = 0; a < q_; ++a) cls.emplace_back(a, slope_b(a, c));
        classes.push_back(std::move(cls));
    }
    std::vector<std::pair<int, int>> zclass;
    for (int b = 0; b < q_; ++b) zclass.emplace_back(0, b);
    classes.push_back(std::move(zclass));
    return classes;
}

MubFamily PauliSystem::eigenbasis_family() const {
    std::vector<CycMatrix> mats;
    std::vector<std::string> labels;
    for (int c = 0; c < q_; ++c) {
        mats.push_back(eigenbasis(c));
        labels.push_back("eigenbasis c=" + std::to_string(c));
    }
    const int q = static_cast<int>(q_);
    CycMatrix cols(q, q * q + q);
    Partition parts;
    MubFamily fam;
    Eigen::Index col = 0;
    for (std::size_t mi = 0; mi < mats.size(); ++mi) {
        std::vector<int> part;
        for (int y = 0; y < q; ++y) {
            cols.col(col) = mats[mi].col(y);
            part.push_back(static_cast<int>(col));
            ++col;
        }
        parts.push_back(std::move(part));
        fam.basis_labels.push_back(labels[mi]);
    }
    std::vector<int> std_part;
    for (int r = 0; r < q; ++r) {
        for (int x = 0; x < q; ++x) cols(x, col) = Cyclotomic(x == r ? 1 : 0);
        std_part.push_back(static_cast<int>(col));
        ++col;
    }
    parts.push_back(std::move(std_part));
    fam.basis_labels.push_back("standard (Z class)");
    fam.includes_standard_basis = true;
    fam.lines = LineSet::exact(std::move(cols), parts, describe() + " eigenbasis family");
    MubReport rep = is_mub_family(fam.lines);
    if (!rep.ok)
        throw std::logic_error("Pauli eigenbasis family failed its MUB certificate: " + rep.message);
    return fam;
}

std::string PauliSystem::describe() const {
    std::ostringstream out;
    if (is_even())
        out << "generalized Pauli operators over " << ring().describe();
    else
        out << "generalized Pauli operators over " << field().describe();
    return out.str();
}

// ---------------------------------------------------------------------------

bool monomiality_check(const CycMatrix& M) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
        int nonzero = 0;
        for (Eigen::Index r = 0; r < M.rows(); ++r)
            if (!M(r, c).is_zero()) ++nonzero;
        if (nonzero != 1) return false;
    }
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        int nonzero = 0;
        for (Eigen::Index c = 0; c < M.cols(); ++c)
            if (!M(r, c).is_zero()) ++nonzero;
        if (nonzero != 1) return false;
    }
    return true;
}

bool monomiality_check(const std::vector<CycMatrix>& ops) {
    for (const CycMatrix& M : ops)
        if (!monomiality_check(M)) return false;
    return true;
}

namespace {

Cyclotomic trace_inner_product(const CycMatrix& A, const CycMatrix& B) {
    // tr(A^dagger B) = sum conj(A_ij) B_ij, no normalization
    Cyclotomic acc(0);
    for (Eigen::Index c = 0; c < A.cols(); ++c)
        for (Eigen::Index r = 0; r < A.rows(); ++r) {
            if (A(r, c).is_zero() || B(r, c).is_zero()) continue;
            acc += A(r, c).conjugate() * B(r, c);
        }
    return acc;
}

// canonical key of M modulo nonzero scalars: normalize by the first nonzero
// entry (column-major order)
std::string phase_class_key(const CycMatrix& M, int order) {
    Cyclotomic pivot(0);
    for (Eigen::Index c = 0; c < M.cols() && pivot.is_zero(); ++c)
        for (Eigen::Index r = 0; r < M.rows() && pivot.is_zero(); ++r)
            if (!M(r, c).is_zero()) pivot = M(r, c);
    Cyclotomic inv = pivot.inverse();
    std::string key;
    for (Eigen::Index c = 0; c < M.cols(); ++c)
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            key += (M(r, c) * inv).key_at_order(order);
            key += '|';
        }
    return key;
}

}  // namespace

NiceErrorBasisReport nice_error_basis_check(const std::vector<CycMatrix>& ops) {
    NiceErrorBasisReport rep;
    const std::size_t n2 = ops.size();
    if (n2 == 0) {
        rep.failure = "empty operator set";
        return rep;
    }
    const Eigen::Index q = ops.front().rows();

    rep.orthogonal = true;
    for (std::size_t i = 0; i < n2 && rep.orthogonal; ++i)
        for (std::size_t j = i + 1; j < n2; ++j) {
            if (!trace_inner_product(ops[i], ops[j]).is_zero()) {
                rep.orthogonal = false;
                rep.failure = "operators " + std::to_string(i) + " and " + std::to_string(j) +
                              " are not trace-orthogonal";
                break;
            }
        }

    // closure modulo scalars; the common order covers entries and products
    int order = 1;
    for (const CycMatrix& M : ops)
        for (Eigen::Index c = 0; c < q; ++c)
            for (Eigen::Index r = 0; r < q; ++r)
                order = static_cast<int>(std::lcm<std::int64_t>(order, M(r, c).order()));
    std::unordered_map<std::string, int> classes;
    for (std::size_t i = 0; i < n2; ++i) classes.emplace(phase_class_key(ops[i], order), static_cast<int>(i));
    rep.classes = static_cast<std::int64_t>(classes.size());

    rep.closed_mod_phase = (rep.classes == static_cast<std::int64_t>(n2));
    if (!rep.closed_mod_phase && rep.failure.empty())
        rep.failure = "operators are not pairwise distinct modulo scalars";
    if (rep.closed_mod_phase) {
        bool identity_found = false;
        CycMatrix identity(q, q);
        for (Eigen::Index r = 0; r < q; ++r)
            for (Eigen::Index c = 0; c < q; ++c) identity(r, c) = Cyclotomic(r == c ? 1 : 0);
        identity_found = classes.count(phase_class_key(identity, order)) > 0;
        if (!identity_found) {
            rep.closed_mod_phase = false;
            rep.failure = "identity is missing modulo scalars";
        }
        for (std::size_t i = 0; i < n2 && rep.closed_mod_phase; ++i)
            for (std::size_t j = 0; j < n2; ++j) {
                CycMatrix prod = ops[i] * ops[j];
                if (!classes.count(phase_class_key(prod, order))) {
                    rep.closed_mod_phase = false;
                    rep.failure = "product of operators " + std::to_string(i) + " and " +
                                  std::to_string(j) + " leaves the set modulo scalars";
                    break;
                }
            }
    }

    rep.ok = rep.orthogonal && rep.closed_mod_phase &&
             rep.classes == static_cast<std::int64_t>(q) * static_cast<std::int64_t>(q);
    if (rep.ok == false && rep.failure.empty())
        rep.failure = "class count " + std::to_string(rep.classes) + " differs from q^2";
    return rep;
}

CommutingPartitionReport maximal_commuting_partition_check(
    const PauliSystem& P, const std::vector<std::vector<std::pair<int, int>>>& classes) {
    CommutingPartitionReport rep;
    const std::int64_t q = P.q();

    // (a) and (b): q labels per class, identity label (0,0) present
    rep.sizes_ok = true;
    rep.identity_ok = true;
    for (const auto& cls : classes) {
        if (static_cast<std::int64_t>(cls.size()) != q) {
            rep.sizes_ok = false;
            rep.failure = "class size differs from q";
        }
        if (std::find(cls.begin(), cls.end(), std::make_pair(0, 0)) == cls.end()) {
            rep.identity_ok = false;
            if (rep.failure.empty()) rep.failure = "a class does not contain the identity label";
        }
    }

    // non-identity labels partition the q^2 - 1 remaining operators
    std::set<std::pair<int, int>> seen;
    for (const auto& cls : classes)
        for (const auto& lab : cls) {
            if (lab == std::make_pair(0, 0)) continue;
            if (!seen.insert(lab).second) {
                rep.sizes_ok = false;
                rep.failure = "label (" + std::to_string(lab.first) + "," + std::to_string(lab.second) +
                              ") appears in two classes";
            }
        }
    if (static_cast<std::int64_t>(seen.size()) != q * q - 1) {
        rep.sizes_ok = false;
        if (rep.failure.empty()) rep.failure = "classes do not cover all non-identity labels";
    }

    // matrices per class
    std::vector<std::vector<CycMatrix>> mats;
    for (const auto& cls : classes) {
        std::vector<CycMatrix> ms;
        for (const auto& lab : cls) ms.push_back(P.matrix(lab.first, lab.second));
        mats.push_back(std::move(ms));
    }

    // (c) commutation inside each class
    rep.commuting_ok = true;
    for (std::size_t ci = 0; ci < mats.size() && rep.commuting_ok; ++ci)
        for (std::size_t i = 0; i < mats[ci].size() && rep.commuting_ok; ++i)
            for (std::size_t j = i + 1; j < mats[ci].size(); ++j) {
                CycMatrix ab = mats[ci][i] * mats[ci][j];
                CycMatrix ba = mats[ci][j] * mats[ci][i];
                if (!all_equal(ab, ba)) {
                    rep.commuting_ok = false;
                    rep.failure = "class " + std::to_string(ci) + " contains a non-commuting pair (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")";
                    break;
                }
            }

    // (d) pairwise trace-orthogonality over the whole collection: identity
    // plus all non-identity representatives
    rep.orthogonal_ok = true;
    std::vector<const CycMatrix*> all;
    CycMatrix identity = P.matrix(0, 0);
    all.push_back(&identity);
    std::vector<CycMatrix> flat;
    for (std::size_t ci = 0; ci < classes.size(); ++ci)
        for (std::size_t i = 0; i < classes[ci].size(); ++i)
            if (classes[ci][i] != std::make_pair(0, 0)) flat.push_back(mats[ci][i]);
    for (const auto& M : flat) all.push_back(&M);
    for (std::size_t i = 0; i < all.size() && rep.orthogonal_ok; ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (!trace_inner_product(*all[i], *all[j]).is_zero()) {
                rep.orthogonal_ok = false;
                rep.failure = "collection is not pairwise trace-orthogonal";
                break;
            }

    // common eigenbases: each class must be diagonalized by eigenbasis(c)
    // for some slope c, or by the standard basis (the Z class)
    rep.eigenbasis_ok = true;
    const int qi = static_cast<int>(q);
    std::vector<CycMatrix> candidate_bases;
    for (int c = 0; c < qi; ++c) candidate_bases.push_back(P.eigenbasis(c));
    CycMatrix std_basis(qi, qi);
    for (int r = 0; r < qi; ++r)
        for (int c = 0; c < qi; ++c) std_basis(r, c) = Cyclotomic(r == c ? 1 : 0);
    candidate_bases.push_back(std_basis);

    for (std::size_t ci = 0; ci < mats.size() && rep.eigenbasis_ok; ++ci) {
        bool class_ok = false;
        for (const CycMatrix& B : candidate_bases) {
            bool diagonalizes = true;
            for (const CycMatrix& M : mats[ci]) {
                CycMatrix MB = M * B;
                for (int col = 0; col < qi && diagonalizes; ++col) {
                    // MB.col = lambda * B.col for some scalar: find a nonzero
                    // pivot of B.col and compare
                    int pivot = -1;
                    for (int r = 0; r < qi; ++r)
                        if (!B(r, col).is_zero()) {
                            pivot = r;
                            break;
                        }
                    if (pivot < 0) {
                        diagonalizes = false;
                        break;
                    }
                    Cyclotomic lambda = MB(pivot, col) / B(pivot, col);
                    for (int r = 0; r < qi && diagonalizes; ++r)
                        diagonalizes = (MB(r, col) == lambda * B(r, col));
                }
                if (!diagonalizes) break;
            }
            if (diagonalizes) {
                class_ok = true;
                break;
            }
        }
        if (!class_ok) {
            rep.eigenbasis_ok = false;
            rep.failure = "class " + std::to_string(ci) +
                          " has no common eigenbasis among the slope eigenbases and the standard basis";
        }
    }

    rep.ok = rep.sizes_ok && rep.identity_ok && rep.commuting_ok && rep.orthogonal_ok &&
             rep.eigenbasis_ok;
    return rep;
}

}  // namespace cyclolines

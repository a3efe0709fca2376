#include "cyclolines/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cyclolines {

std::string AbelianGroup::element_name(int g) const { return std::to_string(g); }

bool AbelianGroup::is_subgroup(const std::vector<int>& subset) const {
    if (subset.empty()) return false;
    std::set<int> s(subset.begin(), subset.end());
    if (!s.count(identity())) return false;
    for (int a : s)
        for (int b : s)
            if (!s.count(op(a, inverse(b)))) return false;
    return true;
}

void verify_group_axioms(const AbelianGroup& G, std::int64_t full_cap) {
    const std::int64_t v = G.order();
    auto bad = [&](const std::string& what, int a, int b) {
        throw std::logic_error(what + " fails at (" + G.element_name(a) + ", " + G.element_name(b) +
                               ") in " + G.describe());
    };
    for (int a = 0; a < v; ++a) {
        if (G.op(a, G.identity()) != a || G.op(G.identity(), a) != a) bad("identity", a, 0);
        if (G.op(a, G.inverse(a)) != G.identity()) bad("inverse", a, G.inverse(a));
    }
    for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b)
            if (G.op(a, b) != G.op(b, a)) bad("commutativity", a, b);
    if (v <= full_cap) {
        for (int a = 0; a < v; ++a)
            for (int b = 0; b < v; ++b)
                for (int c = 0; c < v; ++c)
                    if (G.op(G.op(a, b), c) != G.op(a, G.op(b, c))) bad("associativity", a, b);
    } else {
        std::vector<int> gens = G.generators();
        for (int a = 0; a < v; ++a)
            for (int b = 0; b < v; ++b)
                for (int g : gens)
                    if (G.op(G.op(a, b), g) != G.op(a, G.op(b, g))) bad("associativity", a, b);
    }
}

// ---------------------------------------------------------------------------
// ProductGroup

ProductGroup::ProductGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw std::invalid_argument("ProductGroup: empty modulus list");
    order_ = 1;
    root_order_ = 1;
    for (int d : moduli_) {
        if (d < 1) throw std::invalid_argument("ProductGroup: moduli must be positive");
        order_ *= d;
        root_order_ = static_cast<int>(std::lcm<std::int64_t>(root_order_, d));
    }
}

std::vector<int> ProductGroup::tuple(int g) const {
    std::vector<int> t(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        t[i] = g % moduli_[i];
        g /= moduli_[i];
    }
    return t;
}

int ProductGroup::from_tuple(const std::vector<int>& t) const {
    if (t.size() != moduli_.size()) throw std::invalid_argument("tuple length mismatch");
    int acc = 0;
    for (std::size_t i = moduli_.size(); i-- > 0;) {
        int c = ((t[i] % moduli_[i]) + moduli_[i]) % moduli_[i];
        acc = acc * moduli_[i] + c;
    }
    return acc;
}

int ProductGroup::op(int a, int b) const {
    int acc = 0, mult = 1;
    for (int d : moduli_) {
        acc += ((a % d + b % d) % d) * mult;
        a /= d;
        b /= d;
        mult *= d;
    }
    return acc;
}

int ProductGroup::inverse(int a) const {
    int acc = 0, mult = 1;
    for (int d : moduli_) {
        acc += ((d - a % d) % d) * mult;
        a /= d;
        mult *= d;
    }
    return acc;
}

int ProductGroup::character_exponent(int label, int g) const {
    std::int64_t e = 0;
    for (int d : moduli_) {
        std::int64_t stride = root_order_ / d;
        e += static_cast<std::int64_t>(label % d) * (g % d) * stride;
        label /= d;
        g /= d;
    }
    return static_cast<int>(e % root_order_);
}

std::vector<int> ProductGroup::generators() const {
    std::vector<int> gens;
    int mult = 1;
    for (int d : moduli_) {
        if (d > 1) gens.push_back(mult);
        mult *= d;
    }
    if (gens.empty()) gens.push_back(0);
    return gens;
}

std::string ProductGroup::element_name(int g) const {
    std::vector<int> t = tuple(g);
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
    out << ")";
    return out.str();
}

std::string ProductGroup::describe() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < moduli_.size(); ++i) out << (i ? " x " : "") << "Z" << moduli_[i];
    return out.str();
}

// ---------------------------------------------------------------------------
// HughesGroup

HughesGroup::HughesGroup(Semifield E) : E_(std::move(E)), q_(E_.order()), dim_(E_.dim()) {
    SemifieldReport rep = semifield_verify(E_);
    if (!rep.ok)
        throw std::invalid_argument("HughesGroup: semifield axioms fail: " + rep.failure);

    const int q = static_cast<int>(q_);
    const bool even = (E_.characteristic() == 2);
    root_order_ = even ? 4 : E_.characteristic();
    if (even) module_ = std::make_unique<Z4ModuleEmbedding>(E_);

    const std::int64_t v = q_ * q_;
    if (even) {
        elem_x_packed_.resize(static_cast<std::size_t>(v));
        elem_m_packed_.resize(static_cast<std::size_t>(v));
        lab_a_packed_.resize(static_cast<std::size_t>(v));
        lab_b_packed_.resize(static_cast<std::size_t>(v));
    } else {
        elem_x_.resize(static_cast<std::size_t>(v));
        elem_m_.resize(static_cast<std::size_t>(v));
        lab_a_.resize(static_cast<std::size_t>(v));
        lab_b_.resize(static_cast<std::size_t>(v));
    }
    for (int x = 0; x < q; ++x) {
        for (int y = 0; y < q; ++y) {
            int g = encode(x, y);
            if (even) {
                int hx = module_->hat(x);
                int m = module_->add(module_->scalar_mul(2, module_->hat(y)),
                                     module_->neg(module_->square(hx)));
                elem_x_packed_[static_cast<std::size_t>(g)] = hx;
                elem_m_packed_[static_cast<std::size_t>(g)] = m;
            } else {
                // 2y - x o x in E
                int m = E_.sub(E_.add(y, y), E_.mul(x, x));
                elem_x_[static_cast<std::size_t>(g)] = E_.coords(x);
                elem_m_[static_cast<std::size_t>(g)] = E_.coords(m);
            }
        }
    }
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            int label = encode(a, b);
            if (even) {
                lab_a_packed_[static_cast<std::size_t>(label)] =
                    module_->scalar_mul(2, module_->hat(a));
                lab_b_packed_[static_cast<std::size_t>(label)] = module_->hat(b);
            } else {
                lab_a_[static_cast<std::size_t>(label)] = E_.coords(E_.add(a, a));
                lab_b_[static_cast<std::size_t>(label)] = E_.coords(b);
            }
        }
    }
}

int HughesGroup::op(int a, int b) const {
    auto [u, s] = decode(a);
    auto [v, t] = decode(b);
    return encode(E_.add(u, v), E_.add(E_.add(s, t), E_.mul(u, v)));
}

int HughesGroup::inverse(int a) const {
    auto [u, s] = decode(a);
    // H_{u,s}^-1 = H_{-u, -s + u o u}
    return encode(E_.neg(u), E_.add(E_.neg(s), E_.mul(u, u)));
}

int HughesGroup::character_exponent(int label, int g) const {
    if (module_) {
        int e = module_->scalar_product(lab_a_packed_[static_cast<std::size_t>(label)],
                                        elem_x_packed_[static_cast<std::size_t>(g)]) +
                module_->scalar_product(lab_b_packed_[static_cast<std::size_t>(label)],
                                        elem_m_packed_[static_cast<std::size_t>(g)]);
        return e % 4;
    }
    const int p = root_order_;
    const std::vector<int>& a2 = lab_a_[static_cast<std::size_t>(label)];
    const std::vector<int>& b = lab_b_[static_cast<std::size_t>(label)];
    const std::vector<int>& x = elem_x_[static_cast<std::size_t>(g)];
    const std::vector<int>& m = elem_m_[static_cast<std::size_t>(g)];
    int e = 0;
    for (int i = 0; i < dim_; ++i)
        e += a2[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)] +
             b[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(i)];
    return e % p;
}

std::vector<int> HughesGroup::generators() const {
    std::vector<int> gens;
    for (int i = 0; i < dim_; ++i) {
        std::vector<int> unit(static_cast<std::size_t>(dim_), 0);
        unit[static_cast<std::size_t>(i)] = 1;
        int e = E_.from_coords(unit);
        gens.push_back(encode(e, 0));
        gens.push_back(encode(0, e));
    }
    return gens;
}

std::string HughesGroup::element_name(int g) const {
    auto [u, b] = decode(g);
    return "H_{" + std::to_string(u) + "," + std::to_string(b) + "}";
}

std::string HughesGroup::describe() const {
    return "Hughes group of " + E_.name() + " (order " + std::to_string(q_ * q_) + ")";
}

std::vector<int> HughesGroup::forbidden_subgroup() const {
    std::vector<int> N;
    for (int y = 0; y < q_; ++y) N.push_back(encode(0, static_cast<int>(y)));
    std::sort(N.begin(), N.end());
    return N;
}

std::vector<int> HughesGroup::h0() const {
    std::vector<int> D;
    for (int u = 0; u < q_; ++u) D.push_back(encode(static_cast<int>(u), 0));
    std::sort(D.begin(), D.end());
    return D;
}

// ---------------------------------------------------------------------------
// Characters

Cyclotomic Character::value(int g) const {
    return Cyclotomic::root_of_unity(group->character_root_order(), exponent(g));
}

bool Character::is_trivial() const {
    for (int g = 0; g < group->order(); ++g)
        if (exponent(g) != 0) return false;
    return true;
}

Cyclotomic Character::sum_over(const std::vector<int>& subset) const {
    const int N = group->character_root_order();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(N), 0);
    for (int g : subset) ++counts[static_cast<std::size_t>(exponent(g))];
    Cyclotomic acc(0);
    for (int e = 0; e < N; ++e)
        if (counts[static_cast<std::size_t>(e)] != 0)
            acc += Cyclotomic(static_cast<long>(counts[static_cast<std::size_t>(e)])) *
                   Cyclotomic::root_of_unity(N, e);
    return acc;
}

Cyclotomic character_sum_over(const Character& chi, const std::vector<int>& subset) {
    return chi.sum_over(subset);
}

std::vector<Character> characters_of(const AbelianGroup& G) {
    const std::int64_t v = G.order();
    const int N = G.character_root_order();
    std::vector<Character> chars;
    chars.reserve(static_cast<std::size_t>(v));
    for (int label = 0; label < v; ++label) chars.push_back(Character{&G, label});

    // Multiplicativity on (g, gen) for a generating set proves chi(gh) =
    // chi(g) chi(h) for all pairs by induction on word length.  For small
    // groups check every pair outright.
    std::vector<int> gens = G.generators();
    const bool full = v <= 128;
    for (const Character& chi : chars) {
        if (full) {
            for (int g = 0; g < v; ++g)
                for (int h = 0; h < v; ++h)
                    if ((chi.exponent(g) + chi.exponent(h)) % N != chi.exponent(G.op(g, h)))
                        throw std::logic_error("character " + std::to_string(chi.label) +
                                               " is not multiplicative on " + G.describe());
        } else {
            for (int g = 0; g < v; ++g)
                for (int gen : gens)
                    if ((chi.exponent(g) + chi.exponent(gen)) % N != chi.exponent(G.op(g, gen)))
                        throw std::logic_error("character " + std::to_string(chi.label) +
                                               " is not multiplicative on " + G.describe());
        }
    }

    // Pairwise distinct value tables, via hashing with direct confirmation.
    std::unordered_map<std::uint64_t, std::vector<int>> buckets;
    for (const Character& chi : chars) {
        std::uint64_t h = 1469598103934665603ull;
        for (int g = 0; g < v; ++g) {
            h ^= static_cast<std::uint64_t>(chi.exponent(g)) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        buckets[h].push_back(chi.label);
    }
    for (const auto& [h, labels] : buckets) {
        if (labels.size() < 2) continue;
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (std::size_t j = i + 1; j < labels.size(); ++j) {
                bool same = true;
                for (int g = 0; g < v && same; ++g)
                    same = (G.character_exponent(labels[i], g) == G.character_exponent(labels[j], g));
                if (same)
                    throw std::logic_error("characters " + std::to_string(labels[i]) + " and " +
                                           std::to_string(labels[j]) + " coincide on " + G.describe());
            }
    }
    return chars;
}

std::vector<int> annihilator_labels(const AbelianGroup& G, const std::vector<int>& N) {
    std::vector<int> out;
    for (int label = 0; label < G.order(); ++label) {
        bool triv = true;
        for (int g : N)
            if (G.character_exponent(label, g) != 0) {
                triv = false;
                break;
            }
        if (triv) out.push_back(label);
    }
    return out;
}

std::vector<std::vector<int>> labels_by_restriction(const AbelianGroup& G,
                                                    const std::vector<int>& N) {
    std::map<std::vector<int>, std::vector<int>> classes;
    for (int label = 0; label < G.order(); ++label) {
        std::vector<int> sig;
        sig.reserve(N.size());
        for (int g : N) sig.push_back(G.character_exponent(label, g));
        classes[sig].push_back(label);
    }
    std::vector<std::vector<int>> out;
    out.reserve(classes.size());
    for (auto& [sig, labels] : classes) out.push_back(std::move(labels));
    std::sort(out.begin(), out.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
    return out;
}

// ---------------------------------------------------------------------------
// Group ring and difference sets

GroupRingElement::GroupRingElement(const AbelianGroup& G)
    : group_(&G), coeff_(static_cast<std::size_t>(G.order()), 0) {}

GroupRingElement GroupRingElement::from_subset(const AbelianGroup& G, const std::vector<int>& subset) {
    GroupRingElement e(G);
    for (int g : subset) {
        if (g < 0 || g >= G.order())
            throw std::invalid_argument("subset element outside the group");
        ++e.coeff(g);
    }
    return e;
}

GroupRingElement GroupRingElement::inverted() const {
    GroupRingElement e(*group_);
    for (int g = 0; g < group_->order(); ++g) e.coeff(group_->inverse(g)) = coeff_[static_cast<std::size_t>(g)];
    return e;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& rhs) const {
    GroupRingElement e(*group_);
    for (int g = 0; g < group_->order(); ++g) {
        if (coeff_[static_cast<std::size_t>(g)] == 0) continue;
        for (int h = 0; h < group_->order(); ++h) {
            if (rhs.coeff_[static_cast<std::size_t>(h)] == 0) continue;
            e.coeff(group_->op(g, h)) += coeff_[static_cast<std::size_t>(g)] * rhs.coeff_[static_cast<std::size_t>(h)];
        }
    }
    return e;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& rhs) {
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += rhs.coeff_[i];
    return *this;
}

DifferenceSetCheck is_difference_set(const AbelianGroup& G, const std::vector<int>& D,
                                     std::int64_t v, std::int64_t k, std::int64_t lambda) {
    DifferenceSetCheck res;
    res.v = v;
    res.k = k;
    res.lambda = lambda;
    if (G.order() != v) {
        res.message = "group order differs from v";
        return res;
    }
    if (static_cast<std::int64_t>(D.size()) != k) {
        res.message = "|D| differs from k";
        return res;
    }
    GroupRingElement d = GroupRingElement::from_subset(G, D);
    GroupRingElement prod = d * d.inverted();
    for (int g = 0; g < v; ++g) {
        std::int64_t want = (g == G.identity()) ? k : lambda;
        if (prod.coeff(g) != want) {
            res.witness = g;
            res.message = "coefficient at " + G.element_name(g) + " is " +
                          std::to_string(prod.coeff(g)) + ", expected " + std::to_string(want);
            return res;
        }
    }
    res.ok = true;
    return res;
}

RelativeDifferenceSetCheck is_relative_difference_set(const AbelianGroup& G,
                                                      const std::vector<int>& N,
                                                      const std::vector<int>& D) {
    RelativeDifferenceSetCheck res;
    if (!G.is_subgroup(N)) {
        res.message = "N is not a subgroup";
        return res;
    }
    res.n = static_cast<std::int64_t>(N.size());
    res.m = G.order() / res.n;
    res.k = static_cast<std::int64_t>(D.size());
    res.semiregular = (res.m == res.k);

    std::vector<char> in_n(static_cast<std::size_t>(G.order()), 0);
    for (int g : N) in_n[static_cast<std::size_t>(g)] = 1;

    GroupRingElement d = GroupRingElement::from_subset(G, D);
    GroupRingElement prod = d * d.inverted();

    std::int64_t lambda = -1;
    for (int g = 0; g < G.order(); ++g) {
        if (in_n[static_cast<std::size_t>(g)]) continue;
        lambda = prod.coeff(g);
        break;
    }
    if (lambda < 0) lambda = 0;  // N = G: no outside elements
    res.lambda = lambda;

    for (int g = 0; g < G.order(); ++g) {
        std::int64_t want;
        if (g == G.identity())
            want = res.k;
        else if (in_n[static_cast<std::size_t>(g)])
            want = 0;
        else
            want = lambda;
        if (prod.coeff(g) != want) {
            res.witness = g;
            res.message = "coefficient at " + G.element_name(g) + " is " +
                          std::to_string(prod.coeff(g)) + ", expected " + std::to_string(want);
            return res;
        }
    }
    res.ok = true;
    return res;
}

SingerSet singer_difference_set(std::int64_t q) {
    int p = 0, m = 0;
    if (!is_prime_power(q, &p, &m))
        throw std::invalid_argument("singer_difference_set: q must be a prime power");
    FiniteField F = FiniteField::make(p, 3 * m);
    SingerSet s;
    s.v = q * q + q + 1;
    int gamma = F.primitive_element();
    int cur = F.one();
    for (std::int64_t i = 0; i < s.v; ++i) {
        if (F.relative_trace(cur, m) == 0) s.D.push_back(static_cast<int>(i));
        cur = F.mul(cur, gamma);
    }
    ProductGroup G = ProductGroup::cyclic(static_cast<int>(s.v));
    DifferenceSetCheck check = is_difference_set(G, s.D, s.v, q + 1, 1);
    if (!check.ok)
        throw std::logic_error("singer_difference_set: construction failed certification: " +
                               check.message);
    return s;
}

std::optional<std::vector<int>> brute_force_difference_set(int v, int k, int lambda) {
    if (v > 40) throw std::invalid_argument("brute_force_difference_set: v must be at most 40");
    if (k < 1 || k > v) return std::nullopt;

    // Independent oracle: count differences directly in Z_v.  Only subsets
    // containing 0 are scanned; every difference set has a translate through
    // 0, and sets containing 0 precede the rest lexicographically.
    std::vector<int> pick(static_cast<std::size_t>(k));
    pick[0] = 0;
    std::vector<int> cnt(static_cast<std::size_t>(v));
    auto test = [&]() {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j) ++cnt[static_cast<std::size_t>(((pick[static_cast<std::size_t>(i)] -
                                                             pick[static_cast<std::size_t>(j)]) % v + v) % v)];
        for (int g = 1; g < v; ++g)
            if (cnt[static_cast<std::size_t>(g)] != lambda) return false;
        return true;
    };

    if (k == 1) {
        if (lambda == 0) return std::vector<int>{0};
        return std::nullopt;
    }
    // enumerate 1 <= pick[1] < ... < pick[k-1] < v in lexicographic order
    for (int i = 1; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
        if (test()) return pick;
        int i = k - 1;
        while (i >= 1 && pick[static_cast<std::size_t>(i)] == v - k + i) --i;
        if (i < 1) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return std::nullopt;
}

}  // namespace cyclolines

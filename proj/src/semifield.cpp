#include "cyclolines/semifield.hpp"

#include <array>
#include <atomic>
#include <sstream>
#include <stdexcept>

namespace cyclolines {

namespace {
std::atomic<std::int64_t> g_semifield_cap{512};

std::string elt(int a) { return std::to_string(a); }
}  // namespace

std::int64_t Semifield::order_cap() { return g_semifield_cap.load(); }

void Semifield::set_order_cap(std::int64_t cap) {
    if (cap < 2) throw std::invalid_argument("semifield cap must be at least 2");
    g_semifield_cap.store(cap);
}

Semifield Semifield::from_field(const FiniteField& F) {
    if (F.order() > g_semifield_cap.load())
        throw std::domain_error("semifield order exceeds cap");
    Semifield E;
    E.kind_ = Kind::Field;
    E.q_ = F.order();
    E.p_ = F.characteristic();
    E.dim_ = F.degree();
    E.one_ = F.one();
    E.name_ = F.describe();
    std::int64_t q = E.q_;
    E.add_.resize(static_cast<std::size_t>(q * q));
    E.mul_.resize(static_cast<std::size_t>(q * q));
    E.neg_.resize(static_cast<std::size_t>(q));
    for (int a = 0; a < q; ++a) {
        E.neg_[static_cast<std::size_t>(a)] = F.neg(a);
        for (int b = 0; b < q; ++b) {
            E.add_[E.idx(a, b)] = F.add(a, b);
            E.mul_[E.idx(a, b)] = F.mul(a, b);
        }
    }
    return E;
}

Semifield Semifield::dickson(std::int64_t q0, int sigma_power, std::optional<int> nonsquare) {
    int p = 0, m = 0;
    if (!is_prime_power(q0, &p, &m))
        throw std::invalid_argument("dickson: base order must be a prime power");
    if (p == 2) throw std::invalid_argument("dickson: base field must have odd order");
    if (sigma_power % m == 0)
        throw std::invalid_argument("dickson: sigma must be a nontrivial automorphism");
    if (q0 * q0 > g_semifield_cap.load())
        throw std::domain_error("dickson: semifield order exceeds cap");

    FiniteField F = FiniteField::make(p, m);

    int j;
    if (nonsquare) {
        j = *nonsquare;
        if (j <= 0 || j >= q0) throw std::invalid_argument("dickson: nonsquare out of range");
    } else {
        j = -1;
        for (int cand = 1; cand < q0; ++cand) {
            // nonzero c is a square iff c^((q0-1)/2) = 1
            if (F.pow(cand, (q0 - 1) / 2) != 1) {
                j = cand;
                break;
            }
        }
    }
    if (j < 0 || F.pow(j, (q0 - 1) / 2) == 1)
        throw std::invalid_argument("dickson: j must be a nonsquare");

    auto sigma = [&](int x) { return F.pow_p(x, sigma_power); };

    Semifield E;
    E.kind_ = Kind::Dickson;
    E.q_ = q0 * q0;
    E.p_ = p;
    E.dim_ = 2 * m;
    std::ostringstream name;
    name << "Dickson(" << q0 << ", sigma=p^" << sigma_power << ", j=" << j << ")";
    E.name_ = name.str();

    // element (a, b) packed as a + b * q0; identity (1, 0)
    E.one_ = F.one();
    std::int64_t q = E.q_;
    E.add_.resize(static_cast<std::size_t>(q * q));
    E.mul_.resize(static_cast<std::size_t>(q * q));
    E.neg_.resize(static_cast<std::size_t>(q));
    auto unpack = [&](int e) { return std::pair<int, int>(e % q0, e / q0); };
    auto pack = [&](int a, int b) { return static_cast<int>(a + b * q0); };
    for (int e1 = 0; e1 < q; ++e1) {
        auto [a, b] = unpack(e1);
        E.neg_[static_cast<std::size_t>(e1)] = pack(F.neg(a), F.neg(b));
        for (int e2 = 0; e2 < q; ++e2) {
            auto [c, d] = unpack(e2);
            E.add_[E.idx(e1, e2)] = pack(F.add(a, c), F.add(b, d));
            int first = F.add(F.mul(a, c), F.mul(j, sigma(F.mul(b, d))));
            int second = F.add(F.mul(a, d), F.mul(b, c));
            E.mul_[E.idx(e1, e2)] = pack(first, second);
        }
    }
    return E;
}

Semifield Semifield::from_tables(int p, int dim, std::vector<int> add_table,
                                 std::vector<int> mul_table, std::string name) {
    Semifield E;
    E.kind_ = Kind::Custom;
    E.p_ = p;
    E.dim_ = dim;
    E.q_ = 1;
    for (int i = 0; i < dim; ++i) E.q_ *= p;
    if (add_table.size() != static_cast<std::size_t>(E.q_ * E.q_) ||
        mul_table.size() != static_cast<std::size_t>(E.q_ * E.q_))
        throw std::invalid_argument("from_tables: table size mismatch");
    E.add_ = std::move(add_table);
    E.mul_ = std::move(mul_table);
    E.name_ = std::move(name);
    E.neg_.assign(static_cast<std::size_t>(E.q_), -1);
    for (int a = 0; a < E.q_; ++a)
        for (int b = 0; b < E.q_; ++b)
            if (E.add(a, b) == 0) E.neg_[static_cast<std::size_t>(a)] = b;
    E.one_ = -1;
    for (int e = 0; e < E.q_; ++e) {
        bool identity = true;
        for (int a = 0; a < E.q_ && identity; ++a)
            identity = (E.mul(e, a) == a && E.mul(a, e) == a);
        if (identity) {
            E.one_ = e;
            break;
        }
    }
    if (E.one_ < 0) E.one_ = 1;  // verification will report the failure
    return E;
}

std::vector<int> Semifield::coords(int a) const {
    std::vector<int> digits(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
        digits[static_cast<std::size_t>(i)] = a % p_;
        a /= p_;
    }
    return digits;
}

int Semifield::from_coords(const std::vector<int>& digits) const {
    if (static_cast<int>(digits.size()) != dim_) throw std::invalid_argument("bad coordinate length");
    int acc = 0;
    for (int i = dim_ - 1; i >= 0; --i) acc = acc * p_ + ((digits[static_cast<std::size_t>(i)] % p_) + p_) % p_;
    return acc;
}

std::optional<std::array<int, 3>> Semifield::nonassociativity_witness() const {
    for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b)
            for (int c = 0; c < q_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    return std::array<int, 3>{a, b, c};
    return std::nullopt;
}

SemifieldReport semifield_verify(const Semifield& E) {
    SemifieldReport rep;
    const int q = static_cast<int>(E.order());
    auto fail = [&](const std::string& msg) {
        if (rep.failure.empty()) rep.failure = msg;
    };

    // (a) abelian additive group with identity 0
    rep.additive_group = true;
    for (int a = 0; a < q && rep.additive_group; ++a) {
        if (E.add(a, 0) != a || E.add(0, a) != a) {
            rep.additive_group = false;
            fail("additive identity fails at " + elt(a));
        }
        if (E.add(a, E.neg(a)) != 0) {
            rep.additive_group = false;
            fail("additive inverse fails at " + elt(a));
        }
    }
    for (int a = 0; a < q && rep.additive_group; ++a)
        for (int b = 0; b < q && rep.additive_group; ++b) {
            if (E.add(a, b) != E.add(b, a)) {
                rep.additive_group = false;
                fail("addition not commutative at (" + elt(a) + "," + elt(b) + ")");
            }
        }
    for (int a = 0; a < q && rep.additive_group; ++a)
        for (int b = 0; b < q && rep.additive_group; ++b)
            for (int c = 0; c < q; ++c)
                if (E.add(E.add(a, b), c) != E.add(a, E.add(b, c))) {
                    rep.additive_group = false;
                    fail("addition not associative at (" + elt(a) + "," + elt(b) + "," + elt(c) + ")");
                    break;
                }

    // (b) no zero divisors
    rep.no_zero_divisors = true;
    for (int a = 1; a < q && rep.no_zero_divisors; ++a)
        for (int b = 1; b < q; ++b)
            if (E.mul(a, b) == 0) {
                rep.no_zero_divisors = false;
                fail("zero divisors: " + elt(a) + " o " + elt(b) + " = 0");
                break;
            }

    // (c) two-sided distributivity
    rep.distributive = true;
    for (int x = 0; x < q && rep.distributive; ++x)
        for (int y = 0; y < q && rep.distributive; ++y)
            for (int z = 0; z < q; ++z) {
                if (E.mul(x, E.add(y, z)) != E.add(E.mul(x, y), E.mul(x, z)) ||
                    E.mul(E.add(y, z), x) != E.add(E.mul(y, x), E.mul(z, x))) {
                    rep.distributive = false;
                    fail("distributivity fails at (" + elt(x) + "," + elt(y) + "," + elt(z) + ")");
                    break;
                }
            }

    // (d) multiplicative identity
    rep.has_identity = true;
    for (int a = 0; a < q; ++a)
        if (E.mul(E.one(), a) != a || E.mul(a, E.one()) != a) {
            rep.has_identity = false;
            fail("identity fails at " + elt(a));
            break;
        }

    rep.commutative = true;
    for (int a = 0; a < q && rep.commutative; ++a)
        for (int b = 0; b < q; ++b)
            if (E.mul(a, b) != E.mul(b, a)) {
                rep.commutative = false;
                fail("multiplication not commutative at (" + elt(a) + "," + elt(b) + ")");
                break;
            }

    rep.ok = rep.additive_group && rep.no_zero_divisors && rep.distributive && rep.has_identity &&
             rep.commutative;
    return rep;
}

AffinePlaneReport affine_plane_check(const Semifield& E, std::int64_t cap) {
    AffinePlaneReport rep;
    const int q = static_cast<int>(E.order());
    if (E.order() > cap)
        throw std::domain_error("affine_plane_check: order exceeds cap " + std::to_string(cap));
    auto fail = [&](const std::string& msg) {
        if (rep.failure.empty()) rep.failure = msg;
    };

    // incidence: (x, y) on [a, b] iff y = a o x + b; vertical lines are the
    // point sets {(c, y)}.
    auto on_line = [&](int x, int y, int a, int b) { return y == E.add(E.mul(a, x), b); };

    // T_{a,b}(x,y) = (x+a, y+b) sends [u,v] to [u, v + b - u o a].
    rep.translations_ok = true;
    for (int a = 0; a < q && rep.translations_ok; ++a)
        for (int b = 0; b < q && rep.translations_ok; ++b)
            for (int u = 0; u < q && rep.translations_ok; ++u)
                for (int v = 0; v < q; ++v) {
                    int v2 = E.add(v, E.sub(b, E.mul(u, a)));
                    bool good = true;
                    for (int x = 0; x < q && good; ++x) {
                        int y = E.add(E.mul(u, x), v);  // the point of [u,v] above x
                        good = on_line(E.add(x, a), E.add(y, b), u, v2);
                    }
                    if (!good) {
                        rep.translations_ok = false;
                        fail("T_{" + elt(a) + "," + elt(b) + "} breaks incidence on [" + elt(u) +
                             "," + elt(v) + "]");
                        break;
                    }
                }
    // vertical lines: T shifts column c to c + a, trivially incident.

    // S_{u,v}(x,y) = (x, y + u o x + v) sends [r,s] to [r+u, s+v].
    rep.shears_ok = true;
    for (int u = 0; u < q && rep.shears_ok; ++u)
        for (int v = 0; v < q && rep.shears_ok; ++v)
            for (int r = 0; r < q && rep.shears_ok; ++r)
                for (int s = 0; s < q; ++s) {
                    bool good = true;
                    for (int x = 0; x < q && good; ++x) {
                        int y = E.add(E.mul(r, x), s);
                        int y2 = E.add(y, E.add(E.mul(u, x), v));
                        good = on_line(x, y2, E.add(r, u), E.add(s, v));
                    }
                    if (!good) {
                        rep.shears_ok = false;
                        fail("S_{" + elt(u) + "," + elt(v) + "} breaks incidence on [" + elt(r) +
                             "," + elt(s) + "]");
                        break;
                    }
                }

    // H_{u,b} = T_{u,b} S_{u,0} acting on points: (x,y) -> (x+u, y + u o x + b).
    auto H = [&](int u, int b, int x, int y) {
        return std::pair<int, int>(E.add(x, u), E.add(E.add(y, E.mul(u, x)), b));
    };
    rep.hughes_product_ok = true;
    for (int u = 0; u < q && rep.hughes_product_ok; ++u)
        for (int b = 0; b < q && rep.hughes_product_ok; ++b)
            for (int v = 0; v < q && rep.hughes_product_ok; ++v)
                for (int d = 0; d < q; ++d) {
                    int w = E.add(u, v);
                    int c = E.add(E.add(b, d), E.mul(u, v));
                    bool good = true;
                    for (int x = 0; x < q && good; ++x)
                        for (int y = 0; y < q && good; ++y) {
                            auto inner = H(v, d, x, y);
                            auto lhs = H(u, b, inner.first, inner.second);
                            good = (lhs == H(w, c, x, y));
                        }
                    if (!good) {
                        rep.hughes_product_ok = false;
                        fail("H product rule fails at (" + elt(u) + "," + elt(b) + ")(" + elt(v) +
                             "," + elt(d) + ")");
                        break;
                    }
                }

    rep.ok = rep.translations_ok && rep.shears_ok && rep.hughes_product_ok;
    return rep;
}

Z4ModuleEmbedding::Z4ModuleEmbedding(const Semifield& E) : E_(&E), n_(E.dim()) {
    if (E.characteristic() != 2)
        throw std::invalid_argument("Z4 module embedding requires even order");
    basis_products_.resize(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            std::vector<int> ei(static_cast<std::size_t>(n_), 0), ej(static_cast<std::size_t>(n_), 0);
            ei[static_cast<std::size_t>(i)] = 1;
            ej[static_cast<std::size_t>(j)] = 1;
            int prod = E.mul(E.from_coords(ei), E.from_coords(ej));
            basis_products_[static_cast<std::size_t>(i) * n_ + j] = hat(prod);
        }
}

std::vector<int> Z4ModuleEmbedding::digits(int u) const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        d[static_cast<std::size_t>(i)] = u % 4;
        u /= 4;
    }
    return d;
}

int Z4ModuleEmbedding::hat(int semifield_element) const {
    std::vector<int> c = E_->coords(semifield_element);
    int acc = 0;
    for (int i = n_ - 1; i >= 0; --i) acc = acc * 4 + c[static_cast<std::size_t>(i)];
    return acc;
}

int Z4ModuleEmbedding::add(int u, int v) const {
    int r = 0, mult = 1;
    for (int i = 0; i < n_; ++i) {
        r += (((u / mult) % 4 + (v / mult) % 4) % 4) * mult;
        mult *= 4;
    }
    return r;
}

int Z4ModuleEmbedding::neg(int u) const {
    int r = 0, mult = 1;
    for (int i = 0; i < n_; ++i) {
        r += ((4 - (u / mult) % 4) % 4) * mult;
        mult *= 4;
    }
    return r;
}

int Z4ModuleEmbedding::scalar_mul(int c, int u) const {
    c = ((c % 4) + 4) % 4;
    int r = 0;
    for (int i = 0; i < c; ++i) r = add(r, u);
    return r;
}

int Z4ModuleEmbedding::mul(int u, int v) const {
    std::vector<int> du = digits(u), dv = digits(v);
    int acc = 0;
    for (int i = 0; i < n_; ++i) {
        if (du[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (dv[static_cast<std::size_t>(j)] == 0) continue;
            int coeff = (du[static_cast<std::size_t>(i)] * dv[static_cast<std::size_t>(j)]) % 4;
            acc = add(acc, scalar_mul(coeff, basis_products_[static_cast<std::size_t>(i) * n_ + j]));
        }
    }
    return acc;
}

int Z4ModuleEmbedding::scalar_product(int u, int v) const {
    int acc = 0, mult = 1;
    for (int i = 0; i < n_; ++i) {
        acc = (acc + ((u / mult) % 4) * ((v / mult) % 4)) % 4;
        mult *= 4;
    }
    return acc;
}

}  // namespace cyclolines

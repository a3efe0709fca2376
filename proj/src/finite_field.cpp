#include "cyclolines/finite_field.hpp"

#include <atomic>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cyclolines {

namespace {

std::atomic<std::int64_t> g_field_cap{1 << 14};

// Dense polynomial arithmetic over GF(p), low degree first, used only while
// searching for the primitive modulus.
using Poly = std::vector<int>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, int p) {
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = static_cast<int>((prod[i + j] + static_cast<std::int64_t>(a[i]) * b[j]) % p);
    }
    const std::size_t deg = modulus.size() - 1;
    for (std::size_t i = prod.size(); i-- > deg;) {
        int c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < deg; ++j)
            prod[i - deg + j] = ((prod[i - deg + j] - c * modulus[j]) % p + p) % p;
    }
    prod.resize(deg);
    return prod;
}

Poly poly_pow_mod(Poly base, std::int64_t e, const Poly& modulus, int p) {
    Poly r(modulus.size() - 1, 0);
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = poly_mul_mod(r, base, modulus, p);
        base = poly_mul_mod(base, base, modulus, p);
        e >>= 1;
    }
    return r;
}

bool poly_is_one(const Poly& a) {
    if (a.empty() || a[0] != 1) return false;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) return false;
    return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> fs;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        fs.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// The class of x generates the full multiplicative group iff x^(q-1) = 1 and
// x^((q-1)/l) != 1 for every prime l | q-1; that order is only attainable in
// a field, so the test certifies irreducibility as well.
bool is_primitive_modulus(const Poly& modulus, int p, std::int64_t q) {
    Poly x(modulus.size() - 1, 0);
    if (x.size() < 2) {
        // degree 1: quotient is GF(p); the class of x is -c0
        int root = ((-modulus[0]) % p + p) % p;
        if (root == 0) return false;
        std::int64_t e = 1, v = root;
        while (v != 1) {
            v = (v * root) % p;
            ++e;
        }
        return e == p - 1;
    }
    x[1] = 1;
    if (!poly_is_one(poly_pow_mod(x, q - 1, modulus, p))) return false;
    for (std::int64_t l : prime_factors(q - 1))
        if (poly_is_one(poly_pow_mod(x, (q - 1) / l, modulus, p))) return false;
    return true;
}

}  // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_prime_power(std::int64_t q, int* p_out, int* n_out) {
    if (q < 2) return false;
    for (std::int64_t p = 2; p * p <= q; ++p) {
        if (q % p) continue;
        std::int64_t m = q;
        int n = 0;
        while (m % p == 0) {
            m /= p;
            ++n;
        }
        if (m != 1) return false;
        if (p_out) *p_out = static_cast<int>(p);
        if (n_out) *n_out = n;
        return true;
    }
    if (p_out) *p_out = static_cast<int>(q);
    if (n_out) *n_out = 1;
    return true;
}

std::int64_t FiniteField::order_cap() { return g_field_cap.load(); }

void FiniteField::set_order_cap(std::int64_t cap) {
    if (cap < 2) throw std::invalid_argument("field cap must be at least 2");
    g_field_cap.store(cap);
}

FiniteField FiniteField::make(int p, int n) {
    if (!is_prime(p)) throw std::invalid_argument("ff_make: characteristic " + std::to_string(p) + " is not prime");
    if (n < 1) throw std::invalid_argument("ff_make: degree must be positive");
    std::int64_t q = 1;
    for (int i = 0; i < n; ++i) {
        q *= p;
        if (q > g_field_cap.load())
            throw std::domain_error("ff_make: field order exceeds cap " + std::to_string(g_field_cap.load()));
    }

    FiniteField F;
    F.p_ = p;
    F.n_ = n;
    F.q_ = q;

    // Deterministic modulus: ascending packed value sum c_i p^i of the
    // non-leading coefficients.
    std::int64_t lower_count = q;  // p^n choices of c_0..c_{n-1}
    for (std::int64_t packed = 0; packed < lower_count; ++packed) {
        Poly cand(static_cast<std::size_t>(n) + 1, 0);
        std::int64_t v = packed;
        for (int i = 0; i < n; ++i) {
            cand[static_cast<std::size_t>(i)] = static_cast<int>(v % p);
            v /= p;
        }
        cand[static_cast<std::size_t>(n)] = 1;
        if (is_primitive_modulus(cand, p, q)) {
            F.modulus_ = cand;
            break;
        }
    }
    if (F.modulus_.empty()) throw std::logic_error("ff_make: no primitive polynomial found");

    // Antilog/log tables from the class of x (degree >= 2) or the root of
    // the linear modulus.
    F.alpha_to_.assign(static_cast<std::size_t>(q - 1), 0);
    F.index_of_.assign(static_cast<std::size_t>(q), -1);
    Poly cur(static_cast<std::size_t>(n), 0);
    cur[0] = 1;
    auto pack = [&](const Poly& e) {
        std::int64_t acc = 0;
        for (int i = n - 1; i >= 0; --i) acc = acc * p + e[static_cast<std::size_t>(i)];
        return static_cast<int>(acc);
    };
    Poly x(static_cast<std::size_t>(n), 0);
    if (n == 1)
        x[0] = ((-F.modulus_[0]) % p + p) % p;
    else
        x[1] = 1;
    for (std::int64_t e = 0; e < q - 1; ++e) {
        int packed = pack(cur);
        F.alpha_to_[static_cast<std::size_t>(e)] = packed;
        F.index_of_[static_cast<std::size_t>(packed)] = e;
        cur = poly_mul_mod(cur, x, F.modulus_, p);
    }

    // trace(a) = sum of Frobenius iterates; lands in the prime field.
    F.trace_.assign(static_cast<std::size_t>(q), 0);
    for (std::int64_t a = 0; a < q; ++a) {
        int acc = 0;
        int it = static_cast<int>(a);
        for (int i = 0; i < n; ++i) {
            acc = F.add(acc, it);
            it = F.pow(it, p);
        }
        std::vector<int> digits = F.coords(acc);
        for (int i = 1; i < n; ++i)
            if (digits[static_cast<std::size_t>(i)] != 0)
                throw std::logic_error("trace fell outside the prime field");
        F.trace_[static_cast<std::size_t>(a)] = digits[0];
    }
    return F;
}

int FiniteField::add(int a, int b) const {
    int r = 0;
    int mult = 1;
    for (int i = 0; i < n_; ++i) {
        int da = (a / mult) % p_;
        int db = (b / mult) % p_;
        r += ((da + db) % p_) * mult;
        mult *= p_;
    }
    return r;
}

int FiniteField::neg(int a) const {
    int r = 0;
    int mult = 1;
    for (int i = 0; i < n_; ++i) {
        int da = (a / mult) % p_;
        r += ((p_ - da) % p_) * mult;
        mult *= p_;
    }
    return r;
}

int FiniteField::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    std::int64_t e = index_of_[static_cast<std::size_t>(a)] + index_of_[static_cast<std::size_t>(b)];
    return alpha_to_[static_cast<std::size_t>(e % (q_ - 1))];
}

int FiniteField::inv(int a) const {
    if (a == 0) throw std::domain_error("field inverse of zero");
    std::int64_t e = (q_ - 1 - index_of_[static_cast<std::size_t>(a)]) % (q_ - 1);
    return alpha_to_[static_cast<std::size_t>(e)];
}

int FiniteField::pow(int a, std::int64_t e) const {
    if (a == 0) {
        if (e < 0) throw std::domain_error("negative power of zero");
        return e == 0 ? 1 : 0;
    }
    std::int64_t idx = index_of_[static_cast<std::size_t>(a)];
    std::int64_t m = q_ - 1;
    std::int64_t r = ((idx * (e % m)) % m + m) % m;
    return alpha_to_[static_cast<std::size_t>(r)];
}

int FiniteField::pow_p(int a, int iterations) const {
    int r = a;
    for (int i = 0; i < iterations; ++i) r = pow(r, p_);
    return r;
}

int FiniteField::relative_trace(int a, int m) const {
    if (m < 1 || n_ % m != 0) throw std::invalid_argument("relative_trace: subfield degree must divide n");
    int acc = 0;
    int it = a;
    for (int i = 0; i < n_ / m; ++i) {
        acc = add(acc, it);
        it = pow_p(it, m);
    }
    return acc;
}

int FiniteField::scalar_mul(int c, int a) const {
    c %= p_;
    int r = 0;
    for (int i = 0; i < c; ++i) r = add(r, a);
    return r;
}

std::vector<int> FiniteField::coords(int a) const {
    std::vector<int> digits(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        digits[static_cast<std::size_t>(i)] = a % p_;
        a /= p_;
    }
    return digits;
}

int FiniteField::from_coords(const std::vector<int>& digits) const {
    if (static_cast<int>(digits.size()) != n_) throw std::invalid_argument("bad coordinate length");
    int acc = 0;
    for (int i = n_ - 1; i >= 0; --i) {
        int d = ((digits[static_cast<std::size_t>(i)] % p_) + p_) % p_;
        acc = acc * p_ + d;
    }
    return acc;
}

std::int64_t FiniteField::log(int a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return index_of_[static_cast<std::size_t>(a)];
}

std::string FiniteField::describe() const {
    std::ostringstream out;
    out << "GF(" << q_ << ")=GF(" << p_ << "^" << n_ << "), modulus";
    for (std::size_t i = 0; i < modulus_.size(); ++i) out << " " << modulus_[i];
    return out.str();
}

}  // namespace cyclolines

#include "cyclolines/galois_ring.hpp"

#include <sstream>
#include <stdexcept>

namespace cyclolines {

namespace {

// Polynomial product over Z4 reduced by the monic modulus h, low degree
// first, fixed length n.
std::vector<int> z4_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                            const std::vector<int>& h) {
    const std::size_t n = h.size() - 1;
    std::vector<int> prod(2 * n - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % 4;
    }
    for (std::size_t i = prod.size(); i-- > n;) {
        int c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < n; ++j) prod[i - n + j] = ((prod[i - n + j] - c * h[j]) % 4 + 4) % 4;
    }
    prod.resize(n);
    return prod;
}

}  // namespace

GaloisRing GaloisRing::make(int n) {
    if (n < 1) throw std::invalid_argument("gr_make: degree must be positive");
    if ((std::int64_t{1} << n) > FiniteField::order_cap())
        throw std::domain_error("gr_make: residue field exceeds cap");

    GaloisRing R;
    R.n_ = n;
    R.two_n_ = std::int64_t{1} << n;
    R.size_ = std::int64_t{1} << (2 * n);

    // Graeffe lift of the binary primitive f: h(x^2) = (-1)^n f(x) f(-x)
    // over Z4.
    FiniteField F2n = FiniteField::make(2, n);
    const std::vector<int>& f = F2n.modulus();
    std::vector<int> fneg(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        int c = f[i] % 4;
        fneg[i] = (i % 2 == 0) ? c : (4 - c) % 4;
    }
    std::vector<int> prod(2 * f.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j) prod[i + j] = (prod[i + j] + f[i] * fneg[j]) % 4;
    if (n % 2 == 1)
        for (int& c : prod) c = (4 - c) % 4;
    R.h_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < prod.size(); ++i) {
        if (i % 2 == 1) {
            if (prod[i] != 0) throw std::logic_error("gr_make: Graeffe lift has odd-degree terms");
        } else {
            R.h_[i / 2] = prod[i];
        }
    }
    if (R.h_.back() != 1) throw std::logic_error("gr_make: lift is not monic");

    // xi = class of x must have multiplicative order 2^n - 1; enumerate its
    // powers to build T.
    auto pack = [&](const std::vector<int>& e) {
        int acc = 0;
        for (int i = n - 1; i >= 0; --i) acc = acc * 4 + e[static_cast<std::size_t>(i)];
        return acc;
    };
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    if (n == 1)
        x[0] = ((-R.h_[0]) % 4 + 4) % 4;  // the root of the linear modulus
    else
        x[1] = 1;

    R.teich_.clear();
    R.teich_.push_back(0);
    R.teich_index_.assign(static_cast<std::size_t>(R.size_), -1);
    R.teich_index_[0] = 0;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    cur[0] = 1;
    for (std::int64_t e = 0; e < R.two_n_ - 1; ++e) {
        int packed = pack(cur);
        if (R.teich_index_[static_cast<std::size_t>(packed)] != -1)
            throw std::logic_error("gr_make: xi has order below 2^n - 1");
        R.teich_index_[static_cast<std::size_t>(packed)] = static_cast<int>(R.teich_.size());
        R.teich_.push_back(packed);
        cur = z4_mul_mod(cur, x, R.h_);
    }
    // closing the cycle: xi^(2^n - 1) = 1
    if (pack(cur) != 1) throw std::logic_error("gr_make: xi^(2^n-1) != 1");

    // lift table indexed by packed GF(2^n) bits
    R.lift_.assign(static_cast<std::size_t>(R.two_n_), -1);
    for (int t : R.teich_) {
        int bits = R.mod2(t);
        if (R.lift_[static_cast<std::size_t>(bits)] != -1)
            throw std::logic_error("gr_make: T -> GF(2^n) is not injective mod 2");
        R.lift_[static_cast<std::size_t>(bits)] = t;
    }

    // trace table: sum of Frobenius iterates, checked to land in Z4.
    R.trace_.assign(static_cast<std::size_t>(R.size_), 0);
    for (std::int64_t a = 0; a < R.size_; ++a) {
        int acc = 0;
        int it = static_cast<int>(a);
        for (int i = 0; i < n; ++i) {
            acc = R.add(acc, it);
            it = R.frobenius(it);
        }
        std::vector<int> d = R.digits(acc);
        for (int i = 1; i < n; ++i)
            if (d[static_cast<std::size_t>(i)] != 0)
                throw std::logic_error("gr_make: trace fell outside Z4");
        R.trace_[static_cast<std::size_t>(a)] = d[0];
    }
    return R;
}

std::vector<int> GaloisRing::digits(int a) const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        d[static_cast<std::size_t>(i)] = a % 4;
        a /= 4;
    }
    return d;
}

int GaloisRing::xi() const { return n_ == 1 ? teich_[1] : 4; }

int GaloisRing::add(int a, int b) const {
    int r = 0;
    int mult = 1;
    for (int i = 0; i < n_; ++i) {
        r += (((a / mult) % 4 + (b / mult) % 4) % 4) * mult;
        mult *= 4;
    }
    return r;
}

int GaloisRing::neg(int a) const {
    int r = 0;
    int mult = 1;
    for (int i = 0; i < n_; ++i) {
        r += ((4 - (a / mult) % 4) % 4) * mult;
        mult *= 4;
    }
    return r;
}

int GaloisRing::mul(int a, int b) const {
    std::vector<int> da = digits(a);
    std::vector<int> db = digits(b);
    std::vector<int> prod = z4_mul_mod(da, db, h_);
    int acc = 0;
    for (int i = n_ - 1; i >= 0; --i) acc = acc * 4 + prod[static_cast<std::size_t>(i)];
    return acc;
}

int GaloisRing::pow(int a, std::int64_t e) const {
    if (e < 0) throw std::invalid_argument("GaloisRing::pow: negative exponent");
    int r = 1;
    int base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

int GaloisRing::scalar_mul(int c, int a) const {
    c = ((c % 4) + 4) % 4;
    int r = 0;
    for (int i = 0; i < c; ++i) r = add(r, a);
    return r;
}

bool GaloisRing::in_teichmuller(int a) const {
    return teich_index_[static_cast<std::size_t>(a)] != -1;
}

std::pair<int, int> GaloisRing::decompose(int a) const {
    int xhat = lift_[static_cast<std::size_t>(mod2(a))];
    int rem = sub(a, xhat);  // lies in 2R: all digits even
    int half = 0;            // digits of rem / 2, each in {0, 1}
    int mult = 1;
    int rr = rem;
    for (int i = 0; i < n_; ++i) {
        int d = rr % 4;
        if (d % 2 != 0) throw std::logic_error("decompose: remainder not in 2R");
        half += (d / 2) * mult;
        rr /= 4;
        mult *= 4;
    }
    int yhat = lift_[static_cast<std::size_t>(mod2(half))];
    return {xhat, yhat};
}

int GaloisRing::teich_sqrt(int a) const {
    if (!in_teichmuller(a))
        throw std::invalid_argument("teich_sqrt: input is not a Teichmuller element");
    if (a == 0) return 0;
    // squaring permutes T \ {0} with odd cycle order 2^n - 1
    return pow(a, std::int64_t{1} << (n_ - 1));
}

int GaloisRing::teich_lift(int field_element) const {
    if (field_element < 0 || field_element >= two_n_)
        throw std::invalid_argument("teich_lift: element outside GF(2^n)");
    return lift_[static_cast<std::size_t>(field_element)];
}

int GaloisRing::mod2(int a) const {
    int bits = 0;
    int mult4 = 1;
    int mult2 = 1;
    for (int i = 0; i < n_; ++i) {
        bits += ((a / mult4) % 4 % 2) * mult2;
        mult4 *= 4;
        mult2 *= 2;
    }
    return bits;
}

int GaloisRing::frobenius(int a) const {
    auto [xhat, yhat] = decompose(a);
    return add(mul(xhat, xhat), scalar_mul(2, mul(yhat, yhat)));
}

std::string GaloisRing::describe() const {
    std::ostringstream out;
    out << "GR(4^" << n_ << "), modulus";
    for (std::size_t i = 0; i < h_.size(); ++i) out << " " << h_[i];
    return out.str();
}

}  // namespace cyclolines

#include "cyclolines/cyclotomic.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cyclolines {

namespace {

std::atomic<int> g_max_order{4096};

// ---- integer polynomial helpers (low-degree first) ----

using ZPoly = std::vector<BigInt>;

void ztrim(ZPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division, divisor monic.  Used only while building Phi_n, where the
// division is known to be exact.
ZPoly zdiv_exact(ZPoly num, const ZPoly& den) {
    if (den.empty() || den.back() != 1) throw std::logic_error("divisor must be monic");
    if (num.size() < den.size()) throw std::logic_error("inexact polynomial division");
    ZPoly quot(num.size() - den.size() + 1, BigInt(0));
    for (std::size_t i = quot.size(); i-- > 0;) {
        BigInt c = num[i + den.size() - 1];
        quot[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const BigInt& c : num)
        if (c != 0) throw std::logic_error("inexact polynomial division");
    ztrim(quot);
    return quot;
}

const ZPoly& phi_poly(int n) {
    static std::map<int, ZPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed bottom-up so
    // the recursion never re-enters the lock.
    for (int m = 1; m <= n; ++m) {
        if (n % m != 0 || cache.count(m)) continue;
        ZPoly num(m + 1, BigInt(0));
        num[0] = -1;
        num[m] = 1;
        for (int d = 1; d < m; ++d)
            if (m % d == 0) num = zdiv_exact(std::move(num), cache.at(d));
        cache.emplace(m, std::move(num));
    }
    return cache.at(n);
}

int phi_degree(int n) { return static_cast<int>(phi_poly(n).size()) - 1; }

// Reduce a rational polynomial (any degree) modulo the monic Phi_n and
// return exactly phi(n) coordinates.
std::vector<Rational> reduce_mod_phi(std::vector<Rational> p, int n) {
    const ZPoly& phi = phi_poly(n);
    const std::size_t deg = phi.size() - 1;
    if (p.size() > deg) {
        for (std::size_t i = p.size(); i-- > deg;) {
            if (p[i] == 0) continue;
            Rational c = p[i];
            p[i] = 0;
            for (std::size_t j = 0; j < deg; ++j) {
                Rational t(phi[j]);
                p[i - deg + j] -= c * t;
            }
        }
    }
    p.resize(deg, Rational(0));
    return p;
}

int checked_lcm(int a, int b) {
    long l = std::lcm<long>(a, b);
    if (l > g_max_order.load())
        throw std::domain_error("cyclotomic order " + std::to_string(l) +
                                " exceeds the configured cap " +
                                std::to_string(g_max_order.load()));
    return static_cast<int>(l);
}

}  // namespace

int euler_phi(int n) {
    int result = n;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

const std::vector<BigInt>& cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic polynomial needs n >= 1");
    return phi_poly(n);
}

Cyclotomic::Cyclotomic() : order_(1), coeffs_{Rational(0)} {}

Cyclotomic::Cyclotomic(long value) : order_(1), coeffs_{Rational(value)} {}

Cyclotomic::Cyclotomic(const Rational& value) : order_(1), coeffs_{value} {
    coeffs_[0].canonicalize();
}

Cyclotomic::Cyclotomic(int order, std::vector<Rational> reduced)
    : order_(order), coeffs_(std::move(reduced)) {}

Cyclotomic Cyclotomic::root_of_unity(int n, long k) {
    if (n < 1) throw std::invalid_argument("root_of_unity: order must be positive");
    if (n > g_max_order.load())
        throw std::domain_error("root_of_unity: order exceeds cap");
    long e = ((k % n) + n) % n;
    std::vector<Rational> p(n, Rational(0));
    p[static_cast<std::size_t>(e)] = 1;
    return Cyclotomic(n, reduce_mod_phi(std::move(p), n));
}

Cyclotomic Cyclotomic::sqrt_of_integer(long m) {
    if (m < 0) throw std::invalid_argument("sqrt_of_integer: negative input");
    if (m == 0) return Cyclotomic(0);
    long square_free = 1;
    long square_part = 1;
    long rest = m;
    for (long p = 2; p * p <= rest; ++p) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) square_part *= p;
        if (e % 2) square_free *= p;
    }
    if (rest > 1) square_free *= rest;

    Cyclotomic result(square_part);
    long r = square_free;
    for (long p = 2; r > 1; p = (p == 2 ? 3 : p + 2)) {
        if (r % p != 0) continue;
        r /= p;
        if (p == 2) {
            result *= root_of_unity(8, 1) + root_of_unity(8, 7);
        } else {
            // Quadratic Gauss sum g = sum_x zeta_p^{x^2}; g = sqrt(p) when
            // p = 1 mod 4 and i*sqrt(p) when p = 3 mod 4.
            Cyclotomic g(0);
            for (long x = 0; x < p; ++x) g += root_of_unity(static_cast<int>(p), x * x);
            if (p % 4 == 3) g *= root_of_unity(4, 3);  // divide by i
            result *= g;
        }
    }
    return result;
}

bool Cyclotomic::is_zero() const {
    for (const Rational& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational: " + to_string());
    return coeffs_[0];
}

Cyclotomic Cyclotomic::conjugate() const {
    std::vector<Rational> p(order_, Rational(0));
    for (int k = 0; k < static_cast<int>(coeffs_.size()); ++k) {
        if (coeffs_[k] == 0) continue;
        p[static_cast<std::size_t>((order_ - k) % order_)] += coeffs_[k];
    }
    return Cyclotomic(order_, reduce_mod_phi(std::move(p), order_));
}

Cyclotomic Cyclotomic::to_order(int m) const {
    auto r = try_to_order(m);
    if (!r)
        throw std::domain_error("value does not lie in Q(zeta_" + std::to_string(m) + "): " +
                                to_string());
    return *r;
}

std::optional<Cyclotomic> Cyclotomic::try_to_order(int m) const {
    if (m < 1) throw std::invalid_argument("to_order: order must be positive");
    if (m == order_) return *this;
    if (m % order_ == 0) {
        if (m > g_max_order.load()) throw std::domain_error("to_order: order exceeds cap");
        int stride = m / order_;
        std::vector<Rational> p(m, Rational(0));
        for (int k = 0; k < static_cast<int>(coeffs_.size()); ++k)
            p[static_cast<std::size_t>(k) * stride] = coeffs_[k];
        return Cyclotomic(m, reduce_mod_phi(std::move(p), m));
    }

    // General re-expression: write this value (promoted to lcm) in the basis
    // {zeta_m^j} and solve the resulting exact linear system.
    int big = checked_lcm(order_, m);
    Cyclotomic lifted = to_order(big);
    int cols = phi_degree(m);
    int rows = phi_degree(big);
    std::vector<std::vector<Rational>> aug(
        static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(cols) + 1, Rational(0)));
    for (int j = 0; j < cols; ++j) {
        Cyclotomic basis = root_of_unity(m, j).to_order(big);
        for (int i = 0; i < rows; ++i) aug[i][j] = basis.coeffs()[i];
    }
    for (int i = 0; i < rows; ++i) aug[i][cols] = lifted.coeffs()[i];

    // Exact Gaussian elimination; reports inconsistency when the value is
    // not in the subfield.
    std::vector<int> pivot_col(static_cast<std::size_t>(rows), -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int sel = -1;
        for (int r = rank; r < rows; ++r)
            if (aug[r][col] != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(aug[rank], aug[sel]);
        Rational inv = Rational(1) / aug[rank][col];
        for (int j = col; j <= cols; ++j) aug[rank][j] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || aug[r][col] == 0) continue;
            Rational f = aug[r][col];
            for (int j = col; j <= cols; ++j) aug[r][j] -= f * aug[rank][j];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (aug[r][cols] != 0) return std::nullopt;

    std::vector<Rational> sol(static_cast<std::size_t>(cols), Rational(0));
    for (int r = 0; r < rank; ++r) sol[pivot_col[r]] = aug[r][cols];
    return Cyclotomic(m, std::move(sol));
}

std::complex<double> Cyclotomic::to_float() const {
    std::complex<double> acc(0.0, 0.0);
    const double tau = 2.0 * 3.14159265358979323846264338327950288;
    for (int k = 0; k < static_cast<int>(coeffs_.size()); ++k) {
        if (coeffs_[k] == 0) continue;
        double c = coeffs_[k].get_d();
        double arg = tau * k / order_;
        acc += c * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return acc;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (Rational& c : r.coeffs_) c = -c;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
    int n = checked_lcm(order_, rhs.order_);
    Cyclotomic a = to_order(n);
    Cyclotomic b = rhs.to_order(n);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    *this = std::move(a);
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) {
    *this += -rhs;
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) {
    int n = checked_lcm(order_, rhs.order_);
    Cyclotomic a = to_order(n);
    Cyclotomic b = rhs.to_order(n);
    std::vector<Rational> p(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            p[(i + j) % static_cast<std::size_t>(n)] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    *this = Cyclotomic(n, reduce_mod_phi(std::move(p), n));
    return *this;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("cyclotomic division by zero");
    if (is_rational()) return Cyclotomic(Rational(1) / coeffs_[0]);
    // Unit shortcut: if x * conj(x) = 1 the inverse is the conjugate.
    Cyclotomic a2 = abs_squared();
    if (a2.is_rational()) {
        Rational n = a2.rational_value();
        Cyclotomic c = conjugate();
        for (Rational& v : c.coeffs_) v /= n;
        return c;
    }
    // General case: solve (multiplication-by-x) * y = 1 in the power basis.
    int n = order_;
    int d = phi_degree(n);
    std::vector<std::vector<Rational>> aug(
        static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d) + 1, Rational(0)));
    for (int j = 0; j < d; ++j) {
        Cyclotomic col = *this * root_of_unity(n, j);
        for (int i = 0; i < d; ++i) aug[i][j] = col.coeffs()[i];
    }
    aug[0][d] = 1;
    for (int col = 0, rank = 0; col < d && rank < d; ++col, ++rank) {
        int sel = -1;
        for (int r = rank; r < d; ++r)
            if (aug[r][col] != 0) {
                sel = r;
                break;
            }
        if (sel < 0) throw std::domain_error("cyclotomic inverse: singular system");
        std::swap(aug[rank], aug[sel]);
        Rational inv = Rational(1) / aug[rank][col];
        for (int j = col; j <= d; ++j) aug[rank][j] *= inv;
        for (int r = 0; r < d; ++r) {
            if (r == rank || aug[r][col] == 0) continue;
            Rational f = aug[r][col];
            for (int j = col; j <= d; ++j) aug[r][j] -= f * aug[rank][j];
        }
    }
    std::vector<Rational> sol(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) sol[i] = aug[i][d];
    return Cyclotomic(n, std::move(sol));
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& rhs) {
    *this *= rhs.inverse();
    return *this;
}

bool operator==(const Cyclotomic& lhs, const Cyclotomic& rhs) {
    if (lhs.order_ == rhs.order_) return lhs.coeffs_ == rhs.coeffs_;
    int n = checked_lcm(lhs.order_, rhs.order_);
    return lhs.to_order(n).coeffs_ == rhs.to_order(n).coeffs_;
}

std::string Cyclotomic::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (int k = 0; k < static_cast<int>(coeffs_.size()); ++k) {
        if (coeffs_[k] == 0) continue;
        Rational c = coeffs_[k];
        if (!first) {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool unit_coeff = (c == 1 && k > 0);
        if (!unit_coeff) out << c.get_str();
        if (k > 0) {
            if (!unit_coeff) out << "*";
            out << "z" << order_;
            if (k > 1) out << "^" << k;
        }
    }
    if (first) out << "0";
    return out.str();
}

std::string Cyclotomic::key_at_order(int m) const {
    Cyclotomic v = to_order(m);
    std::string key;
    for (const Rational& c : v.coeffs()) {
        key += c.get_str();
        key += ';';
    }
    return key;
}

int Cyclotomic::max_order() { return g_max_order.load(); }

void Cyclotomic::set_max_order(int cap) {
    if (cap < 1) throw std::invalid_argument("order cap must be positive");
    g_max_order.store(cap);
}

Cyclotomic real(const Cyclotomic& x) {
    return (x + x.conjugate()) / Cyclotomic(2);
}

Cyclotomic imag(const Cyclotomic& x) {
    // (x - conj x) / (2i)
    return (x - x.conjugate()) * Cyclotomic::root_of_unity(4, 3) / Cyclotomic(2);
}

}  // namespace cyclolines

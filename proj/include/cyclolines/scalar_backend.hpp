#pragma once

#include <complex>
#include <string>

#include "cyclolines/cyclotomic.hpp"

namespace cyclolines {

enum class BackendMode { Exact, Float };

/// Scalar comparison policy.  Exact mode never rounds; Float mode declares
/// two values equal when they differ by at most `tolerance`.
struct ScalarBackend {
    BackendMode mode = BackendMode::Exact;
    double tolerance = 1e-9;

    static ScalarBackend exact() { return {BackendMode::Exact, 0.0}; }
    static ScalarBackend floating(double tol = 1e-9) { return {BackendMode::Float, tol}; }
    bool is_exact() const { return mode == BackendMode::Exact; }
};

inline std::string backend_name(const ScalarBackend& b) {
    return b.is_exact() ? "exact" : "float";
}

/// Operations on the exact scalar, for code templated over a backend.
struct ExactOps {
    using Scalar = Cyclotomic;
    static Scalar conjugate(const Scalar& x) { return x.conjugate(); }
    static Scalar abs_sq(const Scalar& x) { return x.abs_squared(); }
    static bool equal(const Scalar& a, const Scalar& b) { return a == b; }
    static bool is_zero(const Scalar& x) { return x.is_zero(); }
    static Scalar zero() { return Scalar(0); }
    static Scalar one() { return Scalar(1); }
    static std::string str(const Scalar& x) { return x.to_string(); }
};

struct FloatOps {
    using Scalar = std::complex<double>;
    double tol = 1e-9;
    static Scalar conjugate(const Scalar& x) { return std::conj(x); }
    static Scalar abs_sq(const Scalar& x) { return Scalar(std::norm(x), 0.0); }
    bool equal(const Scalar& a, const Scalar& b) const { return std::abs(a - b) <= tol; }
    bool is_zero(const Scalar& x) const { return std::abs(x) <= tol; }
    static Scalar zero() { return Scalar(0.0, 0.0); }
    static Scalar one() { return Scalar(1.0, 0.0); }
    static std::string str(const Scalar& x);
};

}  // namespace cyclolines

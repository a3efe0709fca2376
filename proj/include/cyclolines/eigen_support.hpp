#pragma once

#include <Eigen/Core>

#include "cyclolines/cyclotomic.hpp"

// Registers Cyclotomic as a complex-valued Eigen scalar so every dense type
// in the library can be templated on it.  conj/real/imag resolve through ADL
// in namespace cyclolines.
namespace Eigen {

template <>
struct NumTraits<cyclolines::Cyclotomic> : GenericNumTraits<cyclolines::Cyclotomic> {
    typedef cyclolines::Cyclotomic Real;
    typedef cyclolines::Cyclotomic NonInteger;
    typedef cyclolines::Cyclotomic Literal;
    typedef cyclolines::Cyclotomic Nested;
    enum {
        IsComplex = 1,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 64,
        MulCost = 512
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

// Cyclotomic is its own Real type, which would otherwise make the generic
// (T, T) and (T, Real) trait specializations ambiguous.
template <typename BinaryOp>
struct ScalarBinaryOpTraits<cyclolines::Cyclotomic, cyclolines::Cyclotomic, BinaryOp> {
    typedef cyclolines::Cyclotomic ReturnType;
};

}  // namespace Eigen

namespace cyclolines {

using CycMatrix = Eigen::Matrix<Cyclotomic, Eigen::Dynamic, Eigen::Dynamic>;
using CycVector = Eigen::Matrix<Cyclotomic, Eigen::Dynamic, 1>;
using CplxMatrix = Eigen::MatrixXcd;
using CplxVector = Eigen::VectorXcd;

/// Exact entrywise equality of two dense expressions.
template <typename DerivedA, typename DerivedB>
bool all_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index c = 0; c < a.cols(); ++c)
        for (Eigen::Index r = 0; r < a.rows(); ++r)
            if (!(a(r, c) == b(r, c))) return false;
    return true;
}

}  // namespace cyclolines

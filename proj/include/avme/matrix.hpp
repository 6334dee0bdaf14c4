#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>

#include "avme/errors.hpp"

namespace avme {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default cap on the order of matrices produced by Kronecker lifts.
inline constexpr Eigen::Index kDefaultKronCap = 4096;

/// Throws if any entry is NaN or infinite.  Every external entry point
/// (parsers, generators) funnels matrices through this check.
inline void ensure_finite(const Matrix& m, const std::string& name) {
    if (!m.allFinite()) {
        throw ParseError(name + ": non-finite entry (NaN or Inf)");
    }
}

inline void ensure_finite(const Vector& v, const std::string& name) {
    if (!v.allFinite()) {
        throw ParseError(name + ": non-finite entry (NaN or Inf)");
    }
}

/// Entrywise absolute value.
inline Matrix abs_elementwise(const Matrix& m) { return m.cwiseAbs(); }
inline Vector abs_elementwise(const Vector& v) { return v.cwiseAbs(); }

/// Largest entry magnitude; the residual norm used throughout.
inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}
inline double max_abs(const Vector& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

/// Operator infinity norm (max absolute row sum).
inline double inf_norm(const Matrix& m) {
    return m.rows() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Operator 1-norm (max absolute column sum).
inline double one_norm(const Matrix& m) {
    return m.cols() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

/// Kronecker product.  Throws DimensionOverflow when either result
/// dimension exceeds `cap`; the combinatorial checkers cannot afford
/// unbounded lifts.
inline Matrix kron(const Matrix& a, const Matrix& b, Eigen::Index cap = kDefaultKronCap) {
    const Eigen::Index rows = a.rows() * b.rows();
    const Eigen::Index cols = a.cols() * b.cols();
    if (rows > cap || cols > cap) {
        throw DimensionOverflow("kron: result " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " exceeds cap " + std::to_string(cap));
    }
    Matrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Column-stacking vectorization.
inline Vector vec(const Matrix& x) {
    return Eigen::Map<const Vector>(x.data(), x.size());
}

/// Inverse of vec; requires len = rows * cols.
inline Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) {
        throw DimensionMismatch("unvec: length " + std::to_string(v.size()) + " != " +
                                std::to_string(rows) + "*" + std::to_string(cols));
    }
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

}  // namespace avme

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>

#include "avme/errors.hpp"
#include "avme/matrix.hpp"

namespace avme {

/// Relative pivot threshold below which a matrix is declared singular.
inline constexpr double kSingularityThreshold = 1e-12;

namespace detail {

/// Smallest pivot magnitude of the partial-pivoting LU of `m`,
/// relative to the largest entry magnitude.  Zero for the zero matrix.
inline double relative_min_pivot(const Eigen::PartialPivLU<Matrix>& lu, const Matrix& m) {
    const double scale = max_abs(m);
    if (scale == 0.0) return 0.0;
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    return min_pivot / scale;
}

}  // namespace detail

struct InverseResult {
    Matrix inverse;
    double rcond;  // reciprocal condition estimate in the infinity norm
};

/// Inverse via LU with partial pivoting.  Throws SingularMatrix when a
/// pivot falls below kSingularityThreshold * max|entry|.
inline InverseResult invert_with_rcond(const Matrix& m, const std::string& name = "matrix") {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("invert: " + name + " is not square");
    }
    Eigen::PartialPivLU<Matrix> lu(m);
    if (detail::relative_min_pivot(lu, m) < kSingularityThreshold) {
        throw SingularMatrix("invert: " + name + " is singular or numerically singular");
    }
    InverseResult res;
    res.inverse = lu.inverse();
    const double denom = inf_norm(m) * inf_norm(res.inverse);
    res.rcond = denom == 0.0 ? 1.0 : 1.0 / denom;
    return res;
}

inline Matrix invert(const Matrix& m, const std::string& name = "matrix") {
    return invert_with_rcond(m, name).inverse;
}

inline bool is_invertible(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    Eigen::PartialPivLU<Matrix> lu(m);
    return detail::relative_min_pivot(lu, m) >= kSingularityThreshold;
}

/// Signed determinant via LU with partial pivoting.
inline double determinant(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("determinant: matrix is not square");
    }
    if (m.rows() == 0) return 1.0;
    return Eigen::PartialPivLU<Matrix>(m).determinant();
}

/// Hadamard bound on |det(m)|; the scale against which a determinant
/// counts as numerically zero.
inline double determinant_scale(const Matrix& m) {
    double bound = 1.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        bound *= m.col(j).norm();
    }
    return std::max(1.0, bound);
}

/// Max modulus over all (possibly complex) eigenvalues.
inline double spectral_radius(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("spectral_radius: matrix is not square");
    }
    if (m.size() == 0) return 0.0;
    if (max_abs(m) == 0.0) return 0.0;
    Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw NonConvergence("spectral_radius: eigenvalue iteration did not converge");
    }
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct SigmaExtremes {
    double sigma_max;
    double sigma_min;  // smallest of the min(rows, cols) singular values
};

/// Largest and smallest singular values.
inline SigmaExtremes sigma_extremes(const Matrix& m) {
    if (m.size() == 0) {
        throw DimensionMismatch("sigma_extremes: empty matrix");
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    return {s(0), s(s.size() - 1)};
}

inline double sigma_max(const Matrix& m) { return sigma_extremes(m).sigma_max; }
inline double sigma_min(const Matrix& m) { return sigma_extremes(m).sigma_min; }

}  // namespace avme

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avme/instances.hpp"
#include "avme/linalg.hpp"
#include "avme/matrix.hpp"

namespace avme {

struct SolveOptions {
    int max_iterations = 10000;
    double step_tolerance = 1e-12;      // infinity norm of successive difference
    double residual_tolerance = 1e-10;
    std::optional<Vector> initial_point;
    Eigen::Index oracle_fallback_max_order = 12;  // per-column oracle rescue inside solve_gavme
};

struct SolveResult {
    Matrix solution;  // n x m; a GAVE solution is the single column
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    std::string certificate_used;
};

/// Sign pattern d in {-1, +1}^n, stored per component.
using SignPattern = std::vector<int>;

struct OracleReport {
    bool infinite = false;                    // consistent singular sign system found
    std::vector<Vector> solutions;            // deduplicated, lexicographic pattern order
    std::vector<SignPattern> degenerate_patterns;  // patterns where A + B diag(d) was singular
    bool consistent_singular = false;

    std::size_t solution_count() const { return solutions.size(); }
};

namespace detail {

inline constexpr double kSignSlack = 1e-10;
inline constexpr double kDedupTolerance = 1e-8;

inline SignPattern pattern_from_mask(std::uint64_t mask, Eigen::Index n) {
    SignPattern d(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) d[static_cast<size_t>(i)] = ((mask >> i) & 1u) ? 1 : -1;
    return d;
}

inline bool sign_consistent(const Vector& x, const SignPattern& d) {
    const double slack = kSignSlack * (1.0 + max_abs(x));
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (d[static_cast<size_t>(i)] * x(i) < -slack) return false;
    }
    return true;
}

inline bool already_listed(const std::vector<Vector>& sols, const Vector& x) {
    for (const auto& s : sols) {
        if (max_abs(Vector(s - x)) <= kDedupTolerance) return true;
    }
    return false;
}

}  // namespace detail

/// Exhaustive solution census for Ax + B|x| = f.  For each sign pattern
/// d the linear system (A + B diag(d)) x = f is solved and x is accepted
/// when diag(d) x is (numerically) nonnegative.  A singular pattern whose
/// system is still consistent makes the census INFINITE.
inline OracleReport oracle_gave(const Matrix& A, const Matrix& B, const Vector& f,
                                std::uint64_t enum_cap = std::uint64_t{1} << 20) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows() ||
        f.size() != A.rows()) {
        throw DimensionMismatch("oracle_gave: inconsistent dimensions");
    }
    const Eigen::Index n = A.rows();
    if (n >= 63 || (std::uint64_t{1} << n) > enum_cap) {
        throw DimensionOverflow("oracle_gave: 2^" + std::to_string(n) + " sign patterns exceed cap");
    }

    OracleReport report;
    Matrix system(n, n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const auto d = detail::pattern_from_mask(mask, n);
        system = A;
        for (Eigen::Index j = 0; j < n; ++j) {
            system.col(j) += d[static_cast<size_t>(j)] * B.col(j);
        }
        Eigen::PartialPivLU<Matrix> lu(system);
        if (detail::relative_min_pivot(lu, system) < kSingularityThreshold) {
            report.degenerate_patterns.push_back(d);
            // consistency via least squares residual
            const Vector ls = system.colPivHouseholderQr().solve(f);
            if (max_abs(Vector(system * ls - f)) <= 1e-9 * (1.0 + max_abs(f))) {
                report.infinite = true;
                report.consistent_singular = true;
            }
            continue;
        }
        const Vector x = lu.solve(f);
        if (detail::sign_consistent(x, d) && !detail::already_listed(report.solutions, x)) {
            report.solutions.push_back(x);
        }
    }
    return report;
}

/// Per-column census of AX + B|X| = F; the instance's solution count is
/// the product over columns.
inline std::vector<OracleReport> oracle_gavme(const Matrix& A, const Matrix& B, const Matrix& F,
                                              std::uint64_t enum_cap = std::uint64_t{1} << 20) {
    std::vector<OracleReport> reports;
    reports.reserve(static_cast<size_t>(F.cols()));
    for (Eigen::Index j = 0; j < F.cols(); ++j) {
        reports.push_back(oracle_gave(A, B, Vector(F.col(j)), enum_cap));
    }
    return reports;
}

/// Picard iteration x <- A^{-1}(f - B|x|); a contraction whenever
/// rho(|A^{-1}B|) < 1.  Non-convergence is reported in the result, not
/// thrown: the harness observes failure regimes on purpose.
inline SolveResult solve_gave_picard(const Matrix& A, const Matrix& B, const Vector& f,
                                     const SolveOptions& opts = {}) {
    const Eigen::Index n = A.rows();
    if (B.rows() != n || B.cols() != n || f.size() != n) {
        throw DimensionMismatch("solve_gave_picard: inconsistent dimensions");
    }
    Eigen::PartialPivLU<Matrix> lu(A);
    if (detail::relative_min_pivot(lu, A) < kSingularityThreshold) {
        throw SingularMatrix("solve_gave_picard: A is singular");
    }

    Vector x = opts.initial_point ? *opts.initial_point : Vector(Vector::Zero(n));
    if (x.size() != n) throw DimensionMismatch("solve_gave_picard: initial point has wrong length");

    SolveResult res;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        const Vector next = lu.solve(Vector(f - B * x.cwiseAbs()));
        const double step = max_abs(Vector(next - x));
        x = next;
        res.iterations = it;
        if (step <= opts.step_tolerance) break;
    }
    res.solution = x;
    res.final_residual = max_abs(Vector(A * x + B * x.cwiseAbs() - f));
    res.converged = res.final_residual <= opts.residual_tolerance;
    return res;
}

/// Column-wise GAVME solver: Picard per column, with an oracle rescue
/// for small orders when Picard stalls.
inline SolveResult solve_gavme(const Matrix& A, const Matrix& B, const Matrix& F,
                               const SolveOptions& opts = {}) {
    if (!is_invertible(A)) throw SingularMatrix("solve_gavme: A is singular");
    const Eigen::Index n = A.rows();
    const Eigen::Index m = F.cols();
    if (F.rows() != n) throw DimensionMismatch("solve_gavme: F has wrong row count");

    SolveResult res;
    res.solution = Matrix::Zero(n, m);
    res.converged = true;
    for (Eigen::Index j = 0; j < m; ++j) {
        SolveResult col;
        try {
            col = solve_gave_picard(A, B, Vector(F.col(j)), opts);
        } catch (const SingularMatrix& e) {
            throw SingularMatrix("column " + std::to_string(j) + ": " + e.what());
        }
        if (!col.converged && n <= opts.oracle_fallback_max_order) {
            const auto census = oracle_gave(A, B, Vector(F.col(j)));
            if (!census.infinite && census.solution_count() == 1) {
                col.solution = census.solutions.front();
                col.final_residual =
                    max_abs(Vector(A * col.solution.col(0) +
                                   B * col.solution.col(0).cwiseAbs() - F.col(j)));
                col.converged = col.final_residual <= opts.residual_tolerance;
                col.certificate_used = "oracle fallback";
            }
        }
        res.solution.col(j) = col.solution.col(0);
        res.iterations = std::max(res.iterations, col.iterations);
        res.final_residual = std::max(res.final_residual, col.final_residual);
        res.converged = res.converged && col.converged;
        if (!col.certificate_used.empty()) res.certificate_used = col.certificate_used;
    }
    return res;
}

/// NGAVME solver: reduce to (AC^{-1})Y + B|Y| = F, solve, map back X = C^{-1}Y.
inline SolveResult solve_ngavme(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& F,
                                const SolveOptions& opts = {}) {
    if (!is_invertible(C)) throw SingularMatrix("solve_ngavme: C is singular");
    if (!is_invertible(A)) throw SingularMatrix("solve_ngavme: A is singular");
    const Matrix Cinv = invert(C);
    SolveResult res = solve_gavme(A * Cinv, B, F, opts);
    res.solution = Cinv * res.solution;
    res.final_residual = max_abs(Matrix(A * res.solution + B * (C * res.solution).cwiseAbs() - F));
    res.converged = res.final_residual <= opts.residual_tolerance;
    return res;
}

}  // namespace avme

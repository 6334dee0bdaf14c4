#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "avme/errors.hpp"
#include "avme/linalg.hpp"
#include "avme/matrix.hpp"

namespace avme {

// Right-hand sides are optional: certification only needs coefficients.

/// Ax + B|x| = f
struct GaveInstance {
    Matrix A;
    Matrix B;
    std::optional<Vector> f;
};

/// AX + B|X| = F, solved column by column
struct GavmeInstance {
    Matrix A;
    Matrix B;
    std::optional<Matrix> F;
};

/// AX + B|CX| = F
struct NgavmeInstance {
    Matrix A;
    Matrix B;
    Matrix C;
    std::optional<Matrix> F;
};

/// AXK + B|X|L = F; solvability conditions only, no general solver
struct SylvesterAveInstance {
    Matrix A;
    Matrix B;
    Matrix K;
    Matrix L;
    std::optional<Matrix> F;
};

using Instance = std::variant<GaveInstance, GavmeInstance, NgavmeInstance, SylvesterAveInstance>;

enum class InstanceTag { GAVE, GAVME, NGAVME, SYLVESTER };

inline InstanceTag tag_of(const Instance& inst) {
    return static_cast<InstanceTag>(inst.index());
}

inline std::string tag_name(InstanceTag t) {
    switch (t) {
        case InstanceTag::GAVE: return "gave";
        case InstanceTag::GAVME: return "gavme";
        case InstanceTag::NGAVME: return "ngavme";
        case InstanceTag::SYLVESTER: return "sylvester";
    }
    return "?";
}

namespace detail {

inline void require_square(const Matrix& m, Eigen::Index n, const std::string& name) {
    if (m.rows() != n || m.cols() != n) {
        throw DimensionMismatch(name + ": expected " + std::to_string(n) + "x" +
                                std::to_string(n) + ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    }
}

inline const Vector& rhs_or_throw(const GaveInstance& g) {
    if (!g.f) throw DimensionMismatch("instance has no right-hand side f");
    return *g.f;
}

template <typename Inst>
const Matrix& rhs_or_throw(const Inst& inst) {
    if (!inst.F) throw DimensionMismatch("instance has no right-hand side F");
    return *inst.F;
}

}  // namespace detail

/// Dimension invariants for each class; throws DimensionMismatch.
inline void validate(const Instance& inst) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            const Eigen::Index n = p.A.rows();
            if (n < 1) throw DimensionMismatch("A: empty matrix");
            detail::require_square(p.A, n, "A");
            detail::require_square(p.B, n, "B");
            if constexpr (std::is_same_v<T, GaveInstance>) {
                if (p.f && p.f->size() != n) throw DimensionMismatch("f: length != order of A");
            } else if constexpr (std::is_same_v<T, GavmeInstance>) {
                if (p.F && (p.F->rows() != n || p.F->cols() < 1))
                    throw DimensionMismatch("F: row count != order of A");
            } else if constexpr (std::is_same_v<T, NgavmeInstance>) {
                detail::require_square(p.C, n, "C");
                if (p.F && (p.F->rows() != n || p.F->cols() < 1))
                    throw DimensionMismatch("F: row count != order of A");
            } else {
                detail::require_square(p.K, n, "K");
                detail::require_square(p.L, n, "L");
                if (p.F) detail::require_square(*p.F, n, "F");
            }
        },
        inst);
}

/// Max-entry magnitude of LHS(X) - F; zero iff X solves the instance.
inline double residual(const GaveInstance& g, const Vector& x) {
    if (x.size() != g.A.rows()) throw DimensionMismatch("residual: x has wrong length");
    return max_abs(Vector(g.A * x + g.B * x.cwiseAbs() - detail::rhs_or_throw(g)));
}

inline double residual(const GavmeInstance& g, const Matrix& x) {
    const Matrix& F = detail::rhs_or_throw(g);
    if (x.rows() != g.A.rows() || x.cols() != F.cols()) {
        throw DimensionMismatch("residual: X has wrong shape");
    }
    return max_abs(Matrix(g.A * x + g.B * x.cwiseAbs() - F));
}

inline double residual(const NgavmeInstance& g, const Matrix& x) {
    const Matrix& F = detail::rhs_or_throw(g);
    if (x.rows() != g.A.rows() || x.cols() != F.cols()) {
        throw DimensionMismatch("residual: X has wrong shape");
    }
    return max_abs(Matrix(g.A * x + g.B * (g.C * x).cwiseAbs() - F));
}

inline double residual(const SylvesterAveInstance& g, const Matrix& x) {
    const Matrix& F = detail::rhs_or_throw(g);
    if (x.rows() != g.A.rows() || x.cols() != g.K.rows()) {
        throw DimensionMismatch("residual: X has wrong shape");
    }
    return max_abs(Matrix(g.A * x * g.K + g.B * x.cwiseAbs() * g.L - F));
}

inline double residual(const Instance& inst, const Matrix& x) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaveInstance>) {
                if (x.cols() != 1) throw DimensionMismatch("residual: GAVE expects a vector");
                return residual(p, Vector(x.col(0)));
            } else {
                return residual(p, x);
            }
        },
        inst);
}

struct NgavmeReduction {
    GavmeInstance gavme;  // coefficient AC^{-1}, same B and F
    Matrix c_inverse;     // back map: X = C^{-1} Y

    Matrix back_map(const Matrix& y) const { return c_inverse * y; }
};

/// Rewrites AX + B|CX| = F as (AC^{-1})Y + B|Y| = F with Y = CX.
inline NgavmeReduction reduce_ngavme(const NgavmeInstance& inst) {
    NgavmeReduction red;
    red.c_inverse = invert(inst.C, "C");
    red.gavme = GavmeInstance{inst.A * red.c_inverse, inst.B, inst.F};
    return red;
}

/// One GAVE per column of F, all sharing A and B.
inline std::vector<GaveInstance> gavme_columns(const GavmeInstance& inst) {
    const Matrix& F = detail::rhs_or_throw(inst);
    std::vector<GaveInstance> cols;
    cols.reserve(static_cast<size_t>(F.cols()));
    for (Eigen::Index j = 0; j < F.cols(); ++j) {
        cols.push_back(GaveInstance{inst.A, inst.B, Vector(F.col(j))});
    }
    return cols;
}

/// Kronecker lift to a single GAVE of order n*m:
/// (I_m (x) A) vec(X) + (I_m (x) B) |vec(X)| = vec(F).
inline GaveInstance lift_gavme(const GavmeInstance& inst, Eigen::Index cap = kDefaultKronCap) {
    const Matrix& F = detail::rhs_or_throw(inst);
    const Matrix eye = identity(F.cols());
    GaveInstance lifted;
    lifted.A = kron(eye, inst.A, cap);
    lifted.B = kron(eye, inst.B, cap);
    lifted.f = vec(F);
    return lifted;
}

}  // namespace avme

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "avme/instances.hpp"
#include "avme/linalg.hpp"
#include "avme/matrix.hpp"

namespace avme {

enum class Verdict { CERTIFIED, NOT_CERTIFIED, INAPPLICABLE, UNSOUND_CONDITION_HOLDS };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CERTIFIED: return "CERTIFIED";
        case Verdict::NOT_CERTIFIED: return "NOT_CERTIFIED";
        case Verdict::INAPPLICABLE: return "INAPPLICABLE";
        case Verdict::UNSOUND_CONDITION_HOLDS: return "UNSOUND_CONDITION_HOLDS";
    }
    return "?";
}

/// One sufficient condition's outcome with every computed witness scalar.
/// `margin` is the signed distance from the decision threshold
/// (positive means the inequality holds with room to spare).
struct Certificate {
    std::string condition_id;
    Verdict verdict = Verdict::INAPPLICABLE;
    std::map<std::string, double> witnesses;
    double margin = 0.0;
    std::string notes;

    bool certified() const { return verdict == Verdict::CERTIFIED; }
    /// The flawed Sylvester condition never certifies; everything else may.
    bool sound() const { return condition_id != "SYLVESTER_MIN_FLAWED"; }
};

namespace detail {

inline Certificate inapplicable(std::string id, std::string failed_hypothesis) {
    Certificate c;
    c.condition_id = std::move(id);
    c.verdict = Verdict::INAPPLICABLE;
    c.notes = "hypothesis failed: " + failed_hypothesis;
    return c;
}

/// Verdict for a strict "value < 1" condition.  `tol` is the caller's
/// demanded margin (default 0: raw strict comparison).
inline Certificate less_than_one(std::string id, const std::string& witness_name, double value,
                                 double tol) {
    Certificate c;
    c.condition_id = std::move(id);
    c.witnesses[witness_name] = value;
    c.margin = 1.0 - value;
    c.verdict = (value < 1.0 - tol) ? Verdict::CERTIFIED : Verdict::NOT_CERTIFIED;
    return c;
}

inline Certificate greater_than_one(std::string id, const std::string& witness_name, double value,
                                    double tol) {
    Certificate c;
    c.condition_id = std::move(id);
    c.witnesses[witness_name] = value;
    c.margin = value - 1.0;
    c.verdict = (value > 1.0 + tol) ? Verdict::CERTIFIED : Verdict::NOT_CERTIFIED;
    return c;
}

}  // namespace detail

/// rho(|A^{-1}B|) < 1  — the spectral-radius certificate for GAVME/GAVE.
inline Certificate check_gavme_spectral(const Matrix& A, const Matrix& B, double tol = 0.0) {
    if (!is_invertible(A)) return detail::inapplicable("SPECTRAL", "A not invertible");
    const Matrix AinvB = invert(A) * B;
    const double rho = spectral_radius(abs_elementwise(AinvB));
    return detail::less_than_one("SPECTRAL", "rho_abs_AinvB", rho, tol);
}

/// The four classic GAVME conditions:
///   CLASSIC_I   sigma_max(|B|) < sigma_min(A)
///   CLASSIC_II  sigma_max(B)   < sigma_min(A)
///   CLASSIC_III rho(|A^{-1}| |B|) < 1
///   CLASSIC_IV  sigma_max(A^{-1}B) < 1
inline std::vector<Certificate> check_gavme_classic(const Matrix& A, const Matrix& B,
                                                    double tol = 0.0) {
    std::vector<Certificate> certs;
    const double smin_A = sigma_min(A);
    const double smax_absB = sigma_max(abs_elementwise(B));
    const double smax_B = sigma_max(B);

    auto sigma_pair = [&](std::string id, double smax) {
        Certificate c;
        c.condition_id = std::move(id);
        c.witnesses["sigma_max"] = smax;
        c.witnesses["sigma_min_A"] = smin_A;
        c.margin = smin_A - smax;
        c.verdict = (smax < smin_A - tol) ? Verdict::CERTIFIED : Verdict::NOT_CERTIFIED;
        return c;
    };
    certs.push_back(sigma_pair("CLASSIC_I", smax_absB));
    certs.push_back(sigma_pair("CLASSIC_II", smax_B));

    if (is_invertible(A)) {
        const Matrix Ainv = invert(A);
        certs.push_back(detail::less_than_one(
            "CLASSIC_III", "rho_absAinv_absB",
            spectral_radius(Matrix(abs_elementwise(Ainv) * abs_elementwise(B))), tol));
        certs.push_back(detail::less_than_one("CLASSIC_IV", "sigma_max_AinvB",
                                              sigma_max(Matrix(Ainv * B)), tol));
    } else {
        certs.push_back(detail::inapplicable("CLASSIC_III", "A not invertible"));
        certs.push_back(detail::inapplicable("CLASSIC_IV", "A not invertible"));
    }
    return certs;
}

/// NGAVME conditions.  NGAVME_I..IV mirror the classic four applied to
/// the reduced coefficient AC^{-1}; NGAVME_RHO, NGAVME_SIGMA and
/// NGAVME_CORO are the conditions stated directly on CA^{-1}B and
/// B^{-1}AC^{-1}.
inline std::vector<Certificate> check_ngavme(const Matrix& A, const Matrix& B, const Matrix& C,
                                             double tol = 0.0) {
    std::vector<Certificate> certs;
    const bool a_inv = is_invertible(A);
    const bool b_inv = is_invertible(B);
    const bool c_inv = is_invertible(C);

    if (c_inv) {
        const Matrix ACinv = A * invert(C);
        const double smin = sigma_min(ACinv);
        const double smax_absB = sigma_max(abs_elementwise(B));
        const double smax_B = sigma_max(B);
        auto sigma_pair = [&](std::string id, double smax) {
            Certificate c;
            c.condition_id = std::move(id);
            c.witnesses["sigma_max"] = smax;
            c.witnesses["sigma_min_ACinv"] = smin;
            c.margin = smin - smax;
            c.verdict = (smax < smin - tol) ? Verdict::CERTIFIED : Verdict::NOT_CERTIFIED;
            return c;
        };
        certs.push_back(sigma_pair("NGAVME_I", smax_absB));
        certs.push_back(sigma_pair("NGAVME_II", smax_B));
    } else {
        certs.push_back(detail::inapplicable("NGAVME_I", "C not invertible"));
        certs.push_back(detail::inapplicable("NGAVME_II", "C not invertible"));
    }

    if (a_inv) {
        const Matrix CAinv = C * invert(A);
        certs.push_back(detail::less_than_one(
            "NGAVME_III", "rho_absCAinv_absB",
            spectral_radius(Matrix(abs_elementwise(CAinv) * abs_elementwise(B))), tol));
        const Matrix CAinvB = CAinv * B;
        certs.push_back(
            detail::less_than_one("NGAVME_IV", "sigma_max_CAinvB", sigma_max(CAinvB), tol));
        certs.push_back(detail::less_than_one("NGAVME_RHO", "rho_abs_CAinvB",
                                              spectral_radius(abs_elementwise(CAinvB)), tol));
        certs.push_back(
            detail::less_than_one("NGAVME_SIGMA", "sigma_max_CAinvB", sigma_max(CAinvB), tol));
    } else {
        certs.push_back(detail::inapplicable("NGAVME_III", "A not invertible"));
        certs.push_back(detail::inapplicable("NGAVME_IV", "A not invertible"));
        certs.push_back(detail::inapplicable("NGAVME_RHO", "A not invertible"));
        certs.push_back(detail::inapplicable("NGAVME_SIGMA", "A not invertible"));
    }

    if (b_inv && c_inv) {
        const Matrix M = invert(B) * A * invert(C);
        certs.push_back(
            detail::greater_than_one("NGAVME_CORO", "sigma_min_BinvACinv", sigma_min(M), tol));
    } else {
        certs.push_back(detail::inapplicable(
            "NGAVME_CORO", std::string(b_inv ? "C" : "B") + " not invertible"));
    }
    return certs;
}

/// sigma_max(LK^{-1}) sigma_max(A^{-1}B) < 1 for AXK + B|X|L = F.
inline Certificate check_sylvester_max(const Matrix& A, const Matrix& B, const Matrix& K,
                                       const Matrix& L, double tol = 0.0) {
    if (!is_invertible(A)) return detail::inapplicable("SYLVESTER_MAX", "A not invertible");
    if (!is_invertible(K)) return detail::inapplicable("SYLVESTER_MAX", "K not invertible");
    const double product = sigma_max(Matrix(L * invert(K))) * sigma_max(Matrix(invert(A) * B));
    auto c = detail::less_than_one("SYLVESTER_MAX", "sigma_product", product, tol);
    c.witnesses["sigma_max_LKinv"] = sigma_max(Matrix(L * invert(K)));
    c.witnesses["sigma_max_AinvB"] = sigma_max(Matrix(invert(A) * B));
    return c;
}

/// sigma_min(KL^{-1}) sigma_min(B^{-1}A) > 1, the corrected minimum
/// singular value condition (requires B and L nonsingular).
inline Certificate check_sylvester_min_corrected(const Matrix& A, const Matrix& B, const Matrix& K,
                                                 const Matrix& L, double tol = 0.0) {
    if (!is_invertible(B))
        return detail::inapplicable("SYLVESTER_MIN_CORRECTED", "B not invertible");
    if (!is_invertible(L))
        return detail::inapplicable("SYLVESTER_MIN_CORRECTED", "L not invertible");
    const double product = sigma_min(Matrix(K * invert(L))) * sigma_min(Matrix(invert(B) * A));
    return detail::greater_than_one("SYLVESTER_MIN_CORRECTED", "sigma_product", product, tol);
}

/// The refuted condition sigma_min(LK^{-1}) sigma_min(A^{-1}B) > 1.
/// Never certifies: when the inequality holds it returns
/// UNSOUND_CONDITION_HOLDS, since the scalar instance A=1, B=2, K=L=1
/// satisfies it while X + 2|X| = 1 has two solutions.
inline Certificate check_sylvester_min_flawed(const Matrix& A, const Matrix& B, const Matrix& K,
                                              const Matrix& L, double tol = 0.0) {
    if (!is_invertible(A)) return detail::inapplicable("SYLVESTER_MIN_FLAWED", "A not invertible");
    if (!is_invertible(K)) return detail::inapplicable("SYLVESTER_MIN_FLAWED", "K not invertible");
    const double product = sigma_min(Matrix(L * invert(K))) * sigma_min(Matrix(invert(A) * B));
    Certificate c;
    c.condition_id = "SYLVESTER_MIN_FLAWED";
    c.witnesses["sigma_product"] = product;
    c.margin = product - 1.0;
    if (product > 1.0 + tol) {
        c.verdict = Verdict::UNSOUND_CONDITION_HOLDS;
        c.notes =
            "condition holds but is not sufficient: the scalar counterexample "
            "A=1, B=2, K=L=1 satisfies it while X + 2|X| = 1 has two solutions "
            "and X + 2|X| = -1 has none";
    } else {
        c.verdict = Verdict::NOT_CERTIFIED;
    }
    return c;
}

/// Interval spectral condition rho((I (x) A^{-1}B) D) < 1 over all
/// diagonal D with entries in [-1, 1].  Two-part evaluation:
///  (a) sufficient surrogate sigma_max(A^{-1}B) < 1 (the bound
///      rho((I (x) M)D) <= sigma_max(M) holds for every admissible D);
///  (b) a vertex scan over D with entries in {-1, +1}, reported as a
///      witness only — passing the scan alone does not certify.
inline Certificate check_interval_spectral(const Matrix& A, const Matrix& B, Eigen::Index m,
                                           double tol = 0.0, std::uint64_t enum_cap = 1u << 20) {
    if (!is_invertible(A)) return detail::inapplicable("INTERVAL_SPECTRAL", "A not invertible");
    const Matrix M = invert(A) * B;
    const Eigen::Index order = M.rows() * m;
    if (order >= 63 || (std::uint64_t{1} << order) > enum_cap) {
        throw DimensionOverflow("interval spectral: 2^" + std::to_string(order) +
                                " vertices exceed cap " + std::to_string(enum_cap));
    }
    const Matrix lift = kron(identity(m), M);

    double vertex_max = 0.0;
    Matrix scaled(order, order);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << order); ++mask) {
        scaled = lift;
        for (Eigen::Index j = 0; j < order; ++j) {
            if (!((mask >> j) & 1u)) scaled.col(j) = -scaled.col(j);
        }
        vertex_max = std::max(vertex_max, spectral_radius(scaled));
    }

    const double surrogate = sigma_max(M);
    Certificate c;
    c.condition_id = "INTERVAL_SPECTRAL";
    c.witnesses["sigma_max_AinvB"] = surrogate;
    c.witnesses["vertex_max_rho"] = vertex_max;
    if (surrogate < 1.0 - tol) {
        c.verdict = Verdict::CERTIFIED;
        c.margin = 1.0 - surrogate;
        c.notes = "certified via the sigma_max surrogate";
    } else {
        c.verdict = Verdict::NOT_CERTIFIED;
        c.margin = 1.0 - surrogate;
        c.notes = vertex_max < 1.0 ? "vertex scan passed; interval max not established"
                                   : "vertex with rho >= 1 found";
    }
    return c;
}

}  // namespace avme

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "avme/certify.hpp"
#include "avme/linalg.hpp"
#include "avme/matrix.hpp"

namespace avme {

inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t{1} << 20;

/// One column choice per index: false -> column of M1, true -> column of M2.
using RepresentativeSelector = std::vector<bool>;

struct CombinatorialReport {
    std::string property_id;
    bool holds = false;
    std::optional<RepresentativeSelector> counterexample_selector;
    std::optional<std::vector<Eigen::Index>> counterexample_indices;  // principal index set
    std::optional<double> determinant_or_minor;
    std::uint64_t scanned = 0;
    std::string note;
};

namespace detail {

inline void check_pair(const Matrix& m1, const Matrix& m2) {
    if (m1.rows() != m1.cols() || m2.rows() != m2.cols() || m1.rows() != m2.rows()) {
        throw DimensionMismatch("representative pair: matrices must be square of equal order");
    }
}

inline void check_enum_cap(Eigen::Index n, std::uint64_t cap, const std::string& what) {
    if (n >= 63 || (std::uint64_t{1} << n) > cap) {
        throw DimensionOverflow(what + ": 2^" + std::to_string(n) + " exceeds cap " +
                                std::to_string(cap));
    }
}

inline RepresentativeSelector selector_from_mask(std::uint64_t mask, Eigen::Index n) {
    RepresentativeSelector sel(static_cast<size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) sel[static_cast<size_t>(j)] = (mask >> j) & 1u;
    return sel;
}

}  // namespace detail

/// The column representative with column j taken from M2 where the
/// selector bit is set, from M1 otherwise.
inline Matrix column_representative(const Matrix& m1, const Matrix& m2,
                                    const RepresentativeSelector& sel) {
    detail::check_pair(m1, m2);
    if (static_cast<Eigen::Index>(sel.size()) != m1.cols()) {
        throw DimensionMismatch("selector length != matrix order");
    }
    Matrix r = m1;
    for (Eigen::Index j = 0; j < m1.cols(); ++j) {
        if (sel[static_cast<size_t>(j)]) r.col(j) = m2.col(j);
    }
    return r;
}

/// Visits all 2^n column representatives of {M1, M2} in lexicographic
/// selector order.  `visit` returns false to stop early.
template <typename Visitor>
void for_each_column_representative(const Matrix& m1, const Matrix& m2, Visitor&& visit,
                                    std::uint64_t cap = kDefaultEnumCap) {
    detail::check_pair(m1, m2);
    const Eigen::Index n = m1.rows();
    detail::check_enum_cap(n, cap, "column representatives");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const auto sel = detail::selector_from_mask(mask, n);
        if (!visit(sel, column_representative(m1, m2, sel))) return;
    }
}

/// All 2^n column representatives, materialized.
inline std::vector<std::pair<RepresentativeSelector, Matrix>> column_representatives(
    const Matrix& m1, const Matrix& m2, std::uint64_t cap = kDefaultEnumCap) {
    std::vector<std::pair<RepresentativeSelector, Matrix>> out;
    for_each_column_representative(
        m1, m2,
        [&](const RepresentativeSelector& sel, Matrix r) {
            out.emplace_back(sel, std::move(r));
            return true;
        },
        cap);
    return out;
}

/// Column W-property: every column representative of {M1, M2} has a
/// strictly positive determinant.  Determinants within the noise band
/// around zero fail positivity with a "near-singular" note.
inline CombinatorialReport has_column_w_property(const Matrix& m1, const Matrix& m2,
                                                 std::uint64_t cap = kDefaultEnumCap) {
    CombinatorialReport rep;
    rep.property_id = "column_w_property";
    rep.holds = true;
    for_each_column_representative(
        m1, m2,
        [&](const RepresentativeSelector& sel, const Matrix& r) {
            ++rep.scanned;
            const double det = determinant(r);
            const double noise = kSingularityThreshold * determinant_scale(r);
            if (det <= noise) {
                rep.holds = false;
                rep.counterexample_selector = sel;
                rep.determinant_or_minor = det;
                if (std::abs(det) <= noise) rep.note = "near-singular representative";
                return false;
            }
            return true;
        },
        cap);
    return rep;
}

/// P-matrix test: all 2^n - 1 principal minors strictly positive.
inline CombinatorialReport is_p_matrix(const Matrix& m, std::uint64_t cap = kDefaultEnumCap) {
    if (m.rows() != m.cols()) throw DimensionMismatch("is_p_matrix: matrix not square");
    const Eigen::Index n = m.rows();
    detail::check_enum_cap(n, cap, "principal minors");

    CombinatorialReport rep;
    rep.property_id = "p_matrix";
    rep.holds = true;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < n; ++j) {
            if ((mask >> j) & 1u) idx.push_back(j);
        }
        const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
        Matrix sub(k, k);
        for (Eigen::Index r = 0; r < k; ++r) {
            for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = m(idx[r], idx[c]);
        }
        ++rep.scanned;
        const double minor = determinant(sub);
        const double noise = kSingularityThreshold * determinant_scale(sub);
        if (minor <= noise) {
            rep.holds = false;
            rep.counterexample_indices = idx;
            rep.determinant_or_minor = minor;
            if (std::abs(minor) <= noise) rep.note = "near-zero principal minor";
            return rep;
        }
    }
    return rep;
}

/// |m_jj| > sum_{i != j} |m_ij| for every column j.
inline CombinatorialReport is_sdd_columns(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("is_sdd_columns: matrix not square");
    CombinatorialReport rep;
    rep.property_id = "sdd_columns";
    rep.holds = true;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        ++rep.scanned;
        const double off = m.col(j).cwiseAbs().sum() - std::abs(m(j, j));
        if (std::abs(m(j, j)) <= off) {
            rep.holds = false;
            rep.counterexample_indices = std::vector<Eigen::Index>{j};
            rep.determinant_or_minor = std::abs(m(j, j)) - off;
            rep.note = "column " + std::to_string(j) + " not strictly dominant";
            return rep;
        }
    }
    return rep;
}

/// Strong connectivity of the directed graph on nonzero off-diagonals.
inline bool is_irreducible(const Matrix& m) {
    const Eigen::Index n = m.rows();
    if (n == 1) return true;
    // Floyd-Warshall style reachability closure
    std::vector<std::vector<bool>> reach(static_cast<size_t>(n),
                                         std::vector<bool>(static_cast<size_t>(n), false));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j && m(i, j) != 0.0) reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
        }
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!reach[static_cast<size_t>(i)][static_cast<size_t>(k)]) continue;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (reach[static_cast<size_t>(k)][static_cast<size_t>(j)]) {
                    reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
                }
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j && !reach[static_cast<size_t>(i)][static_cast<size_t>(j)]) return false;
        }
    }
    return true;
}

/// Irreducible + weakly column-dominant everywhere + strictly dominant
/// in at least one column.
inline CombinatorialReport is_irreducibly_dd_columns(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("is_irreducibly_dd_columns: not square");
    CombinatorialReport rep;
    rep.property_id = "irreducibly_dd_columns";
    rep.scanned = static_cast<std::uint64_t>(m.cols());

    if (!is_irreducible(m)) {
        rep.holds = false;
        rep.note = "matrix is reducible";
        return rep;
    }
    bool strict_somewhere = false;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double off = m.col(j).cwiseAbs().sum() - std::abs(m(j, j));
        if (std::abs(m(j, j)) < off) {
            rep.holds = false;
            rep.counterexample_indices = std::vector<Eigen::Index>{j};
            rep.note = "column " + std::to_string(j) + " violates weak dominance";
            return rep;
        }
        if (std::abs(m(j, j)) > off) strict_somewhere = true;
    }
    rep.holds = strict_somewhere;
    if (!strict_somewhere) rep.note = "no column is strictly dominant";
    return rep;
}

namespace detail {

struct LiftedPair {
    Matrix plus;   // Q + P  (resp. R + S)
    Matrix minus;  // -Q + P (resp. R - S)
};

inline LiftedPair lift_pair(const Matrix& coeff, const Matrix& b, Eigen::Index m,
                            Eigen::Index kron_cap) {
    const Matrix eye = identity(m);
    const Matrix p = kron(eye, coeff, kron_cap);
    const Matrix q = kron(eye, b, kron_cap);
    return {p + q, p - q};
}

inline Certificate from_report(std::string id, const CombinatorialReport& rep) {
    Certificate c;
    c.condition_id = std::move(id);
    c.verdict = rep.holds ? Verdict::CERTIFIED : Verdict::NOT_CERTIFIED;
    if (rep.determinant_or_minor) c.witnesses["offending_value"] = *rep.determinant_or_minor;
    c.witnesses["scanned"] = static_cast<double>(rep.scanned);
    c.notes = rep.note;
    return c;
}

/// Randomized + vertex probe for the "all diagonal pairs" invertibility
/// condition.  The 0/1 complementary vertex pairs are exactly the column
/// representatives of {plus, minus}; a sign change between two
/// representative determinants yields a concrete singular pair on the
/// connecting segment by bisection.
inline Certificate probe_diagonal_pairs(const LiftedPair& lifted, int samples,
                                        std::uint64_t seed, std::uint64_t enum_cap) {
    Certificate c;
    c.condition_id = "W_IV";
    const Eigen::Index order = lifted.plus.rows();

    // vertex pass: determinants of all representatives
    double first_det = 0.0;
    std::uint64_t first_mask = 0;
    bool mixed = false;
    std::uint64_t other_mask = 0;
    bool degenerate = false;
    std::uint64_t scanned = 0;
    for_each_column_representative(
        lifted.plus, lifted.minus,
        [&](const RepresentativeSelector& sel, const Matrix& r) {
            const double det = determinant(r);
            const double noise = kSingularityThreshold * determinant_scale(r);
            if (std::abs(det) <= noise) {
                degenerate = true;
                other_mask = scanned;
                return false;
            }
            if (scanned == 0) {
                first_det = det;
                first_mask = 0;
            } else if ((det > 0) != (first_det > 0)) {
                mixed = true;
                other_mask = scanned;
                return false;
            }
            ++scanned;
            return true;
        },
        enum_cap);

    auto selector_string = [order](std::uint64_t mask) {
        std::string s;
        for (Eigen::Index j = 0; j < order; ++j) s += ((mask >> j) & 1u) ? '1' : '0';
        return s;
    };

    if (degenerate) {
        c.verdict = Verdict::NOT_CERTIFIED;
        c.notes = "singular pair found: complementary 0/1 diagonals with selector " +
                  selector_string(other_mask);
        return c;
    }
    if (mixed) {
        // bisect along the segment between the two vertex pairs
        const auto sel_a = selector_from_mask(first_mask, order);
        const auto sel_b = selector_from_mask(other_mask, order);
        double lo = 0.0, hi = 1.0;
        auto det_at = [&](double t) {
            Matrix probe(order, order);
            for (Eigen::Index j = 0; j < order; ++j) {
                const double f1 = (1.0 - t) * (sel_a[static_cast<size_t>(j)] ? 0.0 : 1.0) +
                                  t * (sel_b[static_cast<size_t>(j)] ? 0.0 : 1.0);
                const double f2 = 1.0 - f1;
                probe.col(j) = f1 * lifted.plus.col(j) + f2 * lifted.minus.col(j);
            }
            return determinant(probe);
        };
        const double dlo = det_at(lo);
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((det_at(mid) > 0) == (dlo > 0)) lo = mid; else hi = mid;
        }
        c.verdict = Verdict::NOT_CERTIFIED;
        c.witnesses["singular_pair_t"] = 0.5 * (lo + hi);
        c.notes = "representative determinants change sign; singular diagonal pair near t=" +
                  std::to_string(0.5 * (lo + hi)) + " on the segment between selectors " +
                  selector_string(first_mask) + " and " + selector_string(other_mask);
        return c;
    }

    // random pass over nonnegative diagonal pairs with diag(F1+F2) > 0
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        Matrix probe(order, order);
        for (Eigen::Index j = 0; j < order; ++j) {
            double f1 = unif(rng), f2 = unif(rng);
            if (f1 + f2 == 0.0) f1 = 1.0;
            probe.col(j) = f1 * lifted.plus.col(j) + f2 * lifted.minus.col(j);
        }
        const double det = determinant(probe);
        if (std::abs(det) <= kSingularityThreshold * determinant_scale(probe)) {
            c.verdict = Verdict::NOT_CERTIFIED;
            c.witnesses["singular_sample"] = static_cast<double>(s);
            c.notes = "randomized probe found a singular diagonal pair (sample " +
                      std::to_string(s) + ", seed " + std::to_string(seed) + ")";
            return c;
        }
    }
    c.verdict = Verdict::CERTIFIED;
    c.witnesses["samples"] = static_cast<double>(samples);
    c.notes = "(iv) probe only; full quantification equivalent to (i)";
    return c;
}

inline std::vector<Certificate> w_conditions(const LiftedPair& lifted, const std::string& prefix,
                                             std::uint64_t enum_cap, int probe_samples,
                                             std::uint64_t probe_seed) {
    std::vector<Certificate> certs;
    certs.push_back(from_report(prefix + "_I", has_column_w_property(lifted.plus, lifted.minus,
                                                                     enum_cap)));

    if (is_invertible(lifted.plus)) {
        const Matrix ratio = invert(lifted.plus) * lifted.minus;
        const Matrix eye = identity(ratio.rows());
        certs.push_back(from_report(prefix + "_II", has_column_w_property(eye, ratio, enum_cap)));
        certs.push_back(from_report(prefix + "_III", is_p_matrix(ratio, enum_cap)));
    } else {
        certs.push_back(inapplicable(prefix + "_II", "Q+P not invertible"));
        certs.push_back(inapplicable(prefix + "_III", "Q+P not invertible"));
    }

    auto probe = probe_diagonal_pairs(lifted, probe_samples, probe_seed, enum_cap);
    probe.condition_id = prefix + "_IV";
    certs.push_back(std::move(probe));
    return certs;
}

inline std::vector<Certificate> dd_conditions(const LiftedPair& lifted, const std::string& prefix,
                                              std::uint64_t enum_cap) {
    std::vector<Certificate> certs;
    // sign precondition on corresponding diagonal entries
    for (Eigen::Index j = 0; j < lifted.plus.rows(); ++j) {
        const double dp = lifted.plus(j, j);
        const double dm = lifted.minus(j, j);
        if (dp == 0.0 || dm == 0.0 || (dp > 0) != (dm > 0)) {
            const std::string why =
                (dp == 0.0 || dm == 0.0)
                    ? "diagonal entry " + std::to_string(j) + " is zero; sign undefined"
                    : "diagonal entries " + std::to_string(j) + " differ in sign (" +
                          std::to_string(dp) + " vs " + std::to_string(dm) + ")";
            certs.push_back(inapplicable(prefix + "_I", why));
            certs.push_back(inapplicable(prefix + "_II", why));
            return certs;
        }
    }

    {
        Certificate c;
        c.condition_id = prefix + "_I";
        const auto rp = is_sdd_columns(lifted.plus);
        const auto rm = is_sdd_columns(lifted.minus);
        c.verdict = (rp.holds && rm.holds) ? Verdict::CERTIFIED : Verdict::NOT_CERTIFIED;
        if (!rp.holds) c.notes = "Q+P: " + rp.note;
        else if (!rm.holds) c.notes = "-Q+P: " + rm.note;
        certs.push_back(std::move(c));
    }
    {
        Certificate c;
        c.condition_id = prefix + "_II";
        c.verdict = Verdict::CERTIFIED;
        for_each_column_representative(
            lifted.plus, lifted.minus,
            [&](const RepresentativeSelector&, const Matrix& r) {
                const auto rep = is_irreducibly_dd_columns(r);
                c.witnesses["scanned"] = c.witnesses["scanned"] + 1.0;
                if (!rep.holds) {
                    c.verdict = Verdict::NOT_CERTIFIED;
                    c.notes = rep.note;
                    return false;
                }
                return true;
            },
            enum_cap);
        certs.push_back(std::move(c));
    }
    return certs;
}

}  // namespace detail

/// The four W-property style conditions on the lifted pair
/// {Q+P, -Q+P}, Q = I_m (x) B, P = I_m (x) A.  Item (iv) is a seeded
/// randomized probe strengthened with the full vertex scan.
inline std::vector<Certificate> check_gavme_w_conditions(const Matrix& A, const Matrix& B,
                                                         Eigen::Index m,
                                                         std::uint64_t enum_cap = kDefaultEnumCap,
                                                         int probe_samples = 200,
                                                         std::uint64_t probe_seed = 0) {
    const auto lifted = detail::lift_pair(A, B, m, static_cast<Eigen::Index>(enum_cap));
    return detail::w_conditions(lifted, "W", enum_cap, probe_samples, probe_seed);
}

/// Diagonal dominance conditions on {Q+P, -Q+P}, guarded by the
/// same-sign precondition on corresponding diagonal entries.
inline std::vector<Certificate> check_gavme_dd_conditions(const Matrix& A, const Matrix& B,
                                                          Eigen::Index m,
                                                          std::uint64_t enum_cap = kDefaultEnumCap) {
    const auto lifted = detail::lift_pair(A, B, m, static_cast<Eigen::Index>(enum_cap));
    return detail::dd_conditions(lifted, "DD", enum_cap);
}

/// NGAVME combinatorial checks with R = I (x) AC^{-1}, S = I (x) B.
/// Throws SingularMatrix when C is not invertible.
inline std::vector<Certificate> check_ngavme_combinatorial(
    const Matrix& A, const Matrix& B, const Matrix& C, Eigen::Index m,
    std::uint64_t enum_cap = kDefaultEnumCap, int probe_samples = 200,
    std::uint64_t probe_seed = 0) {
    const Matrix coeff = A * invert(C, "C");
    const auto lifted = detail::lift_pair(coeff, B, m, static_cast<Eigen::Index>(enum_cap));
    auto certs = detail::w_conditions(lifted, "W", enum_cap, probe_samples, probe_seed);
    auto dd = detail::dd_conditions(lifted, "DD", enum_cap);
    certs.insert(certs.end(), dd.begin(), dd.end());
    return certs;
}

}  // namespace avme

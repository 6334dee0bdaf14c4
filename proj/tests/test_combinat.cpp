#include <doctest.h>

#include <random>
#include <set>

#include "avme/combinat.hpp"
#include "avme/harness.hpp"
#include "avme/solve.hpp"

using namespace avme;
namespace px = worked_examples;

namespace {

const Certificate& by_id(const std::vector<Certificate>& certs, const std::string& id) {
    for (const auto& c : certs) {
        if (c.condition_id == id) return c;
    }
    REQUIRE(false);
    return certs.front();
}

}  // namespace

TEST_CASE("column representatives: counts and diagonal mixing") {
    const auto same = column_representatives(identity(2), identity(2));
    REQUIRE(same.size() == 4);
    for (const auto& [sel, r] : same) CHECK(max_abs(Matrix(r - identity(2))) == 0.0);

    const Matrix d1 = identity(2);
    const Matrix d2 = (Matrix(2, 2) << 2, 0, 0, 3).finished();
    const auto mixed = column_representatives(d1, d2);
    std::set<std::pair<double, double>> diagonals;
    for (const auto& [sel, r] : mixed) diagonals.insert({r(0, 0), r(1, 1)});
    CHECK(diagonals == std::set<std::pair<double, double>>{{1, 1}, {1, 3}, {2, 1}, {2, 3}});
}

TEST_CASE("column representatives: cap enforced") {
    CHECK_THROWS_AS(column_representatives(identity(25), identity(25), 1u << 20),
                    DimensionOverflow);
}

TEST_CASE("W-property: identities hold, {I,-I} fails at n=1") {
    CHECK(has_column_w_property(identity(3), identity(3)).holds);
    const auto rep = has_column_w_property(Matrix(identity(1)), Matrix(-identity(1)));
    CHECK(!rep.holds);
    CHECK(*rep.determinant_or_minor == doctest::Approx(-1.0));
    REQUIRE(rep.counterexample_selector.has_value());
}

TEST_CASE("W-property: {M, M} reduces to det(M) > 0") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        Matrix m(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = u(rng);
        CHECK(has_column_w_property(m, m).holds == (determinant(m) > 0));
    }
}

TEST_CASE("W-property on the example 3.2 lift agrees with the oracle") {
    const Matrix P = kron(identity(2), px::ex32_A());
    const Matrix Q = kron(identity(2), px::ex32_B());
    const auto rep = has_column_w_property(Matrix(P + Q), Matrix(P - Q));
    CHECK(rep.scanned <= 16);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int r = 0; r < 10; ++r) {
        Vector f(4);
        for (int i = 0; i < 4; ++i) f(i) = u(rng);
        const auto census = oracle_gave(Matrix(kron(identity(2), px::ex32_A())),
                                        Matrix(kron(identity(2), px::ex32_B())), f);
        if (rep.holds) {
            CHECK(!census.infinite);
            CHECK(census.solution_count() == 1);
        }
    }
}

TEST_CASE("P-matrix: identities, rotations, hand example") {
    CHECK(is_p_matrix(identity(3)).holds);

    const Matrix rot = (Matrix(2, 2) << 0, -1, 1, 0).finished();
    const auto rep = is_p_matrix(rot);
    CHECK(!rep.holds);
    REQUIRE(rep.counterexample_indices.has_value());
    CHECK(rep.counterexample_indices->size() == 1);

    // minors 2, 2, 3
    const Matrix good = (Matrix(2, 2) << 2, -1, -1, 2).finished();
    CHECK(is_p_matrix(good).holds);
}

TEST_CASE("sdd columns") {
    CHECK(is_sdd_columns(Matrix(5.0 * identity(2))).holds);
    CHECK(is_sdd_columns((Matrix(2, 2) << 3, 1, -1, 3).finished()).holds);
    const auto rep = is_sdd_columns((Matrix(2, 2) << 1, 2, 0, 1).finished());
    CHECK(!rep.holds);
    REQUIRE(rep.counterexample_indices.has_value());
    CHECK(rep.counterexample_indices->front() == 1);
}

TEST_CASE("irreducibly dd columns") {
    CHECK(is_irreducibly_dd_columns((Matrix(2, 2) << 2, 1, 1, 2).finished()).holds);
    CHECK(!is_irreducibly_dd_columns(Matrix(2.0 * identity(2))).holds);  // reducible
    CHECK(!is_irreducibly_dd_columns(Matrix(Matrix::Ones(2, 2))).holds);  // no strict column
}

TEST_CASE("sdd implies invertibility (Levy-Desplanques spot check)") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        Matrix m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = u(rng);
        if (!is_sdd_columns(m).holds) continue;
        CHECK(std::abs(determinant(m)) > 0.0);
        CHECK(is_invertible(m));
    }
}

TEST_CASE("gavme W conditions: B = 0 trivially certifies (i)-(iii)") {
    const auto certs = check_gavme_w_conditions(identity(2), Matrix(Matrix::Zero(2, 2)), 1);
    CHECK(by_id(certs, "W_I").certified());
    CHECK(by_id(certs, "W_II").certified());
    CHECK(by_id(certs, "W_III").certified());
    CHECK(by_id(certs, "W_IV").certified());
    CHECK(by_id(certs, "W_IV").notes.find("probe only") != std::string::npos);
}

TEST_CASE("gavme W conditions: example 3.2 agrees with the oracle") {
    const auto certs = check_gavme_w_conditions(px::ex32_A(), px::ex32_B(), 1);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bool any_certified = false;
    for (const auto& c : certs) any_certified = any_certified || c.certified();
    for (int r = 0; r < 10; ++r) {
        Vector f(2);
        f << u(rng), u(rng);
        const auto census = oracle_gave(px::ex32_A(), px::ex32_B(), f);
        if (any_certified) {
            CHECK(!census.infinite);
            CHECK(census.solution_count() == 1);
        }
    }
}

TEST_CASE("gavme W conditions: probe flags the scalar counterexample") {
    // A=1, B=2: representatives 3 and -1 change sign, so a singular
    // diagonal pair exists on the connecting segment.
    const auto certs = check_gavme_w_conditions(Matrix::Constant(1, 1, 1.0),
                                                Matrix::Constant(1, 1, 2.0), 1);
    CHECK(!by_id(certs, "W_I").certified());
    CHECK(by_id(certs, "W_IV").verdict == Verdict::NOT_CERTIFIED);
    CHECK(by_id(certs, "W_IV").notes.find("sign") != std::string::npos);
}

TEST_CASE("gavme dd conditions: diagonal cases and sign precondition") {
    const auto good = check_gavme_dd_conditions(Matrix(5.0 * identity(2)), identity(2), 1);
    CHECK(by_id(good, "DD_I").certified());

    // zero diagonal entry in A (example 3.3 has a_33 = 0, so P+Q and P-Q
    // have diagonal entries 0 +- 0)
    const auto zero_diag = check_gavme_dd_conditions(px::ex33_A(), px::ex33_B(), 1);
    CHECK(by_id(zero_diag, "DD_I").verdict == Verdict::INAPPLICABLE);
    CHECK(by_id(zero_diag, "DD_I").notes.find("zero") != std::string::npos);

    // sign flip: A = I, B = 2I gives diagonals 3 vs -1
    const auto flipped = check_gavme_dd_conditions(identity(2), Matrix(2.0 * identity(2)), 1);
    CHECK(by_id(flipped, "DD_I").verdict == Verdict::INAPPLICABLE);
}

TEST_CASE("ngavme combinatorial: C = I equals the gavme checks verdict by verdict") {
    const auto direct_w = check_gavme_w_conditions(px::ex32_A(), px::ex32_B(), 1);
    const auto direct_dd = check_gavme_dd_conditions(px::ex32_A(), px::ex32_B(), 1);
    const auto via_c = check_ngavme_combinatorial(px::ex32_A(), px::ex32_B(), identity(2), 1);
    for (const auto& c : direct_w) CHECK(by_id(via_c, c.condition_id).verdict == c.verdict);
    for (const auto& c : direct_dd) CHECK(by_id(via_c, c.condition_id).verdict == c.verdict);

    Matrix sing = identity(2);
    sing(0, 0) = 0.0;
    CHECK_THROWS_AS(check_ngavme_combinatorial(px::ex32_A(), px::ex32_B(), sing, 1),
                    SingularMatrix);
}

TEST_CASE("ngavme combinatorial: example 3.5 certified verdicts agree with oracle") {
    const auto certs = check_ngavme_combinatorial(px::ex35_A(), px::ex35_B(), px::ex35_C(), 1);
    bool any_certified = false;
    for (const auto& c : certs) any_certified = any_certified || c.certified();
    if (any_certified) {
        const Matrix coeff = px::ex35_A() * invert(px::ex35_C());
        std::mt19937_64 rng(19);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int r = 0; r < 10; ++r) {
            Vector f(3);
            for (int i = 0; i < 3; ++i) f(i) = u(rng);
            const auto census = oracle_gave(coeff, px::ex35_B(), f);
            CHECK(!census.infinite);
            CHECK(census.solution_count() == 1);
        }
    }
}

TEST_CASE("property: W(i) plus invertible Q+P implies P-matrix condition (iii)") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int holds_count = 0;
    for (int t = 0; t < 200; ++t) {
        Matrix a(2, 2), b(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                a(i, j) = u(rng) + (i == j ? 1.5 : 0.0);
                b(i, j) = 0.5 * u(rng);
            }
        const auto certs = check_gavme_w_conditions(a, b, 1);
        if (by_id(certs, "W_I").certified() &&
            by_id(certs, "W_III").verdict != Verdict::INAPPLICABLE) {
            ++holds_count;
            CHECK(by_id(certs, "W_III").certified());
        }
    }
    CHECK(holds_count > 0);
}

#include <doctest.h>

#include "avme/harness.hpp"
#include "avme/io.hpp"

using namespace avme;
namespace px = worked_examples;

TEST_CASE("certificate JSON: stable field names") {
    const auto cert = check_gavme_spectral(px::ex32_A(), px::ex32_B());
    const auto j = io::certificate_to_json(cert);
    CHECK(j.contains("condition_id"));
    CHECK(j.contains("verdict"));
    CHECK(j.contains("witnesses"));
    CHECK(j.contains("margin"));
    CHECK(j.contains("notes"));
    CHECK(j["condition_id"] == "SPECTRAL");
    CHECK(j["verdict"] == "CERTIFIED");
    CHECK(j["witnesses"].contains("rho_abs_AinvB"));
    CHECK(j["margin"].get<double>() == doctest::Approx(1.0 - 0.38826).epsilon(1e-3));
}

TEST_CASE("solve result JSON: diagnostics included") {
    const auto res = solve_gavme(px::ex33_A(), px::ex33_B(), px::ex33_F());
    const auto j = io::solve_result_to_json(res);
    CHECK(j.contains("solution"));
    CHECK(j.contains("iterations"));
    CHECK(j.contains("final_residual"));
    CHECK(j["converged"] == true);
}

TEST_CASE("oracle report JSON: counts, solutions, degeneracies") {
    const auto census = oracle_gave(Matrix(Matrix::Constant(1, 1, 1.0)),
                                    Matrix(Matrix::Constant(1, 1, 2.0)),
                                    Vector(Vector::Constant(1, 1.0)));
    const auto j = io::oracle_report_to_json(census);
    CHECK(j["solution_count"] == 2);
    CHECK(j["solutions"].size() == 2);
    CHECK(j["consistent_singular"] == false);

    const auto infinite = oracle_gave(Matrix(identity(1)), Matrix(-identity(1)),
                                      Vector(Vector::Zero(1)));
    const auto ji = io::oracle_report_to_json(infinite);
    CHECK(ji["solution_count"] == "INFINITE");
    CHECK(ji["degenerate_patterns"].size() == 1);
}

TEST_CASE("combinatorial report JSON") {
    const auto rep = is_p_matrix((Matrix(2, 2) << 0, -1, 1, 0).finished());
    const auto j = io::report_to_json(rep);
    CHECK(j["property_id"] == "p_matrix");
    CHECK(j["holds"] == false);
    CHECK(j.contains("counterexample_indices"));
    CHECK(j.contains("determinant_or_minor"));
}

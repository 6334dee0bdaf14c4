#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "avme/harness.hpp"
#include "avme/instances.hpp"
#include "avme/io.hpp"
#include "avme/solve.hpp"

using namespace avme;
namespace px = worked_examples;

TEST_CASE("residual: printed solutions solve the examples exactly") {
    CHECK(residual(GavmeInstance{px::ex33_A(), px::ex33_B(), px::ex33_F()}, px::ex33_X()) <=
          1e-12);
    CHECK(residual(NgavmeInstance{px::ex35_A(), px::ex35_B(), px::ex35_C(), px::ex35_F()},
                   px::ex35_X()) <= 1e-12);
}

TEST_CASE("residual: X = 0 gives the norm of F") {
    const GavmeInstance inst{px::ex33_A(), px::ex33_B(), px::ex33_F()};
    CHECK(residual(inst, Matrix(Matrix::Zero(3, 3))) == doctest::Approx(max_abs(px::ex33_F())));
}

TEST_CASE("residual: missing right-hand side throws") {
    const GavmeInstance inst{px::ex33_A(), px::ex33_B(), std::nullopt};
    CHECK_THROWS_AS(residual(inst, px::ex33_X()), DimensionMismatch);
}

TEST_CASE("reduce_ngavme: C = I leaves coefficients unchanged") {
    const NgavmeInstance inst{px::ex33_A(), px::ex33_B(), identity(3), px::ex33_F()};
    const auto red = reduce_ngavme(inst);
    CHECK(max_abs(Matrix(red.gavme.A - inst.A)) < 1e-14);
    CHECK(max_abs(Matrix(red.c_inverse - identity(3))) < 1e-14);
}

TEST_CASE("reduce_ngavme: example reduction recovers the printed X") {
    const NgavmeInstance inst{px::ex35_A(), px::ex35_B(), px::ex35_C(), px::ex35_F()};
    const auto red = reduce_ngavme(inst);
    const auto y = solve_gavme(red.gavme.A, red.gavme.B, *red.gavme.F);
    REQUIRE(y.converged);
    const Matrix x = red.back_map(y.solution);
    CHECK(residual(inst, x) <= 1e-8);
    CHECK(max_abs(Matrix(x - px::ex35_X())) <= 1e-8);
}

TEST_CASE("reduce_ngavme: singular C throws") {
    Matrix c = identity(3);
    c(2, 2) = 0.0;
    const NgavmeInstance inst{px::ex35_A(), px::ex35_B(), c, px::ex35_F()};
    CHECK_THROWS_AS(reduce_ngavme(inst), SingularMatrix);
}

TEST_CASE("gavme_columns: shares coefficients, splits F") {
    const GavmeInstance inst{px::ex33_A(), px::ex33_B(), px::ex33_F()};
    const auto cols = gavme_columns(inst);
    REQUIRE(cols.size() == 3);
    const Vector first = (Vector(3) << -5.5, 0.8, 3.4).finished();
    CHECK(max_abs(Vector(*cols[0].f - first)) == 0.0);

    // per-column solves reassemble the printed X
    Matrix x(3, 3);
    for (int j = 0; j < 3; ++j) {
        const auto census = oracle_gave(cols[j].A, cols[j].B, *cols[j].f);
        REQUIRE(census.solution_count() == 1);
        x.col(j) = census.solutions.front();
    }
    CHECK(max_abs(Matrix(x - px::ex33_X())) <= 1e-10);
}

TEST_CASE("lift_gavme: m=1 lift is the GAVE itself") {
    const GavmeInstance inst{px::ex32_A(), px::ex32_B(),
                             Matrix((Matrix(2, 1) << 1.0, -1.0).finished())};
    const auto lifted = lift_gavme(inst);
    CHECK(max_abs(Matrix(lifted.A - inst.A)) == 0.0);
    CHECK(max_abs(Matrix(lifted.B - inst.B)) == 0.0);
}

TEST_CASE("lift_gavme: lift solutions correspond to per-column solutions") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        Matrix a(2, 2), b(2, 2), f(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                a(i, j) = u(rng) + (i == j ? 2.0 : 0.0);
                b(i, j) = 0.4 * u(rng);
                f(i, j) = u(rng);
            }
        const GavmeInstance inst{a, b, f};
        const auto lift = lift_gavme(inst);
        const auto lifted_census = oracle_gave(lift.A, lift.B, *lift.f);
        const auto column_census = oracle_gavme(a, b, f);
        size_t product = 1;
        for (const auto& r : column_census) product *= r.solution_count();
        CHECK(lifted_census.solution_count() == product);
        if (lifted_census.solution_count() == 1 && product == 1) {
            Matrix per_column(2, 2);
            per_column.col(0) = column_census[0].solutions.front();
            per_column.col(1) = column_census[1].solutions.front();
            CHECK(max_abs(Matrix(unvec(lifted_census.solutions.front(), 2, 2) - per_column)) <=
                  1e-8);
        }
    }
}

TEST_CASE("json bundle: gave round trip") {
    const char* text = R"({"type":"gave","A":[[5,-1],[-4,4]],"B":[[-0.5,1],[0.5,-2]],"f":[1,2]})";
    const Instance inst = io::instance_from_json(nlohmann::json::parse(text));
    REQUIRE(tag_of(inst) == InstanceTag::GAVE);
    const auto& g = std::get<GaveInstance>(inst);
    CHECK(g.A(0, 0) == 5);
    CHECK((*g.f)(1) == 2);

    const Instance back = io::instance_from_json(io::instance_to_json(inst));
    CHECK(max_abs(Matrix(std::get<GaveInstance>(back).A - g.A)) == 0.0);
}

TEST_CASE("json bundle: dimension mismatch rejected") {
    const char* text = R"({"type":"gavme","A":[[1,0],[0,1]],"B":[[1,0],[0,1]],"F":[[1,2,3]]})";
    CHECK_THROWS_AS(io::instance_from_json(nlohmann::json::parse(text)), DimensionMismatch);
}

TEST_CASE("json bundle: malformed input rejected") {
    CHECK_THROWS_AS(io::instance_from_json(nlohmann::json::parse(R"({"A":[[1]]})")), ParseError);
    CHECK_THROWS_AS(
        io::instance_from_json(nlohmann::json::parse(R"({"type":"gave","A":[[1],[2,3]],"B":[[1]]})")),
        ParseError);
    CHECK_THROWS_AS(
        io::instance_from_json(nlohmann::json::parse(R"({"type":"wat","A":[[1]],"B":[[1]]})")),
        ParseError);
}

TEST_CASE("json bundle: certify-only instance without right-hand side") {
    const char* text = R"({"type":"gavme","A":[[5,-1],[-4,4]],"B":[[-0.5,1],[0.5,-2]]})";
    const Instance inst = io::instance_from_json(nlohmann::json::parse(text));
    CHECK(!std::get<GavmeInstance>(inst).F.has_value());
}

TEST_CASE("matrix market: array and coordinate round trips") {
    std::stringstream ss;
    io::write_matrix_market(ss, px::ex33_A());
    const Matrix back = io::read_matrix_market(ss, "A");
    CHECK(max_abs(Matrix(back - px::ex33_A())) == 0.0);

    std::stringstream coord;
    coord << "%%MatrixMarket matrix coordinate real general\n% comment\n2 2 3\n"
          << "1 1 5\n1 2 -1\n2 1 -4\n";
    const Matrix m = io::read_matrix_market(coord, "M");
    CHECK(m(0, 0) == 5);
    CHECK(m(1, 1) == 0);
}

TEST_CASE("matrix market: banner required") {
    std::stringstream ss("not a banner\n1 1\n1\n");
    CHECK_THROWS_AS(io::read_matrix_market(ss, "M"), ParseError);
}

TEST_CASE("matrix market directory: ngavme inferred from files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "avme_test_mm";
    const Instance orig =
        NgavmeInstance{px::ex35_A(), px::ex35_B(), px::ex35_C(), px::ex35_F()};
    io::write_instance_matrix_market_dir(dir, orig);
    const Instance inst = io::instance_from_matrix_market_dir(dir);
    REQUIRE(tag_of(inst) == InstanceTag::NGAVME);
    CHECK(max_abs(Matrix(std::get<NgavmeInstance>(inst).C - px::ex35_C())) == 0.0);
    fs::remove_all(dir);
}

TEST_CASE("property: ngavme reduce/solve round trip on random instances") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        GenSpec spec;
        spec.n = 3;
        spec.m = 2;
        spec.klass = InstanceTag::NGAVME;
        spec.target_rho = 0.7;
        spec.seed = seed;
        const auto gen = gen_instance(spec);
        const auto& p = std::get<NgavmeInstance>(gen.instance);
        const auto red = reduce_ngavme(p);
        const auto y = solve_gavme(red.gavme.A, red.gavme.B, *red.gavme.F);
        CHECK(residual(p, red.back_map(y.solution)) <= 1e-8);
    }
}

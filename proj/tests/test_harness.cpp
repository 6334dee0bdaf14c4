#include <doctest.h>

#include "avme/harness.hpp"
#include "avme/solve.hpp"

using namespace avme;

TEST_CASE("gen_instance: deterministic in seed") {
    GenSpec spec;
    spec.n = 3;
    spec.klass = InstanceTag::GAVME;
    spec.m = 2;
    spec.seed = 42;
    const auto first = gen_instance(spec);
    const auto second = gen_instance(spec);
    const auto& a1 = std::get<GavmeInstance>(first.instance);
    const auto& a2 = std::get<GavmeInstance>(second.instance);
    CHECK(max_abs(Matrix(a1.A - a2.A)) == 0.0);
    CHECK(max_abs(Matrix(a1.B - a2.B)) == 0.0);
    CHECK(max_abs(Matrix(*a1.F - *a2.F)) == 0.0);
    CHECK(max_abs(Matrix(first.ground_truth - second.ground_truth)) == 0.0);
}

TEST_CASE("gen_instance: hits the target spectral radius") {
    GenSpec spec;
    spec.n = 2;
    spec.target_rho = 0.5;
    spec.seed = 7;
    const auto gen = gen_instance(spec);
    const auto& g = std::get<GaveInstance>(gen.instance);
    const double rho = spectral_radius(abs_elementwise(Matrix(invert(g.A) * g.B)));
    CHECK(std::abs(rho - 0.5) <= 1e-6);
}

TEST_CASE("gen_instance: target_rho = 0 produces B = 0") {
    GenSpec spec;
    spec.target_rho = 0.0;
    spec.seed = 3;
    const auto gen = gen_instance(spec);
    CHECK(max_abs(std::get<GaveInstance>(gen.instance).B) == 0.0);
}

TEST_CASE("gen_instance: ground truth verifies before any solving") {
    for (auto klass : {InstanceTag::GAVE, InstanceTag::GAVME, InstanceTag::NGAVME,
                       InstanceTag::SYLVESTER}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            GenSpec spec;
            spec.n = 3;
            spec.m = klass == InstanceTag::SYLVESTER ? 3 : 2;
            spec.klass = klass;
            spec.seed = seed;
            const auto gen = gen_instance(spec);
            CHECK(residual(gen.instance, gen.ground_truth) <= 1e-10);
        }
    }
}

TEST_CASE("gen_instance: certified ensembles have unique oracle solutions") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GenSpec spec;
        spec.n = 3;
        spec.target_rho = 0.8;
        spec.seed = seed;
        const auto gen = gen_instance(spec);
        const auto& g = std::get<GaveInstance>(gen.instance);
        const auto census = oracle_gave(g.A, g.B, *g.f);
        CHECK(!census.infinite);
        CHECK(census.solution_count() == 1);
    }
}

TEST_CASE("compare_conditions: rho < 1 ensemble certifies SPECTRAL always") {
    GenSpec spec;
    spec.n = 3;
    spec.target_rho = 0.9;
    spec.seed = 11;
    const auto table = compare_conditions(spec, 200);
    CHECK(table.per_condition.at("SPECTRAL").certified == 200);
    CHECK(table.per_condition.at("CLASSIC_III").certified <= 200);
    CHECK(table.implication_violations == 0);
}

TEST_CASE("compare_conditions: rho > 1 ensemble never certifies SPECTRAL") {
    GenSpec spec;
    spec.n = 3;
    spec.target_rho = 1.5;
    spec.seed = 13;
    const auto table = compare_conditions(spec, 100);
    CHECK(table.per_condition.at("SPECTRAL").certified == 0);
    CHECK(table.implication_violations == 0);
}

TEST_CASE("compare_conditions: B = 0 ensemble certifies every sound condition") {
    GenSpec spec;
    spec.n = 3;
    spec.target_rho = 0.0;
    spec.seed = 17;
    const auto table = compare_conditions(spec, 50);
    for (const char* id : {"SPECTRAL", "CLASSIC_I", "CLASSIC_II", "CLASSIC_III", "CLASSIC_IV"}) {
        CHECK(table.per_condition.at(id).certified == 50);
    }
}

TEST_CASE("run_worked_examples: everything passes") {
    const auto report = run_worked_examples();
    for (const auto& check : report.checks) {
        INFO(check.name, ": computed ", check.computed, ", expected ", check.expected);
        CHECK(check.pass);
    }
    CHECK(report.all_pass());
}

TEST_CASE("run_worked_examples: 5-digit values cannot meet a 1e-9 tolerance") {
    // sanity check that published 5-digit rounding really is coarser than 1e-9
    const auto report = run_worked_examples();
    bool found = false;
    for (const auto& check : report.checks) {
        if (check.name == "ex3.2 rho(|A^-1 B|)") {
            found = true;
            CHECK(std::abs(check.computed - check.expected) > 1e-9);
        }
    }
    CHECK(found);
}

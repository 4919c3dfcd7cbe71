#include <numeric>

#include "doctest.h"
#include "hcp/base_model.hpp"
#include "hcp/simplex.hpp"
#include "support/enumerate.hpp"
#include "support/fixtures.hpp"

using namespace hcp;

TEST_CASE("variable map is a bijection with 3n^3 columns") {
    CubicGraph g = fixtures::k4();
    VariableMap vmap(g);
    CHECK(vmap.num_vars() == 192);
    std::vector<char> seen(vmap.num_vars(), 0);
    for (int k = 0; k < 4; ++k)
        for (int r = 0; r < 4; ++r)
            for (int i = 0; i < 4; ++i)
                for (int a : g.neighbors(i)) {
                    int col = vmap.index(k, r, i, a);
                    CHECK_FALSE(seen[col]);
                    seen[col] = 1;
                    auto key = vmap.key_of(col);
                    CHECK(key.k == k);
                    CHECK(key.r == r);
                    CHECK(key.i == i);
                    CHECK(key.a == a);
                }
    CHECK(std::accumulate(seen.begin(), seen.end(), 0) == vmap.num_vars());
}

TEST_CASE("row count matches the closed form 2n^3 + 9n^2 - 3n") {
    for (const CubicGraph& g : {fixtures::k4(), fixtures::prism(), fixtures::petersen()}) {
        int n = g.num_vertices();
        VariableMap vmap(g);
        LinearSystem sys = build_base_system(g, vmap);
        CHECK(sys.num_rows() == 2 * n * n * n + 9 * n * n - 3 * n);
        CHECK(sys.num_vars() == 3 * n * n * n);
    }
}

TEST_CASE("witness from any K4 cycle has residual exactly zero") {
    CubicGraph g = fixtures::k4();
    VariableMap vmap(g);
    LinearSystem sys = build_base_system(g, vmap);
    std::vector<int> cycle{0, 1, 2, 3};
    std::vector<double> x = witness_from_cycle(g, vmap, cycle);
    CHECK(extract_point_residuals(sys, x).max() == 0.0);

    std::vector<int> reversed{0, 3, 2, 1};
    CHECK(extract_point_residuals(sys, witness_from_cycle(g, vmap, reversed)).max() ==
          0.0);

    CHECK_THROWS_AS(witness_from_cycle(g, vmap, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(witness_from_cycle(g, vmap, {0, 1, 3, 1}), std::invalid_argument);
}

TEST_CASE("all-pairs audit form has the same verdicts") {
    CubicGraph g = fixtures::k4();
    VariableMap vmap(g);
    BaseBuildOptions chain, pairs;
    pairs.chain_pairs = false;
    LinearSystem a = build_base_system(g, vmap, chain);
    LinearSystem b = build_base_system(g, vmap, pairs);
    CHECK(b.num_rows() > a.num_rows());
    CHECK(solve_feasibility(a).status == FeasStatus::NonEmpty);
    CHECK(solve_feasibility(b).status == FeasStatus::NonEmpty);

    std::vector<double> x = witness_from_cycle(g, vmap, {0, 1, 2, 3});
    CHECK(extract_point_residuals(b, x).max() == 0.0);
}

TEST_CASE("petersen base system is non-empty") {
    CubicGraph g = fixtures::petersen();
    VariableMap vmap(g);
    LinearSystem sys = build_base_system(g, vmap);
    FeasibilityVerdict v = solve_feasibility(sys);
    REQUIRE(v.status == FeasStatus::NonEmpty);
    CHECK(extract_point_residuals(sys, v.point).max() <= 1e-7);
}

TEST_CASE("bridge graph base system is empty with exact certificate") {
    CubicGraph g = fixtures::bridge10();
    VariableMap vmap(g);
    LinearSystem sys = build_base_system(g, vmap);
    FeasibilityVerdict v = solve_feasibility(sys);
    REQUIRE(v.status == FeasStatus::Empty);
    CHECK(verify_certificate(sys, v.certificate));

    SUBCASE("perturbed certificate is rejected") {
        std::vector<Rat> bad = v.certificate;
        for (auto& y : bad)
            if (y != 0) { y = -y; break; }
        CHECK_FALSE(verify_certificate(sys, bad));
    }
}

TEST_CASE("bridge proof trace pins the first crossing probability") {
    // Flow, both visit-sum families, the stage-0 zeroing and nonnegativity
    // admit solutions, and each of them crosses the bridge first with
    // probability |V|/(N-1).
    CubicGraph g = fixtures::bridge10();
    VariableMap vmap(g);
    BaseBuildOptions opts;
    opts.families = kFlow | kVisitPerStart | kVisitPerStage | kInitialZero;
    LinearSystem sys = build_base_system(g, vmap, opts);
    FeasibilityVerdict v = solve_feasibility(sys);
    REQUIRE(v.status == FeasStatus::NonEmpty);
    // Bridge (0,5); V is the side of vertex 5, |V| = 5, N - 1 = 9.
    CHECK(v.point[vmap.index(0, 0, 0, 5)] == doctest::Approx(5.0 / 9.0).epsilon(1e-7));
    CHECK(v.point[vmap.index(5, 0, 5, 0)] == doctest::Approx(5.0 / 9.0).epsilon(1e-7));
}

TEST_CASE("witnesses of every hamiltonian graph up to n=8 are feasible") {
    for (int n = 4; n <= 8; n += 2) {
        for (const CubicGraph& g : enumeration::connected_cubic_graphs(n)) {
            auto cycles = enumerate_hamiltonian_cycles(g);
            VariableMap vmap(g);
            LinearSystem sys = build_base_system(g, vmap);
            for (const auto& cycle : cycles) {
                std::vector<double> x = witness_from_cycle(g, vmap, cycle);
                CHECK(extract_point_residuals(sys, x).max() == 0.0);
            }
        }
    }
}

TEST_CASE("verdict status is invariant under row permutations") {
    CubicGraph g = fixtures::k4();
    VariableMap vmap(g);
    LinearSystem sys = build_base_system(g, vmap);
    std::vector<int> order(sys.num_rows());
    std::iota(order.begin(), order.end(), 0);
    std::reverse(order.begin(), order.end());
    CHECK(solve_feasibility(sys.permuted(order)).status == FeasStatus::NonEmpty);
}

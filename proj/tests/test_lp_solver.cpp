#include "lpdvfs/lp_solver.hpp"
#include "lpdvfs/errors.hpp"
#include "lpdvfs/oracle.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace lpdvfs;

TEST_SUITE("lp_solver") {

    TEST_CASE("bound-active optimum with no rows") {
        LinearProgram lp;
        lp.objective = {-1.0};
        lp.lower = {0.0};
        lp.upper = {1.0};
        const LpOutcome out = solve_lp(lp);
        REQUIRE(out.status == LpStatus::Optimal);
        CHECK(out.x[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(out.objective == doctest::Approx(-1.0).epsilon(1e-12));
    }

    TEST_CASE("two-level split: cheapest mix meeting a work rate") {
        // Two time shares at speeds 0.3 and 1.0 must deliver rate 0.4 while
        // fitting one processor. Closed form: 6/7 and 1/7.
        LinearProgram lp;
        lp.objective = {60.0, 738.0};
        lp.eq_rows = {{0.3, 1.0}};
        lp.eq_rhs = {0.4};
        lp.ub_rows = {{1.0, 1.0}};
        lp.ub_rhs = {1.0};
        lp.lower = {0.0, 0.0};
        lp.upper = {1.0, 1.0};

        const LpOutcome brute = enumerate_lp_optimum(lp);
        REQUIRE(brute.status == LpStatus::Optimal);
        CHECK(brute.objective == doctest::Approx(1098.0 / 7.0).epsilon(1e-9));

        const LpOutcome out = solve_lp(lp);
        REQUIRE(out.status == LpStatus::Optimal);
        CHECK(out.x[0] == doctest::Approx(6.0 / 7.0).epsilon(1e-9));
        CHECK(out.x[1] == doctest::Approx(1.0 / 7.0).epsilon(1e-9));
        CHECK(out.objective == doctest::Approx(1098.0 / 7.0).epsilon(1e-9));
        CHECK(out.objective == doctest::Approx(brute.objective).epsilon(1e-9));
    }

    TEST_CASE("contradictory equality is infeasible") {
        LinearProgram lp;
        lp.objective = {1.0};
        lp.eq_rows = {{0.0}};
        lp.eq_rhs = {1.0};
        lp.lower = {0.0};
        lp.upper = {1.0};
        CHECK(solve_lp(lp).status == LpStatus::Infeasible);
    }

    TEST_CASE("redundant zero row is harmless") {
        LinearProgram lp;
        lp.objective = {1.0};
        lp.eq_rows = {{0.0}};
        lp.eq_rhs = {0.0};
        lp.lower = {-1.0};
        lp.upper = {1.0};
        const LpOutcome out = solve_lp(lp);
        REQUIRE(out.status == LpStatus::Optimal);
        CHECK(out.objective == doctest::Approx(-1.0).epsilon(1e-12));
    }

    TEST_CASE("dimension mismatches throw") {
        LinearProgram lp;
        lp.objective = {1.0, 2.0};
        lp.lower = {0.0};
        lp.upper = {1.0};
        CHECK_THROWS_AS(solve_lp(lp), DimensionMismatchError);

        LinearProgram bad_row;
        bad_row.objective = {1.0};
        bad_row.lower = {0.0};
        bad_row.upper = {1.0};
        bad_row.eq_rows = {{1.0, 2.0}};
        bad_row.eq_rhs = {0.0};
        CHECK_THROWS_AS(solve_lp(bad_row), DimensionMismatchError);

        LinearProgram crossed;
        crossed.objective = {1.0};
        crossed.lower = {2.0};
        crossed.upper = {1.0};
        CHECK_THROWS_AS(solve_lp(crossed), DimensionMismatchError);
    }

    TEST_CASE("matches brute-force enumeration on random tiny programs") {
        std::mt19937 rng(20240817);
        int optimal_seen = 0;
        int infeasible_seen = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const LinearProgram lp = testutil::random_tiny_lp(rng);
            const LpOutcome brute = enumerate_lp_optimum(lp);
            const LpOutcome fast = solve_lp(lp);
            REQUIRE_MESSAGE(fast.status == brute.status, "trial ", trial);
            if (fast.status == LpStatus::Optimal) {
                ++optimal_seen;
                CHECK_MESSAGE(fast.objective == doctest::Approx(brute.objective).epsilon(1e-6),
                              "trial ", trial);
                CHECK(testutil::max_residual(lp, fast.x) <= 1e-9);
            } else {
                ++infeasible_seen;
            }
        }
        // The generator must exercise both outcomes to mean anything.
        CHECK(optimal_seen > 50);
        CHECK(infeasible_seen > 10);
    }

    TEST_CASE("objective scaling by a positive factor") {
        std::mt19937 rng(99);
        for (int trial = 0; trial < 50; ++trial) {
            const LinearProgram lp = testutil::random_tiny_lp(rng);
            LinearProgram scaled = lp;
            for (auto& c : scaled.objective) c *= 4.0;
            const LpOutcome a = solve_lp(lp);
            const LpOutcome b = solve_lp(scaled);
            REQUIRE(a.status == b.status);
            if (a.status == LpStatus::Optimal) {
                CHECK(b.objective == doctest::Approx(4.0 * a.objective).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("degenerate ties terminate") {
        // Many coinciding basic solutions at the origin.
        LinearProgram lp;
        lp.objective = {-1.0, -1.0, -1.0};
        lp.ub_rows = {{1.0, 1.0, 1.0}, {1.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 1.0}};
        lp.ub_rhs = {0.0, 0.0, 0.0, 0.0};
        lp.lower = {0.0, 0.0, 0.0};
        lp.upper = {1.0, 1.0, 1.0};
        const LpOutcome out = solve_lp(lp);
        REQUIRE(out.status == LpStatus::Optimal);
        CHECK(out.objective == doctest::Approx(0.0).epsilon(1e-9));
    }
}

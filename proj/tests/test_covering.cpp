#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "covkit/catalog.hpp"
#include "covkit/covering.hpp"
#include "covkit/expr.hpp"
#include "test_util.hpp"

using namespace covkit;
using covkit::testing::random_point;

namespace {
const MappingSpec& cat(const char* name) { return catalog::get(name); }
} // namespace

TEST(InfOverBall, Examples) {
    EXPECT_NEAR(inf_over_ball(cat("ex6_5"), Vector{0.3, 0.4}, Vector{0.3, 0.4}, 0.1), 1.0, 1e-12);
    const double v = inf_over_ball(cat("ex6_7"), Vector{3, 4}, Vector{-7, 24}, 1e-3);
    EXPECT_GE(v, 9.995);
    EXPECT_LE(v, 10.0);
    EXPECT_EQ(inf_over_ball(cat("ex6_6"), Vector{0.2, 0.1}, cat("ex6_6")(Vector{0.2, 0.1}), 0.05), 0.0);
}

TEST(InfOverBall, Preconditions) {
    EXPECT_THROW(inf_over_ball(cat("ex6_5"), Vector{1, 1}, Vector{1, 2}, 0.1), precondition_error);
    EXPECT_THROW(inf_over_ball(cat("ex6_5"), Vector{1, 1}, Vector{1, 1}, 0.1, 10), precondition_error);
    EXPECT_THROW(inf_over_ball(cat("ex6_5"), Vector{1, 1}, Vector{1, 1}, 0.0), precondition_error);
}

TEST(InfOverBall, EmptyFeasibleSetIsDegenerate) {
    MappingSpec f = cat("ex6_5");
    f.singular_locus = [](const Vector&) { return true; };
    EXPECT_THROW(inf_over_ball(f, Vector{0, 0}, Vector{0, 0}, 0.1), degenerate_ball_error);
}

TEST(Estimate, DimensionZero) {
    const auto e = estimate(cat("ex4_3"), Vector{1, 1});
    EXPECT_EQ(e.value, 0.0);
    EXPECT_EQ(e.method, CoveringMethod::dimension_zero);
    EXPECT_TRUE(e.schedule.empty());
    EXPECT_EQ(estimate(cat("ex4_4"), Vector{-2, 0.5}).method, CoveringMethod::dimension_zero);
}

TEST(Estimate, Examples) {
    auto e = estimate(cat("f5_1"), Vector{0.6, 0.8});
    EXPECT_EQ(e.method, CoveringMethod::svd_limit);
    EXPECT_NEAR(e.value, 1.0, 1e-3);
    EXPECT_TRUE(e.converged);
    EXPECT_NEAR(estimate(cat("ex6_2"), Vector{2, 5, 7}).value, 2.0, 5e-3);
    EXPECT_NEAR(estimate(cat("g5_11"), Vector{1, 2, 3, 4}).value, 1.0, 1e-3);
}

TEST(Estimate, PuncturedBallAtSingularCentre) {
    const auto e = estimate(cat("f5_1"), Vector{0, 0});
    EXPECT_NEAR(e.value, 1.0, 1e-9);
    EXPECT_FALSE(e.frobenius_cap);
    EXPECT_NEAR(estimate(cat("g5_11"), Vector{0, 0, 1, -1}).value, 1.0, 1e-9);
}

TEST(Estimate, ScheduleShape) {
    CoveringOptions opt;
    opt.eta0 = 1.0;
    opt.eta_factor = 0.5;
    opt.eta_steps = 5;
    opt.samples = 64;
    const auto e = estimate(cat("ex6_7"), Vector{1, 1}, opt);
    ASSERT_EQ(e.schedule.size(), 5u);
    EXPECT_EQ(e.schedule[0].eta, 1.0);
    EXPECT_EQ(e.schedule[4].eta, 1.0 / 16);
    EXPECT_EQ(e.samples_per_eta, 64u);
    EXPECT_EQ(e.value, e.schedule.back().inf);
}

TEST(Estimate, DefaultFirstRadius) {
    EXPECT_EQ(estimate(cat("ex6_5"), Vector{30, 40}).schedule.front().eta, 5.0);
    EXPECT_EQ(estimate(cat("ex6_5"), Vector{1, 0}).schedule.front().eta, 0.5);
}

TEST(Estimate, SchedulesAreMonotoneAndCapped) {
    std::mt19937_64 rng(83);
    for (const auto& f : catalog::all()) {
        if (f.n < f.m) continue;
        for (int k = 0; k < 3; ++k) {
            const Vector z = random_point(f.n, rng);
            const auto e = estimate(f, z);
            for (std::size_t i = 1; i < e.schedule.size(); ++i)
                EXPECT_GE(e.schedule[i].inf, e.schedule[i - 1].inf - 1e-6) << f.name;
            ASSERT_TRUE(e.frobenius_cap);
            EXPECT_LE(e.value, *e.frobenius_cap + 1e-9) << f.name;
        }
    }
}

TEST(Estimate, SeedDeterminism) {
    CoveringOptions opt;
    opt.seed = 99;
    const auto a = estimate(cat("ex6_4"), Vector{1, 1, 2}, opt);
    const auto b = estimate(cat("ex6_4"), Vector{1, 1, 2}, opt);
    ASSERT_EQ(a.schedule.size(), b.schedule.size());
    for (std::size_t i = 0; i < a.schedule.size(); ++i) EXPECT_EQ(a.schedule[i].inf, b.schedule[i].inf);
    EXPECT_NEAR(a.value, 0.2, 1e-3);
}

TEST(Estimate, InlineMappingMatchesCatalog) {
    const auto a = estimate(parse_inline_mapping("x1*x2, x1*x3"), Vector{2, 5, 7});
    const auto b = estimate(cat("ex6_2"), Vector{2, 5, 7});
    EXPECT_NEAR(a.value, b.value, 1e-12);
}

TEST(FrobeniusBound, Examples) {
    EXPECT_DOUBLE_EQ(frobenius_bound(cat("ex6_5"), Vector{3, -2}), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(frobenius_bound(cat("ex6_7"), Vector{1, 0}), 2 * std::sqrt(2.0));
    EXPECT_THROW(frobenius_bound(cat("ex4_3"), Vector{1, 1}), hypothesis_error);
}

#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "covkit/autodiff.hpp"
#include "covkit/catalog.hpp"
#include "test_util.hpp"

using namespace covkit;
using covkit::testing::max_abs_diff;
using covkit::testing::random_point;

TEST(Catalog, RegistryNames) {
    const std::vector<std::string> expected{"ex4_3", "ex4_4", "f5_1",  "g5_11", "h5_18", "ex6_1",  "ex6_2", "ex6_3",
                                            "ex6_4", "ex6_5", "ex6_6", "ex6_7", "ex6_8", "ex6_9", "ex6_10", "ex6_11"};
    EXPECT_EQ(catalog::names(), expected);
}

TEST(Catalog, UnknownNameListsAvailable) {
    try {
        catalog::get("ex9_9");
        FAIL();
    } catch (const not_found_error& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("ex9_9"), std::string::npos);
        EXPECT_NE(msg.find("ex6_11"), std::string::npos);
        EXPECT_NE(msg.find("g5_11"), std::string::npos);
    }
}

TEST(Catalog, NormIdentitiesHold) {
    for (const auto& f : catalog::all()) {
        const auto chk = catalog::verify_norm_identity(f, 200);
        EXPECT_TRUE(chk.holds) << f.name << " worst gap " << chk.worst_gap;
    }
    EXPECT_EQ(catalog::get("f5_1").norm_identity, NormIdentity::preserving);
    EXPECT_EQ(catalog::get("ex6_7").norm_identity, NormIdentity::expanding_square);
    EXPECT_EQ(catalog::get("ex6_6").norm_identity, NormIdentity::constant_one);
    EXPECT_EQ(catalog::get("ex4_4").norm_identity, NormIdentity::expanding_ge);
}

TEST(Catalog, OracleExamples) {
    auto o = catalog::oracle_constant(catalog::get("ex6_2"), Vector{2, 5, 7});
    EXPECT_EQ(o.kind, OracleValue::Kind::exact);
    EXPECT_EQ(o.value, 2.0);

    o = catalog::oracle_constant(catalog::get("ex6_4"), Vector{1, 1, 2});
    EXPECT_EQ(o.kind, OracleValue::Kind::exact);
    EXPECT_DOUBLE_EQ(o.value, 0.2);

    o = catalog::oracle_constant(catalog::get("h5_18"), Vector{1, 1, 1, 1});
    EXPECT_EQ(o.kind, OracleValue::Kind::upper_bound);
    EXPECT_DOUBLE_EQ(o.value, 1 / std::sqrt(2.0));

    o = catalog::oracle_constant(catalog::get("h5_18"), Vector{0, 0, 1, -2});
    EXPECT_EQ(o.kind, OracleValue::Kind::exact);
    EXPECT_EQ(o.value, 0.0);

    o = catalog::oracle_constant(catalog::get("ex6_7"), Vector{3, 4});
    EXPECT_DOUBLE_EQ(o.value, 10.0);
}

TEST(Catalog, Ex611TightestBound) {
    const auto& f = catalog::get("ex6_11");
    auto o = catalog::oracle_constant(f, Vector{1, 1});
    EXPECT_EQ(o.kind, OracleValue::Kind::upper_bound);
    EXPECT_DOUBLE_EQ(o.value, 1 / std::sqrt(2.0));
    o = catalog::oracle_constant(f, Vector{1, 3});
    EXPECT_DOUBLE_EQ(o.value, 6 / std::sqrt(82.0));
    o = catalog::oracle_constant(f, Vector{0, 2});
    EXPECT_EQ(o.kind, OracleValue::Kind::exact);
    EXPECT_EQ(o.value, 0.0);
}

TEST(Catalog, SideConditionsRaise) {
    try {
        catalog::oracle_constant(catalog::get("ex6_1"), Vector{0, 0, 5});
        FAIL();
    } catch (const precondition_error& e) {
        EXPECT_NE(std::string(e.what()).find("z̄1² + z̄2² > 0 required"), std::string::npos);
    }
    EXPECT_THROW(catalog::oracle_constant(catalog::get("ex6_3"), Vector{1, 2, 3}), precondition_error);
    EXPECT_NO_THROW(catalog::oracle_constant(catalog::get("ex6_3"), Vector{2, 2, 3}));
    EXPECT_THROW(catalog::oracle_constant(catalog::get("h5_18"), Vector{1, 2, 3, 4}), precondition_error);
    EXPECT_THROW(catalog::oracle_constant(catalog::get("g5_11"), Vector{0, 0, 0, 0}), precondition_error);
    EXPECT_THROW(catalog::oracle_constant(catalog::get("ex6_10"), Vector{0, 0}), precondition_error);
}

TEST(Catalog, AnalyticJacobiansMatchAd) {
    std::mt19937_64 rng(41);
    for (const auto& f : catalog::all()) {
        ASSERT_TRUE(f.analytic_jacobian) << f.name;
        int checked = 0;
        while (checked < 100) {
            const Vector z = random_point(f.n, rng);
            if (f.on_locus(z)) continue;
            ++checked;
            EXPECT_LE(max_abs_diff(f.analytic_jacobian(z), jacobian_ad(f, z)), 1e-8) << f.name << format_point(z);
        }
    }
}

TEST(Catalog, AngleDoublingHasUnitSingularValues) {
    std::mt19937_64 rng(43);
    const auto& f = catalog::get("f5_1");
    for (int k = 0; k < 100; ++k) {
        const Vector z = random_point(2, rng);
        const auto sv = singular_values(transpose(jacobian_ad(f, z)));
        EXPECT_NEAR(sv.back(), 1.0, 1e-12);
    }
}

TEST(Catalog, PairedMappingRestrictsToAngleDoubling) {
    std::mt19937_64 rng(47);
    const auto& g = catalog::get("g5_11");
    const auto& f = catalog::get("f5_1");
    for (int k = 0; k < 100; ++k) {
        const Vector z = random_point(4, rng);
        const Vector gz = g(z), fz = f(Vector{z[0], z[1]});
        EXPECT_EQ(gz[0], fz[0]);
        EXPECT_EQ(gz[1], fz[1]);
    }
}

TEST(Catalog, NormalisationHasSingularJacobian) {
    std::mt19937_64 rng(53);
    for (int k = 0; k < 100; ++k) {
        const Matrix J = jacobian_ad(catalog::get("ex6_10"), random_point(2, rng));
        EXPECT_NEAR(J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0), 0.0, 1e-12);
    }
}

TEST(Catalog, ValueAtOriginIsOrigin) {
    for (const char* name : {"f5_1", "h5_18", "ex6_10", "ex6_11"}) {
        const auto& f = catalog::get(name);
        EXPECT_EQ(norm(f(Vector(f.n))), 0.0) << name;
    }
}

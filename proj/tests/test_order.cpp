#include <gtest/gtest.h>

#include <random>

#include "stc/acceptance.hpp"

using namespace stc;

namespace {

AlgebraPtr golden() { return load_algebra_spec("golden_u_i"); }

BaseElement G(long a, long b = 0) { return BaseElement(BaseRingKind::Gaussian, a, b); }

}  // namespace

TEST(Order, ZSquaredIsU) {
    const auto alg = golden();
    const OrderElement z = order_z(alg);
    EXPECT_EQ(z * z, order_from_base(alg, G(0, 1)));
}

TEST(Order, ZCommutesThroughSigma) {
    const auto alg = golden();
    const OKElement theta = ok_basis(alg->ext, 1);
    const OrderElement lhs = order_z(alg) * order_monomial(alg, theta, 0);
    EXPECT_EQ(lhs, order_monomial(alg, apply_sigma(theta, 1), 1));
    EXPECT_EQ(lhs, order_monomial(alg, ok_one(alg->ext) - theta, 1));
}

TEST(Order, OneIsNeutral) {
    const auto alg = golden();
    std::mt19937_64 rng(3);
    const OrderElement x = random_order_element(alg, rng, 4);
    EXPECT_EQ(order_one(alg) * x, x);
    EXPECT_EQ(x * order_one(alg), x);
}

TEST(Order, EmbeddingOfOneIsIdentity) {
    const auto m = complex_matrix(order_one(golden()));
    EXPECT_EQ(m, (std::vector<std::complex<double>>{1, 0, 0, 1}));
}

TEST(Order, EmbeddingOfZ) {
    const auto alg = golden();
    const EmbeddedMatrix m = matrix_embedding(order_z(alg));
    EXPECT_TRUE(m.at(0, 0).is_zero());
    EXPECT_EQ(m.at(0, 1), ok_from_base(alg->ext, G(0, 1)));
    EXPECT_EQ(m.at(1, 0), ok_one(alg->ext));
    EXPECT_TRUE(m.at(1, 1).is_zero());
}

TEST(Order, EmbeddingReversesProducts) {
    const auto alg = golden();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const OrderElement x = random_order_element(alg, rng, 3);
        const OrderElement y = random_order_element(alg, rng, 3);
        EXPECT_EQ(matrix_embedding(x * y), matrix_embedding(y) * matrix_embedding(x));
    }
}

TEST(Order, ReducedDetOfOne) { EXPECT_EQ(reduced_det(order_one(golden())), G(1)); }

TEST(Order, ReducedDetOfZ) { EXPECT_EQ(reduced_det(order_z(golden())), G(0, -1)); }

TEST(Order, ReducedDetOfZPowersHasNormOfUPowers) {
    for (const auto& name : builtin_algebra_names()) {
        const auto alg = load_algebra_spec(name);
        OrderElement zj = order_one(alg);
        for (int j = 1; j < alg->degree(); ++j) {
            zj = zj * order_z(alg);
            EXPECT_EQ(base_norm(reduced_det(zj)), base_norm(base_pow(alg->u, j))) << name << " j=" << j;
        }
    }
}

TEST(Order, ReducedDetOfScalar) {
    const auto alg = golden();
    const BaseElement a = G(2, -1);
    EXPECT_EQ(reduced_det(order_from_base(alg, a)), base_pow(a, 2));
    const auto q7 = load_algebra_spec("q7_cubic");
    const BaseElement b(BaseRingKind::Eisenstein, 1, 2);
    EXPECT_EQ(reduced_det(order_from_base(q7, b)), base_pow(b, 3));
}

TEST(Order, AbsDetSq) {
    EXPECT_DOUBLE_EQ(abs_det_sq(order_one(golden())), 1.0);
    EXPECT_NEAR(abs_det_sq(order_z(load_algebra_spec("golden_u_1pi"))), 2.0, 1e-12);
}

TEST(Order, AbsDetSqMultiplicative) {
    const auto alg = load_algebra_spec("q7_cubic");
    std::mt19937_64 rng(9);
    for (int i = 0; i < 30; ++i) {
        const OrderElement x = random_order_element(alg, rng, 2);
        const OrderElement y = random_order_element(alg, rng, 2);
        const double lhs = abs_det_sq(x * y);
        const double rhs = abs_det_sq(x) * abs_det_sq(y);
        EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, rhs));
    }
}

TEST(Order, NumericDeterminantMatchesExact) {
    const auto alg = load_algebra_spec("q15_quartic");
    std::mt19937_64 rng(10);
    for (int i = 0; i < 20; ++i) {
        const OrderElement x = random_order_element(alg, rng, 1);
        const double exact = base_norm(reduced_det(x)).get_d();
        EXPECT_NEAR(abs_det_sq(x), exact, 1e-7 * std::max(1.0, exact));
    }
}

TEST(Order, DivisionAlgebrasHaveNoZeroDeterminantInTheSearchBox) {
    int checked = 0;
    for (const auto& name : builtin_algebra_names()) {
        const auto alg = load_algebra_spec(name);
        if (!alg->claims_division) continue;
        SearchOptions opts;
        opts.budget = 1000000;
        try {
            EXPECT_GE(min_det_sq(alg, std::nullopt, opts).value, 1) << name;
            ++checked;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::SearchBudgetExceeded) << name;
        }
    }
    EXPECT_GE(checked, 3);
}

TEST(SpecIo, RejectsUnknownKeys) {
    Json j = Json::parse(builtin_algebra_json("golden_u_i"));
    j["bogus"] = 1;
    EXPECT_THROW(parse_algebra_spec(j), Error);
}

TEST(SpecIo, OrderJsonRoundTrip) {
    const auto alg = golden();
    std::mt19937_64 rng(11);
    const OrderElement x = random_order_element(alg, rng, 5);
    EXPECT_EQ(order_from_json(alg, order_to_json(x)), x);
}

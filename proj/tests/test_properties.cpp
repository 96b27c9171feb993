#include <gtest/gtest.h>

#include "stc/acceptance.hpp"

using namespace stc;

class PerAlgebra : public ::testing::TestWithParam<std::string> {};

TEST_P(PerAlgebra, EmbeddingLaw) {
    const CheckCount c = check_embedding_law(load_algebra_spec(GetParam()), 100, 31);
    EXPECT_TRUE(c.ok()) << c.failures << " of " << c.cases;
}

TEST_P(PerAlgebra, DeterminantDivisibility) {
    const auto alg = load_algebra_spec(GetParam());
    const BaseRingKind kind = alg->base_kind();
    for (const char* a : {"2", "3"}) {
        const CheckCount c = check_det_divisibility(alg, parse_base_element(kind, a), 30, 32);
        EXPECT_TRUE(c.ok()) << a;
    }
    if (kind != BaseRingKind::Integers) {
        const CheckCount c = check_det_divisibility(alg, base_one(kind) + base_generator(kind), 30, 33);
        EXPECT_TRUE(c.ok());
    }
}

TEST_P(PerAlgebra, ReducedDetIsMultiplicative) {
    const auto alg = load_algebra_spec(GetParam());
    std::mt19937_64 rng(34);
    for (int i = 0; i < 20; ++i) {
        const OrderElement x = random_order_element(alg, rng, 2);
        const OrderElement y = random_order_element(alg, rng, 2);
        EXPECT_EQ(reduced_det(x * y), reduced_det(x) * reduced_det(y));
    }
}

TEST_P(PerAlgebra, MultiplicationIsAssociative) {
    const auto alg = load_algebra_spec(GetParam());
    std::mt19937_64 rng(35);
    for (int i = 0; i < 20; ++i) {
        const OrderElement x = random_order_element(alg, rng, 2);
        const OrderElement y = random_order_element(alg, rng, 2);
        const OrderElement w = random_order_element(alg, rng, 2);
        EXPECT_EQ((x * y) * w, x * (y * w));
        EXPECT_EQ(x * (y + w), x * y + x * w);
    }
}

INSTANTIATE_TEST_SUITE_P(Shipped, PerAlgebra, ::testing::ValuesIn(builtin_algebra_names()));

TEST(Properties, NilpotentInverses) {
    EXPECT_TRUE(check_nilpotent_inverse(load_algebra_spec("golden_u_1pi"), parse_base_element(BaseRingKind::Gaussian, "1+i")).ok());
    EXPECT_TRUE(check_nilpotent_inverse(load_algebra_spec("gauss_over_Q_u5"), parse_base_element(BaseRingKind::Integers, "5")).ok());
}

TEST(Properties, QuotientIsARing) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, IdealSpec{parse_base_element(BaseRingKind::Gaussian, "1+i"), 2});
    const auto gens = Q.ring_generators();
    for (std::uint64_t i = 0; i < Q.size(); i += 7)
        for (std::uint64_t j = 0; j < Q.size(); j += 11)
            for (const auto& g : gens) {
                const GElem x = Q.from_index(i), y = Q.from_index(j);
                EXPECT_EQ(Q.mul(Q.mul(x, y), g), Q.mul(x, Q.mul(y, g)));
            }
}

TEST(Properties, IdentifyIsDeterministicAcrossThreads) {
    const auto alg = load_algebra_spec("gauss_over_Q");
    const IdealSpec I{BaseElement(BaseRingKind::Integers, 5), 1};
    const QuotientRing Q(alg, I);
    IdentifyOptions o;
    o.verify = true;
    set_thread_count(1);
    const auto a = report_to_json(identify_quotient(alg, I, o), Q).dump();
    set_thread_count(4);
    const auto b = report_to_json(identify_quotient(alg, I, o), Q).dump();
    EXPECT_EQ(a, b);
}

#include <gtest/gtest.h>

#include <random>

#include "stc/acceptance.hpp"

using namespace stc;

namespace {

BaseElement G(long a, long b = 0) { return BaseElement(BaseRingKind::Gaussian, a, b); }

IdealSpec gauss_ideal(const char* alpha, unsigned s) { return IdealSpec{parse_base_element(BaseRingKind::Gaussian, alpha), s}; }

}  // namespace

TEST(Quotient, KernelOfReduction) {
    const auto alg = load_algebra_spec("golden_u_i");
    const IdealSpec I = gauss_ideal("1+i", 2);
    const QuotientRing Q(alg, I);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        const OrderElement y = random_order_element(alg, rng, 5);
        EXPECT_TRUE(Q.is_zero(Q.reduce(order_scale(base_pow(I.alpha, I.s), y))));
    }
    EXPECT_EQ(Q.reduce(order_one(alg)), Q.one());
}

TEST(Quotient, GoldenRatioGeneratesF4) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, gauss_ideal("1+i", 1));
    const ResidueRing& S = Q.residue();
    EXPECT_EQ(S.size(), 4u);
    const SElem t = S.reduce(ok_basis(alg->ext, 1));
    EXPECT_EQ(S.mul(t, t), S.add(t, S.one()));
    EXPECT_NE(t, S.one());
    EXPECT_FALSE(S.is_zero(t));
}

TEST(Quotient, ZSquaredReducesToOne) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, gauss_ideal("1+i", 1));
    EXPECT_TRUE(base_divides(G(1, 1), G(0, 1) - G(1)));
    EXPECT_EQ(Q.u(), Q.base().one());
    EXPECT_EQ(Q.mul(Q.z(), Q.z()), Q.one());
}

TEST(Quotient, IdempotentIsIdempotent) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, gauss_ideal("1+i", 2));
    EXPECT_EQ(Q.mul(Q.one(), Q.one()), Q.one());
}

TEST(Quotient, SplitIdempotentTimesZSquaresToZero) {
    const auto alg = load_algebra_spec("gauss_over_Q");
    const BaseElement five(BaseRingKind::Integers, 5);
    const QuotientRing Q(alg, IdealSpec{five, 1});
    const auto fd = factor_prime(alg->ext, five);
    ASSERT_EQ(fd.g, 2);
    const GElem v1z = Q.monomial(fd.idempotents[0], 1);
    EXPECT_TRUE(Q.is_zero(Q.mul(v1z, v1z)));
    EXPECT_EQ(Q.residue().sigma(fd.idempotents[0]), fd.idempotents[1]);
}

TEST(Quotient, MultiplicationMatchesOrder) {
    const auto alg = load_algebra_spec("q7_cubic");
    const QuotientRing Q(alg, IdealSpec{parse_base_element(BaseRingKind::Eisenstein, "2"), 1});
    std::mt19937_64 rng(2);
    for (int i = 0; i < 50; ++i) {
        const OrderElement x = random_order_element(alg, rng, 3);
        const OrderElement y = random_order_element(alg, rng, 3);
        EXPECT_EQ(Q.reduce(x * y), Q.mul(Q.reduce(x), Q.reduce(y)));
        EXPECT_EQ(Q.reduce(Q.lift(Q.reduce(x))), Q.reduce(x));
    }
}

TEST(Crt, OneDecomposesToOnes) {
    const auto alg = load_algebra_spec("golden_u_i");
    const CrtDecomposition crt = make_crt(alg, {gauss_ideal("1+i", 1), gauss_ideal("2+i", 1)});
    const auto parts = crt_decompose(crt, crt.whole->one());
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0], crt.parts[0]->one());
    EXPECT_EQ(parts[1], crt.parts[1]->one());
}

TEST(Crt, DecompositionIsAdditive) {
    const auto alg = load_algebra_spec("golden_u_i");
    const CrtDecomposition crt = make_crt(alg, {gauss_ideal("1+i", 1), gauss_ideal("3", 1)});
    const QuotientRing& W = *crt.whole;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint64_t> pick(0, W.size() - 1);
    for (int i = 0; i < 100; ++i) {
        const GElem x = W.from_index(pick(rng)), y = W.from_index(pick(rng));
        const auto px = crt_decompose(crt, x), py = crt_decompose(crt, y), ps = crt_decompose(crt, W.add(x, y));
        for (std::size_t k = 0; k < px.size(); ++k) EXPECT_EQ(crt.parts[k]->add(px[k], py[k]), ps[k]);
    }
}

TEST(Crt, RoundTrip) {
    const auto alg = load_algebra_spec("golden_u_i");
    const CheckCount c = check_crt_roundtrip(alg, {gauss_ideal("1+i", 2), gauss_ideal("3", 1)}, 500, 4);
    EXPECT_TRUE(c.ok()) << c.failures;
}

TEST(Crt, RepeatedPrimeRejected) {
    const auto alg = load_algebra_spec("golden_u_i");
    EXPECT_THROW(make_crt(alg, {gauss_ideal("1+i", 1), gauss_ideal("1-i", 1)}), Error);
}

TEST(SkewChain, ZPowerIdeals) {
    const auto alg = load_algebra_spec("golden_u_1pi");
    const QuotientRing Q(alg, gauss_ideal("1+i", 1));
    const auto chain = skew_poly_ideal_chain(Q);
    ASSERT_EQ(chain.size(), 2u);
    EXPECT_EQ(chain[0].name, "<z^1>");
    EXPECT_EQ(chain[0].quotient, "F_4");
    EXPECT_EQ(chain[1].name.rfind("<z^2>", 0), 0u);
    EXPECT_EQ(set_count(materialize_ideal(Q, chain[1])), 1u);
    EXPECT_EQ(set_count(materialize_ideal(Q, chain[0])), 4u);
}

TEST(SkewChain, BruteForceMatches) {
    const auto alg = load_algebra_spec("golden_u_1pi");
    const QuotientRing Q(alg, gauss_ideal("1+i", 1));
    ASSERT_EQ(Q.size(), 16u);
    const auto brute = brute_force_two_sided_ideals(Q);
    std::vector<std::uint64_t> sizes;
    for (const auto& s : brute) sizes.push_back(set_count(s));
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, (std::vector<std::uint64_t>{1, 4, 16}));
    IdealDescriptor whole;
    whole.shape = IdealDescriptor::Shape::Whole;
    auto lattice = skew_poly_ideal_chain(Q);
    lattice.push_back(whole);
    EXPECT_TRUE(same_ideals(Q, lattice));
}

TEST(SkewChain, BruteForceSerialAgrees) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, gauss_ideal("1+i", 2));
    auto a = brute_force_two_sided_ideals(Q, Exec::Serial);
    auto b = brute_force_two_sided_ideals(Q, Exec::Parallel);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
}

TEST(SkewChain, WrongCaseWhenUIsAUnit) {
    const auto alg = load_algebra_spec("golden_u_i");
    EXPECT_THROW(skew_poly_ideal_chain(QuotientRing(alg, gauss_ideal("1+i", 1))), Error);
}

#include <gtest/gtest.h>

#include "stc/base_rings.hpp"
#include "stc/error.hpp"

using namespace stc;

using Elt = LocalBaseRing::Elt;

namespace {

BaseElement G(long a, long b = 0) { return BaseElement(BaseRingKind::Gaussian, a, b); }
BaseElement W(long a, long b = 0) { return BaseElement(BaseRingKind::Eisenstein, a, b); }

}  // namespace

TEST(BaseRing, GaussianNormProduct) { EXPECT_EQ(G(1, 1) * G(1, -1), G(2)); }

TEST(BaseRing, EisensteinGeneratorSquare) { EXPECT_EQ(W(0, 1) * W(0, 1), W(-1, -1)); }

TEST(BaseRing, AdditiveInverse) { EXPECT_TRUE((G(2, 3) + G(-2, -3)).is_zero()); }

TEST(BaseRing, NormOfOnePlusI) { EXPECT_EQ(base_norm(G(1, 1)), 2); }

TEST(BaseRing, NormOfZero) { EXPECT_EQ(base_norm(G(0)), 0); }

TEST(BaseRing, EisensteinNormMatchesEmbedding) {
    const BaseElement x = W(2, 1);
    const std::complex<double> v = base_embed(x);
    EXPECT_NEAR(std::norm(v), 3.0, 1e-12);
    EXPECT_EQ(base_norm(x), 3);
}

TEST(BaseRing, EuclideanRemainderIsSmall) {
    const DivMod d = euclidean_divmod(G(3), G(1, 1));
    EXPECT_LT(base_norm(d.remainder), 2);
    EXPECT_TRUE(base_divides(G(1, 1), G(3) - d.remainder));
    EXPECT_EQ(d.quotient * G(1, 1) + d.remainder, G(3));
}

TEST(BaseRing, EuclideanExactDivision) {
    const BaseElement m = base_pow(G(1, 1), 2);
    EXPECT_TRUE(euclidean_divmod(m, m).remainder.is_zero());
}

TEST(BaseRing, RemainderModTwoHasMinimalNorm) {
    const BaseElement x = G(5, 2);
    const DivMod d = euclidean_divmod(x, G(2));
    EXPECT_LT(base_norm(d.remainder), 4);
    EXPECT_TRUE(base_divides(G(2), x - d.remainder));
    long best = 1000;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            if (base_divides(G(2), x - G(a, b))) best = std::min(best, a * a + b * b);
    EXPECT_EQ(base_norm(d.remainder), best);
}

TEST(BaseRing, ParseRoundTrip) {
    EXPECT_EQ(parse_base_element(BaseRingKind::Gaussian, "1+i"), G(1, 1));
    EXPECT_EQ(parse_base_element(BaseRingKind::Gaussian, "-3"), G(-3));
    EXPECT_EQ(parse_base_element(BaseRingKind::Eisenstein, "1-w"), W(1, -1));
    EXPECT_EQ(parse_base_element(BaseRingKind::Gaussian, G(2, -5).to_string()), G(2, -5));
}

TEST(BaseRing, Primality) {
    EXPECT_TRUE(base_is_prime(G(1, 1)));
    EXPECT_TRUE(base_is_prime(G(3)));
    EXPECT_FALSE(base_is_prime(G(5)));
    EXPECT_FALSE(base_is_prime(G(0, 1)));
    EXPECT_TRUE(base_is_prime(BaseElement(BaseRingKind::Integers, 7)));
    EXPECT_TRUE(base_is_prime(G(7)));
    EXPECT_TRUE(base_is_prime(W(2)));
    EXPECT_TRUE(base_is_prime(W(5)));
    EXPECT_FALSE(base_is_prime(W(7)));
    EXPECT_FALSE(base_is_prime(W(3)));
}

TEST(LocalRing, TwoVanishesModOnePlusISquared) {
    const LocalBaseRing R(BaseRingKind::Gaussian, G(1, 1), 2);
    EXPECT_EQ(R.size(), 4u);
    EXPECT_TRUE(base_divides(base_pow(G(1, 1), 2), G(2)));
    EXPECT_EQ(R.reduce(G(2)), R.zero());
    EXPECT_EQ(R.reduce(G(0)), R.zero());
}

TEST(LocalRing, ImaginaryUnitModOnePlusISquared) {
    const LocalBaseRing R(BaseRingKind::Gaussian, G(1, 1), 2);
    const Elt i = R.reduce(G(0, 1));
    EXPECT_NE(i, R.zero());
    EXPECT_EQ(R.mul(i, i), R.one());
    EXPECT_EQ(R.reduce(G(-1)), R.one());
    // Exhaustive table: the four residues are 0, 1, i, 1+i and only 1, i are units.
    int units = 0;
    for (Elt x = 0; x < R.size(); ++x) units += R.is_unit(x) ? 1 : 0;
    EXPECT_EQ(units, 2);
}

TEST(LocalRing, FieldInverses) {
    const LocalBaseRing F(BaseRingKind::Integers, BaseElement(BaseRingKind::Integers, 7), 1);
    for (Elt x = 1; x < F.size(); ++x) EXPECT_EQ(F.mul(x, F.inv(x)), F.one());
    EXPECT_EQ(F.residue_field_size(), 7);
}

TEST(LocalRing, ValuationInPrimePower) {
    const LocalBaseRing R(BaseRingKind::Gaussian, G(1, 1), 3);
    EXPECT_EQ(R.size(), 8u);
    EXPECT_EQ(R.valuation(R.reduce(G(2))), 2u);
    EXPECT_EQ(R.valuation(R.reduce(G(1, 1))), 1u);
    EXPECT_EQ(R.valuation(R.one()), 0u);
}

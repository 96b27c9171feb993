#include <gtest/gtest.h>

#include <cmath>

#include "stc/extension.hpp"
#include "stc/spec_io.hpp"

using namespace stc;

namespace {

ExtensionPtr golden() { return load_algebra_spec("golden_u_i")->ext; }

OKElement ok(const ExtensionPtr& ext, std::vector<long> a) {
    std::vector<BaseElement> c;
    for (long v : a) c.emplace_back(ext->base.kind, v);
    return ok_from_coords(ext, c);
}

}  // namespace

TEST(Extension, GoldenRatioSquare) {
    const auto ext = golden();
    const OKElement theta = ok_basis(ext, 1);
    EXPECT_EQ(theta * theta, theta + ok_one(ext));
}

TEST(Extension, MultiplicativeIdentity) {
    const auto ext = golden();
    const OKElement x = ok(ext, {3, -2});
    EXPECT_EQ(x * ok_one(ext), x);
}

TEST(Extension, CubicGeneratorSatisfiesMinimalPolynomial) {
    const auto ext = load_algebra_spec("q7_cubic")->ext;
    const OKElement t = ok_basis(ext, 1);
    const OKElement one = ok_one(ext);
    const BaseElement two(ext->base.kind, 2);
    const OKElement value = t * t * t + t * t - ok_scale(two, t) - one;
    EXPECT_TRUE(value.is_zero());
}

TEST(Extension, SigmaPowers) {
    const auto ext = golden();
    const OKElement x = ok(ext, {2, 5});
    EXPECT_EQ(apply_sigma(x, 0), x);
    EXPECT_EQ(apply_sigma(x, ext->degree), x);
}

TEST(Extension, SigmaOfGoldenRatio) {
    const auto ext = golden();
    const OKElement theta = ok_basis(ext, 1);
    const OKElement s = apply_sigma(theta, 1);
    EXPECT_EQ(s, ok_one(ext) - theta);
    EXPECT_NE(s, theta);
    EXPECT_EQ(s * s, s + ok_one(ext));
}

TEST(Extension, EmbeddingOfOne) {
    const auto v = embed_complex(ok_one(golden()), 0);
    EXPECT_DOUBLE_EQ(v.real(), 1.0);
    EXPECT_DOUBLE_EQ(v.imag(), 0.0);
}

TEST(Extension, EmbeddingOfGoldenRatio) {
    const auto ext = golden();
    double root = 1.5;
    for (int k = 0; k < 50; ++k) root -= (root * root - root - 1) / (2 * root - 1);
    const std::complex<double> v = embed_complex(ok_basis(ext, 1), 0);
    EXPECT_NEAR(v.real(), root, 1e-12);
    EXPECT_LT(std::abs(v * v - v - 1.0), 1e-12);
}

TEST(Extension, EmbeddingsMultiplyToNorm) {
    for (const char* name : {"golden_u_i", "q7_cubic", "q15_quartic", "gauss_over_Q"}) {
        const auto ext = load_algebra_spec(name)->ext;
        OKElement x = ok_one(ext);
        for (int k = 0; k < ext->degree; ++k) x = x + ok_scale(BaseElement(ext->base.kind, k + 2), ok_basis(ext, k));
        OKElement norm = ok_one(ext);
        std::complex<double> prod = 1;
        for (int j = 0; j < ext->degree; ++j) {
            norm = norm * apply_sigma(x, j);
            prod *= embed_complex(x, j);
        }
        ASSERT_TRUE(ok_in_base(norm)) << name;
        EXPECT_NEAR(std::abs(prod - base_embed(norm.c[0])), 0.0, 1e-9 * std::max(1.0, std::abs(prod))) << name;
    }
}

TEST(Factor, GoldenInertAtOnePlusI) {
    const auto fd = factor_prime(golden(), parse_base_element(BaseRingKind::Gaussian, "1+i"));
    EXPECT_EQ(fd.g, 1);
    EXPECT_EQ(fd.f, 2);
    EXPECT_EQ(fd.e, 1);
}

TEST(Factor, GaussianSplitsAtFive) {
    const auto ext = load_algebra_spec("gauss_over_Q")->ext;
    const auto fd = factor_prime(ext, BaseElement(BaseRingKind::Integers, 5));
    EXPECT_EQ(fd.g, 2);
    EXPECT_EQ(fd.f, 1);
    // Brute-force oracle: idempotents of F_5[x]/(x^2+1) other than 0 and 1.
    int found = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = 1; b < 5; ++b) {
            const int re = (a * a - b * b) % 5, im = (2 * a * b) % 5;
            if ((re + 5) % 5 == a && (im + 5) % 5 == b) ++found;
        }
    EXPECT_EQ(found, 2);
    for (const auto& v : fd.idempotents) EXPECT_NE(v[1], 0u);
}

TEST(Factor, CubicInertAtTwo) {
    const auto fd = factor_prime(load_algebra_spec("q7_cubic")->ext, parse_base_element(BaseRingKind::Eisenstein, "2"));
    EXPECT_EQ(fd.g, 1);
    EXPECT_EQ(fd.f, 3);
}

TEST(Factor, BruteForceAndFrobeniusAgree) {
    const auto ext = load_algebra_spec("gauss_over_Q")->ext;
    for (long p : {3, 5, 13}) {
        const BaseElement q(BaseRingKind::Integers, p);
        const auto a = factor_prime(ext, q, FactorMethod::BruteForce);
        const auto b = factor_prime(ext, q, FactorMethod::Berlekamp);
        EXPECT_EQ(a.g, b.g) << p;
        auto ia = a.idempotents, ib = b.idempotents;
        std::sort(ia.begin(), ia.end());
        std::sort(ib.begin(), ib.end());
        EXPECT_EQ(ia, ib) << p;
    }
}

TEST(Factor, RamifiedPrimeRejected) {
    const auto ext = load_algebra_spec("gauss_over_Q")->ext;
    EXPECT_THROW(factor_prime(ext, BaseElement(BaseRingKind::Integers, 2)), Error);
}

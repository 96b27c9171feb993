#include <gtest/gtest.h>

#include "stc/acceptance.hpp"

using namespace stc;

namespace {

IdealSpec ideal(const AlgebraPtr& alg, const char* alpha, unsigned s = 1) {
    return IdealSpec{parse_base_element(alg->base_kind(), alpha), s};
}

IdentifyOptions verifying(VerifyMode mode = VerifyMode::Exhaustive) {
    IdentifyOptions o;
    o.verify = true;
    o.verify_options.mode = mode;
    return o;
}

}  // namespace

TEST(Identify, GoldenInertUnit) {
    const auto alg = load_algebra_spec("golden_u_i");
    const auto r = identify_quotient(alg, ideal(alg, "1+i"), verifying());
    EXPECT_EQ(r.kind, StructureCase::InertUnit);
    EXPECT_EQ(r.target, "M_2(F_2)");
    ASSERT_TRUE(r.verification);
    EXPECT_TRUE(r.verification->verified);
    EXPECT_EQ(r.verification->elements_checked, 16u);
    EXPECT_EQ(r.verification->pairs_checked, 256u);
    EXPECT_EQ(r.ideal_lattice.size(), 2u);
}

TEST(Identify, CubicInertUnit) {
    const auto alg = load_algebra_spec("q7_cubic");
    const auto r = identify_quotient(alg, ideal(alg, "2"));
    EXPECT_EQ(r.kind, StructureCase::InertUnit);
    EXPECT_EQ(r.target, "M_3(F_4)");
    EXPECT_EQ(r.cardinality, mpz_class(1) << 18);
}

TEST(Identify, GoldenPrimePower) {
    const auto alg = load_algebra_spec("golden_u_i");
    const auto r = identify_quotient(alg, ideal(alg, "1+i", 2), verifying());
    EXPECT_EQ(r.kind, StructureCase::InertUnitPower);
    EXPECT_EQ(r.target, "M_2(Z[i]/(1+i)^2)");
    EXPECT_TRUE(r.verification && r.verification->verified);
}

TEST(Identify, UnsupportedNilpotentPower) {
    const auto alg = load_algebra_spec("golden_u_1pi");
    try {
        identify_quotient(alg, ideal(alg, "1+i", 2));
        FAIL() << "expected UnsupportedCase";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedCase);
    }
}

TEST(Identify, RamifiedRejected) {
    const auto alg = load_algebra_spec("gauss_over_Q");
    try {
        identify_quotient(alg, ideal(alg, "2"));
        FAIL() << "expected RamifiedPrime";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RamifiedPrime);
    }
}

TEST(NormEquation, TargetOneGivesOne) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, ideal(alg, "1+i"));
    const ResidueRing& S = Q.residue();
    const SElem k = solve_norm_equation(S, S.one(), 1, 2, Q.base().one());
    EXPECT_EQ(S.norm(k), S.one());
}

TEST(NormEquation, TotallySplitIsIdentity) {
    const auto alg = load_algebra_spec("gauss_over_Q");
    const BaseElement five(BaseRingKind::Integers, 5);
    const QuotientRing Q(alg, IdealSpec{five, 1});
    const auto fd = factor_prime(alg->ext, five);
    const ResidueRing& S = Q.residue();
    const SElem v = fd.idempotents[0];
    const Elt target = Q.base().reduce(BaseElement(BaseRingKind::Integers, 3));
    const SElem k = solve_norm_equation(S, v, 2, 1, target);
    EXPECT_EQ(k, S.scale(target, v));
}

TEST(NormEquation, EveryUnitOfF4HasNormOne) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, ideal(alg, "1+i"));
    const ResidueRing& S = Q.residue();
    for (std::uint64_t i = 1; i < S.size(); ++i) {
        const SElem t = S.from_index(i);
        EXPECT_EQ(S.mul(t, S.sigma(t)), S.one());
    }
}

TEST(Certificate, IdentityMapsToIdentity) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, ideal(alg, "1+i"));
    const IsoCertificate cert = build_matrix_iso_s1(Q);
    EXPECT_EQ(certificate_image(Q, cert, Q.one()), cert.target->one());
}

TEST(Certificate, SplitUnitVerifies) {
    const auto alg = load_algebra_spec("gauss_over_Q");
    const QuotientRing Q(alg, ideal(alg, "5"));
    IsoCertificate cert = build_matrix_iso_s1(Q);
    EXPECT_EQ(cert.target->name(), "M_2(F_5)");
    const auto rep = verify_isomorphism(cert, Q);
    EXPECT_TRUE(rep.verified);
    EXPECT_EQ(rep.kernel_rank, rep.expected_rank);
}

TEST(Certificate, MatrixUnitsLiftIdempotents) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q2(alg, ideal(alg, "1+i", 2));
    const QuotientRing Q1(alg, ideal(alg, "1+i", 1));
    const IsoCertificate cert = lift_matrix_iso_power(Q2);
    ASSERT_EQ(cert.matrix_units.size(), 4u);
    EXPECT_TRUE(check_matrix_units(Q2, cert.matrix_units));
    const GElem e11 = Q1.reduce(Q2.lift(cert.matrix_units[0]));
    EXPECT_EQ(Q1.mul(e11, e11), e11);
    EXPECT_FALSE(Q1.is_zero(e11));
    EXPECT_NE(e11, Q1.one());
}

TEST(Certificate, CorruptedCertificateFails) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, ideal(alg, "1+i"));
    IsoCertificate cert = build_matrix_iso_s1(Q);
    std::swap(cert.basis_images[0], cert.basis_images[1]);
    try {
        verify_isomorphism(cert, Q);
        FAIL() << "expected VerificationFailed";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::VerificationFailed);
    }
    EXPECT_FALSE(cert.verified);
}

TEST(Certificate, SerialAndParallelVerificationAgree) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, ideal(alg, "1+i", 2));
    IsoCertificate a = lift_matrix_iso_power(Q), b = lift_matrix_iso_power(Q);
    VerifyOptions serial;
    serial.exec = Exec::Serial;
    const auto ra = verify_isomorphism(a, Q, serial);
    const auto rb = verify_isomorphism(b, Q);
    EXPECT_EQ(ra.elements_checked, rb.elements_checked);
    EXPECT_EQ(ra.pairs_checked, rb.pairs_checked);
    EXPECT_EQ(ra.kernel_rank, rb.kernel_rank);
}

TEST(Certificate, SkewQuotient) {
    const auto alg = load_algebra_spec("golden_u_1pi");
    const QuotientRing Q(alg, ideal(alg, "1+i"));
    IsoCertificate cert = build_skew_iso(Q);
    EXPECT_EQ(cert.target->name(), "F_4[x; Frob^1]/(x^2)");
    EXPECT_TRUE(verify_isomorphism(cert, Q).verified);
}

TEST(Stairwell, RowZeroAnchorCoversItsRow) {
    for (int q = 0; q < 4; ++q) EXPECT_TRUE(stairwell_contains({1, 0}, {1, q}, 2, 4));
    EXPECT_TRUE(stairwell_contains({1, 0}, {2, 1}, 2, 4));
    EXPECT_FALSE(stairwell_contains({1, 0}, {2, 0}, 2, 4));
}

TEST(Stairwell, AnchorContainsItself) {
    for (int i = 1; i <= 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_TRUE(stairwell_contains({i, j}, {i, j}, 2, 2));
}

TEST(Stairwell, EmptyWhenPastTheTop) {
    EXPECT_FALSE(stairwell_contains({1, 1}, {2, 1}, 2, 2));
    const auto alg = load_algebra_spec("gauss_over_Q_u5");
    const BaseElement five(BaseRingKind::Integers, 5);
    const QuotientRing Q(alg, IdealSpec{five, 1});
    const auto fd = factor_prime(alg->ext, five);
    const ElementSet principal = ideal_closure(Q, {Q.monomial(fd.idempotents[0], 1)});
    EXPECT_FALSE(set_contains(principal, Q.index(Q.monomial(fd.idempotents[1], 1))));
    EXPECT_TRUE(set_contains(principal, Q.index(Q.monomial(fd.idempotents[0], 1))));
}

TEST(MonomialIdeals, MatchBruteForce) {
    const auto alg = load_algebra_spec("gauss_over_Q_u5");
    const BaseElement five(BaseRingKind::Integers, 5);
    const QuotientRing Q(alg, IdealSpec{five, 1});
    const auto fd = factor_prime(alg->ext, five);
    std::vector<IdealDescriptor> lattice;
    for (const auto& m : enumerate_monomial_ideals(Q, fd)) lattice.push_back(monomial_descriptor(Q, fd, m));
    EXPECT_TRUE(same_ideals(Q, lattice));
}

TEST(MonomialIdeals, AllDegreeZeroGeneratorsGiveTheRing) {
    const auto alg = load_algebra_spec("gauss_over_Q_u5");
    const BaseElement five(BaseRingKind::Integers, 5);
    const QuotientRing Q(alg, IdealSpec{five, 1});
    const auto fd = factor_prime(alg->ext, five);
    const ElementSet all = ideal_closure(Q, {Q.monomial(fd.idempotents[0], 0), Q.monomial(fd.idempotents[1], 0)});
    EXPECT_EQ(set_count(all), Q.size());
}

TEST(MonomialIdeals, IncomparableAnchorsGiveDistinctIdeals) {
    const auto alg = load_algebra_spec("gauss_over_Q_u5");
    const BaseElement five(BaseRingKind::Integers, 5);
    const QuotientRing Q(alg, IdealSpec{five, 1});
    const auto fd = factor_prime(alg->ext, five);
    std::vector<Monomial> anchors{{1, 0}, {1, 1}, {2, 0}, {2, 1}};
    for (const auto& a : anchors)
        for (const auto& b : anchors) {
            if (a == b || stairwell_contains(a, b, 2, 2) || stairwell_contains(b, a, 2, 2)) continue;
            const auto ia = ideal_closure(Q, {Q.monomial(fd.idempotents[a.first - 1], a.second)});
            const auto ib = ideal_closure(Q, {Q.monomial(fd.idempotents[b.first - 1], b.second)});
            EXPECT_NE(ia, ib);
        }
}

TEST(Report, JsonIsDeterministic) {
    const auto alg = load_algebra_spec("golden_u_i");
    const QuotientRing Q(alg, ideal(alg, "1+i"));
    const auto a = report_to_json(identify_quotient(alg, ideal(alg, "1+i"), verifying()), Q).dump();
    const auto b = report_to_json(identify_quotient(alg, ideal(alg, "1+i"), verifying()), Q).dump();
    EXPECT_EQ(a, b);
}

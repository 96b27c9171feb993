#include <gtest/gtest.h>

#include <random>

#include "stc/acceptance.hpp"

using namespace stc;

namespace {

CMatrix identity(int n) {
    CMatrix m(n * n, 0.0);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1.0;
    return m;
}

CodeIdeal prime_ideal(const AlgebraPtr& alg, const char* alpha, unsigned s = 1) {
    return CodeIdeal{IdealSpec{parse_base_element(alg->base_kind(), alpha), s}, std::nullopt};
}

}  // namespace

TEST(Lemma, SingleMatrixIsEquality) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    CMatrix x(9);
    for (auto& v : x) v = {nd(rng), nd(rng)};
    const LemmaReport r = det_inequality_check(3, {x});
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(r.lhs, r.rhs, 1e-12 * r.rhs);
}

TEST(Lemma, TwoIdentities) {
    const LemmaReport r = det_inequality_check(2, {identity(2), identity(2)});
    EXPECT_NEAR(r.lhs, 4.0, 1e-12);
    EXPECT_NEAR(r.rhs, 4.0, 1e-12);
    EXPECT_TRUE(r.holds);
}

TEST(Lemma, RandomPairsHold) {
    const LemmaTrials t = lemma_trials(1000, {2, 3, 4}, {2}, 7);
    EXPECT_EQ(t.trials, 1000);
    EXPECT_EQ(t.holds, 1000);
}

TEST(Lemma, SingularRejected) {
    try {
        det_inequality_check(2, {CMatrix(4, 0.0)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularInput);
    }
}

TEST(Outer, ParityEncoding) {
    const CodeSpec spec = load_code_spec("golden_parity");
    const OuterCode code = build_outer_code(spec);
    const QuotientRing& Q = *code.alphabet->ring;
    const GElem a = Q.from_index(5), b = Q.from_index(9);
    EXPECT_EQ(encode(code, {a, b}), (std::vector<GElem>{a, b, Q.add(a, b)}));
    EXPECT_THROW(encode(code, {a}), Error);
}

TEST(Outer, FullReedSolomonIsIdentityLike) {
    const OuterCode code = make_reed_solomon_code(FiniteField(2, 4), 5, 5);
    EXPECT_EQ(hamming_distance(code), 1);
    EXPECT_EQ(hamming_distance(code, HammingMode::Enumerate), 1);
}

TEST(Outer, ReedSolomonDistance) {
    const OuterCode code = build_outer_code(load_code_spec("rs_f16"));
    EXPECT_EQ(code.rs->field().size(), 16u);
    EXPECT_EQ(hamming_distance(code), 4);
    EXPECT_EQ(hamming_distance(code, HammingMode::Enumerate), 4);
}

TEST(Outer, ReedSolomonConstantsHaveFullWeight) {
    const OuterCode code = make_reed_solomon_code(FiniteField(2, 4), 7, 1);
    for (FiniteField::Elt c = 1; c < 16; ++c) {
        const auto w = encode_symbols(code, {c});
        EXPECT_EQ(std::count(w.begin(), w.end(), c), 7);
    }
    EXPECT_EQ(hamming_distance(code, HammingMode::Enumerate), 7);
}

TEST(Outer, EvaluationPoints) {
    const FiniteField F(2, 4);
    const ReedSolomonCode rs(F, 4, 2);
    EXPECT_EQ(rs.points(), (std::vector<FiniteField::Elt>{0, 1, F.generator(), F.generator_power(2)}));
}

TEST(Outer, ParityDistance) {
    const OuterCode code = build_outer_code(load_code_spec("golden_parity"));
    EXPECT_EQ(hamming_distance(code), 2);
    EXPECT_EQ(hamming_distance(code, HammingMode::Enumerate), 2);
}

TEST(Outer, FirstCoefficientDistanceIsOne) {
    const OuterCode code = build_outer_code(load_code_spec("golden_first_coefficient"));
    EXPECT_EQ(hamming_distance(code), 1);
    EXPECT_EQ(hamming_distance(code, HammingMode::Enumerate), 1);
}

TEST(Lift, ZeroLiftsToZero) {
    const CodeSpec spec = load_code_spec("golden_parity");
    const OuterCode code = build_outer_code(spec);
    const QuotientRing& Q = *code.alphabet->ring;
    const auto x = lift_codeword(code, encode(code, {Q.zero(), Q.zero()}), spec.lift);
    for (const auto& c : x.components) EXPECT_TRUE(c.is_zero());
}

TEST(Lift, GoldenParityTriple) {
    const CodeSpec spec = load_code_spec("golden_parity");
    const OuterCode code = build_outer_code(spec);
    const QuotientRing& Q = *code.alphabet->ring;
    const auto alg = spec.algebra;
    const OKElement theta = ok_basis(alg->ext, 1);
    const OrderElement x1 = order_monomial(alg, theta, 0) + order_z(alg);
    const OrderElement x2 = order_monomial(alg, ok_one(alg->ext), 1);
    const auto lifted = lift_codeword(code, encode(code, {Q.reduce(x1), Q.reduce(x2)}), spec.lift);
    ASSERT_EQ(lifted.components.size(), 3u);
    EXPECT_EQ(Q.reduce(lifted.components[2]), Q.reduce(x1 + x2));
    for (const auto& x : lifted.components) {
        const auto m = complex_matrix(x);
        const auto u = base_embed(alg->u);
        EXPECT_NEAR(std::abs(m[0] - embed_complex(x.z[0], 0)), 0, 1e-12);
        EXPECT_NEAR(std::abs(m[1] - u * embed_complex(x.z[1], 1)), 0, 1e-12);
        EXPECT_NEAR(std::abs(m[2] - embed_complex(x.z[1], 0)), 0, 1e-12);
        EXPECT_NEAR(std::abs(m[3] - embed_complex(x.z[0], 1)), 0, 1e-12);
    }
}

TEST(Lift, SectionProperty) {
    const CheckCount c = check_section(load_code_spec("golden_parity"), 100, 21);
    EXPECT_TRUE(c.ok());
    const CheckCount d = check_section(load_code_spec("golden_u_1pi_z"), 100, 22);
    EXPECT_TRUE(d.ok());
}

TEST(Lift, FirstCoefficientNeedsConstantWords) {
    const CodeSpec spec = load_code_spec("golden_first_coefficient");
    const OuterCode code = build_outer_code(spec);
    const QuotientRing& Q = *code.alphabet->ring;
    const std::vector<GElem> word{Q.z(), Q.zero(), Q.zero()};
    EXPECT_THROW(lift_codeword(code, word, LiftStrategy{LiftKind::FirstCoefficient, 0, 1}), Error);
}

TEST(Bound, GoldenParity) {
    const auto alg = load_algebra_spec("golden_u_i");
    const auto r = delta_lower_bound(alg, prime_ideal(alg, "1+i"), BoundFormula::Principal, 2, 1.0);
    EXPECT_DOUBLE_EQ(r.lower_bound, 4.0);
}

TEST(Bound, NilpotentU) {
    const auto alg = load_algebra_spec("golden_u_1pi");
    CodeIdeal J = prime_ideal(alg, "1+i");
    J.monomial = 1;
    EXPECT_DOUBLE_EQ(delta_lower_bound(alg, J, BoundFormula::NilpotentU, 2, 1.0).lower_bound, 2.0);
    EXPECT_DOUBLE_EQ(delta_lower_bound(alg, J, BoundFormula::NilpotentU, 2, 3.0).lower_bound, 6.0);
}

TEST(Bound, DegenerateCase) {
    const auto alg = load_algebra_spec("golden_u_1pi");
    CodeIdeal J = prime_ideal(alg, "1+i");
    J.monomial = 0;
    EXPECT_DOUBLE_EQ(delta_lower_bound(alg, J, BoundFormula::NilpotentU, 1, 5.0).lower_bound, 5.0);
}

TEST(Bound, FormulaMismatch) {
    const auto alg = load_algebra_spec("golden_u_i");
    try {
        delta_lower_bound(alg, prime_ideal(alg, "1+i", 2), BoundFormula::Principal, 2, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FormulaMismatch);
    }
    EXPECT_THROW(delta_lower_bound(alg, prime_ideal(alg, "1+i"), BoundFormula::General, 2, 1.0), Error);
}

TEST(Bound, GeneralUsesTheMinimumOverJ) {
    const auto alg = load_algebra_spec("golden_u_i");
    const CodeIdeal J = prime_ideal(alg, "1+i");
    const MinDetResult inJ = min_det_sq(alg, J, SearchOptions{});
    EXPECT_EQ(inJ.value, 4);
    EXPECT_DOUBLE_EQ(delta_lower_bound(alg, J, BoundFormula::General, 2, 1.0, inJ.value.get_d()).lower_bound, 4.0);
}

TEST(Search, MinimumDeterminantAtOne) {
    const auto alg = load_algebra_spec("golden_u_i");
    SearchOptions serial;
    serial.exec = Exec::Serial;
    const auto a = min_det_sq(alg, std::nullopt, serial);
    const auto b = min_det_sq(alg, std::nullopt, SearchOptions{});
    EXPECT_EQ(a.value, 1);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.argmin, b.argmin);
    EXPECT_EQ(a.argmin, order_one(alg));
}

TEST(Search, PrunedSearchMatchesBruteForce) {
    for (const char* name : {"golden_parity", "golden_u_1pi_z"}) {
        const CodeSpec spec = load_code_spec(name);
        SearchOptions opts;
        const auto fast = delta_min_search(spec.algebra, spec.ideal, 2, opts);
        const auto slow = delta_min_bruteforce(spec.algebra, spec.ideal, 2, opts);
        EXPECT_NEAR(fast.value, slow.value, 1e-9) << name;
    }
}

TEST(Search, SerialAndParallelAgree) {
    const CodeSpec spec = load_code_spec("golden_u_1pi_z");
    SearchOptions serial;
    serial.exec = Exec::Serial;
    const auto a = delta_min_search(spec.algebra, spec.ideal, 2, serial);
    const auto b = delta_min_search(spec.algebra, spec.ideal, 2, SearchOptions{});
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.argmin, b.argmin);
}

TEST(Search, EmptyCode) {
    const auto alg = load_algebra_spec("golden_u_i");
    try {
        delta_min_search(alg, prime_ideal(alg, "1+i"), 1, SearchOptions{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyCode);
    }
}

TEST(Search, BudgetExceeded) {
    const auto alg = load_algebra_spec("golden_u_i");
    SearchOptions opts;
    opts.budget = 1000;
    try {
        delta_min_search(alg, prime_ideal(alg, "1+i"), 3, opts);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SearchBudgetExceeded);
    }
}

TEST(CodeSpec, RejectsUnknownKeys) {
    Json j = Json::parse(builtin_code_json("golden_parity"));
    j["extra"] = true;
    EXPECT_THROW(parse_code_spec(j), Error);
}

TEST(CodeSpec, ParityNeedsKEqualsLMinusOne) {
    Json j = Json::parse(builtin_code_json("golden_parity"));
    j["outer"]["k"] = 1;
    EXPECT_THROW(build_outer_code(parse_code_spec(j)), Error);
}

TEST(CodeSpec, MonomialIdealNeedsNilpotentU) {
    Json j = Json::parse(builtin_code_json("golden_u_1pi_z"));
    j["algebra_spec"] = "golden_u_i";
    EXPECT_THROW(build_outer_code(parse_code_spec(j)), Error);
}

TEST(CodeSpec, ReportJson) {
    DeltaReport r;
    r.lower_bound = 4;
    r.formula = BoundFormula::Principal;
    r.search_min = 4;
    const Json j = delta_report_to_json(r);
    EXPECT_EQ(j["formula"], "principal");
    EXPECT_EQ(j["lower_bound"], 4.0);
    EXPECT_EQ(j["search_min"], 4.0);
}

#include "stc/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace stc {

OrderElement random_order_element(const AlgebraPtr& alg, std::mt19937_64& rng, int box) {
    std::uniform_int_distribution<int> coord(-box, box);
    const BaseRingKind kind = alg->base_kind();
    OrderElement x = order_zero(alg);
    for (auto& k : x.z)
        for (auto& c : k.c) c = BaseElement(kind, coord(rng), kind == BaseRingKind::Integers ? 0 : coord(rng));
    return x;
}

CheckCount check_embedding_law(const AlgebraPtr& alg, int pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CheckCount out{"embedding law M(xy) = M(y)M(x) on " + alg->name};
    for (int i = 0; i < pairs; ++i) {
        const OrderElement x = random_order_element(alg, rng, 3);
        const OrderElement y = random_order_element(alg, rng, 3);
        ++out.cases;
        if (!(matrix_embedding(x * y) == matrix_embedding(y) * matrix_embedding(x))) ++out.failures;
        if (!(matrix_embedding(x + y) == matrix_embedding(x) + matrix_embedding(y))) ++out.failures;
    }
    return out;
}

CheckCount check_crt_roundtrip(const AlgebraPtr& alg, const std::vector<IdealSpec>& factors, int count, std::uint64_t seed) {
    const CrtDecomposition crt = make_crt(alg, factors);
    const QuotientRing& W = *crt.whole;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, W.size() - 1);
    CheckCount out{"CRT round trip on " + alg->name};
    for (int i = 0; i < count; ++i) {
        const GElem x = W.from_index(pick(rng));
        const GElem y = W.from_index(pick(rng));
        ++out.cases;
        if (crt_recombine(crt, crt_decompose(crt, x)) != x) ++out.failures;
        const auto px = crt_decompose(crt, x);
        const auto py = crt_decompose(crt, y);
        const auto pxy = crt_decompose(crt, W.mul(x, y));
        for (std::size_t k = 0; k < crt.parts.size(); ++k)
            if (crt.parts[k]->mul(px[k], py[k]) != pxy[k]) ++out.failures;
    }
    return out;
}

CheckCount check_section(const CodeSpec& spec, int lifts, std::uint64_t seed) {
    const OuterCode code = build_outer_code(spec);
    const CodeAlphabet& A = *code.alphabet;
    const QuotientRing& Q = *A.ring;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, Q.size() - 1);
    CheckCount out{"section property pi(lift(c)) = c"};
    for (int i = 0; i < lifts; ++i) {
        std::vector<GElem> msg;
        for (int k = 0; k < code.message_length; ++k) msg.push_back(Q.from_index(pick(rng)));
        const auto word = encode(code, msg);
        const LiftStrategy strategy{i % 2 == 0 ? LiftKind::CanonicalZero : LiftKind::Randomized, seed + i, 2};
        ++out.cases;
        if (project_codeword(code, lift_codeword(code, word, strategy)) != word) ++out.failures;
    }
    return out;
}

CheckCount check_nilpotent_inverse(const AlgebraPtr& alg, const BaseElement& q) {
    const QuotientRing Q(alg, IdealSpec{q, 1});
    if (Q.u() != 0) throw Error(ErrorCode::WrongCase, "u is a unit modulo " + q.to_string());
    const ResidueRing& S = Q.residue();
    const int n = Q.degree();
    CheckCount out{"(1 + cz) inverse on " + alg->name + " mod " + q.to_string()};
    for (std::uint64_t idx = 0; idx < S.size(); ++idx) {
        const GElem cz = Q.mul(Q.monomial(S.from_index(idx), 0), Q.z());
        const GElem x = Q.add(Q.one(), cz);
        const GElem step = Q.neg(cz);
        GElem inv = Q.zero();
        GElem power = Q.one();
        for (int k = 0; k < n; ++k) {
            inv = Q.add(inv, power);
            power = Q.mul(power, step);
        }
        ++out.cases;
        if (!Q.is_zero(power) || Q.mul(x, inv) != Q.one() || Q.mul(inv, x) != Q.one()) ++out.failures;
    }
    return out;
}

CheckCount check_det_divisibility(const AlgebraPtr& alg, const BaseElement& alpha, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const BaseElement scale = base_pow(alpha, static_cast<unsigned>(alg->degree()));
    CheckCount out{"reduced_det(alpha x) = alpha^n reduced_det(x) on " + alg->name};
    for (int i = 0; i < count; ++i) {
        const OrderElement x = random_order_element(alg, rng, 2);
        ++out.cases;
        if (reduced_det(order_scale(alpha, x)) != scale * reduced_det(x)) ++out.failures;
    }
    return out;
}

bool same_ideals(const QuotientRing& Q, const std::vector<IdealDescriptor>& lattice, Exec exec) {
    std::vector<ElementSet> mine;
    for (const auto& d : lattice) mine.push_back(materialize_ideal(Q, d));
    std::sort(mine.begin(), mine.end());
    mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
    auto brute = brute_force_two_sided_ideals(Q, exec);
    std::sort(brute.begin(), brute.end());
    return mine == brute;
}

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            passed = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

IdealSpec ideal_of(const AlgebraPtr& alg, const std::string& alpha, unsigned s) {
    return IdealSpec{parse_base_element(alg->base_kind(), alpha), s};
}

IdentifyOptions verify_options(VerifyMode mode, Exec exec) {
    IdentifyOptions o;
    o.verify = true;
    o.verify_options.mode = mode;
    o.verify_options.exec = exec;
    return o;
}

void describe_verification(Outcome& o, const StructureReport& r) {
    o.detail << structure_case_name(r.kind) << ", " << r.target;
    if (r.verification) {
        const auto& v = *r.verification;
        o.detail << ", " << v.elements_checked << " elements, " << v.pairs_checked << " pairs, kernel rank " << v.kernel_rank << "/"
                 << v.expected_rank << ", |source| " << v.source_size << ", |target| " << v.target_size;
    }
}

bool verified(const StructureReport& r) { return r.verification && r.verification->verified && r.iso && r.iso->verified; }

void golden_q5(Outcome& o, Exec exec) {
    const auto alg = load_algebra_spec("golden_u_i");
    const auto I = ideal_of(alg, "1+i", 1);
    const auto r = identify_quotient(alg, I, verify_options(VerifyMode::Exhaustive, exec));
    describe_verification(o, r);
    o.require(r.kind == StructureCase::InertUnit, "case");
    o.require(r.target == "M_2(F_2)", "target");
    o.require(verified(r) && r.verification->mode == VerifyMode::Exhaustive, "verification");
    o.require(r.verification && r.verification->elements_checked == 16 && r.verification->pairs_checked == 256, "16 elements / 256 pairs");
    const QuotientRing Q(alg, I);
    o.require(r.ideal_lattice.size() == 2 && same_ideals(Q, r.ideal_lattice, exec), "ideal lattice {0, ring}");
}

void q7(Outcome& o, Exec exec) {
    const auto alg = load_algebra_spec("q7_cubic");
    auto opts = verify_options(VerifyMode::Sampled, exec);
    opts.verify_options.pairs = 10000;
    const auto r = identify_quotient(alg, ideal_of(alg, "2", 1), opts);
    describe_verification(o, r);
    o.require(r.kind == StructureCase::InertUnit && r.target == "M_3(F_4)", "target");
    o.require(verified(r) && r.verification->pairs_checked >= 10000, "sampled verification");
    o.require(r.verification && r.verification->kernel_rank == r.verification->expected_rank, "additive kernel");
    const mpz_class expected = mpz_class(1) << 18;
    o.require(r.cardinality == expected && r.verification && r.verification->source_size == expected &&
                  r.verification->target_size == expected,
              "cardinality 2^18");
}

void q15(Outcome& o, Exec exec) {
    const auto alg = load_algebra_spec("q15_quartic");
    const auto r = identify_quotient(alg, ideal_of(alg, "1+i", 1), verify_options(VerifyMode::Exhaustive, exec));
    describe_verification(o, r);
    o.require(r.kind == StructureCase::InertUnit && r.target == "M_4(F_2)", "target");
    o.require(verified(r) && r.verification->elements_checked == 65536 && r.verification->pairs_checked >= 100000, "exhaustive verification");
    o.require(r.verification && r.verification->kernel_rank == r.verification->expected_rank, "kernel rank");
}

void q52(Outcome& o, Exec exec) {
    const auto alg = load_algebra_spec("golden_u_1pi");
    const auto I = ideal_of(alg, "1+i", 1);
    const auto r = identify_quotient(alg, I, verify_options(VerifyMode::Exhaustive, exec));
    describe_verification(o, r);
    o.require(r.kind == StructureCase::InertNilpotent, "case");
    o.require(verified(r), "skew certificate");
    const QuotientRing Q(alg, I);
    std::vector<unsigned> powers;
    const IdealDescriptor* z1 = nullptr;
    o.detail << ", chain";
    for (const auto& d : r.ideal_lattice) {
        if (d.shape != IdealDescriptor::Shape::ZPower) continue;
        powers.push_back(d.power);
        o.detail << " " << d.name;
        if (d.power == 1) z1 = &d;
    }
    o.require(powers == std::vector<unsigned>{1, 2}, "chain <z>, <z^2>");
    o.require(z1 && z1->quotient == "F_4", "quotient by <z> is F_4");
    const auto field = residue_field_iso(Q.residue());
    o.require(field.field.size() == 4 && z1 && z1->cardinality * 4 == Q.cardinality(), "|Lambda/<z>| = 4 and a field");
    o.require(Q.size() == 16 && same_ideals(Q, r.ideal_lattice, exec), "chain equals brute force");
}

void golden_power(Outcome& o, Exec exec) {
    const auto alg = load_algebra_spec("golden_u_i");
    const auto I = ideal_of(alg, "1+i", 2);
    const QuotientRing Q(alg, I);
    const IsoCertificate cert = lift_matrix_iso_power(Q);
    o.require(!cert.matrix_units.empty() && check_matrix_units(Q, cert.matrix_units), "matrix units");
    const auto r = identify_quotient(alg, I, verify_options(VerifyMode::Exhaustive, exec));
    describe_verification(o, r);
    o.require(r.kind == StructureCase::InertUnitPower, "case");
    o.require(r.target == "M_2(Z[i]/(1+i)^2)", "target");
    o.require(verified(r) && r.verification->elements_checked == 256, "verification");
    o.require(r.cardinality == 256 && Q.size() == 256, "|ring| = 256");
    o.require(r.ideal_lattice.size() == 3 && same_ideals(Q, r.ideal_lattice, exec), "chain {0, q/q^2, ring} equals brute force");
}

void split_unit(Outcome& o, Exec exec) {
    const auto alg = load_algebra_spec("gauss_over_Q");
    const auto I = ideal_of(alg, "5", 1);
    const auto r = identify_quotient(alg, I, verify_options(VerifyMode::Exhaustive, exec));
    describe_verification(o, r);
    o.require(r.kind == StructureCase::SplitUnit && r.factorization.g == 2, "split, g = 2");
    o.require(r.target == "M_2(F_5)" && verified(r), "verified certificate to M_2(F_5)");
    o.require(r.verification && r.verification->kernel_rank == r.verification->expected_rank, "rank bijectivity");
    const QuotientRing Q(alg, I);
    o.require(Q.size() == 625 && r.ideal_lattice.size() == 2 && same_ideals(Q, r.ideal_lattice, exec), "lattice {0, ring} equals brute force");
}

void split_nilpotent(Outcome& o, Exec exec) {
    const auto alg = load_algebra_spec("gauss_over_Q_u5");
    const auto I = ideal_of(alg, "5", 1);
    const QuotientRing Q(alg, I);
    const FactorizationData fd = factor_prime(alg->ext, I.alpha);
    const auto ideals = enumerate_monomial_ideals(Q, fd);
    std::vector<IdealDescriptor> lattice;
    for (const auto& m : ideals) lattice.push_back(monomial_descriptor(Q, fd, m));
    o.detail << ideals.size() << " monomial ideals";
    o.require(Q.size() == 625 && same_ideals(Q, lattice, exec), "equals brute force");
    const int g = fd.g;
    const int n = Q.degree();
    auto element = [&](Monomial m) { return Q.monomial(fd.idempotents[m.first - 1], m.second); };
    for (const auto& m : ideals) {
        const ElementSet full = ideal_closure(Q, [&] {
            std::vector<GElem> gens;
            for (const auto& gpos : m.generators) gens.push_back(element(gpos));
            return gens;
        }());
        for (std::size_t drop = 0; drop < m.generators.size(); ++drop) {
            std::vector<GElem> rest;
            for (std::size_t k = 0; k < m.generators.size(); ++k)
                if (k != drop) rest.push_back(element(m.generators[k]));
            o.require(ideal_closure(Q, rest) != full, "minimal generating set");
        }
    }
    std::uint64_t pairs = 0;
    for (int i = 1; i <= g; ++i)
        for (int j = 0; j < n; ++j) {
            const ElementSet principal = ideal_closure(Q, {element({i, j})});
            for (int p = 1; p <= g; ++p)
                for (int q = 0; q < n; ++q) {
                    ++pairs;
                    const bool inside = set_contains(principal, Q.index(element({p, q})));
                    o.require(inside == stairwell_contains({i, j}, {p, q}, g, n), "stairwell membership");
                }
        }
    o.detail << ", " << pairs << " stairwell pairs";
}

void lemma(Outcome& o) {
    const LemmaTrials t = lemma_trials(10000, {2, 3, 4}, {1, 2, 3}, 20240601);
    o.detail << t.holds << "/" << t.trials << " hold, worst margin " << t.worst_margin << ", k=1 relative error " << t.single_max_rel_error;
    o.require(t.trials == 10000 && t.holds == t.trials, "no violations");
    o.require(t.single_max_rel_error <= 1e-12, "k=1 equality");
}

void delta_search(Outcome& o, const std::string& code_name, double expected_bound, Exec exec,
                  const std::function<bool(const std::vector<OrderElement>&)>& argmin_ok) {
    const CodeSpec spec = load_code_spec(code_name);
    const OuterCode code = build_outer_code(spec);
    const int d_H = hamming_distance(code);
    SearchOptions opts;
    opts.box = 1;
    opts.exec = exec;
    const MinDetResult m = min_det_sq(spec.algebra, std::nullopt, opts);
    const DeltaReport bound = delta_lower_bound(spec.algebra, spec.ideal, natural_formula(spec.ideal), d_H, m.value.get_d());
    const SearchResult s = delta_min_search(spec.algebra, spec.ideal, spec.length, opts);
    o.detail << "d_H " << d_H << ", min|det|^2 " << m.value << ", bound " << bound.lower_bound << ", search " << s.value << " at (";
    for (std::size_t i = 0; i < s.argmin.size(); ++i) o.detail << (i ? "; " : "") << s.argmin[i].to_string();
    o.detail << "), " << s.evaluations << " evaluations";
    o.require(m.value == 1, "min|det|^2 = 1");
    o.require(std::abs(bound.lower_bound - expected_bound) <= 1e-9, "bound");
    o.require(std::abs(s.value - expected_bound) <= 1e-6, "search minimum");
    o.require(argmin_ok(s.argmin), "argmin shape");
}

void parity_delta(Outcome& o, Exec exec) {
    delta_search(o, "golden_parity", 4.0, exec, [](const std::vector<OrderElement>& w) {
        return w.size() == 3 && w[1].is_zero() && w[0] == w[2] && base_norm(reduced_det(w[0])) == 1;
    });
}

void z_code_delta(Outcome& o, Exec exec) {
    delta_search(o, "golden_u_1pi_z", 2.0, exec, [](const std::vector<OrderElement>& w) {
        return w.size() == 3 && w[0].is_zero() && w[1].is_zero() && !w[2].is_zero() && w[2] == order_z(w[2].alg);
    });
}

void properties(Outcome& o) {
    std::vector<CheckCount> checks;
    const auto golden = load_algebra_spec("golden_u_i");
    checks.push_back(check_embedding_law(golden, 1000, 11));
    checks.push_back(check_crt_roundtrip(golden, {ideal_of(golden, "1+i", 1), ideal_of(golden, "3", 1)}, 500, 12));
    checks.push_back(check_section(load_code_spec("golden_parity"), 100, 13));
    checks.push_back(check_nilpotent_inverse(load_algebra_spec("golden_u_1pi"), parse_base_element(BaseRingKind::Gaussian, "1+i")));
    checks.push_back(check_nilpotent_inverse(load_algebra_spec("gauss_over_Q_u5"), parse_base_element(BaseRingKind::Integers, "5")));
    for (const auto& name : builtin_algebra_names()) {
        const auto alg = load_algebra_spec(name);
        const BaseElement alpha = alg->base_kind() == BaseRingKind::Integers ? BaseElement(BaseRingKind::Integers, 3)
                                                                             : base_one(alg->base_kind()) + base_generator(alg->base_kind());
        checks.push_back(check_det_divisibility(alg, alpha, 50, 14));
    }
    std::uint64_t cases = 0;
    for (const auto& c : checks) {
        cases += c.cases;
        o.require(c.ok(), c.name);
    }
    o.detail << checks.size() << " suites, " << cases << " cases";
}

struct Criterion {
    const char* title;
    double limit;
    std::function<void(Outcome&, Exec)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {"golden u=i mod (1+i) is M_2(F_2)", 1, golden_q5},
        {"q7 mod 2 is M_3(F_4)", 30, q7},
        {"q15 mod (1+i) is M_4(F_2)", 60, q15},
        {"golden u=1+i mod (1+i): skew quotient and <z> chain", 1, q52},
        {"golden u=i mod (1+i)^2: matrix units and prime-power chain", 5, golden_power},
        {"Q(i)/Q, u=-1 mod 5: split unit", 5, split_unit},
        {"Q(i)/Q, u=5 mod 5: monomial ideals and stairwells", 10, split_nilpotent},
        {"determinant inequality, 10^4 trials", 120, [](Outcome& o, Exec) { lemma(o); }},
        {"parity code over golden u=i: Delta_min = 4", 120, parity_delta},
        {"<z>-code over golden u=1+i: Delta_min = 2", 120, z_code_delta},
        {"property suites", 120, [](Outcome& o, Exec) { properties(o); }},
    };
    return all;
}

}  // namespace

CriterionResult run_criterion(int id, Exec exec) {
    if (id < 1 || id > kCriterionCount) throw Error(ErrorCode::Usage, "no acceptance criterion " + std::to_string(id));
    const Criterion& c = criteria()[id - 1];
    CriterionResult r;
    r.id = id;
    r.title = c.title;
    r.limit_seconds = c.limit;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        c.run(o, exec);
    } catch (const std::exception& e) {
        o.passed = false;
        o.detail << "[exception: " << e.what() << "]";
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.limit_seconds) {
        o.passed = false;
        o.detail << " [over the " << r.limit_seconds << " s limit]";
    }
    r.passed = o.passed;
    r.detail = o.detail.str();
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id)
        if (opts.only.empty() || opts.only.count(id)) out.push_back(run_criterion(id, opts.exec));
    return out;
}

std::string format_criterion(const CriterionResult& r) {
    char head[64];
    std::snprintf(head, sizeof head, "%s %2d  ", r.passed ? "PASS" : "FAIL", r.id);
    char time[32];
    std::snprintf(time, sizeof time, "  (%.2f s)  ", r.seconds);
    return head + r.title + time + r.detail;
}

}  // namespace stc

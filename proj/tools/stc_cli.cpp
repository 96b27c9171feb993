// Command-line front end: algebras, quotients, ideals, coset codes and the acceptance suite.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stc/acceptance.hpp"
#include "stc/parallel.hpp"

using namespace stc;

namespace {

struct Global {
    std::string output = "json";
    int threads = 0;
    std::uint64_t seed = 1;
};

Json read_json_arg(const std::string& text) {
    std::string body = text;
    if (!text.empty() && text[0] != '[' && text[0] != '{') {
        std::ifstream in(text);
        if (!in) throw Error(ErrorCode::InvalidSpec, "cannot open '" + text + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        body = buf.str();
    }
    try {
        return Json::parse(body);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidSpec, std::string("malformed JSON: ") + e.what());
    }
}

// "alpha" or "alpha:s".
IdealSpec parse_ideal(const AlgebraPtr& alg, const std::string& text, unsigned default_s) {
    const auto colon = text.find(':');
    IdealSpec I;
    I.alpha = parse_base_element(alg->base_kind(), text.substr(0, colon));
    I.s = default_s;
    if (colon != std::string::npos) {
        try {
            I.s = static_cast<unsigned>(std::stoul(text.substr(colon + 1)));
        } catch (const std::exception&) {
            throw Error(ErrorCode::Usage, "bad exponent in ideal '" + text + "'");
        }
    }
    if (I.s == 0) throw Error(ErrorCode::Usage, "ideal exponent must be positive");
    return I;
}

void emit(const Global& g, const Json& j, const std::string& human) {
    if (g.output == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << human;
    }
}

Json algebra_json(const AlgebraPtr& alg) {
    Json j;
    j["name"] = alg->name;
    j["base_ring"] = alg->ext->base.name();
    j["extension"] = alg->ext->name;
    j["degree"] = alg->degree();
    j["basis"] = alg->ext->basis;
    j["u"] = base_to_json(alg->u);
    j["claims_division"] = alg->claims_division;
    j["reduced_det_z"] = base_to_json(reduced_det(order_z(alg)));
    return j;
}

int cmd_describe(const Global& g, const std::string& algebra) {
    if (algebra.empty()) {
        Json j;
        j["algebras"] = builtin_algebra_names();
        j["codes"] = builtin_code_names();
        std::ostringstream h;
        h << "algebras:";
        for (const auto& n : builtin_algebra_names()) h << " " << n;
        h << "\ncodes:";
        for (const auto& n : builtin_code_names()) h << " " << n;
        h << "\n";
        emit(g, j, h.str());
        return 0;
    }
    const auto alg = load_algebra_spec(algebra);
    const Json j = algebra_json(alg);
    std::ostringstream h;
    h << alg->name << ": (" << alg->ext->name << ", sigma, " << alg->u.to_string() << ") over " << alg->ext->base.name() << ", degree "
      << alg->degree() << "\n";
    emit(g, j, h.str());
    return 0;
}

int cmd_reduce(const Global& g, const std::string& algebra, const std::vector<std::string>& ideals, unsigned s, const std::string& element) {
    const auto alg = load_algebra_spec(algebra);
    const OrderElement x = order_from_json(alg, read_json_arg(element));
    std::vector<IdealSpec> factors;
    for (const auto& t : ideals) factors.push_back(parse_ideal(alg, t, s));
    Json j;
    j["element"] = order_to_json(x);
    std::ostringstream h;
    if (factors.size() == 1) {
        const QuotientRing Q(alg, factors[0]);
        const GElem r = Q.reduce(x);
        j["ideal"] = factors[0].to_string();
        j["residue"] = Q.to_string(r);
        j["index"] = Q.size() > 0 ? Json(Q.index(r)) : Json(nullptr);
        h << x.to_string() << " mod " << factors[0].to_string() << " = " << Q.to_string(r) << "\n";
    } else {
        const CrtDecomposition crt = make_crt(alg, factors);
        const auto parts = crt_decompose(crt, crt.whole->reduce(x));
        Json comps = Json::array();
        for (std::size_t k = 0; k < parts.size(); ++k) {
            comps.push_back({{"ideal", factors[k].to_string()}, {"residue", crt.parts[k]->to_string(parts[k])}});
            h << "mod " << factors[k].to_string() << ": " << crt.parts[k]->to_string(parts[k]) << "\n";
        }
        j["components"] = comps;
    }
    emit(g, j, h.str());
    return 0;
}

int cmd_structure(const Global& g, const std::string& algebra, const std::string& ideal, unsigned s, bool verify, const std::string& mode,
                  std::uint64_t pairs) {
    const auto alg = load_algebra_spec(algebra);
    const IdealSpec I = parse_ideal(alg, ideal, s);
    IdentifyOptions opts;
    opts.verify = verify;
    if (mode != "exhaustive" && mode != "sampled") throw Error(ErrorCode::Usage, "mode is exhaustive or sampled");
    opts.verify_options.mode = mode == "exhaustive" ? VerifyMode::Exhaustive : VerifyMode::Sampled;
    opts.verify_options.pairs = pairs;
    opts.verify_options.seed = g.seed;
    const StructureReport r = identify_quotient(alg, I, opts);
    const QuotientRing Q(alg, I);
    std::ostringstream h;
    h << r.algebra << " mod " << I.to_string() << ": " << structure_case_name(r.kind) << ", " << r.target << ", |ring| " << r.cardinality;
    if (r.verification) h << (r.verification->verified ? ", verified" : ", not verified");
    h << "\n";
    emit(g, report_to_json(r, Q), h.str());
    return 0;
}

int cmd_ideals(const Global& g, const std::string& algebra, const std::string& ideal, unsigned s, bool brute) {
    const auto alg = load_algebra_spec(algebra);
    const IdealSpec I = parse_ideal(alg, ideal, s);
    const StructureReport r = identify_quotient(alg, I);
    const QuotientRing Q(alg, I);
    Json j;
    j["algebra"] = r.algebra;
    j["ideal"] = I.to_string();
    j["case"] = structure_case_name(r.kind);
    Json list = Json::array();
    std::ostringstream h;
    for (const auto& d : r.ideal_lattice) {
        list.push_back(ideal_to_json(Q, d));
        h << d.name << "  (quotient " << d.quotient << ", " << d.cardinality << " elements)\n";
    }
    j["ideals"] = list;
    if (brute) {
        const bool same = same_ideals(Q, r.ideal_lattice);
        j["matches_brute_force"] = same;
        h << (same ? "matches" : "differs from") << " brute-force enumeration\n";
    }
    emit(g, j, h.str());
    return 0;
}

std::vector<GElem> message_from_json(const CodeSpec& spec, const OuterCode& code, const Json& m) {
    const QuotientRing& Q = *code.alphabet->ring;
    if (!m.is_array()) throw Error(ErrorCode::InvalidSpec, "message must be a JSON array");
    std::vector<GElem> out;
    for (const auto& e : m) out.push_back(Q.reduce(order_from_json(spec.algebra, e)));
    return out;
}

int cmd_encode(const Global& g, const std::string& code_path, const std::string& message, bool random) {
    const CodeSpec spec = load_code_spec(code_path);
    const OuterCode code = build_outer_code(spec);
    Json j;
    j["outer"] = outer_kind_name(code.kind);
    j["length"] = code.length;
    std::ostringstream h;
    if (code.kind == OuterKind::ReedSolomon) {
        std::vector<FiniteField::Elt> msg;
        if (random) {
            std::mt19937_64 rng(g.seed);
            for (int i = 0; i < code.message_length; ++i) msg.push_back(static_cast<FiniteField::Elt>(rng() % code.rs->field().size()));
        } else {
            msg = read_json_arg(message).get<std::vector<FiniteField::Elt>>();
        }
        const auto word = encode_symbols(code, msg);
        j["message"] = msg;
        j["codeword"] = word;
        for (auto w : word) h << code.rs->field().to_string(w) << " ";
        h << "\n";
        emit(g, j, h.str());
        return 0;
    }
    const QuotientRing& Q = *code.alphabet->ring;
    std::vector<GElem> msg;
    if (random) {
        std::mt19937_64 rng(g.seed);
        for (int i = 0; i < code.message_length; ++i) msg.push_back(Q.from_index(rng() % Q.size()));
        if (code.kind == OuterKind::FirstCoefficient) {
            for (int i = 0; i < code.rs->dimension(); ++i) {
                GElem x = Q.zero();
                Q.set_coeff(x, 0, Q.coeff(msg[i], 0));
                msg[i] = x;
            }
        }
    } else {
        msg = message_from_json(spec, code, read_json_arg(message));
    }
    const auto word = encode(code, msg);
    const CosetCodeword lifted = lift_codeword(code, word, spec.lift);
    Json outer = Json::array();
    Json lifts = Json::array();
    for (std::size_t i = 0; i < word.size(); ++i) {
        outer.push_back(Q.to_string(word[i]));
        lifts.push_back(order_to_json(lifted.components[i]));
        h << Q.to_string(word[i]) << "  ->  " << lifted.components[i].to_string() << "\n";
    }
    j["lift_strategy"] = lift_kind_name(spec.lift.kind);
    j["outer_codeword"] = outer;
    j["lifted"] = lifts;
    j["weight"] = word_weight(code, word);
    j["section_ok"] = project_codeword(code, lifted) == word;
    emit(g, j, h.str());
    return 0;
}

int cmd_deltamin(const Global& g, const std::string& code_path, int box, std::uint64_t budget, bool serial, bool bound_only,
                 const std::string& formula) {
    const CodeSpec spec = load_code_spec(code_path);
    const OuterCode code = build_outer_code(spec);
    const int d_H = hamming_distance(code);
    SearchOptions opts;
    opts.box = box >= 0 ? box : spec.box_bound;
    opts.budget = budget;
    opts.exec = serial ? Exec::Serial : Exec::Parallel;
    const MinDetResult m = min_det_sq(spec.algebra, std::nullopt, opts);
    const BoundFormula f = formula.empty() ? natural_formula(spec.ideal) : parse_bound_formula(formula);
    std::optional<double> in_J;
    if (f == BoundFormula::General) in_J = min_det_sq(spec.algebra, spec.ideal, opts).value.get_d();
    DeltaReport rep = delta_lower_bound(spec.algebra, spec.ideal, f, d_H, m.value.get_d(), in_J);
    if (!bound_only) {
        if (code.kind != OuterKind::Parity) throw Error(ErrorCode::WrongCase, "the codeword search covers parity codes");
        const SearchResult s = delta_min_search(spec.algebra, spec.ideal, spec.length, opts);
        rep.search_min = s.value;
        rep.argmin = s.argmin;
        rep.evaluations = s.evaluations;
    }
    Json j = delta_report_to_json(rep);
    j["code"] = {{"outer", outer_kind_name(code.kind)}, {"L", code.length}, {"ideal", spec.ideal.to_string()}};
    j["hamming_distance"] = d_H;
    j["min_det_sq"] = m.value.get_str();
    j["min_det_argmin"] = order_to_json(m.argmin);
    if (in_J) j["min_det_sq_in_J"] = *in_J;
    j["box_bound"] = opts.box;
    std::ostringstream h;
    h << "d_H " << d_H << ", min|det|^2 " << m.value << ", bound (" << bound_formula_name(f) << ") " << rep.lower_bound;
    if (rep.search_min) h << ", search " << *rep.search_min;
    h << "\n";
    emit(g, j, h.str());
    return 0;
}

int cmd_check_lemma(const Global& g, int trials, const std::vector<int>& sizes, const std::vector<int>& counts) {
    const LemmaTrials t = lemma_trials(trials, sizes, counts, g.seed);
    Json j;
    j["trials"] = t.trials;
    j["holds"] = t.holds;
    j["worst_margin"] = t.worst_margin;
    j["single_max_rel_error"] = t.single_max_rel_error;
    std::ostringstream h;
    h << t.holds << "/" << t.trials << " hold\n";
    emit(g, j, h.str());
    return t.holds == t.trials ? 0 : 2;
}

int cmd_det(const Global& g, const std::string& algebra, const std::string& element) {
    const auto alg = load_algebra_spec(algebra);
    const OrderElement x = order_from_json(alg, read_json_arg(element));
    const BaseElement d = reduced_det(x);
    Json j;
    j["element"] = order_to_json(x);
    j["reduced_det"] = base_to_json(d);
    j["abs_det_sq"] = base_norm(d).get_str();
    std::ostringstream h;
    h << "reduced_det = " << d.to_string() << ", |det|^2 = " << base_norm(d) << "\n";
    emit(g, j, h.str());
    return 0;
}

int cmd_selftest(const Global& g, const std::vector<int>& only) {
    AcceptanceOptions opts;
    opts.only.insert(only.begin(), only.end());
    bool ok = true;
    Json list = Json::array();
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (!opts.only.empty() && !opts.only.count(id)) continue;
        const CriterionResult r = run_criterion(id, opts.exec);
        ok = ok && r.passed;
        if (g.output == "json") {
            list.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
        } else {
            std::cout << format_criterion(r) << std::endl;
        }
    }
    if (g.output == "json") std::cout << Json{{"criteria", list}, {"passed", ok}}.dump(2) << "\n";
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclic-algebra orders, their quotients and coset space-time codes"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--output", g.output, "Report format")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--threads", g.threads, "OpenMP threads (0 = all)");
    app.add_option("--seed", g.seed, "Random seed");

    std::string algebra, ideal = "", element, code, message, mode = "exhaustive", formula;
    std::vector<std::string> ideals;
    unsigned s = 1;
    bool verify = false, brute = false, random = false, serial = false, bound_only = false;
    std::uint64_t pairs = 0, budget = 100000000;
    int box = -1, trials = 1000;
    std::vector<int> sizes{2, 3, 4}, counts{1, 2, 3}, only;

    auto* describe = app.add_subcommand("describe", "Describe an algebra, or list the shipped algebras and codes");
    describe->add_option("--algebra", algebra, "Algebra spec file or shipped name");

    auto* reduce = app.add_subcommand("reduce", "Reduce an element of Lambda modulo an ideal (several ideals: CRT components)");
    reduce->add_option("--algebra", algebra)->required();
    reduce->add_option("--ideal", ideals, "alpha or alpha:s; repeat for a composite ideal")->required();
    reduce->add_option("--s", s, "Default exponent");
    reduce->add_option("--element", element, "Element JSON or file")->required();

    auto* structure = app.add_subcommand("structure", "Identify Lambda/q^s Lambda");
    structure->add_option("--algebra", algebra)->required();
    structure->add_option("--ideal", ideal, "alpha or alpha:s")->required();
    structure->add_option("--s", s);
    structure->add_flag("--verify", verify, "Verify the certificate");
    structure->add_option("--mode", mode, "exhaustive or sampled");
    structure->add_option("--pairs", pairs, "Random product pairs to check");

    auto* ideals_cmd = app.add_subcommand("ideals", "Two-sided ideals of Lambda/q^s Lambda");
    ideals_cmd->add_option("--algebra", algebra)->required();
    ideals_cmd->add_option("--ideal", ideal)->required();
    ideals_cmd->add_option("--s", s);
    ideals_cmd->add_flag("--brute-force", brute, "Compare with brute-force enumeration");

    auto* encode_cmd = app.add_subcommand("encode", "Encode a message and lift the codeword to Lambda^L");
    encode_cmd->add_option("--code", code, "Code spec file or shipped name")->required();
    auto* msg_opt = encode_cmd->add_option("--message", message, "Message JSON or file");
    auto* rnd_opt = encode_cmd->add_flag("--random", random, "Random message from --seed");
    msg_opt->excludes(rnd_opt);

    auto* deltamin = app.add_subcommand("deltamin", "Lower bound and search for Delta_min");
    deltamin->add_option("--code", code)->required();
    deltamin->add_option("--box", box, "Coordinate box bound (default from the code spec)");
    deltamin->add_option("--budget", budget, "Determinant evaluation budget");
    deltamin->add_option("--formula", formula, "general, principal, principal_power or nilpotent_u");
    deltamin->add_flag("--serial", serial, "Use the serial kernels");
    deltamin->add_flag("--bound-only", bound_only, "Skip the codeword search");

    auto* lemma = app.add_subcommand("check-lemma", "Random trials of |det(sum X X*)| >= (sum |det X|)^2");
    lemma->add_option("--trials", trials);
    lemma->add_option("--n", sizes, "Matrix sizes");
    lemma->add_option("--k", counts, "Numbers of matrices");

    auto* det = app.add_subcommand("det", "Reduced determinant of an element");
    det->add_option("--algebra", algebra)->required();
    det->add_option("--element", element)->required();

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    selftest->add_option("--only", only, "Criterion numbers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (g.output.empty()) g.output = "json";
    if (*selftest && !app.get_option("--output")->count()) g.output = "human";
    set_thread_count(g.threads);

    try {
        if (*describe) return cmd_describe(g, algebra);
        if (*reduce) return cmd_reduce(g, algebra, ideals, s, element);
        if (*structure) return cmd_structure(g, algebra, ideal, s, verify, mode, pairs);
        if (*ideals_cmd) return cmd_ideals(g, algebra, ideal, s, brute);
        if (*encode_cmd) {
            if (message.empty() && !random) throw Error(ErrorCode::Usage, "encode needs --message or --random");
            return cmd_encode(g, code, message, random);
        }
        if (*deltamin) return cmd_deltamin(g, code, box, budget, serial, bound_only, formula);
        if (*lemma) return cmd_check_lemma(g, trials, sizes, counts);
        if (*det) return cmd_det(g, algebra, element);
        if (*selftest) return cmd_selftest(g, only);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        if (g.output == "json") std::cout << Json{{"error", error_code_name(e.code())}, {"message", e.what()}}.dump(2) << "\n";
        return e.code() == ErrorCode::VerificationFailed ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 1;
}

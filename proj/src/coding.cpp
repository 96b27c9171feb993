#include "stc/coding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <omp.h>

namespace stc {

// ------------------------------------------------------------------ lemma

LemmaReport det_inequality_check(int n, const std::vector<CMatrix>& matrices) {
    using Matrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
    if (matrices.empty()) throw Error(ErrorCode::InvalidSpec, "no matrices");
    Matrix sum = Matrix::Zero(n, n);
    long double det_sum = 0;
    for (const auto& m : matrices) {
        if (static_cast<int>(m.size()) != n * n) throw Error(ErrorCode::InvalidSpec, "matrix is not " + std::to_string(n) + "x" + std::to_string(n));
        Matrix X(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) X(r, c) = std::complex<long double>(m[r * n + c].real(), m[r * n + c].imag());
        const long double d = std::abs(X.partialPivLu().determinant());
        if (d <= 1e-12L) throw Error(ErrorCode::SingularInput, "matrix is numerically singular");
        det_sum += d;
        sum += X * X.adjoint();
    }
    LemmaReport rep;
    rep.lhs = static_cast<double>(std::abs(sum.partialPivLu().determinant()));
    rep.rhs = static_cast<double>(det_sum * det_sum);
    rep.holds = rep.lhs >= rep.rhs - 1e-9 * std::max(1.0, rep.rhs);
    return rep;
}

LemmaTrials lemma_trials(int trials, const std::vector<int>& sizes, const std::vector<int>& counts, std::uint64_t seed) {
    if (sizes.empty() || counts.empty()) throw Error(ErrorCode::InvalidSpec, "no sizes or counts");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    LemmaTrials out;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const int n = sizes[t % sizes.size()];
        const int k = counts[(t / sizes.size()) % counts.size()];
        std::vector<CMatrix> ms(k, CMatrix(n * n));
        for (auto& m : ms)
            for (auto& v : m) v = {normal(rng), normal(rng)};
        LemmaReport r;
        try {
            r = det_inequality_check(n, ms);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularInput) throw;
            --t;
            continue;
        }
        ++out.trials;
        if (r.holds) ++out.holds;
        out.worst_margin = std::min(out.worst_margin, (r.lhs - r.rhs) / std::max(1.0, r.rhs));
        if (k == 1) out.single_max_rel_error = std::max(out.single_max_rel_error, std::abs(r.lhs - r.rhs) / r.rhs);
    }
    return out;
}

// -------------------------------------------------------------- alphabets

std::string CodeIdeal::to_string() const {
    if (monomial) return "<z^" + std::to_string(*monomial) + "> + (" + prime.alpha.to_string() + ")Lambda";
    return "(" + prime.alpha.to_string() + ")^" + std::to_string(prime.s) + "Lambda";
}

GElem CodeAlphabet::project(const GElem& x) const {
    GElem out = x;
    const int n = ring->degree();
    for (int t = zdeg; t < n; ++t) ring->set_coeff(out, t, SElem{});
    return out;
}

mpz_class CodeAlphabet::size() const {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), ring->base().size(), static_cast<unsigned long>(ring->degree() * zdeg));
    return out;
}

GElem CodeAlphabet::from_index(std::uint64_t idx) const {
    if (size() > (std::uint64_t{1} << 20)) throw Error(ErrorCode::TooLargeToEnumerate, "alphabet has more than 2^20 symbols");
    const std::uint64_t r = ring->base().size();
    GElem out{};
    for (int i = 0; i < ring->degree() * zdeg; ++i) {
        out[i] = static_cast<Elt>(idx % r);
        idx /= r;
    }
    return out;
}

CodeAlphabet make_alphabet(const AlgebraPtr& alg, const CodeIdeal& J) {
    CodeAlphabet a;
    a.ring = std::make_shared<const QuotientRing>(alg, J.prime);
    const int n = alg->degree();
    if (J.monomial) {
        if (J.prime.s != 1) throw Error(ErrorCode::InvalidSpec, "monomial code ideals need s = 1");
        if (a.ring->u() != 0) throw Error(ErrorCode::WrongCase, "<z^j> + qLambda is the whole ring unless u lies in q");
        if (*J.monomial < 0 || *J.monomial > n) throw Error(ErrorCode::InvalidSpec, "monomial exponent out of range");
        a.zdeg = *J.monomial;
    } else {
        a.zdeg = n;
    }
    return a;
}

// ----------------------------------------------------------- outer codes

ReedSolomonCode::ReedSolomonCode(FiniteField field, int length, int dimension)
    : field_(std::move(field)), length_(length), dimension_(dimension) {
    if (length < 1 || static_cast<std::uint64_t>(length) > field_.size()) throw Error(ErrorCode::InvalidSpec, "Reed-Solomon length exceeds the field size");
    if (dimension < 1 || dimension > length) throw Error(ErrorCode::InvalidSpec, "Reed-Solomon dimension out of range");
    points_.push_back(0);
    for (int i = 1; i < length; ++i) points_.push_back(field_.generator_power(static_cast<std::uint64_t>(i - 1)));
}

std::vector<FiniteField::Elt> ReedSolomonCode::encode(const std::vector<FiniteField::Elt>& message) const {
    if (static_cast<int>(message.size()) != dimension_) throw Error(ErrorCode::BadMessageLength, "Reed-Solomon message needs " + std::to_string(dimension_) + " symbols");
    std::vector<FiniteField::Elt> out;
    for (auto p : points_) {
        FiniteField::Elt acc = 0;
        for (auto it = message.rbegin(); it != message.rend(); ++it) acc = field_.add(field_.mul(acc, p), *it);
        out.push_back(acc);
    }
    return out;
}

std::string outer_kind_name(OuterKind k) {
    switch (k) {
        case OuterKind::Parity: return "parity";
        case OuterKind::ReedSolomon: return "reed_solomon";
        case OuterKind::FirstCoefficient: return "first_coefficient";
    }
    return "unknown";
}

OuterKind parse_outer_kind(const std::string& text) {
    for (auto k : {OuterKind::Parity, OuterKind::ReedSolomon, OuterKind::FirstCoefficient})
        if (outer_kind_name(k) == text) return k;
    throw Error(ErrorCode::InvalidSpec, "unknown outer code kind '" + text + "'");
}

OuterCode make_parity_code(const CodeAlphabet& alphabet, int length) {
    if (length < 1) throw Error(ErrorCode::InvalidSpec, "code length must be positive");
    OuterCode c;
    c.kind = OuterKind::Parity;
    c.length = length;
    c.message_length = length - 1;
    c.alphabet = alphabet;
    return c;
}

OuterCode make_reed_solomon_code(const FiniteField& field, int length, int dimension) {
    OuterCode c;
    c.kind = OuterKind::ReedSolomon;
    c.length = length;
    c.message_length = dimension;
    c.rs.emplace(field, length, dimension);
    return c;
}

OuterCode make_first_coefficient_code(const CodeAlphabet& alphabet, int length, int dimension) {
    if (alphabet.zdeg != alphabet.ring->degree() || !alphabet.ring->ideal() || alphabet.ring->ideal()->s != 1) {
        throw Error(ErrorCode::WrongCase, "first-coefficient codes live over Lambda/qLambda");
    }
    OuterCode c;
    c.kind = OuterKind::FirstCoefficient;
    c.length = length;
    c.message_length = dimension + length;
    c.alphabet = alphabet;
    c.field_iso = residue_field_iso(alphabet.ring->residue());
    c.rs.emplace(c.field_iso->field, length, dimension);
    return c;
}

std::vector<GElem> encode(const OuterCode& code, const std::vector<GElem>& message) {
    if (code.kind == OuterKind::ReedSolomon) throw Error(ErrorCode::WrongCase, "Reed-Solomon messages are field symbols");
    if (static_cast<int>(message.size()) != code.message_length) {
        throw Error(ErrorCode::BadMessageLength, "message needs " + std::to_string(code.message_length) + " symbols");
    }
    const CodeAlphabet& A = *code.alphabet;
    const QuotientRing& Q = *A.ring;
    std::vector<GElem> out;
    if (code.kind == OuterKind::Parity) {
        GElem sum = Q.zero();
        for (const auto& m : message) {
            out.push_back(A.project(m));
            sum = Q.add(sum, out.back());
        }
        out.push_back(sum);
        return out;
    }
    const ResidueRing& S = Q.residue();
    const ResidueFieldIso& iso = *code.field_iso;
    const int k = code.rs->dimension();
    std::vector<FiniteField::Elt> inner;
    for (int l = 0; l < k; ++l) inner.push_back(iso.to_field[S.index(Q.coeff(message[l], 0))]);
    const auto b = code.rs->encode(inner);
    for (int i = 0; i < code.length; ++i) {
        GElem w = message[k + i];
        Q.set_coeff(w, 0, S.from_index(iso.from_field[b[i]]));
        out.push_back(w);
    }
    return out;
}

std::vector<FiniteField::Elt> encode_symbols(const OuterCode& code, const std::vector<FiniteField::Elt>& message) {
    if (code.kind != OuterKind::ReedSolomon) throw Error(ErrorCode::WrongCase, "field-symbol messages need a Reed-Solomon code");
    return code.rs->encode(message);
}

int word_weight(const OuterCode& code, const std::vector<GElem>& word) {
    int w = 0;
    for (const auto& x : word) w += code.alphabet->is_zero(x) ? 0 : 1;
    return w;
}

namespace {

constexpr std::uint64_t kEnumerateLimit = std::uint64_t{1} << 20;

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (base != 0 && out > kEnumerateLimit / base + 1) return kEnumerateLimit + 1;
        out *= base;
    }
    return out;
}

}  // namespace

int hamming_distance(const OuterCode& code, HammingMode mode) {
    if (mode == HammingMode::Formula) {
        switch (code.kind) {
            case OuterKind::Parity:
                if (code.length < 2) throw Error(ErrorCode::EmptyCode, "a parity code of length 1 is {0}");
                return 2;
            case OuterKind::ReedSolomon: return code.rs->length() - code.rs->dimension() + 1;
            case OuterKind::FirstCoefficient:
                return code.alphabet->ring->degree() > 1 ? 1 : code.rs->length() - code.rs->dimension() + 1;
        }
    }
    int best = std::numeric_limits<int>::max();
    if (code.kind == OuterKind::ReedSolomon) {
        const std::uint64_t q = code.rs->field().size();
        const std::uint64_t count = checked_pow(q, static_cast<std::uint64_t>(code.rs->dimension()));
        if (count > kEnumerateLimit) throw Error(ErrorCode::TooLargeToEnumerate, "more than 2^20 codewords");
        for (std::uint64_t idx = 1; idx < count; ++idx) {
            std::vector<FiniteField::Elt> m;
            std::uint64_t rest = idx;
            for (int l = 0; l < code.rs->dimension(); ++l) {
                m.push_back(static_cast<FiniteField::Elt>(rest % q));
                rest /= q;
            }
            const auto w = code.rs->encode(m);
            best = std::min(best, static_cast<int>(std::count_if(w.begin(), w.end(), [](auto v) { return v != 0; })));
        }
    } else {
        const CodeAlphabet& A = *code.alphabet;
        const QuotientRing& Q = *A.ring;
        std::vector<std::uint64_t> radices;
        if (code.kind == OuterKind::Parity) {
            if (A.size() > kEnumerateLimit) throw Error(ErrorCode::TooLargeToEnumerate, "more than 2^20 codewords");
            radices.assign(code.length - 1, A.size().get_ui());
        } else {
            const std::uint64_t kbar = Q.residue().size();
            const std::uint64_t upper = checked_pow(Q.base().size(), static_cast<std::uint64_t>(Q.degree() * (Q.degree() - 1)));
            radices.assign(code.rs->dimension(), kbar);
            radices.insert(radices.end(), code.length, upper);
        }
        std::uint64_t count = 1;
        for (auto r : radices) {
            count = r == 0 ? 0 : count * r;
            if (r > kEnumerateLimit || count > kEnumerateLimit) throw Error(ErrorCode::TooLargeToEnumerate, "more than 2^20 codewords");
        }
        const int n = Q.degree();
        for (std::uint64_t idx = 1; idx < count; ++idx) {
            std::uint64_t rest = idx;
            std::vector<GElem> msg;
            for (std::size_t l = 0; l < radices.size(); ++l) {
                const std::uint64_t digit = rest % radices[l];
                rest /= radices[l];
                if (code.kind == OuterKind::Parity) {
                    msg.push_back(A.from_index(digit));
                } else if (static_cast<int>(l) < code.rs->dimension()) {
                    msg.push_back(Q.monomial(Q.residue().from_index(digit), 0));
                } else {
                    GElem x{};
                    std::uint64_t d = digit;
                    for (int i = n; i < n * n; ++i) {
                        x[i] = static_cast<Elt>(d % Q.base().size());
                        d /= Q.base().size();
                    }
                    msg.push_back(x);
                }
            }
            const auto word = encode(code, msg);
            const int w = word_weight(code, word);
            if (w > 0) best = std::min(best, w);
        }
    }
    if (best == std::numeric_limits<int>::max()) throw Error(ErrorCode::EmptyCode, "code has no nonzero codeword");
    return best;
}

// ----------------------------------------------------------------- lifting

std::string lift_kind_name(LiftKind k) {
    switch (k) {
        case LiftKind::CanonicalZero: return "canonical_zero";
        case LiftKind::FirstCoefficient: return "first_coefficient";
        case LiftKind::Randomized: return "randomized";
    }
    return "unknown";
}

LiftKind parse_lift_kind(const std::string& text) {
    for (auto k : {LiftKind::CanonicalZero, LiftKind::FirstCoefficient, LiftKind::Randomized})
        if (lift_kind_name(k) == text) return k;
    throw Error(ErrorCode::InvalidSpec, "unknown lift strategy '" + text + "'");
}

CosetCodeword lift_codeword(const OuterCode& code, const std::vector<GElem>& word, const LiftStrategy& strategy) {
    if (!code.alphabet) throw Error(ErrorCode::WrongCase, "Reed-Solomon words do not lift to Lambda");
    if (static_cast<int>(word.size()) != code.length) throw Error(ErrorCode::BadMessageLength, "word length differs from the code length");
    const CodeAlphabet& A = *code.alphabet;
    const QuotientRing& Q = *A.ring;
    const AlgebraPtr& alg = Q.algebra();
    const int n = Q.degree();
    CosetCodeword out;
    std::mt19937_64 rng(strategy.seed);
    std::uniform_int_distribution<int> coord(-strategy.box, strategy.box);
    const BaseElement scale = base_pow(Q.ideal()->alpha, Q.ideal()->s);
    for (const auto& w : word) {
        const GElem sym = A.project(w);
        if (strategy.kind == LiftKind::FirstCoefficient) {
            for (int t = 1; t < n; ++t)
                if (!Q.residue().is_zero(Q.coeff(sym, t))) throw Error(ErrorCode::InvalidSpec, "first-coefficient lifts need words supported on z^0");
        }
        OrderElement x = Q.lift(sym);
        if (strategy.kind == LiftKind::Randomized) {
            for (int t = 0; t < n; ++t) {
                OKElement y = ok_zero(alg->ext);
                for (auto& c : y.c) {
                    c = base_zero(alg->base_kind());
                    c.a = coord(rng);
                    if (alg->base_kind() != BaseRingKind::Integers) c.b = coord(rng);
                }
                if (t < A.zdeg) y = ok_scale(scale, y);
                x.z[t] = x.z[t] + y;
            }
        }
        out.components.push_back(std::move(x));
        out.outer_image.push_back(sym);
    }
    return out;
}

std::vector<GElem> project_codeword(const OuterCode& code, const CosetCodeword& x) {
    std::vector<GElem> out;
    for (const auto& c : x.components) out.push_back(code.alphabet->project(code.alphabet->ring->reduce(c)));
    return out;
}

// ------------------------------------------------------------------ bounds

std::string bound_formula_name(BoundFormula f) {
    switch (f) {
        case BoundFormula::General: return "general";
        case BoundFormula::Principal: return "principal";
        case BoundFormula::PrincipalPower: return "principal_power";
        case BoundFormula::NilpotentU: return "nilpotent_u";
    }
    return "unknown";
}

BoundFormula parse_bound_formula(const std::string& text) {
    for (auto f : {BoundFormula::General, BoundFormula::Principal, BoundFormula::PrincipalPower, BoundFormula::NilpotentU})
        if (bound_formula_name(f) == text) return f;
    throw Error(ErrorCode::InvalidSpec, "unknown bound formula '" + text + "'");
}

BoundFormula natural_formula(const CodeIdeal& J) {
    if (J.monomial) return BoundFormula::NilpotentU;
    return J.prime.s == 1 ? BoundFormula::Principal : BoundFormula::PrincipalPower;
}

DeltaReport delta_lower_bound(const AlgebraPtr& alg, const CodeIdeal& J, BoundFormula formula, int d_H, double min_det_sq,
                              std::optional<double> min_det_sq_in_J) {
    if (d_H < 1) throw Error(ErrorCode::InvalidSpec, "Hamming distance must be positive");
    const int n = alg->degree();
    const double d2 = static_cast<double>(d_H) * d_H;
    const double alpha2 = base_norm(J.prime.alpha).get_d();
    DeltaReport r;
    r.formula = formula;
    switch (formula) {
        case BoundFormula::General:
            if (!min_det_sq_in_J) throw Error(ErrorCode::FormulaMismatch, "the general bound needs the minimum over J");
            r.lower_bound = std::min(d2 * min_det_sq, *min_det_sq_in_J);
            break;
        case BoundFormula::Principal:
            if (J.monomial || J.prime.s != 1) throw Error(ErrorCode::FormulaMismatch, "principal bound needs J = alpha Lambda");
            r.lower_bound = min_det_sq * std::min(d2, std::pow(alpha2, n));
            break;
        case BoundFormula::PrincipalPower:
            if (J.monomial) throw Error(ErrorCode::FormulaMismatch, "principal-power bound needs J = alpha^s Lambda");
            r.lower_bound = min_det_sq * std::min(d2, std::pow(alpha2, static_cast<double>(J.prime.s) * n));
            break;
        case BoundFormula::NilpotentU:
            if (!J.monomial) throw Error(ErrorCode::FormulaMismatch, "nilpotent-u bound needs J = <z^j> + qLambda");
            r.lower_bound = min_det_sq * std::min(d2, std::pow(base_norm(alg->u).get_d(), *J.monomial));
            break;
    }
    return r;
}

// ------------------------------------------------------------------ search

namespace {

int digit_value(std::uint64_t d) { return d == 0 ? 0 : (d % 2 == 1 ? static_cast<int>((d + 1) / 2) : -static_cast<int>(d / 2)); }

// Coordinates of one component: c = (t * n + k) * rank + e stands for delta^e b_k z^t.
struct Coordinates {
    AlgebraPtr alg;
    int n = 0;
    int rank = 1;
    int dim = 0;
    int radix = 1;

    Coordinates(const AlgebraPtr& a, int box) : alg(a), n(a->degree()), rank(a->ext->base.rank()), dim(n * n * rank), radix(2 * box + 1) {
        if (box < 0) throw Error(ErrorCode::InvalidSpec, "box bound must be nonnegative");
    }
    int z_degree(int c) const { return c / (n * rank); }
    std::vector<int> decode(std::uint64_t idx, const std::vector<int>& which) const {
        std::vector<int> v(dim, 0);
        for (int c : which) {
            v[c] = digit_value(idx % radix);
            idx /= radix;
        }
        return v;
    }
    OrderElement element(const std::vector<int>& v) const {
        OrderElement x = order_zero(alg);
        const BaseRingKind kind = alg->base_kind();
        for (int c = 0; c < dim; ++c) {
            if (v[c] == 0) continue;
            const int e = c % rank;
            const int k = (c / rank) % n;
            const int t = c / (n * rank);
            BaseElement& slot = x.z[t].c[k];
            slot = slot + (e == 0 ? BaseElement(kind, v[c]) : BaseElement(kind, 0, v[c]));
        }
        return x;
    }
    CMatrix basis_matrix(int c) const {
        std::vector<int> v(dim, 0);
        v[c] = 1;
        return complex_matrix(element(v));
    }
};

std::uint64_t count_or_cap(int radix, std::size_t digits, std::uint64_t cap) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < digits; ++i) {
        if (out > cap / static_cast<std::uint64_t>(radix)) return cap + 1;
        out *= static_cast<std::uint64_t>(radix);
    }
    return out;
}

OrderElement scale_into(const OrderElement& y, const std::optional<CodeIdeal>& J) {
    if (!J) return y;
    OrderElement x = y;
    const int n = y.alg->degree();
    const int zdeg = J->monomial ? *J->monomial : n;
    const BaseElement scale = base_pow(J->prime.alpha, J->monomial ? 1 : J->prime.s);
    for (int t = 0; t < zdeg; ++t) x.z[t] = ok_scale(scale, x.z[t]);
    return x;
}

double hermitian_det(CMatrix a, int n) {
    std::complex<double> det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
        if (std::abs(a[piv * n + c]) == 0) return 0;
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            det = -det;
        }
        det *= a[c * n + c];
        for (int r = c + 1; r < n; ++r) {
            const auto f = a[r * n + c] / a[c * n + c];
            for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
        }
    }
    return std::abs(det);
}

CMatrix gram(const CMatrix& m, int n) {
    CMatrix out(n * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            std::complex<double> s = 0;
            for (int k = 0; k < n; ++k) s += m[r * n + k] * std::conj(m[c * n + k]);
            out[r * n + c] = s;
        }
    return out;
}

void add_into(CMatrix& acc, const CMatrix& x) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
}

constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;

double tolerance(double v) { return 1e-9 * std::max(1.0, v); }

// Shared setup of the parity coset code search.
struct ParitySearch {
    Coordinates co;
    int L;
    int zdeg;
    std::vector<int> all, info, free;
    std::uint64_t comp_count = 0;
    std::uint64_t free_count = 0;
    std::vector<CMatrix> basis;
    std::vector<CMatrix> comp_M, comp_P, free_M;

    ParitySearch(const AlgebraPtr& alg, const CodeIdeal& J, int length, int box, std::uint64_t budget, bool tables)
        : co(alg, box), L(length) {
        if (L < 1) throw Error(ErrorCode::InvalidSpec, "code length must be positive");
        make_alphabet(alg, J);
        zdeg = J.monomial ? *J.monomial : co.n;
        for (int c = 0; c < co.dim; ++c) {
            all.push_back(c);
            (co.z_degree(c) < zdeg ? info : free).push_back(c);
        }
        comp_count = L > 1 ? count_or_cap(co.radix, all.size(), budget) : 1;
        free_count = count_or_cap(co.radix, free.size(), budget);
        if (comp_count > budget || free_count > budget) throw Error(ErrorCode::SearchBudgetExceeded, "search box exceeds the evaluation budget");
        if ((L == 1 || box == 0) && (free_count <= 1)) throw Error(ErrorCode::EmptyCode, "the code has no nonzero codeword");
        if (box == 0) throw Error(ErrorCode::EmptyCode, "the code has no nonzero codeword");
        for (int c = 0; c < co.dim; ++c) basis.push_back(co.basis_matrix(c));
        if (!tables) return;
        if (comp_count > kTableLimit || free_count > kTableLimit) throw Error(ErrorCode::SearchBudgetExceeded, "component box too large to tabulate");
        const int n = co.n;
        if (L > 1) {
            comp_M.resize(comp_count);
            comp_P.resize(comp_count);
#pragma omp parallel for schedule(static)
            for (long long i = 0; i < static_cast<long long>(comp_count); ++i) {
                comp_M[i] = matrix_of(co.decode(static_cast<std::uint64_t>(i), all));
                comp_P[i] = gram(comp_M[i], n);
            }
        }
        free_M.resize(free_count);
        for (std::uint64_t i = 0; i < free_count; ++i) free_M[i] = matrix_of(co.decode(i, free));
    }

    CMatrix matrix_of(const std::vector<int>& v) const {
        CMatrix m(co.n * co.n, 0.0);
        for (int c = 0; c < co.dim; ++c) {
            if (v[c] == 0) continue;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] += static_cast<double>(v[c]) * basis[c][i];
        }
        return m;
    }

    // Codeword from component indices (x_1..x_{L-1}) and the free index of x_L.
    std::vector<OrderElement> codeword(const std::vector<std::uint64_t>& comps, std::uint64_t free_idx) const {
        std::vector<OrderElement> out;
        std::vector<int> last = co.decode(free_idx, free);
        for (auto idx : comps) {
            const auto v = co.decode(idx, all);
            for (int c : info) last[c] += v[c];
            out.push_back(co.element(v));
        }
        out.push_back(co.element(last));
        return out;
    }

    double value(const std::vector<OrderElement>& word) const {
        CMatrix g(co.n * co.n, 0.0);
        for (const auto& x : word) add_into(g, gram(complex_matrix(x), co.n));
        return hermitian_det(g, co.n);
    }
};

struct ChunkBest {
    double value = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> comps;
    std::uint64_t free_idx = 0;
    bool found = false;
};

class ChunkRunner {
public:
    ChunkRunner(const ParitySearch& s, double seed, std::atomic<std::uint64_t>& evals, std::atomic<bool>& abort, std::uint64_t budget)
        : s_(s), seed_(seed), evals_(evals), abort_(abort), budget_(budget), comps_(s.L > 1 ? s.L - 1 : 0) {}

    ChunkBest run(std::uint64_t top) {
        const int n = s_.co.n;
        CMatrix P(n * n, 0.0);
        std::vector<int> info_sum(s_.co.dim, 0);
        if (s_.L == 1) {
            leaf(P, info_sum, false, top, top + 1);
        } else {
            descend(static_cast<int>(comps_.size()) - 1, top, P, info_sum, false);
        }
        return best_;
    }

private:
    bool count_eval() {
        ++local_;
        if (local_ >= 4096) {
            if (evals_.fetch_add(local_) + local_ > budget_) abort_ = true;
            local_ = 0;
        }
        return !abort_;
    }

    bool pruned(double det) const {
        if (det > seed_ + tolerance(seed_)) return true;
        return best_.found && det >= best_.value - tolerance(best_.value);
    }

    // Level i fixes x_{i+1}; level comps_.size()-1 is the chunk level.
    void descend(int level, std::uint64_t only, const CMatrix& P, const std::vector<int>& info_sum, bool nonzero) {
        const std::uint64_t lo = level == static_cast<int>(comps_.size()) - 1 ? only : 0;
        const std::uint64_t hi = level == static_cast<int>(comps_.size()) - 1 ? only + 1 : s_.comp_count;
        for (std::uint64_t idx = lo; idx < hi && !abort_; ++idx) {
            comps_[level] = idx;
            CMatrix Q = P;
            add_into(Q, s_.comp_P[idx]);
            const bool nz = nonzero || idx != 0;
            if (nz) {
                if (!count_eval()) return;
                if (pruned(hermitian_det(Q, s_.co.n))) continue;
            }
            std::vector<int> sum = info_sum;
            if (idx != 0) {
                const auto v = s_.co.decode(idx, s_.all);
                for (int c : s_.info) sum[c] += v[c];
            }
            if (level == 0) {
                leaf(Q, sum, nz, 0, s_.free_count);
            } else {
                descend(level - 1, 0, Q, sum, nz);
            }
        }
    }

    void leaf(const CMatrix& P, const std::vector<int>& info_sum, bool nonzero, std::uint64_t lo, std::uint64_t hi) {
        const int n = s_.co.n;
        const CMatrix base = s_.matrix_of(info_sum);
        for (std::uint64_t f = lo; f < hi && !abort_; ++f) {
            if (!nonzero && f == 0) continue;
            CMatrix M = base;
            add_into(M, s_.free_M[f]);
            CMatrix G = P;
            add_into(G, gram(M, n));
            if (!count_eval()) return;
            const double det = hermitian_det(G, n);
            if (!best_.found || det < best_.value - tolerance(best_.value)) {
                best_.value = det;
                best_.comps = comps_;
                best_.free_idx = f;
                best_.found = true;
            }
        }
    }

public:
    void flush() { evals_ += local_; local_ = 0; }

private:
    const ParitySearch& s_;
    double seed_;
    std::atomic<std::uint64_t>& evals_;
    std::atomic<bool>& abort_;
    std::uint64_t budget_;
    std::uint64_t local_ = 0;
    std::vector<std::uint64_t> comps_;
    ChunkBest best_;
};

// Upper bound from codewords with a single coordinate equal to 1.
double seed_value(const ParitySearch& s) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t comps = s.L > 1 ? s.L - 1 : 0;
    for (std::size_t i = 0; i < comps; ++i) {
        for (std::size_t c = 0; c < s.all.size(); ++c) {
            std::vector<std::uint64_t> idx(comps, 0);
            std::uint64_t digit = 1;
            for (std::size_t k = 0; k < c; ++k) digit *= static_cast<std::uint64_t>(s.co.radix);
            idx[i] = digit;
            best = std::min(best, s.value(s.codeword(idx, 0)));
        }
    }
    std::uint64_t digit = 1;
    for (std::size_t c = 0; c < s.free.size(); ++c, digit *= static_cast<std::uint64_t>(s.co.radix))
        best = std::min(best, s.value(s.codeword(std::vector<std::uint64_t>(comps, 0), digit)));
    return best;
}

}  // namespace

MinDetResult min_det_sq(const AlgebraPtr& alg, const std::optional<CodeIdeal>& J, const SearchOptions& opts) {
    const Coordinates co(alg, opts.box);
    if (J) make_alphabet(alg, *J);
    std::vector<int> all(co.dim);
    for (int c = 0; c < co.dim; ++c) all[c] = c;
    const std::uint64_t count = count_or_cap(co.radix, all.size(), opts.budget);
    if (count > opts.budget) throw Error(ErrorCode::SearchBudgetExceeded, "search box exceeds the evaluation budget");
    if (count <= 1) throw Error(ErrorCode::EmptyCode, "the box holds no nonzero element");
    const int threads = opts.exec == Exec::Parallel ? omp_get_max_threads() : 1;
    std::vector<mpz_class> best(threads);
    std::vector<std::uint64_t> arg(threads, 0);
    std::vector<char> have(threads, 0);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 1; i < static_cast<long long>(count); ++i) {
        const int t = omp_get_thread_num();
        const OrderElement x = scale_into(co.element(co.decode(static_cast<std::uint64_t>(i), all)), J);
        const mpz_class v = base_norm(reduced_det(x));
        if (!have[t] || v < best[t]) {
            best[t] = v;
            arg[t] = static_cast<std::uint64_t>(i);
            have[t] = 1;
        }
    }
    MinDetResult out;
    bool any = false;
    std::uint64_t where = 0;
    for (int t = 0; t < threads; ++t) {
        if (!have[t]) continue;
        if (!any || best[t] < out.value || (best[t] == out.value && arg[t] < where)) {
            out.value = best[t];
            where = arg[t];
            any = true;
        }
    }
    out.argmin = scale_into(co.element(co.decode(where, all)), J);
    out.evaluations = count - 1;
    return out;
}

SearchResult delta_min_search(const AlgebraPtr& alg, const CodeIdeal& J, int L, const SearchOptions& opts) {
    const ParitySearch s(alg, J, L, opts.box, opts.budget, true);
    const double seed = seed_value(s);
    const std::uint64_t chunks = L > 1 ? s.comp_count : s.free_count;
    std::vector<ChunkBest> results(chunks);
    std::atomic<std::uint64_t> evals{0};
    std::atomic<bool> abort{false};
    auto run_chunk = [&](std::uint64_t c) {
        ChunkRunner runner(s, seed, evals, abort, opts.budget);
        results[c] = runner.run(c);
        runner.flush();
    };
    if (opts.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long long c = 0; c < static_cast<long long>(chunks); ++c) run_chunk(static_cast<std::uint64_t>(c));
    } else {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    }
    if (abort || evals > opts.budget) throw Error(ErrorCode::SearchBudgetExceeded, "more than " + std::to_string(opts.budget) + " determinant evaluations");
    const ChunkBest* best = nullptr;
    for (const auto& r : results) {
        if (!r.found) continue;
        if (!best || r.value < best->value - tolerance(best->value)) best = &r;
    }
    if (!best) throw Error(ErrorCode::InvalidSpec, "search found no codeword below the seed bound");
    SearchResult out;
    out.value = best->value;
    out.argmin = s.codeword(best->comps, best->free_idx);
    out.evaluations = evals;
    out.chunks = chunks;
    return out;
}

SearchResult delta_min_bruteforce(const AlgebraPtr& alg, const CodeIdeal& J, int L, const SearchOptions& opts) {
    const ParitySearch s(alg, J, L, opts.box, opts.budget, false);
    const std::size_t comps = L > 1 ? L - 1 : 0;
    std::uint64_t total = s.free_count;
    for (std::size_t i = 0; i < comps; ++i) {
        if (total > opts.budget / s.comp_count) throw Error(ErrorCode::SearchBudgetExceeded, "search box exceeds the evaluation budget");
        total *= s.comp_count;
    }
    SearchResult out;
    out.value = std::numeric_limits<double>::infinity();
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::uint64_t rest = idx;
        const std::uint64_t f = rest % s.free_count;
        rest /= s.free_count;
        std::vector<std::uint64_t> ci(comps);
        for (std::size_t i = 0; i < comps; ++i) {
            ci[i] = rest % s.comp_count;
            rest /= s.comp_count;
        }
        auto word = s.codeword(ci, f);
        const double v = s.value(word);
        ++out.evaluations;
        if (out.argmin.empty() || v < out.value - tolerance(out.value)) {
            out.value = v;
            out.argmin = std::move(word);
        }
    }
    if (out.argmin.empty()) throw Error(ErrorCode::EmptyCode, "the code has no nonzero codeword");
    out.chunks = 1;
    return out;
}

// ---------------------------------------------------------------- specs

CodeSpec parse_code_spec(const Json& j, const std::string& base_dir) {
    static const std::vector<std::string> keys{"algebra_spec", "ideal", "outer", "lift_strategy", "box_bound", "seed"};
    if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "code spec must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw Error(ErrorCode::InvalidSpec, "unknown code-spec key '" + k + "'");
    try {
        CodeSpec spec;
        std::string alg = j.at("algebra_spec").get<std::string>();
        if (builtin_algebra_json(alg).empty() && !std::filesystem::exists(alg) && !base_dir.empty()) {
            const auto candidate = std::filesystem::path(base_dir) / alg;
            if (std::filesystem::exists(candidate)) alg = candidate.string();
        }
        spec.algebra = load_algebra_spec(alg);
        const Json& ideal = j.at("ideal");
        for (const auto& [k, v] : ideal.items())
            if (k != "alpha" && k != "s" && k != "monomial") throw Error(ErrorCode::InvalidSpec, "unknown ideal key '" + k + "'");
        spec.ideal.prime.alpha = base_from_json(spec.algebra->base_kind(), ideal.at("alpha"));
        spec.ideal.prime.s = ideal.value("s", 1U);
        if (ideal.contains("monomial")) {
            if (spec.ideal.prime.s != 1) throw Error(ErrorCode::InvalidSpec, "monomial ideals take s = 1");
            spec.ideal.monomial = ideal.at("monomial").get<int>();
        }
        if (spec.ideal.prime.s < 1) throw Error(ErrorCode::InvalidSpec, "s must be positive");
        const Json& outer = j.at("outer");
        for (const auto& [k, v] : outer.items())
            if (k != "kind" && k != "L" && k != "k") throw Error(ErrorCode::InvalidSpec, "unknown outer-code key '" + k + "'");
        spec.outer = parse_outer_kind(outer.at("kind").get<std::string>());
        spec.length = outer.at("L").get<int>();
        spec.dimension = outer.value("k", spec.outer == OuterKind::Parity ? spec.length - 1 : 1);
        spec.lift.kind = parse_lift_kind(j.value("lift_strategy", std::string("canonical_zero")));
        spec.box_bound = j.value("box_bound", 1);
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.lift.seed = spec.seed;
        spec.lift.box = spec.box_bound;
        return spec;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidSpec, std::string("code spec: ") + e.what());
    }
}

CodeSpec load_code_spec(const std::string& path_or_name) {
    std::string text = builtin_code_json(path_or_name);
    std::string dir;
    if (text.empty()) {
        std::ifstream in(path_or_name);
        if (!in) throw Error(ErrorCode::InvalidSpec, "cannot open code spec '" + path_or_name + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
        dir = std::filesystem::path(path_or_name).parent_path().string();
    }
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidSpec, std::string("malformed JSON: ") + e.what());
    }
    return parse_code_spec(j, dir);
}

OuterCode build_outer_code(const CodeSpec& spec) {
    switch (spec.outer) {
        case OuterKind::Parity: {
            if (spec.dimension != spec.length - 1) throw Error(ErrorCode::InvalidSpec, "a parity code of length L has k = L - 1");
            return make_parity_code(make_alphabet(spec.algebra, spec.ideal), spec.length);
        }
        case OuterKind::ReedSolomon: {
            if (spec.ideal.monomial || spec.ideal.prime.s != 1) throw Error(ErrorCode::WrongCase, "Reed-Solomon codes live over O_K/qO_K");
            const QuotientRing Q(spec.algebra, spec.ideal.prime);
            return make_reed_solomon_code(residue_field_iso(Q.residue()).field, spec.length, spec.dimension);
        }
        case OuterKind::FirstCoefficient:
            return make_first_coefficient_code(make_alphabet(spec.algebra, spec.ideal), spec.length, spec.dimension);
    }
    throw Error(ErrorCode::InvalidSpec, "unknown outer code");
}

Json delta_report_to_json(const DeltaReport& r) {
    Json j;
    j["lower_bound"] = r.lower_bound;
    j["formula"] = bound_formula_name(r.formula);
    if (r.search_min) j["search_min"] = *r.search_min;
    if (r.argmin) {
        Json a = Json::array();
        for (const auto& x : *r.argmin) a.push_back(order_to_json(x));
        j["argmin"] = a;
    }
    j["evaluations"] = r.evaluations;
    return j;
}

}  // namespace stc

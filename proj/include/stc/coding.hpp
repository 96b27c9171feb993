#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stc/finite_field.hpp"
#include "stc/structure.hpp"

namespace stc {

/// n x n complex matrix, row-major.
using CMatrix = std::vector<std::complex<double>>;

struct LemmaReport {
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
};

/// lhs = |det(sum X_i X_i^*)|, rhs = (sum |det X_i|)^2.  Throws SingularInput when some
/// |det X_i| <= 1e-12.
LemmaReport det_inequality_check(int n, const std::vector<CMatrix>& matrices);

struct LemmaTrials {
    int trials = 0;
    int holds = 0;
    /// Smallest (lhs - rhs) / max(1, rhs) seen.
    double worst_margin = 0;
    /// Largest |lhs - rhs| / rhs over trials with a single matrix.
    double single_max_rel_error = 0;
};

/// Random Gaussian trials cycling through the sizes and counts given.
LemmaTrials lemma_trials(int trials, const std::vector<int>& sizes, const std::vector<int>& counts, std::uint64_t seed);

/// J = alpha^s Lambda, or J = <z^j> + alpha Lambda when monomial is set (u in alpha O_F, s = 1).
struct CodeIdeal {
    IdealSpec prime;
    std::optional<int> monomial;

    std::string to_string() const;
};

/// Symbols of Lambda/J: the coefficients of z^t, t < zdeg, in the quotient ring mod alpha^s.
struct CodeAlphabet {
    std::shared_ptr<const QuotientRing> ring;
    int zdeg = 0;

    GElem project(const GElem& x) const;
    bool is_zero(const GElem& x) const { return ring->is_zero(project(x)); }
    mpz_class size() const;
    /// Symbols in index order; throws TooLargeToEnumerate past 2^20.
    GElem from_index(std::uint64_t idx) const;
};

CodeAlphabet make_alphabet(const AlgebraPtr& alg, const CodeIdeal& J);

class ReedSolomonCode {
public:
    /// Evaluation points 0, 1, gamma, gamma^2, ... in the field's generator order.
    ReedSolomonCode(FiniteField field, int length, int dimension);

    const FiniteField& field() const { return field_; }
    int length() const { return length_; }
    int dimension() const { return dimension_; }
    const std::vector<FiniteField::Elt>& points() const { return points_; }
    std::vector<FiniteField::Elt> encode(const std::vector<FiniteField::Elt>& message) const;

private:
    FiniteField field_;
    int length_;
    int dimension_;
    std::vector<FiniteField::Elt> points_;
};

enum class OuterKind { Parity, ReedSolomon, FirstCoefficient };

std::string outer_kind_name(OuterKind k);
OuterKind parse_outer_kind(const std::string& text);

struct OuterCode {
    OuterKind kind = OuterKind::Parity;
    int length = 0;
    /// Number of message symbols: L - 1 (parity), k (Reed-Solomon), k + L (first coefficient).
    int message_length = 0;
    /// Parity and first-coefficient codes.
    std::optional<CodeAlphabet> alphabet;
    /// Reed-Solomon codes, and the inner code over O_K/qO_K of a first-coefficient code.
    std::optional<ReedSolomonCode> rs;
    std::optional<ResidueFieldIso> field_iso;
};

OuterCode make_parity_code(const CodeAlphabet& alphabet, int length);
OuterCode make_reed_solomon_code(const FiniteField& field, int length, int dimension);
/// Inner Reed-Solomon code over O_K/qO_K in the z^0 coefficients, the rest free.  q inert, s = 1.
OuterCode make_first_coefficient_code(const CodeAlphabet& alphabet, int length, int dimension);

/// Parity: (m_1, ..., m_{L-1}, m_1 + ... + m_{L-1}).  First coefficient: m_0..m_{k-1} carry the
/// inner message in their z^0 coefficients, m_{k+i} the higher coefficients of symbol i.
std::vector<GElem> encode(const OuterCode& code, const std::vector<GElem>& message);
std::vector<FiniteField::Elt> encode_symbols(const OuterCode& code, const std::vector<FiniteField::Elt>& message);

int word_weight(const OuterCode& code, const std::vector<GElem>& word);

enum class HammingMode { Formula, Enumerate };

/// Minimum weight of a nonzero codeword.  Enumeration is limited to 2^20 codewords.
int hamming_distance(const OuterCode& code, HammingMode mode = HammingMode::Formula);

enum class LiftKind { CanonicalZero, FirstCoefficient, Randomized };

struct LiftStrategy {
    LiftKind kind = LiftKind::CanonicalZero;
    std::uint64_t seed = 0;
    /// Randomized lifts add an element of J with coordinates in [-box, box] before scaling.
    int box = 1;
};

std::string lift_kind_name(LiftKind k);
LiftKind parse_lift_kind(const std::string& text);

struct CosetCodeword {
    std::vector<OrderElement> components;
    std::vector<GElem> outer_image;
};

/// A codeword of Lambda^L over the outer word.  FirstCoefficient accepts only words supported on z^0.
CosetCodeword lift_codeword(const OuterCode& code, const std::vector<GElem>& word, const LiftStrategy& strategy);
/// pi: componentwise reduction to Lambda/J.
std::vector<GElem> project_codeword(const OuterCode& code, const CosetCodeword& x);

enum class BoundFormula { General, Principal, PrincipalPower, NilpotentU };

std::string bound_formula_name(BoundFormula f);
BoundFormula parse_bound_formula(const std::string& text);

struct DeltaReport {
    double lower_bound = 0;
    BoundFormula formula = BoundFormula::General;
    std::optional<double> search_min;
    std::optional<std::vector<OrderElement>> argmin;
    std::uint64_t evaluations = 0;
};

/// General: min(d_H^2 m, m_J); Principal: m min(d_H^2, |alpha|^{2n}); PrincipalPower:
/// m min(d_H^2, |alpha|^{2sn}); NilpotentU: m min(d_H^2, |u|^{2j}).  Throws FormulaMismatch
/// when the formula does not fit J.
DeltaReport delta_lower_bound(const AlgebraPtr& alg, const CodeIdeal& J, BoundFormula formula, int d_H, double min_det_sq,
                              std::optional<double> min_det_sq_in_J = std::nullopt);

/// Formula that applies to J.
BoundFormula natural_formula(const CodeIdeal& J);

struct SearchOptions {
    int box = 1;
    Exec exec = Exec::Parallel;
    std::uint64_t budget = 100000000;
};

struct MinDetResult {
    mpz_class value = 0;
    OrderElement argmin;
    std::uint64_t evaluations = 0;
};

/// Exact min |det M(x)|^2 over nonzero x in the box (coordinates of the O_K-coefficients over
/// O_F in [-box, box]), restricted to J when given.  Earliest in enumeration order at ties.
MinDetResult min_det_sq(const AlgebraPtr& alg, const std::optional<CodeIdeal>& J, const SearchOptions& opts);

struct SearchResult {
    double value = 0;
    std::vector<OrderElement> argmin;
    std::uint64_t evaluations = 0;
    std::uint64_t chunks = 0;
};

/// min |det(sum_i M(x_i) M(x_i)^*)| over nonzero codewords of the parity coset code of length L:
/// x_1..x_{L-1} in the box, x_L = x_1 + ... + x_{L-1} on the z^t coefficients with t < zdeg and
/// free in the box above.  Branch and bound with Loewner pruning; chunked over x_{L-1}.
/// Throws EmptyCode when the code has no nonzero codeword, SearchBudgetExceeded past the budget.
SearchResult delta_min_search(const AlgebraPtr& alg, const CodeIdeal& J, int L, const SearchOptions& opts);
/// Plain enumeration of the same code without pruning (small boxes only).
SearchResult delta_min_bruteforce(const AlgebraPtr& alg, const CodeIdeal& J, int L, const SearchOptions& opts);

/// Code-spec file: {algebra_spec, ideal: {alpha, s} or {alpha, monomial}, outer: {kind, L, k},
/// lift_strategy, box_bound, seed}.
struct CodeSpec {
    AlgebraPtr algebra;
    CodeIdeal ideal;
    OuterKind outer = OuterKind::Parity;
    int length = 0;
    int dimension = 0;
    LiftStrategy lift;
    int box_bound = 1;
    std::uint64_t seed = 0;
};

/// Algebra paths that are neither shipped names nor existing files resolve against base_dir.
CodeSpec parse_code_spec(const Json& j, const std::string& base_dir = "");
CodeSpec load_code_spec(const std::string& path_or_name);
OuterCode build_outer_code(const CodeSpec& spec);

std::vector<std::string> builtin_code_names();
std::string builtin_code_json(const std::string& name);

Json delta_report_to_json(const DeltaReport& r);

}  // namespace stc

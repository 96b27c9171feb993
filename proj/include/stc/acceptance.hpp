#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stc/coding.hpp"

namespace stc {

struct CheckCount {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;

    bool ok() const { return cases > 0 && failures == 0; }
};

/// Random element with every O_F-coordinate of every O_K-coefficient in [-box, box].
OrderElement random_order_element(const AlgebraPtr& alg, std::mt19937_64& rng, int box);

/// M(xy) = M(y) M(x) on exact matrices over O_K.
CheckCount check_embedding_law(const AlgebraPtr& alg, int pairs, std::uint64_t seed);
/// crt_recombine(crt_decompose(x)) = x and decomposition is multiplicative.
CheckCount check_crt_roundtrip(const AlgebraPtr& alg, const std::vector<IdealSpec>& factors, int count, std::uint64_t seed);
/// pi(lift(c)) = c for random codewords under the canonical and randomized lifts.
CheckCount check_section(const CodeSpec& spec, int lifts, std::uint64_t seed);
/// (1 + c z) (sum_k (-c z)^k) = 1 on both sides for every c in O_K/qO_K, when u lies in q.
CheckCount check_nilpotent_inverse(const AlgebraPtr& alg, const BaseElement& q);
/// reduced_det(alpha x) = alpha^n reduced_det(x).
CheckCount check_det_divisibility(const AlgebraPtr& alg, const BaseElement& alpha, int count, std::uint64_t seed);

/// Ideal sets of a descriptor list and of the brute-force enumeration, both sorted.
bool same_ideals(const QuotientRing& Q, const std::vector<IdealDescriptor>& lattice, Exec exec = Exec::Parallel);

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    double seconds = 0;
    double limit_seconds = 0;
    std::string detail;
};

struct AcceptanceOptions {
    /// Empty runs every criterion.
    std::set<int> only;
    Exec exec = Exec::Parallel;
};

constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, Exec exec = Exec::Parallel);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});
/// "PASS  3  title  (1.23 s)  detail".
std::string format_criterion(const CriterionResult& r);

}  // namespace stc

#pragma once

#include <array>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "stc/base_rings.hpp"

namespace stc {

inline constexpr int kMaxDegree = 4;

/// A cyclic extension K/F given by an O_F-basis of O_K (b_0 = 1), its multiplication
/// table, the generator sigma of Gal(K/F) and the n complex embeddings of K that
/// extend the fixed embedding of F.  Embedding j is embedding 0 composed with sigma^j.
struct ExtensionSpec {
    std::string name;
    BaseRingSpec base;
    int degree = 0;
    std::vector<std::string> basis;
    /// mult_table[i][j][k]: coordinate k of b_i * b_j.
    std::vector<std::vector<std::vector<BaseElement>>> mult_table;
    /// sigma_matrix[i][k]: coordinate k of sigma(b_i).
    std::vector<std::vector<BaseElement>> sigma_matrix;
    /// sigma_powers[j][i][k]: coordinate k of sigma^j(b_i), j < degree.
    std::vector<std::vector<std::vector<BaseElement>>> sigma_powers;
    /// embeddings[j][i]: value of b_i under embedding j.
    std::vector<std::vector<std::complex<double>>> embeddings;

    /// Checks identity, commutativity, associativity, that sigma is a ring automorphism of
    /// exact order n, and that the embeddings respect both.  Throws InvalidSpec.
    void validate();
};

using ExtensionPtr = std::shared_ptr<const ExtensionSpec>;

struct OKElement {
    ExtensionPtr ext;
    std::vector<BaseElement> c;

    bool operator==(const OKElement& o) const { return c == o.c; }
    bool operator!=(const OKElement& o) const { return !(*this == o); }
    bool is_zero() const;
    std::string to_string() const;
};

OKElement ok_zero(const ExtensionPtr& ext);
OKElement ok_one(const ExtensionPtr& ext);
OKElement ok_basis(const ExtensionPtr& ext, int i);
OKElement ok_from_base(const ExtensionPtr& ext, const BaseElement& a);
OKElement ok_from_coords(const ExtensionPtr& ext, std::vector<BaseElement> coords);

OKElement operator+(const OKElement& x, const OKElement& y);
OKElement operator-(const OKElement& x, const OKElement& y);
OKElement operator-(const OKElement& x);
OKElement operator*(const OKElement& x, const OKElement& y);
OKElement ok_scale(const BaseElement& a, const OKElement& x);

OKElement apply_sigma(const OKElement& x, int k = 1);
std::complex<double> embed_complex(const OKElement& x, int which);
/// x lies in O_F (all coordinates beyond the first vanish).
bool ok_in_base(const OKElement& x);

struct IdealSpec {
    BaseElement alpha;
    unsigned s = 1;

    std::string to_string() const;
};

/// Decomposition data of qO_K: e = 1 always (ramified primes are rejected).
/// idempotents[i] are the primitive idempotents of O_K/qO_K in coordinates mod q,
/// ordered so that sigma(v_i) = v_{i+1 mod g}.
struct FactorizationData {
    int g = 1;
    int e = 1;
    int f = 1;
    std::vector<std::array<std::uint32_t, kMaxDegree>> idempotents;
    std::string method;
};

enum class FactorMethod { Auto, BruteForce, Berlekamp };

/// Splitting of q in O_K.  Brute force scans O_K/qO_K for idempotents when it has at most
/// 2^20 elements; otherwise the fixed space of Frobenius is split into idempotents.
FactorizationData factor_prime(const ExtensionPtr& ext, const BaseElement& q, FactorMethod method = FactorMethod::Auto);

}  // namespace stc

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "stc/error.hpp"

namespace stc {

/// Imaginary quadratic base rings of class number one (plus the integers).
enum class BaseRingKind { Integers, Gaussian, Eisenstein };

struct BaseRingSpec {
    BaseRingKind kind = BaseRingKind::Gaussian;

    int rank() const { return kind == BaseRingKind::Integers ? 1 : 2; }
    /// Symbol used when printing the second coordinate ("i" or "w").
    const char* generator_symbol() const;
    std::string name() const;
    /// Value of the generator under the fixed complex embedding.
    std::complex<double> generator_value() const;
    /// The generator's minimal polynomial x^2 + c1*x + c0 evaluated in F_p has a root.
    bool prime_splits_or_ramifies(long p) const;
};

BaseRingKind parse_base_ring_kind(const std::string& text);
const char* base_ring_kind_name(BaseRingKind kind);

/// a + b*delta with delta = i (delta^2 = -1) or w (delta^2 = -1 - delta); b = 0 for the integers.
struct BaseElement {
    BaseRingKind kind = BaseRingKind::Gaussian;
    mpz_class a = 0;
    mpz_class b = 0;

    BaseElement() = default;
    BaseElement(BaseRingKind k, mpz_class a_, mpz_class b_ = 0);

    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const BaseElement& o) const { return kind == o.kind && a == o.a && b == o.b; }
    bool operator!=(const BaseElement& o) const { return !(*this == o); }
    std::string to_string() const;
};

BaseElement operator+(const BaseElement& x, const BaseElement& y);
BaseElement operator-(const BaseElement& x, const BaseElement& y);
BaseElement operator-(const BaseElement& x);
BaseElement operator*(const BaseElement& x, const BaseElement& y);

BaseElement base_zero(BaseRingKind kind);
BaseElement base_one(BaseRingKind kind);
BaseElement base_generator(BaseRingKind kind);
BaseElement base_conj(const BaseElement& x);
/// |x|^2 under the complex embedding: a^2+b^2, a^2-ab+b^2, or a^2 for the integers.
mpz_class base_norm(const BaseElement& x);
/// Cardinality of O_F/(x): base_norm for quadratic rings, |x| for the integers.
mpz_class residue_count(const BaseElement& x);
bool base_is_unit(const BaseElement& x);
std::complex<double> base_embed(const BaseElement& x);
BaseElement base_pow(const BaseElement& x, unsigned e);
/// Parses "a+bi", "1-w", "-3", "i" and similar.
BaseElement parse_base_element(BaseRingKind kind, const std::string& text);

struct DivMod {
    BaseElement quotient;
    BaseElement remainder;
};

/// Nearest-lattice-point division; halves round toward the smaller coordinate.
DivMod euclidean_divmod(const BaseElement& x, const BaseElement& m);
bool base_divides(const BaseElement& d, const BaseElement& x);
BaseElement base_gcd(BaseElement x, BaseElement y);

struct Bezout {
    BaseElement gcd;
    BaseElement s;
    BaseElement t;
};
/// s*x + t*y = gcd.
Bezout base_xgcd(const BaseElement& x, const BaseElement& y);

/// Is x a prime element of O_F (as opposed to a unit, zero or a composite)?
bool base_is_prime(const BaseElement& x);

/// The finite ring O_F/(m) with all operations tabulated on element indices.
///
/// Built from a prime power alpha^s it is the local ring O_F/q^s; from an arbitrary
/// nonzero modulus it is the composite ring used for CRT.  Index 0 is always zero.
class LocalBaseRing {
public:
    using Elt = std::uint32_t;
    static constexpr std::size_t kMaxSize = 2048;

    LocalBaseRing(BaseRingKind kind, const BaseElement& alpha, unsigned s);
    static LocalBaseRing from_modulus(BaseRingKind kind, const BaseElement& modulus);

    BaseRingKind kind() const { return kind_; }
    const BaseElement& modulus() const { return modulus_; }
    const BaseElement& alpha() const { return alpha_; }
    unsigned exponent() const { return s_; }
    bool is_local() const { return local_; }
    std::size_t size() const { return reps_.size(); }
    /// Residue characteristic p and residue field size |O_F/q| (local rings only).
    long characteristic() const { return p_; }
    long residue_field_size() const { return field_size_; }

    Elt zero() const { return 0; }
    Elt one() const { return one_; }
    Elt add(Elt x, Elt y) const { return add_[x * size() + y]; }
    Elt mul(Elt x, Elt y) const { return mul_[x * size() + y]; }
    Elt neg(Elt x) const { return neg_[x]; }
    Elt sub(Elt x, Elt y) const { return add(x, neg(y)); }
    bool is_unit(Elt x) const { return inv_[x] != kNoInverse; }
    Elt inv(Elt x) const;
    Elt pow(Elt x, std::uint64_t e) const;
    /// Largest t <= s with alpha^t dividing x (local rings only).
    unsigned valuation(Elt x) const { return valuation_[x]; }

    /// Canonical representative of an element (the Euclidean remainder).
    const BaseElement& rep(Elt x) const { return reps_[x]; }
    Elt reduce(const BaseElement& x) const;
    /// Image under O_F/(m) -> O_F/(m') for m' dividing m.
    Elt reduce_into(const LocalBaseRing& coarser, Elt x) const { return coarser.reduce(rep(x)); }

    std::string describe() const;

private:
    LocalBaseRing() = default;
    void build();

    static constexpr std::uint16_t kNoInverse = 0xFFFF;

    BaseRingKind kind_ = BaseRingKind::Gaussian;
    BaseElement modulus_;
    BaseElement alpha_;
    unsigned s_ = 1;
    bool local_ = false;
    long p_ = 0;
    long field_size_ = 0;
    Elt one_ = 0;
    std::vector<BaseElement> reps_;
    std::unordered_map<std::string, Elt> index_;
    std::vector<std::uint16_t> add_, mul_, neg_, inv_;
    std::vector<unsigned> valuation_;
};

/// Canonical representative of x modulo the local ring's modulus.
BaseElement local_reduce(const LocalBaseRing& ring, const BaseElement& x);

}  // namespace stc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stc {

/// F_{p^m} = F_p[x]/(f) with f the smallest monic irreducible of degree m.
/// Element index: sum_k c_k p^k for the coefficient vector (c_0, ..., c_{m-1}).
class FiniteField {
public:
    using Elt = std::uint32_t;
    static constexpr std::uint32_t kMaxSize = 1U << 16;

    FiniteField(long p, int m);

    long characteristic() const { return p_; }
    int degree() const { return m_; }
    std::uint32_t size() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }
    std::string name() const { return "F_" + std::to_string(q_); }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    Elt add(Elt x, Elt y) const;
    Elt neg(Elt x) const;
    Elt sub(Elt x, Elt y) const { return add(x, neg(y)); }
    Elt mul(Elt x, Elt y) const;
    Elt inv(Elt x) const;
    Elt pow(Elt x, std::uint64_t e) const;
    /// x^(p^k).
    Elt frobenius(Elt x, int k) const;
    /// Fixed multiplicative generator; generator_power(e) = gamma^e.
    Elt generator() const { return exp_[1]; }
    Elt generator_power(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }
    std::uint32_t log(Elt x) const;

    std::vector<int> coeffs(Elt x) const;
    Elt from_coeffs(const std::vector<int>& c) const;
    std::string to_string(Elt x) const;

private:
    Elt poly_mul(Elt x, Elt y) const;

    long p_;
    int m_;
    std::uint32_t q_;
    std::vector<int> modulus_;
    std::vector<Elt> exp_;
    std::vector<std::uint32_t> log_;
};

}  // namespace stc

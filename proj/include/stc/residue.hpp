#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stc/linalg.hpp"
#include "stc/order.hpp"
#include "stc/parallel.hpp"

namespace stc {

using Elt = LocalBaseRing::Elt;
/// Element of O_K/mO_K: coordinates in the residues of the integral basis.
using SElem = std::array<Elt, kMaxDegree>;
/// Element sum_t x_t z^t of Lambda/mLambda; entry t*n + k is coordinate k of x_t.
using GElem = std::array<Elt, kMaxDegree * kMaxDegree>;

/// O_K/mO_K as a free module over O_F/(m) with the reduced multiplication table and sigma.
class ResidueRing {
public:
    ResidueRing(ExtensionPtr ext, std::shared_ptr<const LocalBaseRing> base);

    int degree() const { return n_; }
    const LocalBaseRing& base() const { return *base_; }
    const std::shared_ptr<const LocalBaseRing>& base_ptr() const { return base_; }
    const ExtensionPtr& extension() const { return ext_; }
    std::uint64_t size() const;

    SElem zero() const { return SElem{}; }
    SElem one() const { return basis(0); }
    SElem basis(int i) const;
    SElem scalar(Elt r) const;

    SElem add(const SElem& x, const SElem& y) const;
    SElem sub(const SElem& x, const SElem& y) const;
    SElem neg(const SElem& x) const;
    SElem mul(const SElem& x, const SElem& y) const;
    SElem scale(Elt r, const SElem& x) const;
    SElem sigma(const SElem& x, int k = 1) const;
    SElem pow(SElem x, std::uint64_t e) const;
    bool is_zero(const SElem& x) const;
    bool is_unit(const SElem& x) const;
    SElem inverse(const SElem& x) const;
    /// Product of sigma^j(x) over j < n, and the sum of the same conjugates.
    SElem norm(const SElem& x) const;
    SElem trace(const SElem& x) const;

    SElem reduce(const OKElement& x) const;
    OKElement lift(const SElem& x) const;
    std::uint64_t index(const SElem& x) const;
    SElem from_index(std::uint64_t idx) const;

    /// Multiplication by x on the basis: column k holds the coordinates of x * b_k.
    LocalMatrix left_mult_matrix(const SElem& x) const;
    /// Column k holds the coordinates of sigma(b_k).
    LocalMatrix sigma_matrix() const;

    std::string to_string(const SElem& x) const;

private:
    int n_;
    ExtensionPtr ext_;
    std::shared_ptr<const LocalBaseRing> base_;
    std::vector<Elt> mult_;   // ((i*n + j)*n + k)
    std::vector<Elt> sigma_;  // ((j*n + i)*n + k) for sigma^j(b_i)
};

/// Lambda/mLambda = sum_t (O_K/mO_K) z^t with z x = sigma(x) z and z^n = u mod m.
/// For m = alpha^s this is the generalized cyclic algebra over O_K/q^sO_K.
class QuotientRing {
public:
    QuotientRing(AlgebraPtr alg, const IdealSpec& ideal);
    static QuotientRing from_modulus(AlgebraPtr alg, const BaseElement& modulus);

    const AlgebraPtr& algebra() const { return alg_; }
    const ResidueRing& residue() const { return *residue_; }
    const std::shared_ptr<const ResidueRing>& residue_ptr() const { return residue_; }
    const LocalBaseRing& base() const { return residue_->base(); }
    const std::optional<IdealSpec>& ideal() const { return ideal_; }
    int degree() const { return n_; }
    Elt u() const { return u_; }

    /// Number of elements, |O_F/(m)|^(n^2).
    mpz_class cardinality() const;
    /// Same as cardinality(); throws UnsupportedSize when it does not fit in 62 bits.
    std::uint64_t size() const;

    GElem zero() const { return GElem{}; }
    GElem one() const;
    GElem z() const;
    GElem monomial(const SElem& s, int t) const;
    GElem scalar(Elt r) const;
    SElem coeff(const GElem& x, int t) const;
    void set_coeff(GElem& x, int t, const SElem& s) const;

    GElem add(const GElem& x, const GElem& y) const;
    GElem sub(const GElem& x, const GElem& y) const;
    GElem neg(const GElem& x) const;
    GElem mul(const GElem& x, const GElem& y) const;
    GElem scale(Elt r, const GElem& x) const;
    GElem pow(GElem x, std::uint64_t e) const;
    bool is_zero(const GElem& x) const;

    GElem reduce(const OrderElement& x) const;
    OrderElement lift(const GElem& x) const;
    std::uint64_t index(const GElem& x) const;
    GElem from_index(std::uint64_t idx) const;

    /// Additive generators: each coordinate position times 1 and (for quadratic F) delta.
    std::vector<GElem> additive_generators() const;
    /// Generators as a ring: the basis residues, delta, and z.
    std::vector<GElem> ring_generators() const;

    std::string to_string(const GElem& x) const;

private:
    QuotientRing(AlgebraPtr alg, std::shared_ptr<const LocalBaseRing> base, std::optional<IdealSpec> ideal);

    AlgebraPtr alg_;
    std::shared_ptr<const ResidueRing> residue_;
    std::optional<IdealSpec> ideal_;
    int n_;
    Elt u_;
    std::uint64_t size_ = 0;
};

GElem reduce_to_quotient(const OrderElement& x, const QuotientRing& Q);
GElem gca_mul(const QuotientRing& Q, const GElem& x, const GElem& y);

/// Lambda/I Lambda split along I = prod q_i^{s_i}.
struct CrtDecomposition {
    std::shared_ptr<const QuotientRing> whole;
    std::vector<std::shared_ptr<const QuotientRing>> parts;
    /// e_i in O_F with e_i = 1 mod q_i^{s_i} and 0 mod the other factors.
    std::vector<BaseElement> idempotents;
};

/// Throws RepeatedPrime when two factors are associate.
CrtDecomposition make_crt(const AlgebraPtr& alg, const std::vector<IdealSpec>& factors);
std::vector<GElem> crt_decompose(const CrtDecomposition& crt, const GElem& x);
GElem crt_recombine(const CrtDecomposition& crt, const std::vector<GElem>& parts);

/// A two-sided ideal of a quotient ring in one of the shapes that occur.
struct IdealDescriptor {
    enum class Shape { Zero, Whole, PrimePower, ZPower, Monomial };

    Shape shape = Shape::Zero;
    /// t for q^t Lambda / q^s Lambda; i for <z^i>.
    unsigned power = 0;
    /// Minimal monomial generators (i, j) meaning v_i z^j, 1 <= i <= g.
    std::vector<std::pair<int, int>> monomials;
    /// All monomial positions (i, j) the ideal contains.
    std::vector<std::pair<int, int>> positions;
    std::vector<SElem> idempotents;
    std::vector<GElem> generators;
    std::string name;
    std::string quotient;
    mpz_class cardinality = 0;
};

/// Membership from the shape alone (coordinate valuations, z-degree, monomial support).
bool ideal_contains(const QuotientRing& Q, const IdealDescriptor& ideal, const GElem& x);

/// The chain <z> > <z^2> > ... > <z^n> = 0 of Lambda/qLambda when u is in q.
/// Throws WrongCase unless s = 1, q is inert and u lies in q.
std::vector<IdealDescriptor> skew_poly_ideal_chain(const QuotientRing& Q);

/// Bitset over element indices.
using ElementSet = std::vector<std::uint64_t>;

bool set_contains(const ElementSet& s, std::uint64_t idx);
std::uint64_t set_count(const ElementSet& s);
/// Smallest two-sided ideal containing the generators.
ElementSet ideal_closure(const QuotientRing& Q, const std::vector<GElem>& generators);
/// Elements of the ideal, by testing every element of the ring.
ElementSet materialize_ideal(const QuotientRing& Q, const IdealDescriptor& ideal);
/// Every two-sided ideal, as sums of principal ideals; rings of at most 2^12 elements.
std::vector<ElementSet> brute_force_two_sided_ideals(const QuotientRing& Q, Exec exec = Exec::Parallel);

}  // namespace stc

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stc/finite_field.hpp"
#include "stc/residue.hpp"
#include "stc/spec_io.hpp"

namespace stc {

enum class StructureCase { InertUnit, InertNilpotent, InertUnitPower, SplitUnit, SplitNilpotent, SplitUnitPower };

std::string structure_case_name(StructureCase c);

/// Element of a certificate target: n x n matrix entries row-major, or n skew coefficients.
using TElem = std::array<std::uint32_t, kMaxDegree * kMaxDegree>;

/// The ring a quotient is identified with.  Scalars of the source base ring act through scalar().
class TargetRing {
public:
    virtual ~TargetRing() = default;

    virtual std::string name() const = 0;
    virtual mpz_class cardinality() const = 0;
    virtual TElem zero() const { return TElem{}; }
    virtual TElem one() const = 0;
    virtual TElem add(const TElem& x, const TElem& y) const = 0;
    virtual TElem mul(const TElem& x, const TElem& y) const = 0;
    /// Image of a base-ring scalar times x.
    virtual TElem scale(Elt c, const TElem& x) const = 0;
    /// Prime p with p * (torsion element) = 0 and F_p-coordinates of a p-torsion element;
    /// empty when x is not p-torsion.
    virtual long torsion_prime() const = 0;
    virtual std::vector<long> torsion_coords(const TElem& x) const = 0;
    virtual Json to_json(const TElem& x) const = 0;
};

/// M_n(R) for a local base ring R.
class MatrixRing : public TargetRing {
public:
    MatrixRing(std::shared_ptr<const LocalBaseRing> base, int n);

    int degree() const { return n_; }
    const LocalBaseRing& base() const { return *base_; }
    Elt at(const TElem& x, int r, int c) const { return x[r * n_ + c]; }
    TElem from_local(const LocalMatrix& m) const;
    TElem unit(int r, int c) const;

    std::string name() const override;
    mpz_class cardinality() const override;
    TElem one() const override;
    TElem add(const TElem& x, const TElem& y) const override;
    TElem mul(const TElem& x, const TElem& y) const override;
    TElem scale(Elt c, const TElem& x) const override;
    long torsion_prime() const override { return torsion_.p; }
    std::vector<long> torsion_coords(const TElem& x) const override;
    Json to_json(const TElem& x) const override;

private:
    std::shared_ptr<const LocalBaseRing> base_;
    int n_;
    TorsionCoordinates torsion_;
};

/// K[x; phi]/(x^n) with K a finite field and phi = Frobenius^frob_power.
class SkewQuotientRing : public TargetRing {
public:
    /// scalar_map[c] is the image in K of the base-ring residue with index c.
    SkewQuotientRing(FiniteField field, int n, int frob_power, std::vector<FiniteField::Elt> scalar_map);

    const FiniteField& field() const { return field_; }
    int degree() const { return n_; }
    int frob_power() const { return frob_; }
    TElem constant(FiniteField::Elt c) const;
    TElem x_power(int i) const;

    std::string name() const override;
    mpz_class cardinality() const override;
    TElem one() const override;
    TElem add(const TElem& x, const TElem& y) const override;
    TElem mul(const TElem& x, const TElem& y) const override;
    TElem scale(Elt c, const TElem& x) const override;
    long torsion_prime() const override { return field_.characteristic(); }
    std::vector<long> torsion_coords(const TElem& x) const override;
    Json to_json(const TElem& x) const override;

private:
    FiniteField field_;
    int n_;
    int frob_;
    std::vector<FiniteField::Elt> scalar_map_;
};

/// Forward map of Lambda/q^sLambda into a target, given by the images of the basis residues and z:
/// phi(sum_t sum_k c_{t,k} b_k z^t) = sum c_{t,k} phi(b_k) phi(z)^t.
struct IsoCertificate {
    std::shared_ptr<const TargetRing> target;
    std::vector<TElem> basis_images;
    TElem z_image{};
    /// Preimages of the matrix units E_ij (row-major), for matrix targets.
    std::vector<GElem> matrix_units;
    /// The element w with z -> lambda_{w^-1} T (matrix targets), in O_K/q^sO_K.
    std::optional<SElem> twist;
    bool verified = false;
};

/// phi(x) for a source element.
TElem certificate_image(const QuotientRing& Q, const IsoCertificate& cert, const GElem& x);

enum class VerifyMode { Exhaustive, Sampled };

struct VerificationReport {
    VerifyMode mode = VerifyMode::Sampled;
    std::uint64_t elements_checked = 0;
    std::uint64_t pairs_checked = 0;
    int kernel_rank = 0;
    int expected_rank = 0;
    mpz_class source_size = 0;
    mpz_class target_size = 0;
    bool verified = false;
};

struct VerifyOptions {
    VerifyMode mode = VerifyMode::Exhaustive;
    /// Random pairs: at least 10^4 (Sampled) or 10^5 (Exhaustive rings too big for all pairs).
    std::uint64_t pairs = 0;
    std::uint64_t seed = 1;
    Exec exec = Exec::Parallel;
};

/// Checks phi(1) = 1, phi(x g) = phi(x) phi(g), phi(g x) = phi(g) phi(x) and additivity for every
/// element x (or a sample) against the ring generators g, random pairs, additive injectivity via
/// an F_p-rank on the p-torsion, and equal cardinalities.  Throws VerificationFailed on the first
/// counterexample (lowest element index); sets cert.verified otherwise.
VerificationReport verify_isomorphism(IsoCertificate& cert, const QuotientRing& Q, const VerifyOptions& opts = {});

/// k in the component field vS with k sigma^g(k) ... sigma^{g(f-1)}(k) = target * v.
SElem solve_norm_equation(const ResidueRing& S, const SElem& v, int g, int f, Elt target);

/// M_n(O_F/q) certificate for u a unit mod q and s = 1 (inert or split).
IsoCertificate build_matrix_iso_s1(const QuotientRing& Q);
/// M_n(O_F/q^s) certificate for u a unit mod q and s > 1: the norm equation is solved mod q and
/// lifted one power of q at a time.  Carries the matrix units.
IsoCertificate lift_matrix_iso_power(const QuotientRing& Q);
/// K[x; sigma]/(x^n) certificate for the inert case with u in q, s = 1.
IsoCertificate build_skew_iso(const QuotientRing& Q);

/// A field O_K/qO_K identified with the table field F_{p^m}: to_field[index] and its inverse.
struct ResidueFieldIso {
    FiniteField field;
    std::vector<FiniteField::Elt> to_field;
    std::vector<std::uint64_t> from_field;
};

/// Throws WrongCase unless S is a field, UnsupportedSize beyond 2^16 elements.
ResidueFieldIso residue_field_iso(const ResidueRing& S);

/// Matrix units in Q as preimages of E_ij under a matrix certificate.
std::vector<GElem> matrix_units(const QuotientRing& Q, const IsoCertificate& cert);
/// e_ij e_kl = delta_jk e_il and sum e_ii = 1.
bool check_matrix_units(const QuotientRing& Q, const std::vector<GElem>& units);

/// Monomial positions: (i, j) stands for v_i z^j with 1 <= i <= g and 0 <= j < n.
using Monomial = std::pair<int, int>;

/// Is probe in the cyclic stairwell of anchor?  (p, q) with i <= p, j + (p - i) <= q < n,
/// rows taken modulo g.
bool stairwell_contains(Monomial anchor, Monomial probe, int g, int n);

struct MonomialIdeal {
    int g = 0;
    int n = 0;
    /// Minimal generators, sorted.
    std::vector<Monomial> generators;
    /// Every position in the ideal, sorted.
    std::vector<Monomial> positions;
};

/// All two-sided ideals of Lambda/qLambda for q split with u in q, s = 1, from the zero ideal up.
std::vector<MonomialIdeal> enumerate_monomial_ideals(const QuotientRing& Q, const FactorizationData& fd);
IdealDescriptor monomial_descriptor(const QuotientRing& Q, const FactorizationData& fd, const MonomialIdeal& m);

struct StructureReport {
    StructureCase kind = StructureCase::InertUnit;
    std::string algebra;
    IdealSpec ideal;
    FactorizationData factorization;
    bool u_in_q = false;
    std::string target;
    mpz_class cardinality = 0;
    std::optional<IsoCertificate> iso;
    std::optional<VerificationReport> verification;
    std::vector<IdealDescriptor> ideal_lattice;
};

struct IdentifyOptions {
    bool verify = false;
    VerifyOptions verify_options;
};

/// Case analysis of Lambda/q^sLambda.  Throws RamifiedPrime, and UnsupportedCase for u in q, s > 1.
StructureReport identify_quotient(const AlgebraPtr& alg, const IdealSpec& ideal, const IdentifyOptions& opts = {});

/// The chain q^t Lambda / q^s Lambda, t = 0..s.
std::vector<IdealDescriptor> prime_power_chain(const QuotientRing& Q);

Json ideal_to_json(const QuotientRing& Q, const IdealDescriptor& d);
Json report_to_json(const StructureReport& r, const QuotientRing& Q);
Json verification_to_json(const VerificationReport& v);

}  // namespace stc

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stc/extension.hpp"

namespace stc {

/// Cyclic algebra (K/F, sigma, u) with its natural order sum_j O_K z^j.
struct AlgebraSpec {
    std::string name;
    ExtensionPtr ext;
    BaseElement u;
    /// Informational only; nothing downstream relies on it.
    bool claims_division = false;

    int degree() const { return ext->degree; }
    BaseRingKind base_kind() const { return ext->base.kind; }
};

using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

/// x = sum_j x_j z^j with x_j in O_K (coefficients on the left).
struct OrderElement {
    AlgebraPtr alg;
    std::vector<OKElement> z;

    bool operator==(const OrderElement& o) const { return z == o.z; }
    bool operator!=(const OrderElement& o) const { return !(*this == o); }
    bool is_zero() const;
    std::string to_string() const;
};

OrderElement order_zero(const AlgebraPtr& alg);
OrderElement order_one(const AlgebraPtr& alg);
OrderElement order_z(const AlgebraPtr& alg);
/// k z^j.
OrderElement order_monomial(const AlgebraPtr& alg, const OKElement& k, int j);
OrderElement order_from_base(const AlgebraPtr& alg, const BaseElement& a);

OrderElement operator+(const OrderElement& x, const OrderElement& y);
OrderElement operator-(const OrderElement& x, const OrderElement& y);
OrderElement operator-(const OrderElement& x);
OrderElement order_mul(const OrderElement& x, const OrderElement& y);
inline OrderElement operator*(const OrderElement& x, const OrderElement& y) { return order_mul(x, y); }
OrderElement order_scale(const BaseElement& a, const OrderElement& x);

/// Square matrix with entries in O_K.
struct EmbeddedMatrix {
    int n = 0;
    std::vector<OKElement> entries;  // row-major

    const OKElement& at(int r, int c) const { return entries[r * n + c]; }
    OKElement& at(int r, int c) { return entries[r * n + c]; }
    bool operator==(const EmbeddedMatrix& o) const { return n == o.n && entries == o.entries; }
};

EmbeddedMatrix operator*(const EmbeddedMatrix& a, const EmbeddedMatrix& b);
EmbeddedMatrix operator+(const EmbeddedMatrix& a, const EmbeddedMatrix& b);

/// Entry (r, c) is sigma^c(x_{r-c mod n}), times u above the diagonal.  The matrix is that of
/// right multiplication by x, so products come out reversed: M(xy) = M(y) M(x).
EmbeddedMatrix matrix_embedding(const OrderElement& x);

/// Exact determinant of a matrix over O_K by cofactor expansion.
OKElement ok_determinant(const EmbeddedMatrix& m);

/// Characteristic polynomial det(tI - M(x)), constant term first.
std::vector<OKElement> characteristic_polynomial(const OrderElement& x);

/// det M(x) as an element of O_F; throws NotInBaseRing if it is not sigma-invariant.
BaseElement reduced_det(const OrderElement& x);

/// |det M(x)|^2 under the fixed embedding of F (i -> +i, w in the upper half plane).
double abs_det_sq(const OrderElement& x);

/// Complex matrix of M(x) under embedding 0 of K.
std::vector<std::complex<double>> complex_matrix(const OrderElement& x);

}  // namespace stc

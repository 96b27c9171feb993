#include "stc/order.hpp"

#include <sstream>

namespace stc {

namespace {

void check_algebra(const OrderElement& x, const OrderElement& y) {
    if (x.alg != y.alg && (x.alg == nullptr || y.alg == nullptr || x.alg->name != y.alg->name || x.alg->u != y.alg->u)) {
        throw Error(ErrorCode::IncompatibleAlgebras, "elements of different algebras");
    }
}

// Laplace expansion along the first row; T needs +, -, * and a zero value.
template <class T, class Mul, class Add, class Sub>
T cofactor_det(const std::vector<T>& m, int n, const T& zero, Mul mul, Add add, Sub sub) {
    if (n == 1) return m[0];
    T total = zero;
    for (int c = 0; c < n; ++c) {
        std::vector<T> minor;
        minor.reserve((n - 1) * (n - 1));
        for (int r = 1; r < n; ++r)
            for (int cc = 0; cc < n; ++cc)
                if (cc != c) minor.push_back(m[r * n + cc]);
        T term = mul(m[c], cofactor_det(minor, n - 1, zero, mul, add, sub));
        total = (c % 2 == 0) ? add(total, term) : sub(total, term);
    }
    return total;
}

using Poly = std::vector<OKElement>;

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a.size() >= b.size() ? a : b;
    const Poly& small = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < small.size(); ++i) out[i] = out[i] + small[i];
    return out;
}

Poly poly_neg(const Poly& a) {
    Poly out = a;
    for (auto& c : out) c = -c;
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, ok_zero(a[0].ext));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

}  // namespace

bool OrderElement::is_zero() const {
    for (const auto& c : z)
        if (!c.is_zero()) return false;
    return true;
}

std::string OrderElement::to_string() const {
    std::ostringstream out;
    for (std::size_t j = 0; j < z.size(); ++j) out << (j ? " + " : "") << z[j].to_string() << "*z^" << j;
    return out.str();
}

OrderElement order_zero(const AlgebraPtr& alg) {
    return {alg, std::vector<OKElement>(alg->degree(), ok_zero(alg->ext))};
}

OrderElement order_one(const AlgebraPtr& alg) { return order_monomial(alg, ok_one(alg->ext), 0); }
OrderElement order_z(const AlgebraPtr& alg) { return order_monomial(alg, ok_one(alg->ext), 1 % alg->degree()); }

OrderElement order_monomial(const AlgebraPtr& alg, const OKElement& k, int j) {
    OrderElement x = order_zero(alg);
    x.z[j] = k;
    return x;
}

OrderElement order_from_base(const AlgebraPtr& alg, const BaseElement& a) {
    return order_monomial(alg, ok_from_base(alg->ext, a), 0);
}

OrderElement operator+(const OrderElement& x, const OrderElement& y) {
    check_algebra(x, y);
    OrderElement r = x;
    for (std::size_t j = 0; j < r.z.size(); ++j) r.z[j] = r.z[j] + y.z[j];
    return r;
}

OrderElement operator-(const OrderElement& x, const OrderElement& y) {
    check_algebra(x, y);
    OrderElement r = x;
    for (std::size_t j = 0; j < r.z.size(); ++j) r.z[j] = r.z[j] - y.z[j];
    return r;
}

OrderElement operator-(const OrderElement& x) {
    OrderElement r = x;
    for (auto& c : r.z) c = -c;
    return r;
}

OrderElement order_mul(const OrderElement& x, const OrderElement& y) {
    check_algebra(x, y);
    const int n = x.alg->degree();
    OrderElement r = order_zero(x.alg);
    for (int a = 0; a < n; ++a) {
        if (x.z[a].is_zero()) continue;
        for (int b = 0; b < n; ++b) {
            if (y.z[b].is_zero()) continue;
            OKElement term = x.z[a] * apply_sigma(y.z[b], a);
            int e = a + b;
            if (e >= n) {
                term = ok_scale(x.alg->u, term);
                e -= n;
            }
            r.z[e] = r.z[e] + term;
        }
    }
    return r;
}

OrderElement order_scale(const BaseElement& a, const OrderElement& x) {
    OrderElement r = x;
    for (auto& c : r.z) c = ok_scale(a, c);
    return r;
}

EmbeddedMatrix operator*(const EmbeddedMatrix& a, const EmbeddedMatrix& b) {
    EmbeddedMatrix out{a.n, std::vector<OKElement>(a.n * a.n, ok_zero(a.entries[0].ext))};
    for (int r = 0; r < a.n; ++r)
        for (int c = 0; c < a.n; ++c)
            for (int k = 0; k < a.n; ++k) out.at(r, c) = out.at(r, c) + a.at(r, k) * b.at(k, c);
    return out;
}

EmbeddedMatrix operator+(const EmbeddedMatrix& a, const EmbeddedMatrix& b) {
    EmbeddedMatrix out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] = out.entries[i] + b.entries[i];
    return out;
}

EmbeddedMatrix matrix_embedding(const OrderElement& x) {
    const int n = x.alg->degree();
    EmbeddedMatrix m{n, std::vector<OKElement>(n * n, ok_zero(x.alg->ext))};
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            OKElement entry = apply_sigma(x.z[((r - c) % n + n) % n], c);
            m.at(r, c) = r < c ? ok_scale(x.alg->u, entry) : entry;
        }
    }
    return m;
}

OKElement ok_determinant(const EmbeddedMatrix& m) {
    return cofactor_det<OKElement>(
        m.entries, m.n, ok_zero(m.entries[0].ext), [](const OKElement& a, const OKElement& b) { return a * b; },
        [](const OKElement& a, const OKElement& b) { return a + b; },
        [](const OKElement& a, const OKElement& b) { return a - b; });
}

std::vector<OKElement> characteristic_polynomial(const OrderElement& x) {
    const int n = x.alg->degree();
    EmbeddedMatrix m = matrix_embedding(x);
    const OKElement zero = ok_zero(x.alg->ext);
    const OKElement one = ok_one(x.alg->ext);
    std::vector<Poly> entries(n * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            Poly p{-m.at(r, c)};
            if (r == c) p.push_back(one);
            entries[r * n + c] = p;
        }
    }
    Poly det = cofactor_det<Poly>(entries, n, Poly{zero}, poly_mul, poly_add,
                                  [](const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); });
    det.resize(n + 1, zero);
    return det;
}

BaseElement reduced_det(const OrderElement& x) {
    OKElement d = ok_determinant(matrix_embedding(x));
    if (apply_sigma(d) != d || !ok_in_base(d)) {
        throw Error(ErrorCode::NotInBaseRing, "determinant " + d.to_string() + " is not sigma-invariant");
    }
    return d.c[0];
}

double abs_det_sq(const OrderElement& x) { return base_norm(reduced_det(x)).get_d(); }

std::vector<std::complex<double>> complex_matrix(const OrderElement& x) {
    const int n = x.alg->degree();
    const std::complex<double> u = base_embed(x.alg->u);
    std::vector<std::complex<double>> m(n * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            std::complex<double> v = embed_complex(x.z[((r - c) % n + n) % n], c);
            m[r * n + c] = r < c ? u * v : v;
        }
    }
    return m;
}

}  // namespace stc

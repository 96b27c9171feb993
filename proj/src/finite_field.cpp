#include "stc/finite_field.hpp"

#include <sstream>

#include "stc/error.hpp"

namespace stc {

namespace {

using Poly = std::vector<int>;  // low degree first

int degree_of(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

long inverse_mod(long a, long p) {
    long result = 1;
    long e = p - 2;
    a %= p;
    while (e > 0) {
        if (e & 1) result = result * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return result;
}

Poly poly_rem(Poly a, const Poly& b, long p) {
    const int db = degree_of(b);
    const long lead_inv = inverse_mod(b[db], p);
    for (int d = degree_of(a); d >= db; d = degree_of(a)) {
        long factor = a[d] * lead_inv % p;
        for (int i = 0; i <= db; ++i) a[d - db + i] = static_cast<int>(((a[d - db + i] - factor * b[i]) % p + p) % p);
    }
    return a;
}

Poly monic_from_index(std::uint64_t index, int degree, long p) {
    Poly f(degree + 1, 0);
    for (int i = 0; i < degree; ++i) {
        f[i] = static_cast<int>(index % p);
        index /= p;
    }
    f[degree] = 1;
    return f;
}

bool is_irreducible(const Poly& f, long p) {
    const int m = degree_of(f);
    for (int d = 1; d <= m / 2; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            if (degree_of(poly_rem(f, monic_from_index(idx, d, p), p)) < 0) return false;
        }
    }
    return true;
}

}  // namespace

FiniteField::FiniteField(long p, int m) : p_(p), m_(m) {
    if (p < 2 || m < 1) throw Error(ErrorCode::InvalidSpec, "finite field needs a prime p and degree m >= 1");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw Error(ErrorCode::InvalidSpec, std::to_string(p) + " is not prime");
    std::uint64_t q = 1;
    for (int i = 0; i < m; ++i) {
        q *= static_cast<std::uint64_t>(p);
        if (q > kMaxSize) throw Error(ErrorCode::UnsupportedSize, "finite field larger than 2^16");
    }
    q_ = static_cast<std::uint32_t>(q);
    for (std::uint64_t idx = 0;; ++idx) {
        Poly f = monic_from_index(idx, m, p);
        if (is_irreducible(f, p)) {
            modulus_ = f;
            break;
        }
    }
    // smallest primitive element by index
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    for (Elt g = 1; g < q_; ++g) {
        Elt cur = 1;
        std::uint32_t order = 0;
        do {
            exp_[order] = cur;
            cur = poly_mul(cur, g);
            ++order;
        } while (cur != 1 && order < q_);
        if (order == q_ - 1) break;
    }
    for (std::uint32_t e = 0; e + 1 < q_; ++e) log_[exp_[e]] = e;
}

std::vector<int> FiniteField::coeffs(Elt x) const {
    std::vector<int> c(m_, 0);
    for (int i = 0; i < m_; ++i) {
        c[i] = static_cast<int>(x % p_);
        x /= static_cast<Elt>(p_);
    }
    return c;
}

FiniteField::Elt FiniteField::from_coeffs(const std::vector<int>& c) const {
    Elt x = 0;
    for (int i = m_ - 1; i >= 0; --i) {
        long v = i < static_cast<int>(c.size()) ? ((c[i] % p_) + p_) % p_ : 0;
        x = x * static_cast<Elt>(p_) + static_cast<Elt>(v);
    }
    return x;
}

FiniteField::Elt FiniteField::add(Elt x, Elt y) const {
    if (p_ == 2) return x ^ y;
    Elt out = 0;
    Elt scale = 1;
    for (int i = 0; i < m_; ++i) {
        Elt a = x % p_, b = y % p_;
        out += ((a + b) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return out;
}

FiniteField::Elt FiniteField::neg(Elt x) const {
    if (p_ == 2) return x;
    Elt out = 0;
    Elt scale = 1;
    for (int i = 0; i < m_; ++i) {
        Elt a = x % p_;
        out += ((p_ - a) % p_) * scale;
        x /= p_;
        scale *= p_;
    }
    return out;
}

FiniteField::Elt FiniteField::poly_mul(Elt x, Elt y) const {
    std::vector<int> a = coeffs(x), b = coeffs(y);
    Poly prod(2 * m_, 0);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) prod[i + j] = static_cast<int>((prod[i + j] + static_cast<long>(a[i]) * b[j]) % p_);
    return from_coeffs(poly_rem(prod, modulus_, p_));
}

FiniteField::Elt FiniteField::mul(Elt x, Elt y) const {
    if (x == 0 || y == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[x]) + log_[y]) % (q_ - 1)];
}

FiniteField::Elt FiniteField::inv(Elt x) const {
    if (x == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + name());
    return exp_[(q_ - 1 - log_[x]) % (q_ - 1)];
}

FiniteField::Elt FiniteField::pow(Elt x, std::uint64_t e) const {
    if (e == 0) return 1;
    if (x == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[x]) * (e % (q_ - 1))) % (q_ - 1)];
}

FiniteField::Elt FiniteField::frobenius(Elt x, int k) const {
    std::uint64_t e = 1;
    for (int i = 0; i < ((k % m_) + m_) % m_; ++i) e *= static_cast<std::uint64_t>(p_);
    return pow(x, e);
}

std::uint32_t FiniteField::log(Elt x) const {
    if (x == 0) throw Error(ErrorCode::DivisionByZero, "logarithm of zero in " + name());
    return log_[x];
}

std::string FiniteField::to_string(Elt x) const {
    std::vector<int> c = coeffs(x);
    std::ostringstream out;
    bool first = true;
    for (int i = m_ - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!first) out << "+";
        first = false;
        if (i == 0 || c[i] != 1) out << c[i];
        if (i >= 1) out << "x";
        if (i >= 2) out << "^" << i;
    }
    if (first) out << "0";
    return out.str();
}

}  // namespace stc

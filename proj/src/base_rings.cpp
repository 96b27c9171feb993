#include "stc/base_rings.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace stc {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::IncompatibleRings: return "IncompatibleRings";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::RamifiedPrime: return "RamifiedPrime";
        case ErrorCode::UnsupportedSize: return "UnsupportedSize";
        case ErrorCode::NotInBaseRing: return "NotInBaseRing";
        case ErrorCode::IncompatibleAlgebras: return "IncompatibleAlgebras";
        case ErrorCode::RepeatedPrime: return "RepeatedPrime";
        case ErrorCode::WrongCase: return "WrongCase";
        case ErrorCode::UnsupportedCase: return "UnsupportedCase";
        case ErrorCode::LiftDivergence: return "LiftDivergence";
        case ErrorCode::ZeroTarget: return "ZeroTarget";
        case ErrorCode::VerificationFailed: return "VerificationFailed";
        case ErrorCode::SingularInput: return "SingularInput";
        case ErrorCode::BadMessageLength: return "BadMessageLength";
        case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
        case ErrorCode::FormulaMismatch: return "FormulaMismatch";
        case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case ErrorCode::EmptyCode: return "EmptyCode";
        case ErrorCode::Usage: return "Usage";
    }
    return "Unknown";
}

const char* BaseRingSpec::generator_symbol() const {
    return kind == BaseRingKind::Eisenstein ? "w" : "i";
}

std::string BaseRingSpec::name() const {
    switch (kind) {
        case BaseRingKind::Integers: return "Z";
        case BaseRingKind::Gaussian: return "Z[i]";
        case BaseRingKind::Eisenstein: return "Z[w]";
    }
    return "?";
}

std::complex<double> BaseRingSpec::generator_value() const {
    switch (kind) {
        case BaseRingKind::Integers: return {0.0, 0.0};
        case BaseRingKind::Gaussian: return {0.0, 1.0};
        case BaseRingKind::Eisenstein: return {-0.5, std::sqrt(3.0) / 2.0};
    }
    return {};
}

bool BaseRingSpec::prime_splits_or_ramifies(long p) const {
    mpz_class pp = p;
    switch (kind) {
        case BaseRingKind::Integers: return true;
        case BaseRingKind::Gaussian:
            if (p == 2) return true;
            return mpz_si_kronecker(-1, pp.get_mpz_t()) == 1;
        case BaseRingKind::Eisenstein:
            if (p == 3) return true;
            return mpz_si_kronecker(-3, pp.get_mpz_t()) == 1;
    }
    return true;
}

BaseRingKind parse_base_ring_kind(const std::string& text) {
    if (text == "integers" || text == "Z") return BaseRingKind::Integers;
    if (text == "gaussian" || text == "Z[i]") return BaseRingKind::Gaussian;
    if (text == "eisenstein" || text == "Z[w]") return BaseRingKind::Eisenstein;
    throw Error(ErrorCode::InvalidSpec, "unknown base ring '" + text + "'");
}

const char* base_ring_kind_name(BaseRingKind kind) {
    switch (kind) {
        case BaseRingKind::Integers: return "integers";
        case BaseRingKind::Gaussian: return "gaussian";
        case BaseRingKind::Eisenstein: return "eisenstein";
    }
    return "?";
}

BaseElement::BaseElement(BaseRingKind k, mpz_class a_, mpz_class b_)
    : kind(k), a(std::move(a_)), b(std::move(b_)) {
    if (kind == BaseRingKind::Integers && b != 0) {
        throw Error(ErrorCode::IncompatibleRings, "integer element with a nonzero second coordinate");
    }
}

std::string BaseElement::to_string() const {
    if (kind == BaseRingKind::Integers || b == 0) return a.get_str();
    const char* sym = kind == BaseRingKind::Eisenstein ? "w" : "i";
    std::string out;
    if (a != 0) out = a.get_str();
    if (b == 1) {
        out += a != 0 ? "+" : "";
    } else if (b == -1) {
        out += "-";
    } else {
        if (b > 0 && a != 0) out += "+";
        out += b.get_str();
    }
    return out + sym;
}

namespace {

void check_same(const BaseElement& x, const BaseElement& y) {
    if (x.kind != y.kind) {
        throw Error(ErrorCode::IncompatibleRings,
                    std::string("mixing ") + base_ring_kind_name(x.kind) + " and " + base_ring_kind_name(y.kind));
    }
}

// Nearest integer to num/den (den > 0), halves going down.
mpz_class round_half_down(const mpz_class& num, const mpz_class& den) {
    mpz_class q;
    mpz_class top = 2 * num - den;
    mpz_class bottom = 2 * den;
    mpz_cdiv_q(q.get_mpz_t(), top.get_mpz_t(), bottom.get_mpz_t());
    return q;
}

}  // namespace

BaseElement operator+(const BaseElement& x, const BaseElement& y) {
    check_same(x, y);
    return BaseElement(x.kind, x.a + y.a, x.b + y.b);
}

BaseElement operator-(const BaseElement& x, const BaseElement& y) {
    check_same(x, y);
    return BaseElement(x.kind, x.a - y.a, x.b - y.b);
}

BaseElement operator-(const BaseElement& x) { return BaseElement(x.kind, -x.a, -x.b); }

BaseElement operator*(const BaseElement& x, const BaseElement& y) {
    check_same(x, y);
    switch (x.kind) {
        case BaseRingKind::Integers: return BaseElement(x.kind, x.a * y.a);
        case BaseRingKind::Gaussian: return BaseElement(x.kind, x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a);
        case BaseRingKind::Eisenstein: {
            mpz_class bd = x.b * y.b;
            return BaseElement(x.kind, x.a * y.a - bd, x.a * y.b + x.b * y.a - bd);
        }
    }
    return {};
}

BaseElement base_zero(BaseRingKind kind) { return BaseElement(kind, 0, 0); }
BaseElement base_one(BaseRingKind kind) { return BaseElement(kind, 1, 0); }

BaseElement base_generator(BaseRingKind kind) {
    if (kind == BaseRingKind::Integers) throw Error(ErrorCode::IncompatibleRings, "the integers have no generator");
    return BaseElement(kind, 0, 1);
}

BaseElement base_conj(const BaseElement& x) {
    switch (x.kind) {
        case BaseRingKind::Integers: return x;
        case BaseRingKind::Gaussian: return BaseElement(x.kind, x.a, -x.b);
        case BaseRingKind::Eisenstein: return BaseElement(x.kind, x.a - x.b, -x.b);
    }
    return x;
}

mpz_class base_norm(const BaseElement& x) {
    switch (x.kind) {
        case BaseRingKind::Integers: return x.a * x.a;
        case BaseRingKind::Gaussian: return x.a * x.a + x.b * x.b;
        case BaseRingKind::Eisenstein: return x.a * x.a - x.a * x.b + x.b * x.b;
    }
    return 0;
}

mpz_class residue_count(const BaseElement& x) {
    if (x.kind == BaseRingKind::Integers) return abs(x.a);
    return base_norm(x);
}

bool base_is_unit(const BaseElement& x) { return base_norm(x) == 1; }

std::complex<double> base_embed(const BaseElement& x) {
    BaseRingSpec spec{x.kind};
    return x.a.get_d() + x.b.get_d() * spec.generator_value();
}

BaseElement base_pow(const BaseElement& x, unsigned e) {
    BaseElement result = base_one(x.kind);
    BaseElement base = x;
    while (e != 0) {
        if (e & 1U) result = result * base;
        base = base * base;
        e >>= 1U;
    }
    return result;
}

BaseElement parse_base_element(BaseRingKind kind, const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw Error(ErrorCode::Usage, "empty ring element");
    const char sym = kind == BaseRingKind::Eisenstein ? 'w' : 'i';
    mpz_class a = 0;
    mpz_class b = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        std::string digits = s.substr(start, pos - start);
        bool is_gen = pos < s.size() && s[pos] == sym;
        if (is_gen) {
            if (kind == BaseRingKind::Integers) throw Error(ErrorCode::Usage, "integers have no generator: " + text);
            ++pos;
        }
        if (digits.empty() && !is_gen) throw Error(ErrorCode::Usage, "cannot parse ring element '" + text + "'");
        mpz_class coeff = digits.empty() ? mpz_class(1) : mpz_class(digits);
        (is_gen ? b : a) += sign * coeff;
        if (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
            throw Error(ErrorCode::Usage, "cannot parse ring element '" + text + "'");
        }
    }
    return BaseElement(kind, a, b);
}

DivMod euclidean_divmod(const BaseElement& x, const BaseElement& m) {
    check_same(x, m);
    if (m.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero in " + std::string(base_ring_kind_name(m.kind)));
    BaseElement num = x * base_conj(m);
    mpz_class den = base_norm(m);
    BaseElement q(x.kind, round_half_down(num.a, den), round_half_down(num.b, den));
    return {q, x - q * m};
}

bool base_divides(const BaseElement& d, const BaseElement& x) {
    if (d.is_zero()) return x.is_zero();
    return euclidean_divmod(x, d).remainder.is_zero();
}

BaseElement base_gcd(BaseElement x, BaseElement y) {
    check_same(x, y);
    while (!y.is_zero()) {
        BaseElement r = euclidean_divmod(x, y).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

Bezout base_xgcd(const BaseElement& x, const BaseElement& y) {
    check_same(x, y);
    const BaseRingKind k = x.kind;
    BaseElement r0 = x, r1 = y;
    BaseElement s0 = base_one(k), s1 = base_zero(k);
    BaseElement t0 = base_zero(k), t1 = base_one(k);
    while (!r1.is_zero()) {
        DivMod qr = euclidean_divmod(r0, r1);
        BaseElement s2 = s0 - qr.quotient * s1;
        BaseElement t2 = t0 - qr.quotient * t1;
        r0 = std::move(r1);
        r1 = qr.remainder;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    return {r0, s0, t0};
}

bool base_is_prime(const BaseElement& x) {
    mpz_class count = residue_count(x);
    if (count < 2) return false;
    if (mpz_probab_prime_p(count.get_mpz_t(), 30) != 0) return true;
    if (x.kind == BaseRingKind::Integers) return false;
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), count.get_mpz_t(), 2) == 0) return false;
    if (mpz_probab_prime_p(root.get_mpz_t(), 30) == 0) return false;
    if (!root.fits_slong_p()) return false;
    BaseRingSpec spec{x.kind};
    if (spec.prime_splits_or_ramifies(root.get_si())) return false;
    return base_divides(x, BaseElement(x.kind, root));
}

LocalBaseRing::LocalBaseRing(BaseRingKind kind, const BaseElement& alpha, unsigned s)
    : kind_(kind), alpha_(alpha), s_(s), local_(true) {
    if (alpha.kind != kind) throw Error(ErrorCode::IncompatibleRings, "prime lives in a different base ring");
    if (s == 0) throw Error(ErrorCode::InvalidSpec, "ideal exponent must be positive");
    if (!base_is_prime(alpha)) throw Error(ErrorCode::InvalidSpec, alpha.to_string() + " is not prime");
    modulus_ = base_pow(alpha, s);
    mpz_class fs = residue_count(alpha);
    field_size_ = fs.get_si();
    mpz_class root;
    if (mpz_probab_prime_p(fs.get_mpz_t(), 30) != 0) {
        p_ = field_size_;
    } else {
        mpz_sqrt(root.get_mpz_t(), fs.get_mpz_t());
        p_ = root.get_si();
    }
    build();
}

LocalBaseRing LocalBaseRing::from_modulus(BaseRingKind kind, const BaseElement& modulus) {
    if (modulus.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero modulus");
    LocalBaseRing ring;
    ring.kind_ = kind;
    ring.modulus_ = modulus;
    ring.alpha_ = modulus;
    ring.s_ = 1;
    ring.local_ = false;
    ring.build();
    return ring;
}

namespace {

std::string key_of(const BaseElement& x) { return x.a.get_str() + "," + x.b.get_str(); }

}  // namespace

void LocalBaseRing::build() {
    mpz_class count = residue_count(modulus_);
    if (count > kMaxSize) {
        throw Error(ErrorCode::UnsupportedSize,
                    "O_F/(" + modulus_.to_string() + ") has " + count.get_str() + " elements");
    }
    std::vector<BaseElement> reps;
    auto push = [&](const mpz_class& a, const mpz_class& b) {
        reps.push_back(euclidean_divmod(BaseElement(kind_, a, b), modulus_).remainder);
    };
    if (kind_ == BaseRingKind::Integers) {
        for (mpz_class a = 0; a < count; ++a) push(a, 0);
    } else {
        // coset representatives from the Hermite form of the lattice spanned by m and m*delta
        BaseElement md = modulus_ * base_generator(kind_);
        mpz_class d2;
        mpz_gcd(d2.get_mpz_t(), modulus_.b.get_mpz_t(), md.b.get_mpz_t());
        mpz_class det = abs(modulus_.a * md.b - modulus_.b * md.a);
        mpz_class d1 = det / d2;
        for (mpz_class b = 0; b < d2; ++b) {
            for (mpz_class a = 0; a < d1; ++a) push(a, b);
        }
    }
    std::sort(reps.begin(), reps.end(), [](const BaseElement& x, const BaseElement& y) {
        mpz_class nx = base_norm(x), ny = base_norm(y);
        if (nx != ny) return nx < ny;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    reps_ = std::move(reps);
    index_.clear();
    for (std::size_t i = 0; i < reps_.size(); ++i) {
        if (!index_.emplace(key_of(reps_[i]), static_cast<Elt>(i)).second) {
            throw Error(ErrorCode::InvalidSpec, "duplicate canonical representative");
        }
    }
    const std::size_t n = reps_.size();
    one_ = reduce(base_one(kind_));
    add_.assign(n * n, 0);
    mul_.assign(n * n, 0);
    neg_.assign(n, 0);
    inv_.assign(n, kNoInverse);
    for (std::size_t i = 0; i < n; ++i) {
        neg_[i] = static_cast<std::uint16_t>(reduce(-reps_[i]));
        for (std::size_t j = i; j < n; ++j) {
            auto s = static_cast<std::uint16_t>(reduce(reps_[i] + reps_[j]));
            auto m = static_cast<std::uint16_t>(reduce(reps_[i] * reps_[j]));
            add_[i * n + j] = add_[j * n + i] = s;
            mul_[i * n + j] = mul_[j * n + i] = m;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (mul_[i * n + j] == one_) {
                inv_[i] = static_cast<std::uint16_t>(j);
                break;
            }
        }
    }
    valuation_.assign(n, 0);
    if (local_) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == 0) {
                valuation_[i] = s_;
                continue;
            }
            unsigned t = 0;
            BaseElement cur = reps_[i];
            while (t < s_) {
                DivMod qr = euclidean_divmod(cur, alpha_);
                if (!qr.remainder.is_zero()) break;
                cur = qr.quotient;
                ++t;
            }
            valuation_[i] = t;
        }
    }
}

LocalBaseRing::Elt LocalBaseRing::inv(Elt x) const {
    if (!is_unit(x)) throw Error(ErrorCode::DivisionByZero, rep(x).to_string() + " is not a unit mod " + modulus_.to_string());
    return inv_[x];
}

LocalBaseRing::Elt LocalBaseRing::pow(Elt x, std::uint64_t e) const {
    Elt result = one_;
    while (e != 0) {
        if (e & 1U) result = mul(result, x);
        x = mul(x, x);
        e >>= 1U;
    }
    return result;
}

LocalBaseRing::Elt LocalBaseRing::reduce(const BaseElement& x) const {
    BaseElement r = euclidean_divmod(x, modulus_).remainder;
    auto it = index_.find(key_of(r));
    if (it == index_.end()) throw Error(ErrorCode::InvalidSpec, "remainder missing from representative table");
    return it->second;
}

std::string LocalBaseRing::describe() const {
    BaseRingSpec spec{kind_};
    std::ostringstream out;
    if (local_ && s_ == 1) {
        out << "F_" << field_size_;
    } else if (local_) {
        out << spec.name() << "/(" << alpha_.to_string() << ")^" << s_;
    } else {
        out << spec.name() << "/(" << modulus_.to_string() << ")";
    }
    return out.str();
}

BaseElement local_reduce(const LocalBaseRing& ring, const BaseElement& x) { return ring.rep(ring.reduce(x)); }

}  // namespace stc

#include "stc/residue.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <omp.h>

namespace stc {

ResidueRing::ResidueRing(ExtensionPtr ext, std::shared_ptr<const LocalBaseRing> base)
    : n_(ext->degree), ext_(std::move(ext)), base_(std::move(base)) {
    if (base_->kind() != ext_->base.kind) throw Error(ErrorCode::IncompatibleRings, "residue base ring mismatch");
    const int n = n_;
    mult_.assign(static_cast<std::size_t>(n) * n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) mult_[(i * n + j) * n + k] = base_->reduce(ext_->mult_table[i][j][k]);
    sigma_.assign(static_cast<std::size_t>(n) * n * n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) sigma_[(j * n + i) * n + k] = base_->reduce(ext_->sigma_powers[j][i][k]);
}

std::uint64_t ResidueRing::size() const {
    std::uint64_t out = 1;
    for (int i = 0; i < n_; ++i) out *= base_->size();
    return out;
}

SElem ResidueRing::basis(int i) const {
    SElem e{};
    e[i] = base_->one();
    return e;
}

SElem ResidueRing::scalar(Elt r) const {
    SElem e{};
    e[0] = r;
    return e;
}

SElem ResidueRing::add(const SElem& x, const SElem& y) const {
    SElem out{};
    for (int k = 0; k < n_; ++k) out[k] = base_->add(x[k], y[k]);
    return out;
}

SElem ResidueRing::sub(const SElem& x, const SElem& y) const {
    SElem out{};
    for (int k = 0; k < n_; ++k) out[k] = base_->sub(x[k], y[k]);
    return out;
}

SElem ResidueRing::neg(const SElem& x) const {
    SElem out{};
    for (int k = 0; k < n_; ++k) out[k] = base_->neg(x[k]);
    return out;
}

SElem ResidueRing::mul(const SElem& x, const SElem& y) const {
    const LocalBaseRing& R = *base_;
    const int n = n_;
    SElem out{};
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            const Elt p = R.mul(x[i], y[j]);
            const Elt* t = &mult_[(i * n + j) * n];
            for (int k = 0; k < n; ++k)
                if (t[k] != 0) out[k] = R.add(out[k], R.mul(p, t[k]));
        }
    }
    return out;
}

SElem ResidueRing::scale(Elt r, const SElem& x) const {
    SElem out{};
    for (int k = 0; k < n_; ++k) out[k] = base_->mul(r, x[k]);
    return out;
}

SElem ResidueRing::sigma(const SElem& x, int k) const {
    const LocalBaseRing& R = *base_;
    const int n = n_;
    k = ((k % n) + n) % n;
    if (k == 0) return x;
    SElem out{};
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        const Elt* t = &sigma_[(k * n + i) * n];
        for (int kk = 0; kk < n; ++kk)
            if (t[kk] != 0) out[kk] = R.add(out[kk], R.mul(x[i], t[kk]));
    }
    return out;
}

SElem ResidueRing::pow(SElem x, std::uint64_t e) const {
    SElem result = one();
    while (e != 0) {
        if (e & 1U) result = mul(result, x);
        x = mul(x, x);
        e >>= 1U;
    }
    return result;
}

bool ResidueRing::is_zero(const SElem& x) const {
    for (int k = 0; k < n_; ++k)
        if (x[k] != 0) return false;
    return true;
}

LocalMatrix ResidueRing::left_mult_matrix(const SElem& x) const {
    LocalMatrix m(n_, n_);
    for (int k = 0; k < n_; ++k) {
        SElem col = mul(x, basis(k));
        for (int r = 0; r < n_; ++r) m.at(r, k) = col[r];
    }
    return m;
}

LocalMatrix ResidueRing::sigma_matrix() const {
    LocalMatrix m(n_, n_);
    for (int k = 0; k < n_; ++k) {
        SElem col = sigma(basis(k), 1);
        for (int r = 0; r < n_; ++r) m.at(r, k) = col[r];
    }
    return m;
}

bool ResidueRing::is_unit(const SElem& x) const { return is_invertible_local(*base_, left_mult_matrix(x)); }

SElem ResidueRing::inverse(const SElem& x) const {
    LocalMatrix rhs(n_, 1);
    rhs.at(0, 0) = base_->one();
    LocalMatrix sol;
    try {
        sol = solve_local(*base_, left_mult_matrix(x), rhs);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularInput) throw;
        throw Error(ErrorCode::DivisionByZero, to_string(x) + " is not invertible");
    }
    SElem out{};
    for (int k = 0; k < n_; ++k) out[k] = sol.at(k, 0);
    return out;
}

SElem ResidueRing::norm(const SElem& x) const {
    SElem out = x;
    for (int j = 1; j < n_; ++j) out = mul(out, sigma(x, j));
    return out;
}

SElem ResidueRing::trace(const SElem& x) const {
    SElem out = x;
    for (int j = 1; j < n_; ++j) out = add(out, sigma(x, j));
    return out;
}

SElem ResidueRing::reduce(const OKElement& x) const {
    SElem out{};
    for (int k = 0; k < n_; ++k) out[k] = base_->reduce(x.c[k]);
    return out;
}

OKElement ResidueRing::lift(const SElem& x) const {
    std::vector<BaseElement> c;
    for (int k = 0; k < n_; ++k) c.push_back(base_->rep(x[k]));
    return ok_from_coords(ext_, std::move(c));
}

std::uint64_t ResidueRing::index(const SElem& x) const {
    std::uint64_t idx = 0;
    for (int k = n_ - 1; k >= 0; --k) idx = idx * base_->size() + x[k];
    return idx;
}

SElem ResidueRing::from_index(std::uint64_t idx) const {
    SElem out{};
    for (int k = 0; k < n_; ++k) {
        out[k] = static_cast<Elt>(idx % base_->size());
        idx /= base_->size();
    }
    return out;
}

std::string ResidueRing::to_string(const SElem& x) const {
    std::ostringstream out;
    out << "[";
    for (int k = 0; k < n_; ++k) out << (k ? ", " : "") << base_->rep(x[k]).to_string();
    out << "]";
    return out.str();
}

QuotientRing::QuotientRing(AlgebraPtr alg, std::shared_ptr<const LocalBaseRing> base, std::optional<IdealSpec> ideal)
    : alg_(std::move(alg)), ideal_(std::move(ideal)), n_(alg_->degree()) {
    residue_ = std::make_shared<const ResidueRing>(alg_->ext, base);
    u_ = base->reduce(alg_->u);
    mpz_class c = cardinality();
    size_ = c <= mpz_class("4611686018427387904") ? std::stoull(c.get_str()) : 0;
}

QuotientRing::QuotientRing(AlgebraPtr alg, const IdealSpec& ideal)
    : QuotientRing(alg, std::make_shared<const LocalBaseRing>(alg->base_kind(), ideal.alpha, ideal.s), ideal) {}

QuotientRing QuotientRing::from_modulus(AlgebraPtr alg, const BaseElement& modulus) {
    auto base = std::make_shared<const LocalBaseRing>(LocalBaseRing::from_modulus(alg->base_kind(), modulus));
    return QuotientRing(std::move(alg), std::move(base), std::nullopt);
}

mpz_class QuotientRing::cardinality() const {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base().size(), static_cast<unsigned long>(n_ * n_));
    return out;
}

std::uint64_t QuotientRing::size() const {
    if (size_ == 0) throw Error(ErrorCode::UnsupportedSize, "quotient ring too large to index");
    return size_;
}

GElem QuotientRing::one() const { return monomial(residue_->one(), 0); }

GElem QuotientRing::z() const {
    if (n_ == 1) return scalar(u_);
    return monomial(residue_->one(), 1);
}

GElem QuotientRing::monomial(const SElem& s, int t) const {
    GElem x{};
    set_coeff(x, t, s);
    return x;
}

GElem QuotientRing::scalar(Elt r) const { return monomial(residue_->scalar(r), 0); }

SElem QuotientRing::coeff(const GElem& x, int t) const {
    SElem s{};
    for (int k = 0; k < n_; ++k) s[k] = x[t * n_ + k];
    return s;
}

void QuotientRing::set_coeff(GElem& x, int t, const SElem& s) const {
    for (int k = 0; k < n_; ++k) x[t * n_ + k] = s[k];
}

GElem QuotientRing::add(const GElem& x, const GElem& y) const {
    GElem out{};
    const LocalBaseRing& R = base();
    for (int i = 0; i < n_ * n_; ++i) out[i] = R.add(x[i], y[i]);
    return out;
}

GElem QuotientRing::sub(const GElem& x, const GElem& y) const {
    GElem out{};
    const LocalBaseRing& R = base();
    for (int i = 0; i < n_ * n_; ++i) out[i] = R.sub(x[i], y[i]);
    return out;
}

GElem QuotientRing::neg(const GElem& x) const {
    GElem out{};
    const LocalBaseRing& R = base();
    for (int i = 0; i < n_ * n_; ++i) out[i] = R.neg(x[i]);
    return out;
}

GElem QuotientRing::mul(const GElem& x, const GElem& y) const {
    const ResidueRing& S = *residue_;
    GElem out{};
    for (int a = 0; a < n_; ++a) {
        SElem xa = coeff(x, a);
        if (S.is_zero(xa)) continue;
        for (int b = 0; b < n_; ++b) {
            SElem yb = coeff(y, b);
            if (S.is_zero(yb)) continue;
            SElem term = S.mul(xa, S.sigma(yb, a));
            int e = a + b;
            if (e >= n_) {
                term = S.scale(u_, term);
                e -= n_;
            }
            set_coeff(out, e, S.add(coeff(out, e), term));
        }
    }
    return out;
}

GElem QuotientRing::scale(Elt r, const GElem& x) const {
    GElem out{};
    for (int i = 0; i < n_ * n_; ++i) out[i] = base().mul(r, x[i]);
    return out;
}

GElem QuotientRing::pow(GElem x, std::uint64_t e) const {
    GElem result = one();
    while (e != 0) {
        if (e & 1U) result = mul(result, x);
        x = mul(x, x);
        e >>= 1U;
    }
    return result;
}

bool QuotientRing::is_zero(const GElem& x) const {
    for (int i = 0; i < n_ * n_; ++i)
        if (x[i] != 0) return false;
    return true;
}

GElem QuotientRing::reduce(const OrderElement& x) const {
    if (x.alg->name != alg_->name || x.alg->u != alg_->u || x.alg->degree() != n_) {
        throw Error(ErrorCode::IncompatibleAlgebras, "element of " + x.alg->name + " reduced in " + alg_->name);
    }
    GElem out{};
    for (int t = 0; t < n_; ++t) set_coeff(out, t, residue_->reduce(x.z[t]));
    return out;
}

OrderElement QuotientRing::lift(const GElem& x) const {
    OrderElement out = order_zero(alg_);
    for (int t = 0; t < n_; ++t) out.z[t] = residue_->lift(coeff(x, t));
    return out;
}

std::uint64_t QuotientRing::index(const GElem& x) const {
    const std::uint64_t N = base().size();
    std::uint64_t idx = 0;
    for (int i = n_ * n_ - 1; i >= 0; --i) idx = idx * N + x[i];
    return idx;
}

GElem QuotientRing::from_index(std::uint64_t idx) const {
    const std::uint64_t N = base().size();
    GElem out{};
    for (int i = 0; i < n_ * n_; ++i) {
        out[i] = static_cast<Elt>(idx % N);
        idx /= N;
    }
    return out;
}

std::vector<GElem> QuotientRing::additive_generators() const {
    std::vector<Elt> scalars{base().one()};
    if (alg_->base_kind() != BaseRingKind::Integers) scalars.push_back(base().reduce(base_generator(alg_->base_kind())));
    std::vector<GElem> out;
    for (int i = 0; i < n_ * n_; ++i) {
        for (Elt s : scalars) {
            GElem g{};
            g[i] = s;
            out.push_back(g);
        }
    }
    return out;
}

std::vector<GElem> QuotientRing::ring_generators() const {
    std::vector<GElem> out;
    for (int k = 0; k < n_; ++k) out.push_back(monomial(residue_->basis(k), 0));
    if (alg_->base_kind() != BaseRingKind::Integers) out.push_back(scalar(base().reduce(base_generator(alg_->base_kind()))));
    out.push_back(z());
    return out;
}

std::string QuotientRing::to_string(const GElem& x) const {
    std::ostringstream out;
    for (int t = 0; t < n_; ++t) out << (t ? " + " : "") << residue_->to_string(coeff(x, t)) << "*z^" << t;
    return out.str();
}

GElem reduce_to_quotient(const OrderElement& x, const QuotientRing& Q) { return Q.reduce(x); }

GElem gca_mul(const QuotientRing& Q, const GElem& x, const GElem& y) { return Q.mul(x, y); }

CrtDecomposition make_crt(const AlgebraPtr& alg, const std::vector<IdealSpec>& factors) {
    if (factors.empty()) throw Error(ErrorCode::InvalidSpec, "empty factorization");
    const BaseRingKind kind = alg->base_kind();
    for (std::size_t i = 0; i < factors.size(); ++i) {
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
            if (!base_is_unit(base_gcd(factors[i].alpha, factors[j].alpha))) {
                throw Error(ErrorCode::RepeatedPrime,
                            factors[i].alpha.to_string() + " and " + factors[j].alpha.to_string() + " generate the same prime");
            }
        }
    }
    CrtDecomposition crt;
    BaseElement modulus = base_one(kind);
    std::vector<BaseElement> powers;
    for (const auto& f : factors) {
        crt.parts.push_back(std::make_shared<const QuotientRing>(alg, f));
        powers.push_back(base_pow(f.alpha, f.s));
        modulus = modulus * powers.back();
    }
    crt.whole = std::make_shared<const QuotientRing>(QuotientRing::from_modulus(alg, modulus));
    for (const auto& m : powers) {
        BaseElement cofactor = euclidean_divmod(modulus, m).quotient;
        Bezout bz = base_xgcd(m, cofactor);
        // bz.gcd is a unit; its inverse is its conjugate
        crt.idempotents.push_back(euclidean_divmod(bz.t * cofactor * base_conj(bz.gcd), modulus).remainder);
    }
    return crt;
}

std::vector<GElem> crt_decompose(const CrtDecomposition& crt, const GElem& x) {
    const int n2 = crt.whole->degree() * crt.whole->degree();
    std::vector<GElem> out;
    for (const auto& part : crt.parts) {
        GElem y{};
        for (int i = 0; i < n2; ++i) y[i] = crt.whole->base().reduce_into(part->base(), x[i]);
        out.push_back(y);
    }
    return out;
}

GElem crt_recombine(const CrtDecomposition& crt, const std::vector<GElem>& parts) {
    if (parts.size() != crt.parts.size()) throw Error(ErrorCode::InvalidSpec, "wrong number of CRT components");
    const int n2 = crt.whole->degree() * crt.whole->degree();
    const LocalBaseRing& W = crt.whole->base();
    GElem out{};
    for (int i = 0; i < n2; ++i) {
        BaseElement acc = base_zero(W.kind());
        for (std::size_t c = 0; c < parts.size(); ++c) acc = acc + crt.idempotents[c] * crt.parts[c]->base().rep(parts[c][i]);
        out[i] = W.reduce(acc);
    }
    return out;
}

bool ideal_contains(const QuotientRing& Q, const IdealDescriptor& ideal, const GElem& x) {
    const int n = Q.degree();
    switch (ideal.shape) {
        case IdealDescriptor::Shape::Zero: return Q.is_zero(x);
        case IdealDescriptor::Shape::Whole: return true;
        case IdealDescriptor::Shape::PrimePower:
            for (int i = 0; i < n * n; ++i)
                if (Q.base().valuation(x[i]) < ideal.power) return false;
            return true;
        case IdealDescriptor::Shape::ZPower:
            for (int t = 0; t < static_cast<int>(ideal.power) && t < n; ++t)
                if (!Q.residue().is_zero(Q.coeff(x, t))) return false;
            return true;
        case IdealDescriptor::Shape::Monomial: {
            const int g = static_cast<int>(ideal.idempotents.size());
            for (int i = 1; i <= g; ++i) {
                for (int j = 0; j < n; ++j) {
                    bool inside = std::find(ideal.positions.begin(), ideal.positions.end(), std::make_pair(i, j)) !=
                                  ideal.positions.end();
                    if (inside) continue;
                    if (!Q.residue().is_zero(Q.residue().mul(ideal.idempotents[i - 1], Q.coeff(x, j)))) return false;
                }
            }
            return true;
        }
    }
    return false;
}

std::vector<IdealDescriptor> skew_poly_ideal_chain(const QuotientRing& Q) {
    if (!Q.ideal() || Q.ideal()->s != 1) throw Error(ErrorCode::WrongCase, "the z-power chain needs a prime ideal (s = 1)");
    if (Q.u() != 0) throw Error(ErrorCode::WrongCase, "u is a unit modulo " + Q.ideal()->to_string());
    FactorizationData fd = factor_prime(Q.algebra()->ext, Q.ideal()->alpha);
    if (fd.g != 1) throw Error(ErrorCode::WrongCase, "prime is not inert; ideals are monomial");
    const int n = Q.degree();
    const long field = Q.base().residue_field_size();
    std::vector<IdealDescriptor> out;
    for (int i = 1; i <= n; ++i) {
        IdealDescriptor d;
        d.shape = IdealDescriptor::Shape::ZPower;
        d.power = static_cast<unsigned>(i);
        d.generators.push_back(Q.pow(Q.z(), static_cast<std::uint64_t>(i)));
        d.name = "<z^" + std::to_string(i) + ">";
        if (i == n) d.name += " = qLambda";
        mpz_class kbar_size;
        mpz_ui_pow_ui(kbar_size.get_mpz_t(), static_cast<unsigned long>(field), static_cast<unsigned long>(n));
        const std::string kbar = "F_" + kbar_size.get_str();
        d.quotient = i == 1 ? kbar : "sum_{j<" + std::to_string(i) + "} " + kbar + " z^j";
        mpz_ui_pow_ui(d.cardinality.get_mpz_t(), static_cast<unsigned long>(field), static_cast<unsigned long>(n * (n - i)));
        out.push_back(std::move(d));
    }
    return out;
}

bool set_contains(const ElementSet& s, std::uint64_t idx) { return (s[idx >> 6] >> (idx & 63)) & 1U; }

std::uint64_t set_count(const ElementSet& s) {
    std::uint64_t c = 0;
    for (auto w : s) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
}

namespace {

void set_insert(ElementSet& s, std::uint64_t idx) { s[idx >> 6] |= (std::uint64_t{1} << (idx & 63)); }

struct Subgroup {
    ElementSet bits;
    std::vector<std::uint64_t> members;
    std::vector<GElem> gens;
};

Subgroup empty_subgroup(const QuotientRing& Q) {
    Subgroup h;
    h.bits.assign((Q.size() + 63) / 64, 0);
    set_insert(h.bits, 0);
    h.members.push_back(0);
    return h;
}

// H <- H + <w>; returns false if w was already inside.
bool extend(const QuotientRing& Q, Subgroup& h, const GElem& w) {
    std::uint64_t wi = Q.index(w);
    if (set_contains(h.bits, wi)) return false;
    const std::vector<std::uint64_t> base = h.members;
    GElem cur = w;
    while (!set_contains(h.bits, Q.index(cur))) {
        for (std::uint64_t m : base) {
            std::uint64_t idx = Q.index(Q.add(Q.from_index(m), cur));
            if (!set_contains(h.bits, idx)) {
                set_insert(h.bits, idx);
                h.members.push_back(idx);
            }
        }
        cur = Q.add(cur, w);
    }
    h.gens.push_back(w);
    return true;
}

Subgroup closure_from(const QuotientRing& Q, Subgroup h, const std::vector<GElem>& seeds) {
    const std::vector<GElem> ring_gens = Q.ring_generators();
    std::vector<GElem> queue = seeds;
    while (!queue.empty()) {
        GElem w = queue.back();
        queue.pop_back();
        if (!extend(Q, h, w)) continue;
        for (const auto& r : ring_gens) {
            queue.push_back(Q.mul(r, w));
            queue.push_back(Q.mul(w, r));
        }
    }
    return h;
}

}  // namespace

ElementSet ideal_closure(const QuotientRing& Q, const std::vector<GElem>& generators) {
    return closure_from(Q, empty_subgroup(Q), generators).bits;
}

ElementSet materialize_ideal(const QuotientRing& Q, const IdealDescriptor& ideal) {
    const std::uint64_t N = Q.size();
    if (N > (std::uint64_t{1} << 22)) throw Error(ErrorCode::TooLargeToEnumerate, "ring too large to materialize ideals");
    ElementSet s((N + 63) / 64, 0);
    for (std::uint64_t idx = 0; idx < N; ++idx)
        if (ideal_contains(Q, ideal, Q.from_index(idx))) set_insert(s, idx);
    return s;
}

std::vector<ElementSet> brute_force_two_sided_ideals(const QuotientRing& Q, Exec exec) {
    const std::uint64_t N = Q.size();
    if (N > 4096) throw Error(ErrorCode::TooLargeToEnumerate, "brute-force ideal search is limited to 2^12 elements");
    std::vector<Subgroup> principal(N);
    const Subgroup zero = empty_subgroup(Q);
    auto principal_of = [&](std::uint64_t idx) { principal[idx] = closure_from(Q, zero, {Q.from_index(idx)}); };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long long idx = 0; idx < static_cast<long long>(N); ++idx) principal_of(static_cast<std::uint64_t>(idx));
    } else {
        for (std::uint64_t idx = 0; idx < N; ++idx) principal_of(idx);
    }
    std::map<ElementSet, Subgroup> found;
    for (auto& p : principal) found.emplace(p.bits, std::move(p));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<const Subgroup*> current;
        for (const auto& kv : found) current.push_back(&kv.second);
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                Subgroup sum = *current[i];
                for (const auto& g : current[j]->gens) extend(Q, sum, g);
                if (!found.count(sum.bits)) {
                    found.emplace(sum.bits, std::move(sum));
                    grew = true;
                }
            }
        }
    }
    std::vector<ElementSet> out;
    for (const auto& kv : found) out.push_back(kv.first);
    std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
        std::uint64_t ca = set_count(a), cb = set_count(b);
        if (ca != cb) return ca < cb;
        return a < b;
    });
    return out;
}

}  // namespace stc

#include "stc/structure.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <omp.h>

namespace stc {

std::string structure_case_name(StructureCase c) {
    switch (c) {
        case StructureCase::InertUnit: return "inert-unit";
        case StructureCase::InertNilpotent: return "inert-nilpotent";
        case StructureCase::InertUnitPower: return "inert-unit-power";
        case StructureCase::SplitUnit: return "split-unit";
        case StructureCase::SplitNilpotent: return "split-nilpotent";
        case StructureCase::SplitUnitPower: return "split-unit-power";
    }
    return "unknown";
}

// ---------------------------------------------------------------- MatrixRing

MatrixRing::MatrixRing(std::shared_ptr<const LocalBaseRing> base, int n)
    : base_(std::move(base)), n_(n), torsion_(torsion_coordinates(*base_)) {
    if (n < 1 || n > kMaxDegree) throw Error(ErrorCode::InvalidSpec, "matrix size out of range");
}

TElem MatrixRing::from_local(const LocalMatrix& m) const {
    if (m.rows != n_ || m.cols != n_) throw Error(ErrorCode::InvalidSpec, "matrix shape mismatch");
    TElem out{};
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) out[r * n_ + c] = m.at(r, c);
    return out;
}

TElem MatrixRing::unit(int r, int c) const {
    TElem out{};
    out[r * n_ + c] = base_->one();
    return out;
}

std::string MatrixRing::name() const { return "M_" + std::to_string(n_) + "(" + base_->describe() + ")"; }

mpz_class MatrixRing::cardinality() const {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base_->size(), static_cast<unsigned long>(n_ * n_));
    return out;
}

TElem MatrixRing::one() const {
    TElem out{};
    for (int i = 0; i < n_; ++i) out[i * n_ + i] = base_->one();
    return out;
}

TElem MatrixRing::add(const TElem& x, const TElem& y) const {
    TElem out{};
    for (int i = 0; i < n_ * n_; ++i) out[i] = base_->add(x[i], y[i]);
    return out;
}

TElem MatrixRing::mul(const TElem& x, const TElem& y) const {
    TElem out{};
    for (int r = 0; r < n_; ++r) {
        for (int k = 0; k < n_; ++k) {
            const Elt a = x[r * n_ + k];
            if (a == 0) continue;
            for (int c = 0; c < n_; ++c) out[r * n_ + c] = base_->add(out[r * n_ + c], base_->mul(a, y[k * n_ + c]));
        }
    }
    return out;
}

TElem MatrixRing::scale(Elt c, const TElem& x) const {
    TElem out{};
    for (int i = 0; i < n_ * n_; ++i) out[i] = base_->mul(c, x[i]);
    return out;
}

std::vector<long> MatrixRing::torsion_coords(const TElem& x) const {
    std::vector<long> out;
    for (int i = 0; i < n_ * n_; ++i) {
        if (!torsion_.in_torsion(x[i])) return {};
        const auto& c = torsion_.coords[x[i]];
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

Json MatrixRing::to_json(const TElem& x) const {
    Json rows = Json::array();
    for (int r = 0; r < n_; ++r) {
        Json row = Json::array();
        for (int c = 0; c < n_; ++c) row.push_back(base_->rep(x[r * n_ + c]).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------- SkewQuotientRing

SkewQuotientRing::SkewQuotientRing(FiniteField field, int n, int frob_power, std::vector<FiniteField::Elt> scalar_map)
    : field_(std::move(field)), n_(n), frob_(frob_power), scalar_map_(std::move(scalar_map)) {
    if (n < 1 || n > kMaxDegree * kMaxDegree) throw Error(ErrorCode::InvalidSpec, "skew degree out of range");
}

TElem SkewQuotientRing::constant(FiniteField::Elt c) const {
    TElem out{};
    out[0] = c;
    return out;
}

TElem SkewQuotientRing::x_power(int i) const {
    TElem out{};
    if (i < n_) out[i] = field_.one();
    return out;
}

std::string SkewQuotientRing::name() const {
    return field_.name() + "[x; Frob^" + std::to_string(frob_) + "]/(x^" + std::to_string(n_) + ")";
}

mpz_class SkewQuotientRing::cardinality() const {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), field_.size(), static_cast<unsigned long>(n_));
    return out;
}

TElem SkewQuotientRing::one() const { return constant(field_.one()); }

TElem SkewQuotientRing::add(const TElem& x, const TElem& y) const {
    TElem out{};
    for (int i = 0; i < n_; ++i) out[i] = field_.add(x[i], y[i]);
    return out;
}

TElem SkewQuotientRing::mul(const TElem& x, const TElem& y) const {
    TElem out{};
    for (int i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; i + j < n_; ++j) {
            if (y[j] == 0) continue;
            const auto twisted = field_.frobenius(y[j], frob_ * i);
            out[i + j] = field_.add(out[i + j], field_.mul(x[i], twisted));
        }
    }
    return out;
}

TElem SkewQuotientRing::scale(Elt c, const TElem& x) const {
    TElem out{};
    const auto k = scalar_map_.at(c);
    for (int i = 0; i < n_; ++i) out[i] = field_.mul(k, x[i]);
    return out;
}

std::vector<long> SkewQuotientRing::torsion_coords(const TElem& x) const {
    std::vector<long> out;
    for (int i = 0; i < n_; ++i) {
        for (int c : field_.coeffs(x[i])) out.push_back(c);
    }
    return out;
}

Json SkewQuotientRing::to_json(const TElem& x) const {
    Json out = Json::array();
    for (int i = 0; i < n_; ++i) out.push_back(field_.to_string(x[i]));
    return out;
}

// ------------------------------------------------------------- forward map

namespace {

// phi on the R-basis c * b_k z^t, cached for repeated evaluation.
class ForwardMap {
public:
    ForwardMap(const QuotientRing& Q, const IsoCertificate& cert) : T_(*cert.target), n_(Q.degree()) {
        if (static_cast<int>(cert.basis_images.size()) != n_) throw Error(ErrorCode::InvalidSpec, "certificate needs one image per basis element");
        TElem zt = T_.one();
        for (int t = 0; t < n_; ++t) {
            for (int k = 0; k < n_; ++k) images_.push_back(T_.mul(cert.basis_images[k], zt));
            zt = T_.mul(zt, cert.z_image);
        }
    }

    TElem operator()(const GElem& x) const {
        TElem acc = T_.zero();
        for (int i = 0; i < n_ * n_; ++i) {
            if (x[i] != 0) acc = T_.add(acc, T_.scale(x[i], images_[i]));
        }
        return acc;
    }

    const TElem& image(int pos) const { return images_[pos]; }

private:
    const TargetRing& T_;
    int n_;
    std::vector<TElem> images_;
};

GElem random_element(const QuotientRing& Q, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> coord(0, static_cast<std::uint32_t>(Q.base().size() - 1));
    GElem x{};
    for (int i = 0; i < Q.degree() * Q.degree(); ++i) x[i] = coord(rng);
    return x;
}

constexpr std::uint64_t kExhaustiveElementLimit = std::uint64_t{1} << 16;
constexpr std::uint64_t kAllPairsLimit = std::uint64_t{1} << 20;
constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// Lowest i in [0, count) with bad(i), or kNone.
template <typename Pred>
std::uint64_t first_failure(std::uint64_t count, Exec exec, Pred bad) {
    if (exec == Exec::Serial) {
        for (std::uint64_t i = 0; i < count; ++i)
            if (bad(i)) return i;
        return kNone;
    }
    std::uint64_t found = kNone;
#pragma omp parallel for schedule(dynamic, 256) reduction(min : found)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        if (idx < found && bad(idx)) found = idx;
    }
    return found;
}

}  // namespace

TElem certificate_image(const QuotientRing& Q, const IsoCertificate& cert, const GElem& x) { return ForwardMap(Q, cert)(x); }

VerificationReport verify_isomorphism(IsoCertificate& cert, const QuotientRing& Q, const VerifyOptions& opts) {
    if (!cert.target) throw Error(ErrorCode::InvalidSpec, "certificate has no target");
    const TargetRing& T = *cert.target;
    const ForwardMap phi(Q, cert);
    VerificationReport rep;
    rep.mode = opts.mode;
    rep.source_size = Q.cardinality();
    rep.target_size = T.cardinality();

    auto fail = [&](const std::string& what) { throw Error(ErrorCode::VerificationFailed, what); };

    if (phi(Q.one()) != T.one()) fail("phi(1) != 1");

    const std::vector<GElem> ring_gens = Q.ring_generators();
    const std::vector<GElem> add_gens = Q.additive_generators();
    std::vector<TElem> ring_imgs, add_imgs;
    for (const auto& g : ring_gens) ring_imgs.push_back(phi(g));
    for (const auto& a : add_gens) add_imgs.push_back(phi(a));

    auto element_bad = [&](const GElem& x) {
        const TElem fx = phi(x);
        for (std::size_t i = 0; i < ring_gens.size(); ++i) {
            if (phi(Q.mul(x, ring_gens[i])) != T.mul(fx, ring_imgs[i])) return true;
            if (phi(Q.mul(ring_gens[i], x)) != T.mul(ring_imgs[i], fx)) return true;
        }
        for (std::size_t i = 0; i < add_gens.size(); ++i) {
            if (phi(Q.add(x, add_gens[i])) != T.add(fx, add_imgs[i])) return true;
        }
        return false;
    };
    auto pair_bad = [&](const GElem& x, const GElem& y) {
        const TElem fx = phi(x), fy = phi(y);
        return phi(Q.mul(x, y)) != T.mul(fx, fy) || phi(Q.add(x, y)) != T.add(fx, fy);
    };

    const mpz_class& N = rep.source_size;
    std::mt19937_64 rng(opts.seed);
    bool all_pairs = false;
    if (opts.mode == VerifyMode::Exhaustive) {
        if (N > kExhaustiveElementLimit) throw Error(ErrorCode::UnsupportedSize, "exhaustive verification needs at most 2^16 elements");
        const std::uint64_t count = N.get_ui();
        const std::uint64_t bad = first_failure(count, opts.exec, [&](std::uint64_t i) { return element_bad(Q.from_index(i)); });
        if (bad != kNone) fail("multiplicativity or additivity fails at x = " + Q.to_string(Q.from_index(bad)));
        rep.elements_checked = count;
        if (count * count <= kAllPairsLimit) {
            const std::uint64_t badp = first_failure(count * count, opts.exec, [&](std::uint64_t i) {
                return pair_bad(Q.from_index(i / count), Q.from_index(i % count));
            });
            if (badp != kNone) {
                fail("phi fails on the pair x = " + Q.to_string(Q.from_index(badp / count)) +
                     ", y = " + Q.to_string(Q.from_index(badp % count)));
            }
            rep.pairs_checked = count * count;
            all_pairs = true;
        } else {
            rep.pairs_checked = std::max<std::uint64_t>(opts.pairs, 100000);
        }
    } else {
        const std::uint64_t count = 10000;
        std::vector<GElem> xs(count);
        for (auto& x : xs) x = random_element(Q, rng);
        const std::uint64_t bad = first_failure(count, opts.exec, [&](std::uint64_t i) { return element_bad(xs[i]); });
        if (bad != kNone) fail("multiplicativity or additivity fails at x = " + Q.to_string(xs[bad]));
        rep.elements_checked = count;
        rep.pairs_checked = std::max<std::uint64_t>(opts.pairs, 10000);
    }
    if (!all_pairs) {
        std::vector<std::pair<GElem, GElem>> pairs(rep.pairs_checked);
        for (auto& [x, y] : pairs) {
            x = random_element(Q, rng);
            y = random_element(Q, rng);
        }
        const std::uint64_t bad = first_failure(pairs.size(), opts.exec, [&](std::uint64_t i) { return pair_bad(pairs[i].first, pairs[i].second); });
        if (bad != kNone) fail("phi fails on the pair x = " + Q.to_string(pairs[bad].first) + ", y = " + Q.to_string(pairs[bad].second));
    }

    const LocalBaseRing& R = Q.base();
    const TorsionCoordinates tc = torsion_coordinates(R);
    if (tc.p != T.torsion_prime()) fail("source and target have different characteristic primes");
    std::vector<std::vector<long>> rows;
    const int n2 = Q.degree() * Q.degree();
    for (int pos = 0; pos < n2; ++pos) {
        for (Elt b : tc.basis) {
            GElem e{};
            e[pos] = b;
            std::vector<long> coords = T.torsion_coords(phi(e));
            if (coords.empty()) fail("phi maps a p-torsion element outside the p-torsion");
            rows.push_back(std::move(coords));
        }
    }
    rep.expected_rank = n2 * tc.dim;
    rep.kernel_rank = rank_mod_p(rows, tc.p);
    if (rep.kernel_rank != rep.expected_rank) {
        fail("phi has a nonzero kernel: rank " + std::to_string(rep.kernel_rank) + " < " + std::to_string(rep.expected_rank));
    }
    if (rep.source_size != rep.target_size) fail("cardinalities differ: " + rep.source_size.get_str() + " vs " + rep.target_size.get_str());
    rep.verified = true;
    cert.verified = true;
    return rep;
}

// ------------------------------------------------------------- certificates

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d) continue;
        out.push_back(d);
        while (m % d == 0) m /= d;
    }
    if (m > 1) out.push_back(m);
    return out;
}

const IdealSpec& require_ideal(const QuotientRing& Q) {
    if (!Q.ideal()) throw Error(ErrorCode::InvalidSpec, "quotient is not by a prime power");
    return *Q.ideal();
}

IsoCertificate build_matrix_iso(const QuotientRing& Q) {
    const IdealSpec& ideal = require_ideal(Q);
    const AlgebraPtr& alg = Q.algebra();
    const LocalBaseRing& R = Q.base();
    if (!R.is_unit(Q.u())) throw Error(ErrorCode::WrongCase, "u lies in " + ideal.alpha.to_string());
    const FactorizationData fd = factor_prime(alg->ext, ideal.alpha);

    auto R1 = std::make_shared<const LocalBaseRing>(alg->base_kind(), ideal.alpha, 1);
    const ResidueRing S1(alg->ext, R1);
    const Elt target = R1->inv(R1->reduce(alg->u));
    const SElem v1 = fd.idempotents.front();
    const SElem k = solve_norm_equation(S1, v1, fd.g, fd.f, target);
    const SElem wbar = S1.add(k, S1.sub(S1.one(), v1));
    if (S1.norm(wbar) != S1.scalar(target)) throw Error(ErrorCode::InvalidSpec, "norm equation solution is wrong");

    const ResidueRing& S = Q.residue();
    SElem w = S.reduce(S1.lift(wbar));
    const unsigned s = ideal.s;
    if (s > 1) {
        int unit_trace = -1;
        for (int i = 0; i < S.degree() && unit_trace < 0; ++i)
            if (R.is_unit(S.trace(S.basis(i))[0])) unit_trace = i;
        if (unit_trace < 0) throw Error(ErrorCode::LiftDivergence, "no basis element has unit trace");
        const SElem b = S.basis(unit_trace);
        const Elt tr_inv = R.inv(S.trace(b)[0]);
        bool done = false;
        for (unsigned round = 0; round < s + 2; ++round) {
            const SElem nw = S.norm(w);
            for (int i = 1; i < S.degree(); ++i)
                if (nw[i] != 0) throw Error(ErrorCode::LiftDivergence, "norm left the base ring");
            const Elt d = R.mul(Q.u(), nw[0]);
            if (d == R.one()) {
                done = true;
                break;
            }
            const Elt e = R.sub(d, R.one());
            const Elt coef = R.neg(R.mul(R.mul(e, R.inv(d)), tr_inv));
            w = S.mul(w, S.add(S.one(), S.scale(coef, b)));
        }
        if (!done) throw Error(ErrorCode::LiftDivergence, "norm lift did not converge in " + std::to_string(s + 2) + " rounds");
    }

    auto target_ring = std::make_shared<const MatrixRing>(S.base_ptr(), Q.degree());
    IsoCertificate cert;
    for (int i = 0; i < Q.degree(); ++i) cert.basis_images.push_back(target_ring->from_local(S.left_mult_matrix(S.basis(i))));
    const LocalMatrix Z = mat_mul(R, S.left_mult_matrix(S.inverse(w)), S.sigma_matrix());
    cert.z_image = target_ring->from_local(Z);
    cert.twist = w;
    cert.target = target_ring;
    cert.matrix_units = matrix_units(Q, cert);
    return cert;
}

}  // namespace

SElem solve_norm_equation(const ResidueRing& S, const SElem& v, int g, int f, Elt target) {
    if (target == 0 || !S.base().is_unit(target)) throw Error(ErrorCode::ZeroTarget, "norm target must be a unit");
    const SElem tv = S.scale(target, v);
    auto norm = [&](const SElem& k) {
        SElem acc = k;
        for (int i = 1; i < f; ++i) acc = S.mul(acc, S.sigma(k, g * i));
        return acc;
    };
    if (f == 1) return tv;
    std::vector<char> seen(S.size(), 0);
    std::vector<SElem> comp;
    for (std::uint64_t idx = 0; idx < S.size(); ++idx) {
        const SElem y = S.mul(v, S.from_index(idx));
        const auto iy = S.index(y);
        if (seen[iy]) continue;
        seen[iy] = 1;
        if (!S.is_zero(y)) comp.push_back(y);
    }
    const std::uint64_t order = comp.size();
    const auto primes = prime_divisors(order);
    for (const auto& gamma : comp) {
        bool generates = true;
        for (auto l : primes)
            if (S.pow(gamma, order / l) == v) generates = false;
        if (!generates) continue;
        const SElem ngamma = norm(gamma);
        SElem acc = v;
        SElem power = v;
        for (std::uint64_t m = 0; m < order; ++m) {
            if (acc == tv) return power;
            acc = S.mul(acc, ngamma);
            power = S.mul(power, gamma);
        }
        break;
    }
    for (const auto& c : comp)
        if (norm(c) == tv) return c;
    throw Error(ErrorCode::InvalidSpec, "norm equation has no solution");
}

IsoCertificate build_matrix_iso_s1(const QuotientRing& Q) {
    if (require_ideal(Q).s != 1) throw Error(ErrorCode::WrongCase, "expected a prime ideal (s = 1)");
    return build_matrix_iso(Q);
}

IsoCertificate lift_matrix_iso_power(const QuotientRing& Q) {
    require_ideal(Q);
    return build_matrix_iso(Q);
}

ResidueFieldIso residue_field_iso(const ResidueRing& S) {
    const std::uint64_t N = S.size();
    if (N > FiniteField::kMaxSize) throw Error(ErrorCode::UnsupportedSize, "residue field exceeds 2^16 elements");
    const long p = S.base().characteristic();
    int m = 0;
    for (std::uint64_t acc = 1; acc < N; acc *= static_cast<std::uint64_t>(p)) ++m;
    FiniteField F(p, m);
    const std::uint64_t order = N - 1;

    const auto primes = prime_divisors(order);
    SElem gamma{};
    bool found = false;
    for (std::uint64_t idx = 1; idx < N && !found; ++idx) {
        const SElem c = S.from_index(idx);
        if (!S.is_unit(c)) continue;
        bool generates = true;
        for (auto l : primes)
            if (S.pow(c, order / l) == S.one()) generates = false;
        if (generates && S.pow(c, order) == S.one()) {
            gamma = c;
            found = true;
        }
    }
    if (!found) throw Error(ErrorCode::WrongCase, "residue ring is not a field");

    std::vector<std::uint32_t> log_s(N, 0);
    std::vector<std::uint64_t> plus_one(order);
    SElem acc = S.one();
    for (std::uint64_t e = 0; e < order; ++e) {
        const auto idx = S.index(acc);
        if (e > 0 && idx == S.index(S.one())) throw Error(ErrorCode::WrongCase, "residue ring is not a field");
        log_s[idx] = static_cast<std::uint32_t>(e);
        plus_one[e] = S.index(S.add(acc, S.one()));
        acc = S.mul(acc, gamma);
    }
    std::uint64_t chosen = 0;
    auto psi = [&](std::uint64_t idx) -> FiniteField::Elt {
        return idx == 0 ? 0 : F.generator_power(chosen * log_s[idx] % order);
    };
    found = false;
    for (std::uint64_t le = 1; le <= order && !found; ++le) {
        if (std::gcd(le, order) != 1) continue;
        chosen = le;
        bool ok = true;
        for (std::uint64_t e = 0; e < order && ok; ++e)
            ok = psi(plus_one[e]) == F.add(F.generator_power(chosen * e % order), F.one());
        found = ok;
    }
    if (!found) throw Error(ErrorCode::InvalidSpec, "no field isomorphism onto " + F.name());

    ResidueFieldIso iso{F, std::vector<FiniteField::Elt>(N), std::vector<std::uint64_t>(N)};
    for (std::uint64_t idx = 0; idx < N; ++idx) {
        iso.to_field[idx] = psi(idx);
        iso.from_field[iso.to_field[idx]] = idx;
    }
    return iso;
}

IsoCertificate build_skew_iso(const QuotientRing& Q) {
    const IdealSpec& ideal = require_ideal(Q);
    if (ideal.s != 1) throw Error(ErrorCode::WrongCase, "expected a prime ideal (s = 1)");
    if (Q.u() != 0) throw Error(ErrorCode::WrongCase, "u is a unit modulo " + ideal.alpha.to_string());
    const FactorizationData fd = factor_prime(Q.algebra()->ext, ideal.alpha);
    if (fd.g != 1) throw Error(ErrorCode::WrongCase, "prime is not inert");
    const ResidueRing& S = Q.residue();
    const ResidueFieldIso iso = residue_field_iso(S);
    const FiniteField& F = iso.field;
    auto psi = [&](const SElem& x) { return iso.to_field[S.index(x)]; };

    const SElem gamma = S.from_index(iso.from_field[F.generator()]);
    const auto psi_sigma_gamma = psi(S.sigma(gamma, 1));
    int frob = -1;
    for (int r = 0; r < F.degree() && frob < 0; ++r)
        if (F.frobenius(F.generator(), r) == psi_sigma_gamma) frob = r;
    if (frob < 0) throw Error(ErrorCode::InvalidSpec, "sigma is not a power of Frobenius");

    std::vector<FiniteField::Elt> scalar_map(S.base().size());
    for (Elt c = 0; c < S.base().size(); ++c) scalar_map[c] = psi(S.scalar(c));
    auto target = std::make_shared<const SkewQuotientRing>(F, Q.degree(), frob, scalar_map);
    IsoCertificate cert;
    for (int i = 0; i < Q.degree(); ++i) cert.basis_images.push_back(target->constant(psi(S.basis(i))));
    cert.z_image = target->x_power(1);
    cert.target = target;
    return cert;
}

std::vector<GElem> matrix_units(const QuotientRing& Q, const IsoCertificate& cert) {
    auto target = std::dynamic_pointer_cast<const MatrixRing>(cert.target);
    if (!target) throw Error(ErrorCode::WrongCase, "matrix units need a matrix target");
    const int n = Q.degree();
    const int n2 = n * n;
    const LocalBaseRing& R = Q.base();
    const ForwardMap phi(Q, cert);
    LocalMatrix A(n2, n2);
    for (int pos = 0; pos < n2; ++pos)
        for (int e = 0; e < n2; ++e) A.at(e, pos) = phi.image(pos)[e];
    LocalMatrix X = solve_local(R, A, mat_identity(R, n2));
    std::vector<GElem> out;
    for (int e = 0; e < n2; ++e) {
        GElem u{};
        for (int pos = 0; pos < n2; ++pos) u[pos] = X.at(pos, e);
        out.push_back(u);
    }
    return out;
}

bool check_matrix_units(const QuotientRing& Q, const std::vector<GElem>& units) {
    const int n = Q.degree();
    if (static_cast<int>(units.size()) != n * n) return false;
    GElem diag = Q.zero();
    for (int i = 0; i < n; ++i) diag = Q.add(diag, units[i * n + i]);
    if (diag != Q.one()) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const GElem prod = Q.mul(units[i * n + j], units[k * n + l]);
                    if (prod != (j == k ? units[i * n + l] : Q.zero())) return false;
                }
    return true;
}

// --------------------------------------------------------- monomial ideals

bool stairwell_contains(Monomial anchor, Monomial probe, int g, int n) {
    const auto [i, j] = anchor;
    const auto [p, q] = probe;
    if (i < 1 || i > g || p < 1 || p > g || j < 0 || j >= n || q < 0 || q >= n) return false;
    const int shift = ((p - i) % g + g) % g;
    return q >= j + shift;
}

std::vector<MonomialIdeal> enumerate_monomial_ideals(const QuotientRing& Q, const FactorizationData& fd) {
    const IdealSpec& ideal = require_ideal(Q);
    if (ideal.s != 1 || Q.u() != 0 || fd.g < 2) throw Error(ErrorCode::WrongCase, "monomial ideals need q split, u in q and s = 1");
    const int g = fd.g;
    const int n = Q.degree();
    std::vector<Monomial> grid;
    for (int i = 1; i <= g; ++i)
        for (int j = 0; j < n; ++j) grid.emplace_back(i, j);
    const int cells = static_cast<int>(grid.size());
    std::vector<std::uint32_t> closure(cells, 0);
    for (int a = 0; a < cells; ++a)
        for (int b = 0; b < cells; ++b)
            if (stairwell_contains(grid[a], grid[b], g, n)) closure[a] |= 1U << b;

    std::vector<MonomialIdeal> out;
    for (std::uint32_t mask = 0; mask < (1U << cells); ++mask) {
        bool closed = true;
        for (int a = 0; a < cells && closed; ++a)
            if ((mask >> a & 1U) && (closure[a] & ~mask)) closed = false;
        if (!closed) continue;
        MonomialIdeal m;
        m.g = g;
        m.n = n;
        for (int a = 0; a < cells; ++a) {
            if (!(mask >> a & 1U)) continue;
            m.positions.push_back(grid[a]);
            bool minimal = true;
            for (int b = 0; b < cells && minimal; ++b)
                if (b != a && (mask >> b & 1U) && (closure[b] >> a & 1U)) minimal = false;
            if (minimal) m.generators.push_back(grid[a]);
        }
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const MonomialIdeal& x, const MonomialIdeal& y) {
        if (x.positions.size() != y.positions.size()) return x.positions.size() < y.positions.size();
        return x.positions < y.positions;
    });
    return out;
}

IdealDescriptor monomial_descriptor(const QuotientRing& Q, const FactorizationData& fd, const MonomialIdeal& m) {
    IdealDescriptor d;
    d.shape = IdealDescriptor::Shape::Monomial;
    d.monomials = m.generators;
    d.positions = m.positions;
    d.idempotents.assign(fd.idempotents.begin(), fd.idempotents.end());
    std::ostringstream name;
    if (m.generators.empty()) {
        name << "0";
    } else {
        name << "<";
        for (std::size_t k = 0; k < m.generators.size(); ++k) {
            const auto [i, j] = m.generators[k];
            name << (k ? ", " : "") << "v" << i << " z^" << j;
            d.generators.push_back(Q.monomial(fd.idempotents[i - 1], j));
        }
        name << ">";
    }
    d.name = name.str();
    mpz_ui_pow_ui(d.cardinality.get_mpz_t(), static_cast<unsigned long>(Q.base().residue_field_size()),
                  static_cast<unsigned long>(fd.f * m.positions.size()));
    const std::size_t rest = static_cast<std::size_t>(m.g * m.n) - m.positions.size();
    d.quotient = std::to_string(rest) + " of " + std::to_string(m.g * m.n) + " monomial positions";
    return d;
}

// ------------------------------------------------------------ identification

std::vector<IdealDescriptor> prime_power_chain(const QuotientRing& Q) {
    const IdealSpec& ideal = require_ideal(Q);
    const unsigned s = ideal.s;
    const int n = Q.degree();
    const LocalBaseRing& R = Q.base();
    std::vector<IdealDescriptor> out;
    for (unsigned t = 0; t <= s; ++t) {
        IdealDescriptor d;
        d.shape = t == 0 ? IdealDescriptor::Shape::Whole : t == s ? IdealDescriptor::Shape::Zero : IdealDescriptor::Shape::PrimePower;
        d.power = t;
        const std::string q = "(" + ideal.alpha.to_string() + ")";
        if (t == 0) {
            d.name = "Lambda/" + q + "^" + std::to_string(s) + "Lambda";
            d.generators.push_back(Q.one());
        } else if (t == s) {
            d.name = "0";
        } else {
            d.name = q + "^" + std::to_string(t) + "Lambda";
            d.generators.push_back(Q.scalar(R.pow(R.reduce(ideal.alpha), t)));
        }
        if (t == 0) {
            d.quotient = "0";
        } else {
            LocalBaseRing Rt(R.kind(), ideal.alpha, t);
            d.quotient = "M_" + std::to_string(n) + "(" + Rt.describe() + ")";
        }
        mpz_ui_pow_ui(d.cardinality.get_mpz_t(), static_cast<unsigned long>(R.residue_field_size()),
                      static_cast<unsigned long>((s - t) * n * n));
        out.push_back(std::move(d));
    }
    return out;
}

StructureReport identify_quotient(const AlgebraPtr& alg, const IdealSpec& ideal, const IdentifyOptions& opts) {
    const QuotientRing Q(alg, ideal);
    StructureReport r;
    r.algebra = alg->name;
    r.ideal = ideal;
    r.factorization = factor_prime(alg->ext, ideal.alpha);
    r.u_in_q = Q.base().valuation(Q.u()) >= 1;
    r.cardinality = Q.cardinality();
    const bool inert = r.factorization.g == 1;
    const unsigned s = ideal.s;
    if (r.u_in_q && s > 1) {
        throw Error(ErrorCode::UnsupportedCase, "u lies in " + ideal.alpha.to_string() + " and s > 1");
    }
    if (!r.u_in_q) {
        r.kind = inert ? (s == 1 ? StructureCase::InertUnit : StructureCase::InertUnitPower)
                       : (s == 1 ? StructureCase::SplitUnit : StructureCase::SplitUnitPower);
        r.iso = s == 1 ? build_matrix_iso_s1(Q) : lift_matrix_iso_power(Q);
        r.target = r.iso->target->name();
        r.ideal_lattice = prime_power_chain(Q);
    } else if (inert) {
        r.kind = StructureCase::InertNilpotent;
        IdealDescriptor whole;
        whole.shape = IdealDescriptor::Shape::Whole;
        whole.name = "Lambda/(" + ideal.alpha.to_string() + ")Lambda";
        whole.generators.push_back(Q.one());
        whole.quotient = "0";
        whole.cardinality = Q.cardinality();
        r.ideal_lattice.push_back(std::move(whole));
        for (auto& d : skew_poly_ideal_chain(Q)) r.ideal_lattice.push_back(std::move(d));
        try {
            r.iso = build_skew_iso(Q);
            r.target = r.iso->target->name();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::UnsupportedSize) throw;
            mpz_class kbar;
            mpz_ui_pow_ui(kbar.get_mpz_t(), static_cast<unsigned long>(Q.base().residue_field_size()),
                          static_cast<unsigned long>(Q.degree()));
            r.target = "F_" + kbar.get_str() + "[x; sigma]/(x^" + std::to_string(Q.degree()) + ")";
        }
    } else {
        r.kind = StructureCase::SplitNilpotent;
        const auto& fd = r.factorization;
        mpz_class comp;
        mpz_ui_pow_ui(comp.get_mpz_t(), static_cast<unsigned long>(Q.base().residue_field_size()), static_cast<unsigned long>(fd.f));
        std::string prod;
        for (int i = 0; i < fd.g; ++i) prod += (i ? " x " : "") + std::string("F_") + comp.get_str();
        r.target = "(" + prod + " / " + Q.base().describe() + ", sigma, 0)";
        auto ideals = enumerate_monomial_ideals(Q, fd);
        for (auto it = ideals.rbegin(); it != ideals.rend(); ++it) r.ideal_lattice.push_back(monomial_descriptor(Q, fd, *it));
    }
    if (opts.verify && r.iso) r.verification = verify_isomorphism(*r.iso, Q, opts.verify_options);
    return r;
}

// ------------------------------------------------------------------- JSON

Json ideal_to_json(const QuotientRing& Q, const IdealDescriptor& d) {
    static const char* shapes[] = {"zero", "whole", "prime-power", "z-power", "monomial"};
    Json j;
    j["name"] = d.name;
    j["shape"] = shapes[static_cast<int>(d.shape)];
    if (d.shape == IdealDescriptor::Shape::PrimePower || d.shape == IdealDescriptor::Shape::ZPower) j["power"] = d.power;
    Json gens = Json::array();
    for (const auto& g : d.generators) gens.push_back(Q.to_string(g));
    j["generators"] = gens;
    if (d.shape == IdealDescriptor::Shape::Monomial) {
        Json mons = Json::array();
        for (const auto& [i, k] : d.monomials) mons.push_back(Json::array({i, k}));
        j["monomials"] = mons;
        Json pos = Json::array();
        for (const auto& [i, k] : d.positions) pos.push_back(Json::array({i, k}));
        j["positions"] = pos;
    }
    j["cardinality"] = d.cardinality.get_str();
    j["quotient"] = d.quotient;
    return j;
}

Json verification_to_json(const VerificationReport& v) {
    Json j;
    j["mode"] = v.mode == VerifyMode::Exhaustive ? "exhaustive" : "sampled";
    j["elements_checked"] = v.elements_checked;
    j["pairs_checked"] = v.pairs_checked;
    j["kernel_rank"] = v.kernel_rank;
    j["expected_rank"] = v.expected_rank;
    j["source_size"] = v.source_size.get_str();
    j["target_size"] = v.target_size.get_str();
    j["verified"] = v.verified;
    return j;
}

Json report_to_json(const StructureReport& r, const QuotientRing& Q) {
    const ResidueRing& S = Q.residue();
    Json j;
    j["algebra"] = r.algebra;
    j["ideal"] = {{"alpha", r.ideal.alpha.to_string()}, {"s", r.ideal.s}};
    j["case"] = structure_case_name(r.kind);
    Json idem = Json::array();
    auto R1 = std::make_shared<const LocalBaseRing>(Q.base().kind(), r.ideal.alpha, 1);
    const ResidueRing S1(Q.algebra()->ext, R1);
    for (const auto& v : r.factorization.idempotents) idem.push_back(S1.to_string(v));
    j["factorization"] = {{"g", r.factorization.g}, {"e", r.factorization.e}, {"f", r.factorization.f},
                          {"method", r.factorization.method}, {"idempotents", idem}};
    j["u_in_q"] = r.u_in_q;
    j["target"] = r.target;
    j["cardinality"] = r.cardinality.get_str();
    if (r.iso) {
        const TargetRing& T = *r.iso->target;
        Json c;
        c["target"] = T.name();
        Json b = Json::array();
        for (const auto& x : r.iso->basis_images) b.push_back(T.to_json(x));
        c["basis_images"] = b;
        c["z_image"] = T.to_json(r.iso->z_image);
        if (r.iso->twist) c["twist"] = S.to_string(*r.iso->twist);
        if (!r.iso->matrix_units.empty()) {
            Json units = Json::array();
            for (const auto& e : r.iso->matrix_units) units.push_back(Q.to_string(e));
            c["matrix_units"] = units;
        }
        c["verified"] = r.iso->verified;
        j["certificate"] = c;
    }
    if (r.verification) j["verification"] = verification_to_json(*r.verification);
    Json lattice = Json::array();
    for (const auto& d : r.ideal_lattice) lattice.push_back(ideal_to_json(Q, d));
    j["ideal_lattice"] = lattice;
    return j;
}

}  // namespace stc

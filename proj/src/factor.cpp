#include <algorithm>

#include <omp.h>

#include "stc/extension.hpp"
#include "stc/residue.hpp"

namespace stc {

namespace {

constexpr std::uint64_t kBruteForceLimit = std::uint64_t{1} << 20;

std::vector<SElem> scan_idempotents(const ResidueRing& S) {
    const std::uint64_t N = S.size();
    const int n = S.degree();
    std::vector<std::vector<SElem>> per_thread(omp_get_max_threads());
    bool nilpotent = false;
#pragma omp parallel for schedule(static) reduction(|| : nilpotent)
    for (long long i = 1; i < static_cast<long long>(N); ++i) {
        const SElem x = S.from_index(static_cast<std::uint64_t>(i));
        const SElem sq = S.mul(x, x);
        if (sq == x) per_thread[omp_get_thread_num()].push_back(x);
        if (S.is_zero(S.pow(x, static_cast<std::uint64_t>(n)))) nilpotent = true;
    }
    if (nilpotent) throw Error(ErrorCode::RamifiedPrime, "O_K/qO_K has nonzero nilpotents");
    std::vector<SElem> all;
    for (auto& v : per_thread) all.insert(all.end(), v.begin(), v.end());
    std::vector<SElem> primitive;
    for (const auto& e : all) {
        bool minimal = true;
        for (const auto& f : all) {
            if (f != e && S.mul(e, f) == f) {
                minimal = false;
                break;
            }
        }
        if (minimal) primitive.push_back(e);
    }
    return primitive;
}

std::vector<SElem> berlekamp_idempotents(const ResidueRing& S) {
    const LocalBaseRing& F = S.base();
    const int n = S.degree();
    const auto Q = static_cast<std::uint64_t>(F.size());
    LocalMatrix frob(n, n);
    for (int k = 0; k < n; ++k) {
        SElem col = S.pow(S.basis(k), Q);
        for (int r = 0; r < n; ++r) frob.at(r, k) = col[r];
    }
    if (rank_over_field(F, frob) < n) throw Error(ErrorCode::RamifiedPrime, "Frobenius is not injective on O_K/qO_K");
    LocalMatrix shifted = frob;
    for (int i = 0; i < n; ++i) shifted.at(i, i) = F.sub(shifted.at(i, i), F.one());
    LocalMatrix fixed = kernel_over_field(F, shifted);
    const int g = fixed.rows;
    std::vector<SElem> parts{S.one()};
    for (int b = 0; b < g && static_cast<int>(parts.size()) < g; ++b) {
        SElem v{};
        for (int k = 0; k < n; ++k) v[k] = fixed.at(b, k);
        std::vector<SElem> refined;
        for (const auto& e : parts) {
            for (Elt c = 0; c < F.size(); ++c) {
                SElem shifted_v = S.sub(v, S.scalar(c));
                SElem indicator = S.sub(S.one(), S.pow(shifted_v, Q - 1));
                SElem piece = S.mul(e, indicator);
                if (!S.is_zero(piece)) refined.push_back(piece);
            }
        }
        parts = std::move(refined);
    }
    if (static_cast<int>(parts.size()) != g) throw Error(ErrorCode::InvalidSpec, "idempotent splitting did not finish");
    return parts;
}

}  // namespace

FactorizationData factor_prime(const ExtensionPtr& ext, const BaseElement& q, FactorMethod method) {
    if (!base_is_prime(q)) throw Error(ErrorCode::InvalidSpec, q.to_string() + " is not prime");
    auto R = std::make_shared<const LocalBaseRing>(ext->base.kind, q, 1);
    ResidueRing S(ext, R);
    const std::uint64_t N = S.size();
    if (method == FactorMethod::Auto) method = N <= kBruteForceLimit ? FactorMethod::BruteForce : FactorMethod::Berlekamp;
    FactorizationData fd;
    std::vector<SElem> prim;
    if (method == FactorMethod::BruteForce) {
        if (N > kBruteForceLimit) throw Error(ErrorCode::UnsupportedSize, "O_K/qO_K exceeds the brute-force limit");
        prim = scan_idempotents(S);
        fd.method = "brute-force";
    } else {
        prim = berlekamp_idempotents(S);
        fd.method = "frobenius-fixed-space";
    }
    std::sort(prim.begin(), prim.end(), [&](const SElem& a, const SElem& b) { return S.index(a) < S.index(b); });
    const int g = static_cast<int>(prim.size());
    const int n = ext->degree;
    if (g == 0 || n % g != 0) throw Error(ErrorCode::InvalidSpec, "number of primes above q does not divide n");
    std::vector<SElem> ordered{prim.front()};
    for (int i = 1; i < g; ++i) ordered.push_back(S.sigma(ordered.back(), 1));
    if (S.sigma(ordered.back(), 1) != ordered.front()) throw Error(ErrorCode::InvalidSpec, "sigma does not permute the primes cyclically");
    for (const auto& v : ordered) {
        if (std::find(prim.begin(), prim.end(), v) == prim.end()) {
            throw Error(ErrorCode::InvalidSpec, "sigma does not permute the primitive idempotents");
        }
    }
    fd.g = g;
    fd.e = 1;
    fd.f = n / g;
    for (const auto& v : ordered) fd.idempotents.push_back(v);
    return fd;
}

}  // namespace stc

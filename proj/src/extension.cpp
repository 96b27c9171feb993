#include "stc/extension.hpp"

#include <cmath>
#include <sstream>

namespace stc {

namespace {

using Coords = std::vector<BaseElement>;

Coords zero_coords(const ExtensionSpec& e) { return Coords(e.degree, base_zero(e.base.kind)); }

Coords mul_coords(const ExtensionSpec& e, const Coords& x, const Coords& y) {
    Coords out = zero_coords(e);
    for (int i = 0; i < e.degree; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < e.degree; ++j) {
            if (y[j].is_zero()) continue;
            BaseElement xy = x[i] * y[j];
            for (int k = 0; k < e.degree; ++k) {
                if (!e.mult_table[i][j][k].is_zero()) out[k] = out[k] + xy * e.mult_table[i][j][k];
            }
        }
    }
    return out;
}

Coords sigma_coords(const ExtensionSpec& e, const std::vector<std::vector<BaseElement>>& images, const Coords& x) {
    Coords out = zero_coords(e);
    for (int i = 0; i < e.degree; ++i) {
        if (x[i].is_zero()) continue;
        for (int k = 0; k < e.degree; ++k) out[k] = out[k] + x[i] * images[i][k];
    }
    return out;
}

Coords unit_coords(const ExtensionSpec& e, int i) {
    Coords c = zero_coords(e);
    c[i] = base_one(e.base.kind);
    return c;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidSpec, what);
}

std::complex<double> embed_coords(const ExtensionSpec& e, const Coords& x, int which) {
    std::complex<double> v = 0.0;
    for (int i = 0; i < e.degree; ++i) v += base_embed(x[i]) * e.embeddings[which][i];
    return v;
}

}  // namespace

void ExtensionSpec::validate() {
    const int n = degree;
    require(n >= 1 && n <= kMaxDegree, "degree must lie in [1, 4]");
    require(static_cast<int>(mult_table.size()) == n, "mult_table has the wrong number of rows");
    for (const auto& row : mult_table) {
        require(static_cast<int>(row.size()) == n, "mult_table row has the wrong length");
        for (const auto& entry : row) require(static_cast<int>(entry.size()) == n, "mult_table entry has the wrong length");
    }
    require(static_cast<int>(sigma_matrix.size()) == n, "sigma_matrix has the wrong number of rows");
    for (const auto& row : sigma_matrix) require(static_cast<int>(row.size()) == n, "sigma_matrix row has the wrong length");
    for (const auto& row : mult_table)
        for (const auto& entry : row)
            for (const auto& c : entry) require(c.kind == base.kind, "mult_table entry over the wrong base ring");
    for (const auto& row : sigma_matrix)
        for (const auto& c : row) require(c.kind == base.kind, "sigma_matrix entry over the wrong base ring");

    for (int j = 0; j < n; ++j) require(mult_table[0][j] == unit_coords(*this, j), "b_0 is not the identity");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) require(mult_table[i][j] == mult_table[j][i], "multiplication is not commutative");
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                Coords left = mul_coords(*this, mult_table[i][j], unit_coords(*this, k));
                Coords right = mul_coords(*this, unit_coords(*this, i), mult_table[j][k]);
                require(left == right, "multiplication is not associative");
            }
        }
    }

    require(sigma_matrix[0] == unit_coords(*this, 0), "sigma does not fix 1");
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Coords lhs = sigma_coords(*this, sigma_matrix, mult_table[i][j]);
            Coords rhs = mul_coords(*this, sigma_matrix[i], sigma_matrix[j]);
            require(lhs == rhs, "sigma is not multiplicative");
        }
    }
    sigma_powers.assign(n, {});
    for (int i = 0; i < n; ++i) sigma_powers[0].push_back(unit_coords(*this, i));
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < n; ++i) sigma_powers[j].push_back(sigma_coords(*this, sigma_matrix, sigma_powers[j - 1][i]));
        require(sigma_powers[j] != sigma_powers[0], "sigma has order smaller than the degree");
    }
    for (int i = 0; i < n; ++i) {
        require(sigma_coords(*this, sigma_matrix, sigma_powers[n - 1][i]) == unit_coords(*this, i),
                "sigma^n is not the identity");
    }

    require(static_cast<int>(embeddings.size()) == n, "need one embedding per Galois conjugate");
    for (const auto& row : embeddings) require(static_cast<int>(row.size()) == n, "embedding row has the wrong length");
    const double tol = 1e-9;
    for (int w = 0; w < n; ++w) {
        require(std::abs(embeddings[w][0] - 1.0) < tol, "embedding does not send 1 to 1");
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                std::complex<double> prod = embeddings[w][i] * embeddings[w][j];
                std::complex<double> table = embed_coords(*this, mult_table[i][j], w);
                require(std::abs(prod - table) < tol * (1.0 + std::abs(prod)), "embedding is not multiplicative");
            }
            std::complex<double> via_sigma = embed_coords(*this, sigma_powers[w][i], 0);
            require(std::abs(via_sigma - embeddings[w][i]) < tol * (1.0 + std::abs(via_sigma)),
                    "embedding j is not embedding 0 after sigma^j");
        }
    }
}

bool OKElement::is_zero() const {
    for (const auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

std::string OKElement::to_string() const {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? ", " : "") << c[i].to_string();
    out << "]";
    return out.str();
}

OKElement ok_zero(const ExtensionPtr& ext) { return {ext, zero_coords(*ext)}; }
OKElement ok_one(const ExtensionPtr& ext) { return ok_basis(ext, 0); }
OKElement ok_basis(const ExtensionPtr& ext, int i) { return {ext, unit_coords(*ext, i)}; }

OKElement ok_from_base(const ExtensionPtr& ext, const BaseElement& a) {
    if (a.kind != ext->base.kind) throw Error(ErrorCode::IncompatibleRings, "scalar from another base ring");
    OKElement x = ok_zero(ext);
    x.c[0] = a;
    return x;
}

OKElement ok_from_coords(const ExtensionPtr& ext, std::vector<BaseElement> coords) {
    if (static_cast<int>(coords.size()) != ext->degree) throw Error(ErrorCode::InvalidSpec, "wrong number of coordinates");
    for (const auto& c : coords)
        if (c.kind != ext->base.kind) throw Error(ErrorCode::IncompatibleRings, "coordinate from another base ring");
    return {ext, std::move(coords)};
}

namespace {

void check_compatible(const OKElement& x, const OKElement& y) {
    if (x.ext != y.ext && (x.ext == nullptr || y.ext == nullptr || x.ext->name != y.ext->name ||
                           x.ext->mult_table != y.ext->mult_table)) {
        throw Error(ErrorCode::IncompatibleRings, "elements of different extensions");
    }
}

}  // namespace

OKElement operator+(const OKElement& x, const OKElement& y) {
    check_compatible(x, y);
    OKElement r = x;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + y.c[i];
    return r;
}

OKElement operator-(const OKElement& x, const OKElement& y) {
    check_compatible(x, y);
    OKElement r = x;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - y.c[i];
    return r;
}

OKElement operator-(const OKElement& x) {
    OKElement r = x;
    for (auto& c : r.c) c = -c;
    return r;
}

OKElement operator*(const OKElement& x, const OKElement& y) {
    check_compatible(x, y);
    return {x.ext, mul_coords(*x.ext, x.c, y.c)};
}

OKElement ok_scale(const BaseElement& a, const OKElement& x) {
    OKElement r = x;
    for (auto& c : r.c) c = a * c;
    return r;
}

OKElement apply_sigma(const OKElement& x, int k) {
    const int n = x.ext->degree;
    k = ((k % n) + n) % n;
    return {x.ext, sigma_coords(*x.ext, x.ext->sigma_powers[k], x.c)};
}

std::complex<double> embed_complex(const OKElement& x, int which) {
    if (which < 0 || which >= x.ext->degree) throw Error(ErrorCode::InvalidSpec, "embedding index out of range");
    return embed_coords(*x.ext, x.c, which);
}

bool ok_in_base(const OKElement& x) {
    for (std::size_t i = 1; i < x.c.size(); ++i)
        if (!x.c[i].is_zero()) return false;
    return true;
}

std::string IdealSpec::to_string() const {
    std::string out = "(" + alpha.to_string() + ")";
    if (s != 1) out += "^" + std::to_string(s);
    return out;
}

}  // namespace stc

#include "stc/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace stc {

namespace {

mpz_class integer_from_json(const Json& j) {
    if (j.is_string()) {
        mpz_class v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorCode::InvalidSpec, "bad integer '" + j.get<std::string>() + "'");
        return v;
    }
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    throw Error(ErrorCode::InvalidSpec, "expected an integer, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorCode::InvalidSpec, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::complex<double> complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
    throw Error(ErrorCode::InvalidSpec, "expected a complex number [re, im], got " + j.dump());
}

}  // namespace

BaseElement base_from_json(BaseRingKind kind, const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            return parse_base_element(kind, s);
        } catch (const Error& e) {
            throw Error(ErrorCode::InvalidSpec, e.what());
        }
    }
    if (j.is_number_integer()) return BaseElement(kind, integer_from_json(j));
    if (j.is_array() && (j.size() == 1 || j.size() == 2)) {
        mpz_class a = integer_from_json(j[0]);
        mpz_class b = j.size() == 2 ? integer_from_json(j[1]) : mpz_class(0);
        if (kind == BaseRingKind::Integers && b != 0) throw Error(ErrorCode::InvalidSpec, "integer with nonzero second coordinate");
        return BaseElement(kind, a, b);
    }
    throw Error(ErrorCode::InvalidSpec, "cannot read base-ring element " + j.dump());
}

Json base_to_json(const BaseElement& x) { return x.to_string(); }

OKElement ok_from_json(const ExtensionPtr& ext, const Json& j) {
    if (!j.is_array() || static_cast<int>(j.size()) != ext->degree) {
        throw Error(ErrorCode::InvalidSpec, "O_K element needs " + std::to_string(ext->degree) + " coordinates");
    }
    std::vector<BaseElement> c;
    for (const auto& e : j) c.push_back(base_from_json(ext->base.kind, e));
    return ok_from_coords(ext, std::move(c));
}

Json ok_to_json(const OKElement& x) {
    Json out = Json::array();
    for (const auto& c : x.c) out.push_back(base_to_json(c));
    return out;
}

OrderElement order_from_json(const AlgebraPtr& alg, const Json& j) {
    if (!j.is_array() || static_cast<int>(j.size()) != alg->degree()) {
        throw Error(ErrorCode::InvalidSpec, "order element needs " + std::to_string(alg->degree()) + " z-coordinates");
    }
    OrderElement x = order_zero(alg);
    for (int t = 0; t < alg->degree(); ++t) x.z[t] = ok_from_json(alg->ext, j[t]);
    return x;
}

Json order_to_json(const OrderElement& x) {
    Json out = Json::array();
    for (const auto& c : x.z) out.push_back(ok_to_json(c));
    return out;
}

AlgebraPtr parse_algebra_spec(const Json& j) {
    static const std::set<std::string> allowed{"name", "base_ring", "degree", "basis", "mult_table", "sigma_matrix",
                                               "embeddings", "u", "claims_division"};
    if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "algebra spec must be a JSON object");
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) throw Error(ErrorCode::InvalidSpec, "unknown field '" + item.key() + "'");
    }
    auto ext = std::make_shared<ExtensionSpec>();
    ext->name = j.value("name", std::string("unnamed"));
    ext->base.kind = parse_base_ring_kind(field(j, "base_ring").get<std::string>());
    const BaseRingKind kind = ext->base.kind;
    const Json& deg = field(j, "degree");
    ext->degree = static_cast<int>(deg.is_string() ? std::stol(deg.get<std::string>()) : deg.get<long>());
    if (ext->degree < 1 || ext->degree > kMaxDegree) throw Error(ErrorCode::InvalidSpec, "degree must lie in [1, 4]");
    const int n = ext->degree;
    if (j.contains("basis")) {
        for (const auto& b : j.at("basis")) ext->basis.push_back(b.get<std::string>());
    }
    if (static_cast<int>(ext->basis.size()) != n) {
        ext->basis.clear();
        for (int i = 0; i < n; ++i) ext->basis.push_back("b" + std::to_string(i));
    }
    const Json& mt = field(j, "mult_table");
    if (!mt.is_array() || static_cast<int>(mt.size()) != n) throw Error(ErrorCode::InvalidSpec, "mult_table must be n x n x n");
    for (const auto& row : mt) {
        if (!row.is_array() || static_cast<int>(row.size()) != n) throw Error(ErrorCode::InvalidSpec, "mult_table must be n x n x n");
        std::vector<std::vector<BaseElement>> r;
        for (const auto& entry : row) {
            if (!entry.is_array() || static_cast<int>(entry.size()) != n) throw Error(ErrorCode::InvalidSpec, "mult_table must be n x n x n");
            std::vector<BaseElement> coords;
            for (const auto& c : entry) coords.push_back(base_from_json(kind, c));
            r.push_back(std::move(coords));
        }
        ext->mult_table.push_back(std::move(r));
    }
    const Json& sm = field(j, "sigma_matrix");
    if (!sm.is_array() || static_cast<int>(sm.size()) != n) throw Error(ErrorCode::InvalidSpec, "sigma_matrix must be n x n");
    for (const auto& row : sm) {
        if (!row.is_array() || static_cast<int>(row.size()) != n) throw Error(ErrorCode::InvalidSpec, "sigma_matrix must be n x n");
        std::vector<BaseElement> coords;
        for (const auto& c : row) coords.push_back(base_from_json(kind, c));
        ext->sigma_matrix.push_back(std::move(coords));
    }
    const Json& em = field(j, "embeddings");
    if (!em.is_array()) throw Error(ErrorCode::InvalidSpec, "embeddings must be an array");
    for (const auto& row : em) {
        std::vector<std::complex<double>> vals;
        for (const auto& v : row) vals.push_back(complex_from_json(v));
        ext->embeddings.push_back(std::move(vals));
    }
    ext->validate();

    auto alg = std::make_shared<AlgebraSpec>();
    alg->name = ext->name;
    alg->ext = ext;
    alg->u = base_from_json(kind, field(j, "u"));
    if (alg->u.is_zero()) throw Error(ErrorCode::InvalidSpec, "u must be nonzero");
    alg->claims_division = j.value("claims_division", false);
    return alg;
}

AlgebraPtr load_algebra_spec(const std::string& path_or_name) {
    std::string text = builtin_algebra_json(path_or_name);
    if (text.empty()) {
        std::ifstream in(path_or_name);
        if (!in) throw Error(ErrorCode::InvalidSpec, "cannot open algebra spec '" + path_or_name + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidSpec, std::string("malformed JSON: ") + e.what());
    }
    return parse_algebra_spec(j);
}

AlgebraPtr with_u(const AlgebraPtr& alg, const BaseElement& u) {
    if (u.kind != alg->base_kind()) throw Error(ErrorCode::IncompatibleRings, "u from another base ring");
    if (u.is_zero()) throw Error(ErrorCode::InvalidSpec, "u must be nonzero");
    auto out = std::make_shared<AlgebraSpec>(*alg);
    out->u = u;
    out->name = alg->name + "[u=" + u.to_string() + "]";
    return out;
}

}  // namespace stc

#include "bentforge/serial.hpp"

#include <stdexcept>

namespace bentforge {

using nlohmann::json;

json to_json(const FieldSpec& spec) {
    return json{{"p", spec.p}, {"n", spec.n}, {"modulus", spec.modulus}};
}

FieldSpec field_spec_from_json(const json& j) {
    FieldSpec spec;
    spec.p = j.at("p").get<int64_t>();
    spec.n = j.at("n").get<int>();
    spec.modulus = j.at("modulus").get<std::vector<int64_t>>();
    return spec;
}

json to_json(const CycInt& z) {
    return json{{"p", z.p()}, {"coeffs", z.coeffs()}};
}

CycInt cycint_from_json(const json& j) {
    const int64_t p = j.at("p").get<int64_t>();
    const auto coeffs = j.at("coeffs").get<std::vector<int64_t>>();
    if (coeffs.size() != size_t(p - 1))
        throw std::invalid_argument("cyclotomic coefficient vector must have length p-1");
    std::vector<int64_t> counts(coeffs);
    counts.push_back(0);
    return CycInt::from_counts(p, counts);
}

json to_json(const DillonFunction& f) {
    json a = json::array();
    for (const auto& [i, ai] : f.a)
        if (ai.v != 0) a.push_back(json::array({i, f.ctx->coeffs(ai)}));
    return json{{"field", to_json(f.ctx->spec())},
                {"d", f.d},
                {"a", a},
                {"b", f.ctx->coeffs(f.b)}};
}

DillonFunction dillon_from_json(const json& j) {
    auto ctx = std::make_shared<const FieldCtx>(FieldCtx::from_spec(field_spec_from_json(j.at("field"))));
    DillonFunction f;
    f.ctx = ctx;
    f.d = j.at("d").get<uint64_t>();
    if (!ctx->has_m()) throw std::invalid_argument("function field must have even degree");
    const uint64_t pm1 = pow_u64(uint64_t(ctx->p()), unsigned(ctx->m())) + 1;
    if (f.d == 0 || pm1 % f.d != 0) throw std::invalid_argument("d does not divide p^m + 1");
    for (const auto& entry : j.at("a")) {
        if (!entry.is_array() || entry.size() != 2)
            throw std::invalid_argument("each a-entry must be [index, coeffs]");
        uint64_t idx = entry[0].get<uint64_t>() % pm1;
        Elem coeff = ctx->from_coeffs(entry[1].get<std::vector<int64_t>>());
        if (coeff.v == 0) continue;
        auto [it, fresh] = f.a.emplace(idx, coeff);
        if (!fresh) it->second = ctx->add(it->second, coeff);
    }
    f.b = ctx->from_coeffs(j.at("b").get<std::vector<int64_t>>());
    const int o = int(o_of_d(ctx->p(), ctx->n(), f.d));
    if (!ctx->in_subfield(f.b, o))
        throw std::invalid_argument("b not in F_{p^o(d)}");
    return f;
}

json to_json(const CriterionReport& r) {
    json out{{"verdict", to_string(r.verdict)}, {"branch", r.branch}, {"exact", r.exact}};
    if (r.exact) {
        if (r.lhs_exact) out["lhs"] = to_json(*r.lhs_exact);
        if (r.rhs_exact) out["rhs"] = to_json(*r.rhs_exact);
    } else {
        out["tol"] = r.tol;
        out["lhs"] = json::array({r.lhs_num.real(), r.lhs_num.imag()});
        out["rhs"] = json::array({r.rhs_num.real(), r.rhs_num.imag()});
        out["crosscheck_ok"] = r.crosscheck_ok;
    }
    return out;
}

} // namespace bentforge

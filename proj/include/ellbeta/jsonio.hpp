#pragma once

// JSON views of the exact types. Rationals become "p/q" strings, scalars
// {"re","im"}, and witnesses/classes wrap into self-contained certificates.

#include <nlohmann/json.hpp>

#include "ellbeta/congruence.hpp"
#include "ellbeta/forms.hpp"
#include "ellbeta/qseries.hpp"

namespace ellbeta {

using json = nlohmann::ordered_json;

inline json to_json(const Rat& x) { return rat_str(x); }
inline Rat rat_from_json(const json& j) { return rat_parse(j.get<std::string>()); }

inline json to_json(const Scalar& s) {
    return json{{"re", rat_str(s.re)}, {"im", rat_str(s.im)}};
}
inline Scalar scalar_from_json(const json& j) {
    return Scalar(rat_from_json(j.at("re")), rat_from_json(j.at("im")));
}

inline json to_json(const QSeries& f) {
    json coeffs = json::array();
    for (long n = 0; n < f.prec; ++n) coeffs.push_back(to_json(f.at(n)));
    return json{{"prec", f.prec}, {"coeffs", std::move(coeffs)}};
}
inline QSeries qseries_from_json(const json& j) {
    QSeries f(j.at("prec").get<long>());
    const auto& coeffs = j.at("coeffs");
    ELLBETA_CHECK(static_cast<long>(coeffs.size()) == f.prec);
    for (long n = 0; n < f.prec; ++n) f.c[static_cast<size_t>(n)] = scalar_from_json(coeffs[static_cast<size_t>(n)]);
    return f;
}

inline json to_json(const XSeries& f) {
    json coeffs = json::array();
    for (const auto& t : f.term) coeffs.push_back(to_json(t));
    return json{{"xmax", f.xmax()}, {"coeffs", std::move(coeffs)}};
}

inline json monomials_json(const EPoly& p) {
    json arr = json::array();
    for (const auto& [k, v] : p.c)
        arr.push_back(json{{"a", k.first}, {"b", k.second}, {"c", to_json(v)}});
    return arr;
}
inline EPoly epoly_from_monomials(const json& arr) {
    EPoly p;
    for (const auto& m : arr)
        p.add_term(m.at("a").get<long>(), m.at("b").get<long>(), scalar_from_json(m.at("c")));
    return p;
}

inline json to_json(const ModForm& f) {
    return json{{"weight", f.weight}, {"monomials", monomials_json(f.poly)}};
}

inline json to_json(const SubgroupSpec& g) {
    json j{{"two_exp", g.two_exp}, {"top_weight", g.top_weight}};
    if (g.multiplier) j["multiplier"] = monomials_json(*g.multiplier);
    j["complement_weight"] = g.complement_weight;
    j["rational_edges"] = g.rational_edges;
    return j;
}

inline json to_json(const MemberWitness& w) {
    json j{{"member", w.member}};
    if (!w.member) {
        j["diagnostic"] = w.diagnostic;
        return j;
    }
    j["d"] = monomials_json(w.d);
    j["h"] = monomials_json(w.h);
    j["c0"] = to_json(w.c0);
    j["ht"] = monomials_json(w.ht);
    return j;
}

inline json to_json(const FInvariantClass& f) {
    return json{{"index_weight", f.index_weight}, {"representative", monomials_json(f.representative)}};
}

inline json certificate(const SubgroupSpec& g, const MemberWitness& w) {
    long P = precision_policy(g.top_weight);
    return json{{"statement", to_json(g)}, {"witness", to_json(w)},
                {"precision", P}, {"verified_at", 2 * P}};
}

}  // namespace ellbeta

#pragma once

// JSON views of library values and the loaders for the bundled curve registry and for
// modular-symbol files.

#include "ck/cocycle.hpp"
#include "ck/curves.hpp"
#include "ck/geomstep.hpp"
#include "ck/k0ring.hpp"
#include "ck/padic.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace ck::io {

using json = nlohmann::ordered_json;

inline json to_json(const K0Class& x) {
    json terms = json::array();
    for (const auto& [m, c] : x.terms()) terms.push_back({{"a", m.a}, {"b", m.b}, {"mult", c}});
    return {{"class", to_string(x)}, {"dim", x.dim()}, {"terms", terms}};
}

inline json to_json(const WPolynomial& p) {
    json rows = json::array();
    for (const auto& [m, x] : p.terms()) rows.push_back({{"wmonomial", {m[0], m[1], m[2]}}, {"coeff", to_string(x)}});
    return rows;
}

inline json to_json(const CKElement& e) {
    json terms = json::array();
    for (const auto& [m, x] : e.terms) {
        auto c = e.coefficient(m);
        terms.push_back({{"monomial", to_string(m)}, {"numerator", to_string(x)},
                         {"coefficient", c ? json(to_string(*c)) : json(nullptr)}});
    }
    return {{"denominator", to_string(e.denominator)}, {"terms", terms}};
}

inline json to_json(const RationalPoint& p) {
    if (p.infinity) return "O";
    return json::array({to_string(p.x), to_string(p.y)});
}

inline json to_json(const PadicNumber& x) {
    return {{"p", x.prime()},
            {"precision", x.precision()},
            {"valuation", x.valuation()},
            {"value", x.to_string()},
            {"nonzero", is_nonzero_at_precision(x)}};
}

inline Rational rational_field(const json& v, const std::string& what) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw InvalidInput(what + " must be an integer or a \"num/den\" string");
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

/// {"a1":..,"a2":..,"a3":..,"a4":..,"a6":..}; missing keys are 0.
inline WeierstrassModel model_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInput("curve must be a JSON object with keys a1..a6");
    std::array<Rational, 5> a;
    const char* keys[5] = {"a1", "a2", "a3", "a4", "a6"};
    for (std::size_t i = 0; i < 5; ++i) a[i] = j.contains(keys[i]) ? rational_field(j[keys[i]], keys[i]) : Rational(0);
    return WeierstrassModel(a);
}

struct CurveEntry {
    std::string label;
    WeierstrassModel model;
    ModelTransform short_transform;
    std::vector<std::int64_t> S;
    std::int64_t p;
    std::vector<std::int64_t> bad_primes;
};

inline std::map<std::string, CurveEntry> load_curve_registry(const std::string& path) {
    json j = read_json_file(path);
    std::map<std::string, CurveEntry> out;
    for (const auto& [label, e] : j.items()) {
        try {
            std::array<Rational, 5> a;
            if (e.at("ainvs").size() != 5) throw InvalidInput("ainvs needs five entries");
            for (std::size_t i = 0; i < 5; ++i) a[i] = rational_field(e.at("ainvs")[i], "ainvs");
            const auto& t = e.at("short_transform");
            if (t.size() != 4) throw InvalidInput("short_transform needs four entries");
            ModelTransform tr{rational_field(t[0], "u"), rational_field(t[1], "r"), rational_field(t[2], "s"),
                              rational_field(t[3], "t")};
            out.emplace(label, CurveEntry{label, WeierstrassModel(a), tr, e.at("S").get<std::vector<std::int64_t>>(),
                                          e.at("p").get<std::int64_t>(),
                                          e.at("bad_primes").get<std::vector<std::int64_t>>()});
        } catch (const json::exception& ex) {
            throw InvalidInput("curve registry entry " + label + ": " + ex.what());
        }
    }
    return out;
}

/// JSON array of {"r": "num/den", "phi": "num/den"}.
inline ModularSymbolTable modular_symbols_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("modular symbol file must be a JSON array");
    ModularSymbolTable t;
    for (const auto& row : j) {
        if (!row.is_object() || !row.contains("r") || !row.contains("phi"))
            throw InvalidInput("modular symbol rows need \"r\" and \"phi\"");
        t.set(rational_field(row["r"], "r"), rational_field(row["phi"], "phi"));
    }
    return t;
}

inline ModularSymbolTable load_modular_symbols(const std::string& path) {
    return modular_symbols_from_json(read_json_file(path));
}

}  // namespace ck::io

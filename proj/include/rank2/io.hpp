#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "rank2/bigint.hpp"
#include "rank2/laurent.hpp"
#include "rank2/recurrence.hpp"

namespace rank2::io {

// nlohmann::ordered_json keeps keys in insertion order, which fixes the byte layout.
using Json = nlohmann::ordered_json;

/// [{"d1": int, "d2": int, "coeff": "decimal"}, ...] in (d1, d2) ascending order.
inline Json to_json(const LaurentPoly2& p) {
    Json arr = Json::array();
    for (const auto& [e, v] : p.terms()) {
        Json rec;
        rec["d1"] = e.d1;
        rec["d2"] = e.d2;
        rec["coeff"] = to_decimal(v);
        arr.push_back(std::move(rec));
    }
    return arr;
}

inline LaurentPoly2 laurent_from_json(const Json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("expected a JSON array of terms");
    LaurentPoly2 p;
    for (const auto& rec : arr)
        p.add_term({rec.at("d1").get<std::int64_t>(), rec.at("d2").get<std::int64_t>()},
                   parse_decimal(rec.at("coeff").get<std::string>()));
    return p;
}

/// {"c":..., "n":..., "dim":[a_{n-1}, a_{n-2}], "chi":[{"e1":..., "e2":..., "value":"..."}]}
inline Json to_json(const ChiTable& t) {
    Json out;
    out["c"] = t.c;
    out["n"] = t.n;
    out["dim"] = Json::array({t.dim.d1, t.dim.d2});
    Json chi = Json::array();
    for (const auto& [e, v] : t.entries) {
        Json rec;
        rec["e1"] = e.first;
        rec["e2"] = e.second;
        rec["value"] = to_decimal(v);
        chi.push_back(std::move(rec));
    }
    out["chi"] = std::move(chi);
    return out;
}

inline ChiTable chi_table_from_json(const Json& j) {
    ChiTable t;
    t.c = j.at("c").get<std::int64_t>();
    t.n = j.at("n").get<std::int64_t>();
    t.dim = {j.at("dim").at(0).get<std::int64_t>(), j.at("dim").at(1).get<std::int64_t>()};
    for (const auto& rec : j.at("chi")) {
        BigInt v = parse_decimal(rec.at("value").get<std::string>());
        if (!v.is_zero())
            t.entries.emplace(std::make_pair(rec.at("e1").get<std::int64_t>(), rec.at("e2").get<std::int64_t>()), v);
    }
    return t;
}

inline std::string to_tsv(const LaurentPoly2& p) {
    std::ostringstream os;
    os << "d1\td2\tcoeff\n";
    for (const auto& [e, v] : p.terms()) os << e.d1 << '\t' << e.d2 << '\t' << v << '\n';
    return os.str();
}

inline std::string to_tsv(const ChiTable& t) {
    std::ostringstream os;
    os << "e1\te2\tchi\n";
    for (const auto& [e, v] : t.entries) os << e.first << '\t' << e.second << '\t' << v << '\n';
    return os.str();
}

namespace detail {

inline void put_power(std::ostream& os, const char* var, std::int64_t e, bool& first_factor) {
    if (e == 0) return;
    if (!first_factor) os << '*';
    os << var;
    if (e != 1) os << '^' << e;
    first_factor = false;
}

}  // namespace detail

/// Human-readable sum such as "x1^-1 + x1^-1*x2^2".
inline std::string to_pretty(const LaurentPoly2& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [e, v] : p.terms()) {
        const bool negative = v.sign() < 0;
        if (first_term)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first_term = false;
        const BigInt mag = negative ? BigInt(-v) : v;
        bool first_factor = true;
        if (mag != 1 || (e.d1 == 0 && e.d2 == 0)) {
            os << mag;
            first_factor = false;
        }
        detail::put_power(os, "x1", e.d1, first_factor);
        detail::put_power(os, "x2", e.d2, first_factor);
    }
    return os.str();
}

inline std::string to_pretty(const ChiTable& t) {
    std::ostringstream os;
    os << "c = " << t.c << ", n = " << t.n << ", dim = (" << t.dim.d1 << ", " << t.dim.d2 << ")\n";
    for (const auto& [e, v] : t.entries) os << "chi(" << e.first << ", " << e.second << ") = " << v << '\n';
    return os.str();
}

}  // namespace rank2::io

#pragma once

#include <json.hpp>

#include <string>

#include "qmf/numeric.hpp"
#include "qmf/padic.hpp"
#include "qmf/qseries.hpp"
#include "qmf/report.hpp"
#include "qmf/tau.hpp"

namespace qmf {

using json = nlohmann::ordered_json;

// {"trunc": N, "coeffs": ["num" | "num/den", ...]}; big values always travel
// as decimal strings, never as JSON numbers.
inline json to_json(const QSeries& s) {
    json j;
    j["trunc"] = s.trunc();
    json coeffs = json::array();
    for (const Rat& c : s.coeffs()) coeffs.push_back(rational_to_string(c));
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline QSeries qseries_from_json(const json& j) {
    std::size_t trunc = j.at("trunc").get<std::size_t>();
    std::vector<Rat> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_rational(c.get<std::string>()));
    if (coeffs.size() != trunc + 1)
        raise(errc::invalid_parameter, "coefficient count does not match trunc");
    return QSeries(trunc, std::move(coeffs));
}

inline json to_json(const PadicInt& x) {
    json j;
    j["p"] = x.p();
    j["precision"] = x.precision();
    j["residue"] = x.residue().str();
    return j;
}

inline PadicInt padic_from_json(const json& j) {
    return PadicInt(j.at("p").get<long long>(), j.at("precision").get<int>(),
                    Int(j.at("residue").get<std::string>()));
}

inline json to_json(const CongruenceReport& r) {
    json j;
    j["check"] = r.check;
    j["modulus"] = r.modulus;
    j["pass"] = r.pass;
    j["hypothesis_ok"] = r.hypothesis_ok;
    j["conclusion_ok"] = r.conclusion_ok;
    if (r.first_fail)
        j["first_fail"] = *r.first_fail;
    else
        j["first_fail"] = nullptr;
    if (r.min_valuation)
        j["min_valuation"] = *r.min_valuation;
    else
        j["min_valuation"] = nullptr;
    json vals = json::array();
    for (long v : r.valuations) {
        if (v == kInfiniteValuation)
            vals.push_back(nullptr);
        else
            vals.push_back(v);
    }
    j["valuations"] = std::move(vals);
    j["exponents"] = r.exponents;
    j["note"] = r.note;
    return j;
}

inline json to_json(const ManinSolution& s) {
    json j;
    j["Delta"] = s.Delta;
    j["DeltaPrime"] = s.DeltaPrime;
    j["delta"] = s.delta;
    j["deltaPrime"] = s.deltaPrime;
    j["weight"] = s.half_weight ? "1/2" : "1";
    return j;
}

}  // namespace qmf

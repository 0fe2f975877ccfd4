#ifndef FLIESS_JSON_IO_HPP
#define FLIESS_JSON_IO_HPP

#include <json.hpp>

#include "fliess/nc_series.hpp"
#include "fliess/toeplitz.hpp"

namespace fliess {

using Json = nlohmann::ordered_json;

/// { "m": int, "cap": int, "terms": [ { "word": "x1.x2", "coeff": "p/q" } ] }
/// Terms in canonical word order, coefficients as exact fraction strings.
inline Json series_to_json(const NCSeries& s) {
    Json terms = Json::array();
    for (const auto& [w, c] : s.terms())
        terms.push_back({{"word", w.str()}, {"coeff", to_fraction_string(c)}});
    return Json{{"m", s.alphabet_size()}, {"cap", s.cap()}, {"terms", std::move(terms)}};
}

inline NCSeries series_from_json(const Json& j) {
    NCSeries s(j.at("m").get<int>(), j.at("cap").get<int>());
    for (const auto& t : j.at("terms"))
        s.add_term(Word::parse(t.at("word").get<std::string>()),
                   parse_rational(t.at("coeff").get<std::string>()));
    return s;
}

/// { "m": int, "entries": [ NCSeries... ] }
inline Json toeplitz_to_json(const ToeplitzSeries& d) {
    Json entries = Json::array();
    for (const auto& e : d.entries()) entries.push_back(series_to_json(e));
    return Json{{"m", d.m()}, {"entries", std::move(entries)}};
}

inline ToeplitzSeries toeplitz_from_json(const Json& j) {
    std::vector<NCSeries> entries;
    for (const auto& e : j.at("entries")) entries.push_back(series_from_json(e));
    return ToeplitzSeries(std::move(entries));
}

} // namespace fliess

#endif

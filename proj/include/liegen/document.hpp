#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "liegen/errors.hpp"
#include "liegen/exp_log.hpp"
#include "liegen/series.hpp"
#include "liegen/vector_field.hpp"

namespace liegen {

/// Any of the three on-disk object kinds.
using Document = std::variant<Series, VectorField, Diffeo>;

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson terms_to_json(const Series& s) {
    ojson arr = ojson::array();
    for (const auto& [q, b] : s.buckets()) {
        (void)q;
        for (const auto& [alpha, v] : b) {
            ojson term;
            term["exponents"] = alpha.exp;
            term["coefficient"] = rational_to_string(v);
            arr.push_back(std::move(term));
        }
    }
    return arr;
}

inline Series series_from_terms(const ojson& arr, int m, int trunc) {
    if (!arr.is_array()) throw document_error("term list must be an array");
    Series s(m, trunc);
    for (const auto& term : arr) {
        if (!term.is_object() || !term.contains("exponents") || !term.contains("coefficient"))
            throw document_error("each term needs an exponents array and a coefficient string");
        const auto& ex = term["exponents"];
        if (!ex.is_array()) throw document_error("exponents must be an array");
        std::vector<std::uint32_t> e;
        e.reserve(ex.size());
        for (const auto& v : ex) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw document_error("exponents must be nonnegative integers");
            e.push_back(static_cast<std::uint32_t>(v.get<long long>()));
        }
        if (!term["coefficient"].is_string())
            throw document_error("coefficient must be a rational string like \"3/2\"");
        s.add_coeff(MultiIndex(std::move(e)),
                    rational_from_string(term["coefficient"].get<std::string>()));
    }
    return s;
}

inline int get_int(const ojson& doc, const char* key) {
    if (!doc.contains(key)) throw document_error(std::string("missing field: ") + key);
    if (!doc[key].is_number_integer())
        throw document_error(std::string("field must be an integer: ") + key);
    return doc[key].get<int>();
}

} // namespace detail

inline std::string serialize_document(const Series& s) {
    detail::ojson doc;
    doc["format_version"] = 1;
    doc["kind"] = "series";
    doc["m"] = s.vars();
    doc["trunc"] = s.trunc();
    doc["terms"] = detail::terms_to_json(s);
    return doc.dump(2) + "\n";
}

inline std::string serialize_document(const VectorField& X) {
    detail::ojson doc;
    doc["format_version"] = 1;
    doc["kind"] = "field";
    doc["m"] = X.vars();
    doc["n"] = X.min_order();
    doc["trunc"] = X.trunc();
    detail::ojson comps = detail::ojson::array();
    for (const auto& c : X.components()) comps.push_back(detail::terms_to_json(c));
    doc["components"] = std::move(comps);
    return doc.dump(2) + "\n";
}

/// Diffeos are stored as displacement only; "n" is the declared minimum
/// order of the displacement (one more than the tangency order bound).
inline std::string serialize_document(const Diffeo& F) {
    detail::ojson doc;
    doc["format_version"] = 1;
    doc["kind"] = "diffeo";
    doc["m"] = F.vars();
    doc["n"] = F.tangency() + 1;
    doc["trunc"] = F.trunc();
    detail::ojson comps = detail::ojson::array();
    for (const auto& c : F.displacements()) comps.push_back(detail::terms_to_json(c));
    doc["components"] = std::move(comps);
    return doc.dump(2) + "\n";
}

inline std::string serialize_document(const Document& d) {
    return std::visit([](const auto& v) { return serialize_document(v); }, d);
}

inline Document parse_document(const std::string& text) {
    detail::ojson doc;
    try {
        doc = detail::ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw document_error(std::string("invalid document: ") + e.what());
    }
    if (!doc.is_object()) throw document_error("document must be a JSON object");
    if (detail::get_int(doc, "format_version") != 1)
        throw document_error("unsupported format_version (expected 1)");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw document_error("missing or invalid kind");
    const std::string kind = doc["kind"].get<std::string>();
    const int m = detail::get_int(doc, "m");
    const int trunc = detail::get_int(doc, "trunc");

    if (kind == "series") {
        if (!doc.contains("terms")) throw document_error("series document needs terms");
        return detail::series_from_terms(doc["terms"], m, trunc);
    }
    if (kind != "field" && kind != "diffeo")
        throw document_error("kind must be one of series, field, diffeo");
    const int n = detail::get_int(doc, "n");
    if (!doc.contains("components") || !doc["components"].is_array())
        throw document_error("document needs a components array");
    const auto& comps = doc["components"];
    if (static_cast<int>(comps.size()) != m)
        throw document_error("components array must have one entry per variable");
    std::vector<Series> cs;
    cs.reserve(comps.size());
    for (const auto& c : comps) cs.push_back(detail::series_from_terms(c, m, trunc));
    if (kind == "field") return VectorField(n, std::move(cs));
    return Diffeo(n - 1, std::move(cs));
}

} // namespace liegen

#pragma once

// JSON file formats.
//
//   set-pair system   {"ground_size": n, "pairs": [{"A": [..], "B": [..]}, ..]}
//   subspace          {"ambient_dim": n, "basis": [["p/q", ..], ..]}
//   subspace system   {"ambient_dim": n, "pairs": [{"U": <subspace>, "V": <subspace>}, ..]}
//
// Sets are strictly increasing arrays of 1-based elements; rationals are
// "p/q" strings with "/q" omitted when q = 1.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "setpair/classification.hpp"
#include "setpair/errors.hpp"
#include "setpair/exact_math.hpp"
#include "setpair/linalg.hpp"
#include "setpair/set_pair.hpp"
#include "setpair/subspace_system.hpp"

namespace setpair {

using Json = nlohmann::json;

namespace detail {

inline const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline long long require_integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<long long>();
}

template <std::size_t W>
BasicSubset<W> subset_from_json(const Json& j, int n, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    BasicSubset<W> s;
    long long last = 0;
    for (const auto& e : j) {
        const long long x = require_integer(e, what);
        if (x <= last) throw ParseError(std::string(what) + " must be strictly increasing");
        if (x > n) {
            throw ParseError(std::string(what) + " element " + std::to_string(x) +
                             " outside [1, " + std::to_string(n) + "]");
        }
        s.insert(static_cast<int>(x));
        last = x;
    }
    return s;
}

}  // namespace detail

inline Json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ParseError("rational must be a \"p/q\" string or an integer");
}

template <std::size_t W>
Json to_json(const BasicSubset<W>& s) {
    return s.elements();
}

template <std::size_t W>
Json to_json(const BasicSetPairSystem<W>& system) {
    Json pairs = Json::array();
    for (const auto& p : system.pairs()) pairs.push_back({{"A", to_json(p.a_set)}, {"B", to_json(p.b_set)}});
    return {{"ground_size", system.ground_size()}, {"pairs", std::move(pairs)}};
}

template <std::size_t W = 1>
BasicSetPairSystem<W> set_system_from_json(const Json& j) {
    const long long n = detail::require_integer(detail::require(j, "ground_size"), "ground_size");
    if (n < 1) throw ParseError("ground_size must be positive");
    if (static_cast<unsigned long long>(n) > BasicSubset<W>::capacity) {
        throw CapacityError("ground_size " + std::to_string(n) + " exceeds the set capacity " +
                            std::to_string(BasicSubset<W>::capacity));
    }
    const Json& arr = detail::require(j, "pairs");
    if (!arr.is_array()) throw ParseError("pairs must be an array");
    std::vector<BasicSetPair<W>> pairs;
    for (const auto& p : arr) {
        pairs.push_back({detail::subset_from_json<W>(detail::require(p, "A"), static_cast<int>(n), "A"),
                         detail::subset_from_json<W>(detail::require(p, "B"), static_cast<int>(n), "B")});
    }
    return BasicSetPairSystem<W>(static_cast<int>(n), std::move(pairs));
}

inline Json to_json(const Subspace& s) {
    Json basis = Json::array();
    for (std::size_t r = 0; r < s.dim(); ++r) {
        Json row = Json::array();
        for (const auto& x : s.basis().row(r)) row.push_back(to_json(x));
        basis.push_back(std::move(row));
    }
    return {{"ambient_dim", s.ambient_dim()}, {"basis", std::move(basis)}};
}

inline Subspace subspace_from_json(const Json& j) {
    const long long n = detail::require_integer(detail::require(j, "ambient_dim"), "ambient_dim");
    if (n < 1) throw ParseError("ambient_dim must be positive");
    const Json& basis = detail::require(j, "basis");
    if (!basis.is_array()) throw ParseError("basis must be an array");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : basis) {
        if (!row.is_array()) throw ParseError("basis rows must be arrays");
        std::vector<Rational> values;
        for (const auto& x : row) values.push_back(rational_from_json(x));
        rows.push_back(std::move(values));
    }
    try {
        return Subspace(static_cast<std::size_t>(n),
                        RationalMatrix::from_rows(static_cast<std::size_t>(n), rows));
    } catch (const DomainError& e) {
        throw ParseError(std::string("invalid subspace: ") + e.what());
    }
}

inline Json to_json(const SubspacePairSystem& system) {
    Json pairs = Json::array();
    for (const auto& p : system.pairs()) {
        pairs.push_back({{"U", to_json(p.u_space)}, {"V", to_json(p.v_space)}});
    }
    return {{"ambient_dim", system.ambient_dim()}, {"pairs", std::move(pairs)}};
}

inline SubspacePairSystem subspace_system_from_json(const Json& j) {
    const long long n = detail::require_integer(detail::require(j, "ambient_dim"), "ambient_dim");
    if (n < 1) throw ParseError("ambient_dim must be positive");
    const Json& arr = detail::require(j, "pairs");
    if (!arr.is_array()) throw ParseError("pairs must be an array");
    std::vector<SubspacePair> pairs;
    for (const auto& p : arr) {
        pairs.push_back({subspace_from_json(detail::require(p, "U")),
                         subspace_from_json(detail::require(p, "V"))});
    }
    try {
        return SubspacePairSystem(static_cast<std::size_t>(n), std::move(pairs));
    } catch (const AmbientMismatch& e) {
        throw ParseError(e.what());
    }
}

inline Json to_json(const ClassificationReport& report) {
    Json witnesses = Json::array();
    for (const auto& w : report.witnesses) {
        witnesses.push_back({{"i", w.i}, {"j", w.j}, {"observed", w.observed}});
    }
    return {{"t", report.t},
            {"self_ok", report.self_ok},
            {"strong", report.strong},
            {"skew", report.skew},
            {"witnesses", std::move(witnesses)}};
}

/// Canonical text of a document: two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline Json read_json_file(const std::string& path) { return parse_json_text(read_text_file(path)); }

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace setpair

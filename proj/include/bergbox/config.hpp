#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergbox/domain.hpp"
#include "bergbox/errors.hpp"
#include "bergbox/ideal.hpp"
#include "bergbox/multiindex.hpp"

namespace bergbox {

namespace detail {

inline double positive_number_at(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number())
        throw ConfigError("config: " + path + " must be a number");
    const double v = j.get<double>();
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError("config: " + path + " must be positive and finite");
    return v;
}

inline std::vector<double> positive_vector_at(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError("config: " + path + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(positive_number_at(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

} // namespace detail

/// Domain config: {"p": [float, ...], "constraints": [{"q": [float, ...]}, ...]}.
/// The dimension is derived from the vector lengths, never supplied. Each
/// constraint accepts a reserved "p" key (per-constraint z-exponents); specs
/// using it parse but are rejected by every computation.
inline DomainSpec parse_domain(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: domain must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "p" && key != "constraints")
            throw ConfigError("config: unknown domain key \"" + key + "\"");
    }
    if (!j.contains("p")) throw ConfigError("config: missing \"p\"");
    if (!j.contains("constraints")) throw ConfigError("config: missing \"constraints\"");

    std::vector<double> p = detail::positive_vector_at(j["p"], "p");
    if (p.empty()) throw ConfigError("config: p must be nonempty (J >= 1)");

    const auto& jc = j["constraints"];
    if (!jc.is_array() || jc.empty())
        throw ConfigError("config: constraints must be a nonempty array (K >= 1)");
    std::vector<EllipsoidConstraint> constraints;
    constraints.reserve(jc.size());
    for (std::size_t k = 0; k < jc.size(); ++k) {
        const std::string path = "constraints[" + std::to_string(k) + "]";
        const auto& item = jc[k];
        if (!item.is_object()) throw ConfigError("config: " + path + " must be an object");
        for (const auto& [key, value] : item.items()) {
            (void)value;
            if (key != "q" && key != "p")
                throw ConfigError("config: unknown key \"" + key + "\" in " + path);
        }
        if (!item.contains("q")) throw ConfigError("config: missing " + path + ".q");
        EllipsoidConstraint c;
        c.q = detail::positive_vector_at(item["q"], path + ".q");
        if (item.contains("p"))
            c.reserved_p = detail::positive_vector_at(item["p"], path + ".p");
        constraints.push_back(std::move(c));
    }
    return DomainSpec::make(std::move(p), std::move(constraints));
}

/// Ideal config: {"generators": [[int, ...], ...]}. The dimension is the
/// common generator length.
inline MonomialIdeal parse_ideal(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: ideal must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "generators")
            throw ConfigError("config: unknown ideal key \"" + key + "\"");
    }
    if (!j.contains("generators")) throw ConfigError("config: missing \"generators\"");
    const auto& jg = j["generators"];
    if (!jg.is_array() || jg.empty())
        throw ConfigError("config: generators must be a nonempty array");

    std::vector<MultiIndex> gens;
    std::size_t m = 0;
    for (std::size_t i = 0; i < jg.size(); ++i) {
        const std::string path = "generators[" + std::to_string(i) + "]";
        const auto& row = jg[i];
        if (!row.is_array() || row.empty())
            throw ConfigError("config: " + path + " must be a nonempty array");
        if (i == 0)
            m = row.size();
        else if (row.size() != m)
            throw ConfigError("config: " + path + " has length " + std::to_string(row.size()) +
                              ", expected " + std::to_string(m));
        std::vector<int> e(row.size());
        for (std::size_t c = 0; c < row.size(); ++c) {
            const auto& v = row[c];
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw ConfigError("config: " + path + "[" + std::to_string(c) +
                                  "] must be a nonnegative integer");
            e[c] = static_cast<int>(v.get<long long>());
        }
        gens.emplace_back(std::move(e));
    }
    return MonomialIdeal(m, std::move(gens));
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) throw ConfigError("config: " + path + " is not valid JSON");
    return j;
}

inline DomainSpec load_domain_file(const std::string& path) {
    return parse_domain(load_json_file(path));
}

inline MonomialIdeal load_ideal_file(const std::string& path) {
    return parse_ideal(load_json_file(path));
}

} // namespace bergbox

#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "benchmarks.hpp"
#include "parser.hpp"
#include "systems.hpp"

namespace monomc {

class io_error : public error {
public:
    using error::error;
};

/**
 * @brief System description file contents.
 *
 * Either explicit formulas (`vars`, `init`, `bad`, `tr` with primed names for post-states)
 * or a `generator` naming a built-in family. Serialization is canonical: keys sorted,
 * two-space indentation, trailing newline.
 */
struct system_description {
    std::vector<std::string> vars;
    std::string init, bad, tr;
    std::optional<std::string> generator;
    std::map<std::string, long> params;

    bool operator==(const system_description&) const = default;
};

inline nlohmann::json to_json(const system_description& d)
{
    nlohmann::json j;
    if (d.generator) {
        j["generator"] = {{"name", *d.generator}, {"params", d.params}};
        return j;
    }
    j["vars"] = d.vars;
    j["init"] = d.init;
    j["bad"] = d.bad;
    j["tr"] = d.tr;
    return j;
}

inline std::string dump(const system_description& d) { return to_json(d).dump(2) + "\n"; }

inline system_description description_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw io_error("system description must be a JSON object");
    system_description d;
    try {
        if (j.contains("generator")) {
            for (const auto& [k, v] : j.items())
                if (k != "generator")
                    throw io_error("unexpected field '" + k + "' next to generator");
            const auto& g = j.at("generator");
            d.generator = g.at("name").get<std::string>();
            if (g.contains("params"))
                d.params = g.at("params").get<std::map<std::string, long>>();
            for (const auto& [k, v] : g.items())
                if (k != "name" && k != "params")
                    throw io_error("unexpected generator field '" + k + "'");
            return d;
        }
        for (const auto& [k, v] : j.items())
            if (k != "vars" && k != "init" && k != "bad" && k != "tr")
                throw io_error("unexpected field '" + k + "'");
        d.vars = j.at("vars").get<std::vector<std::string>>();
        d.init = j.at("init").get<std::string>();
        d.bad = j.at("bad").get<std::string>();
        d.tr = j.at("tr").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("malformed system description: ") + e.what());
    }
    return d;
}

inline system_description parse_description(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw io_error(std::string("invalid JSON: ") + e.what());
    }
    return description_from_json(j);
}

inline system_description read_description(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_description(ss.str());
}

/// Builds the system; formulas are parsed over vars (init, bad) and vars + primed vars (tr).
inline generated_system instantiate(const system_description& d)
{
    if (d.generator)
        return generate({*d.generator, d.params, ""});
    auto v = vocabulary::make(d.vars);
    auto dv = vocabulary::doubled(*v);
    require_enumerable(dv->size(), max_relation_vars());
    generated_system g;
    g.spec = {"explicit", {}, ""};
    g.ts = transition_system::from_relation(v, parse_formula(d.init, v), parse_formula(d.bad, v),
                                            parse_formula(d.tr, dv));
    g.symbolic_tr = d.tr;
    return g;
}

/// Explicit description of a system; Tr is printed as an irredundant DNF cover of its pairs.
inline system_description describe(const transition_system& ts)
{
    system_description d;
    d.vars = ts.vocab()->names();
    d.init = print(ts.init());
    d.bad = print(ts.bad());
    d.tr = print(ts.relation());
    return d;
}

} // namespace monomc

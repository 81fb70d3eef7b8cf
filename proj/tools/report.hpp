#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace monomc::cli {

/// One algorithm run on one system. JSON keys serialize in sorted order.
struct run_report {
    std::string system;
    std::map<std::string, long> params;
    std::string algorithm;
    std::optional<std::string> policy;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> k;
    std::optional<std::size_t> s;
    std::size_t frames = 0;
    std::string verdict;
    std::vector<std::size_t> cnf_sizes;
    std::optional<std::uint64_t> bound;
    std::optional<std::size_t> basis_cubes;
    std::optional<double> seconds;
    std::vector<std::string> frame_text;
    int exit_code = 0;
};

inline nlohmann::json to_json(const run_report& r)
{
    nlohmann::json j;
    j["system"] = r.system;
    j["params"] = r.params;
    j["algorithm"] = r.algorithm;
    j["frames"] = r.frames;
    j["verdict"] = r.verdict;
    j["cnf_sizes"] = r.cnf_sizes;
    if (r.policy)
        j["policy"] = *r.policy;
    if (r.seed)
        j["seed"] = *r.seed;
    if (r.k)
        j["k"] = *r.k;
    if (r.s)
        j["s"] = *r.s;
    if (r.bound)
        j["bound"] = *r.bound;
    if (r.basis_cubes)
        j["basis_cubes"] = *r.basis_cubes;
    if (r.seconds)
        j["seconds"] = *r.seconds;
    if (!r.frame_text.empty())
        j["frame_cnf"] = r.frame_text;
    return j;
}

inline nlohmann::json to_json(const std::vector<run_report>& rs)
{
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rs)
        j.push_back(to_json(r));
    return j;
}

inline std::string params_text(const std::map<std::string, long>& p)
{
    std::string out;
    for (const auto& [k, v] : p)
        out += (out.empty() ? "" : ";") + k + "=" + std::to_string(v);
    return out;
}

template <class T>
std::string opt_text(const std::optional<T>& v)
{
    if (!v)
        return "";
    std::ostringstream os;
    os << *v;
    return os.str();
}

inline std::string csv_header(bool timing)
{
    return std::string("system,params,algorithm,policy,seed,k,s,frames,verdict,bound,max_cnf") +
           (timing ? ",seconds" : "");
}

inline std::string csv_row(const run_report& r, bool timing)
{
    std::size_t max_cnf = 0;
    for (auto c : r.cnf_sizes)
        max_cnf = std::max(max_cnf, c);
    std::ostringstream os;
    os << r.system << "," << params_text(r.params) << "," << r.algorithm << "," << opt_text(r.policy) << ","
       << opt_text(r.seed) << "," << opt_text(r.k) << "," << opt_text(r.s) << "," << r.frames << "," << r.verdict
       << "," << opt_text(r.bound) << "," << max_cnf;
    if (timing)
        os << "," << opt_text(r.seconds);
    return os.str();
}

/// Human-readable table: one row per report.
inline std::string table(const std::vector<run_report>& rs, bool timing)
{
    std::vector<std::vector<std::string>> rows{{"algorithm", "policy", "k", "s", "frames", "verdict", "bound",
                                                "max cnf"}};
    if (timing)
        rows[0].push_back("seconds");
    for (const auto& r : rs) {
        std::size_t max_cnf = 0;
        for (auto c : r.cnf_sizes)
            max_cnf = std::max(max_cnf, c);
        rows.push_back({r.algorithm, opt_text(r.policy), opt_text(r.k), opt_text(r.s), std::to_string(r.frames),
                        r.verdict, opt_text(r.bound), std::to_string(max_cnf)});
        if (timing)
            rows.back().push_back(opt_text(r.seconds));
    }
    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    std::ostringstream os;
    if (!rs.empty())
        os << "system: " << rs.front().system
           << (rs.front().params.empty() ? "" : " (" + params_text(rs.front().params) + ")") << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << row[i];
            if (i + 1 < row.size())
                os << std::string(width[i] - row[i].size() + 2, ' ');
        }
        os << "\n";
    }
    for (const auto& r : rs)
        if (!r.frame_text.empty()) {
            os << "frames of " << r.algorithm << (r.policy ? " (" + *r.policy + ")" : "") << ":\n";
            for (std::size_t i = 0; i < r.frame_text.size(); ++i)
                os << "  F" << i << ": " << r.frame_text[i] << "\n";
        }
    return os.str();
}

} // namespace monomc::cli

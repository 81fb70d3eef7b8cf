#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <monomc/monomc.hpp>

#include "report.hpp"
#include "suite.hpp"

namespace {

using namespace monomc;
using monomc::cli::run_report;

constexpr int exit_ok = 0;
constexpr int exit_unsafe = 2;
constexpr int exit_inconclusive = 3;
constexpr int exit_usage = 64;
constexpr int exit_input = 65;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct options {
    std::string system_file;
    std::string gen;
    std::map<std::string, long> gen_params;
    long n = 0, r = 0;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> algos;
    std::size_t k = 0;
    std::size_t s = 0;
    std::string policy = "default";
    std::size_t max_frames = 0;
    bool json = false, csv = false, frames = false, timing = false;
    std::string filter;
};

const std::vector<std::string> algorithm_names = {"lambda-pdr",  "kleene",       "pdr",         "dual-itp",
                                                  "exact-reach", "bound-single", "bound-hyper", "abs-reach"};

struct loaded {
    std::string id;
    std::map<std::string, long> params;
    generated_system sys;
};

loaded load(const options& o, CLI::App* sub)
{
    bool has_file = !o.system_file.empty(), has_gen = !o.gen.empty();
    if (has_file == has_gen)
        throw usage_error("exactly one of --system and --gen is required");
    loaded l;
    if (has_file) {
        try {
            auto d = read_description(o.system_file);
            l.sys = instantiate(d);
            l.id = d.generator ? *d.generator : o.system_file;
            l.params = d.params;
        } catch (const error& e) {
            throw input_error(e.what());
        }
        return l;
    }
    generator_spec spec{o.gen, {}, ""};
    if (sub->count("--n"))
        spec.params["n"] = o.n;
    if (sub->count("--r"))
        spec.params["r"] = o.r;
    if (o.gen == "random")
        spec.params["seed"] = static_cast<long>(o.seed.value_or(0));
    try {
        l.sys = generate(spec);
    } catch (const limit_exceeded&) {
        throw;
    } catch (const error& e) {
        throw usage_error(e.what());
    }
    l.id = o.gen;
    l.params = spec.params;
    return l;
}

int exit_for(verdict v)
{
    switch (v) {
    case verdict::converged:
        return exit_ok;
    case verdict::unsafe:
        return exit_unsafe;
    default:
        return exit_inconclusive;
    }
}

void fill_frames(run_report& r, const std::vector<state_formula>& frames, bool text)
{
    for (const auto& f : frames) {
        auto cnf = irredundant_cnf(f);
        r.cnf_sizes.push_back(cnf.size());
        if (text)
            r.frame_text.push_back(print_cnf(cnf, *f.vocab()));
    }
}

run_report run_algorithm(const loaded& l, const std::string& algo, const policy& pol, const options& o)
{
    const auto& ts = l.sys.ts;
    run_report r;
    r.system = l.id;
    r.params = l.params;
    r.algorithm = algo;
    auto start = std::chrono::steady_clock::now();
    auto basis_for_k = [&] {
        r.k = o.k;
        auto Bk = backward_reach(ts, o.k);
        auto basis = basis_of(Bk);
        r.basis_cubes = basis.size();
        return std::make_pair(Bk, basis);
    };

    if (algo == "lambda-pdr") {
        auto [Bk, basis] = basis_for_k();
        auto t = lambda_pdr(ts, Bk, basis, lambda_mode::closed_form,
                            o.max_frames ? o.max_frames : std::numeric_limits<std::size_t>::max());
        r.frames = t.frame_count();
        r.verdict = to_string(t.result);
        r.exit_code = exit_for(t.result);
        fill_frames(r, t.frames, o.frames);
    } else if (algo == "kleene") {
        auto [Bk, basis] = basis_for_k();
        auto t = kleene_mspan(ts, basis);
        r.frames = t.frame_count();
        bool safe = !t.invariant().states().intersects(ts.bad().states());
        r.verdict = safe ? "converged" : "fixpoint_meets_bad";
        r.exit_code = safe ? exit_ok : exit_inconclusive;
        fill_frames(r, t.frames, o.frames);
    } else if (algo == "pdr") {
        r.policy = pol.name;
        r.seed = pol.seed;
        auto res = pdr(ts, pol, o.max_frames);
        r.frames = res.trace.frame_count();
        r.verdict = to_string(res.trace.result);
        r.exit_code = exit_for(res.trace.result);
        fill_frames(r, res.trace.frames, o.frames);
    } else if (algo == "dual-itp") {
        r.policy = pol.name;
        r.seed = pol.seed;
        r.s = o.s;
        auto res = dual_itp(ts, o.s, pol);
        r.frames = 1;
        r.verdict = to_string(res.result);
        r.exit_code = res.result == itp_verdict::invariant ? exit_ok
                      : res.result == itp_verdict::unsafe  ? exit_unsafe
                                                           : exit_inconclusive;
        fill_frames(r, {res.candidate}, o.frames);
    } else if (algo == "exact-reach") {
        auto t = exact_forward_reach(ts);
        r.frames = t.frame_count();
        r.verdict = to_string(t.result);
        r.exit_code = exit_for(t.result);
        fill_frames(r, t.frames, o.frames);
    } else if (algo == "bound-single") {
        auto [Bk, basis] = basis_for_k();
        if (basis.size() != 1)
            throw usage_error("bound-single needs B_k to be a single cube; it has " + std::to_string(basis.size()) +
                              " (use bound-hyper)");
        r.bound = bound_single(ts, basis.cubes[0]);
        r.verdict = "bound";
    } else if (algo == "bound-hyper") {
        auto [Bk, basis] = basis_for_k();
        if (basis.empty())
            throw usage_error("bound-hyper needs a nonempty B_k");
        r.bound = bound_hyper(ts, basis);
        r.verdict = "bound";
    } else if (algo == "abs-reach") {
        auto [Bk, basis] = basis_for_k();
        if (basis.empty())
            throw usage_error("abs-reach needs a nonempty B_k");
        auto a = build_abstract(ts, basis);
        auto d = diameter_of_abstract(a);
        r.frames = d.steps;
        r.verdict = d.reached_bad ? "reaches_bad" : "converged";
        r.exit_code = d.reached_bad ? exit_inconclusive : exit_ok;
        fill_frames(r, abstract_reach_sequence(a, d.steps), o.frames);
    } else {
        throw usage_error("unknown algorithm '" + algo + "'");
    }
    if (o.timing)
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<policy> policies_for(const options& o)
{
    std::vector<policy> out;
    try {
        if (o.policy == "all") {
            for (const auto& name : policy_names()) {
                if (name == "random")
                    for (std::uint64_t seed = 1; seed <= 3; ++seed)
                        out.push_back(named_policy(name, seed));
                else
                    out.push_back(named_policy(name));
            }
        } else {
            out.push_back(named_policy(o.policy, o.seed.value_or(0)));
        }
    } catch (const error& e) {
        throw usage_error(e.what());
    }
    return out;
}

int combined_exit(const std::vector<run_report>& rs)
{
    int code = exit_ok;
    for (const auto& r : rs) {
        if (r.exit_code == exit_unsafe)
            return exit_unsafe;
        if (r.exit_code != exit_ok)
            code = r.exit_code;
    }
    return code;
}

void emit(const std::vector<run_report>& rs, const options& o)
{
    if (o.json) {
        auto j = rs.size() == 1 ? cli::to_json(rs.front()) : cli::to_json(rs);
        std::cout << j.dump(2) << "\n";
    } else if (o.csv) {
        std::cout << cli::csv_header(o.timing) << "\n";
        for (const auto& r : rs)
            std::cout << cli::csv_row(r, o.timing) << "\n";
    } else {
        std::cout << cli::table(rs, o.timing);
    }
}

int cmd_run(const options& o, CLI::App* sub)
{
    if (o.algos.size() != 1)
        throw usage_error("run takes exactly one --algo");
    auto l = load(o, sub);
    auto pols = policies_for(o);
    if (pols.size() != 1)
        throw usage_error("run takes a single policy; use compare for --policy all");
    std::vector<run_report> rs{run_algorithm(l, o.algos.front(), pols.front(), o)};
    emit(rs, o);
    return rs.front().exit_code;
}

int cmd_compare(const options& o, CLI::App* sub)
{
    if (o.algos.empty())
        throw usage_error("compare needs at least one --algo");
    auto l = load(o, sub);
    auto pols = policies_for(o);
    std::vector<run_report> rs;
    for (const auto& a : o.algos) {
        if (a == "pdr" || a == "dual-itp")
            for (const auto& p : pols)
                rs.push_back(run_algorithm(l, a, p, o));
        else
            rs.push_back(run_algorithm(l, a, pols.front(), o));
    }
    emit(rs, o);
    return combined_exit(rs);
}

int cmd_bound(const options& o, CLI::App* sub)
{
    auto l = load(o, sub);
    auto pol = policies_for(o).front();
    auto basis = basis_of(backward_reach(l.sys.ts, o.k));
    std::string algo = o.algos.empty() ? (basis.size() == 1 ? "bound-single" : "bound-hyper") : o.algos.front();
    if (algo != "bound-single" && algo != "bound-hyper")
        throw usage_error("bound takes --algo bound-single or bound-hyper");
    std::vector<run_report> rs{run_algorithm(l, algo, pol, o), run_algorithm(l, "lambda-pdr", pol, o)};
    emit(rs, o);
    return exit_ok;
}

int cmd_frames(options o, CLI::App* sub)
{
    o.frames = true;
    if (o.algos.empty())
        o.algos.push_back("lambda-pdr");
    if (o.algos.size() != 1)
        throw usage_error("frames takes at most one --algo");
    auto l = load(o, sub);
    std::vector<run_report> rs{run_algorithm(l, o.algos.front(), policies_for(o).front(), o)};
    emit(rs, o);
    return rs.front().exit_code;
}

int cmd_paper_suite(const options& o)
{
    auto results = suite::run_all(o.filter);
    if (results.empty())
        throw usage_error("no criterion matches '" + o.filter + "'");
    std::size_t failed = 0;
    if (o.json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : results) {
            nlohmann::json e{{"id", r.id}, {"name", r.name}, {"passed", r.passed},
                             {"measured", r.measured}, {"expected", r.expected}};
            if (o.timing)
                e["seconds"] = r.seconds;
            j.push_back(e);
            failed += !r.passed;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::cout << suite::format_line(r, o.timing) << "\n";
            failed += !r.passed;
        }
        std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    }
    return failed == 0 ? exit_ok : 1;
}

void add_system_options(CLI::App* sub, options& o)
{
    sub->add_option("--system", o.system_file, "System description file (JSON)");
    sub->add_option("--gen", o.gen, "Built-in family")->check(CLI::IsMember(family_names()));
    sub->add_option("--n", o.n, "Family size parameter");
    sub->add_option("--r", o.r, "Segment width (multiskip_counter)");
    sub->add_option("--seed", o.seed, "Seed for random policies and the random family");
    sub->add_option("--algo", o.algos, "Algorithm")->check(CLI::IsMember(algorithm_names));
    sub->add_option("--k", o.k, "Backward reachability bound");
    sub->add_option("--s", o.s, "Forward bound for dual-itp");
    sub->add_option("--policy", o.policy, "PDR / dual-itp policy, or 'all' in compare");
    sub->add_option("--max-frames", o.max_frames, "Frame budget (0: default)");
    sub->add_flag("--json", o.json, "JSON output");
    sub->add_flag("--csv", o.csv, "CSV output");
    sub->add_flag("--frames", o.frames, "Include frames as irredundant CNF");
    sub->add_flag("--timing", o.timing, "Include wall-clock timing");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monotone-span inference and model checking on explicit finite systems"};
    app.require_subcommand(1);
    options o;
    auto* run = app.add_subcommand("run", "Run one algorithm");
    auto* compare = app.add_subcommand("compare", "Run several algorithms side by side");
    auto* bound = app.add_subcommand("bound", "Diameter bound next to the Lambda-PDR frame count");
    auto* frames = app.add_subcommand("frames", "Print frames as irredundant CNF");
    auto* suite_cmd = app.add_subcommand("paper-suite", "Run the acceptance criteria");
    for (auto* sub : {run, compare, bound, frames})
        add_system_options(sub, o);
    suite_cmd->add_option("--filter", o.filter, "Criterion id, name fragment or tag");
    suite_cmd->add_flag("--json", o.json, "JSON output");
    suite_cmd->add_flag("--timing", o.timing, "Include wall-clock timing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (o.json && o.csv)
            throw usage_error("--json and --csv are exclusive");
        if (*run)
            return cmd_run(o, run);
        if (*compare)
            return cmd_compare(o, compare);
        if (*bound)
            return cmd_bound(o, bound);
        if (*frames)
            return cmd_frames(o, frames);
        return cmd_paper_suite(o);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const limit_exceeded& e) {
        std::cerr << "limit exceeded: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <monomc/monomc.hpp>

namespace monomc::suite {

struct criterion_result {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string measured;
    std::string expected;
    double seconds = 0;
    double limit = 0;
};

struct criterion {
    int id;
    std::string name;
    std::vector<std::string> tags;
    double limit;
    std::string expected;
    // Returns pass/fail before the time check; appends a measurement summary.
    std::function<bool(std::ostream&)> run;
};

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ")
{
    std::string out;
    for (const auto& p : parts)
        out += (out.empty() ? "" : sep) + p;
    return out;
}

inline state_set random_set(unsigned n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0, 1);
    double density = u(rng);
    state_set s(n);
    for (state_t x = 0; x < (state_t{1} << n); ++x)
        if (u(rng) < density)
            s.set(x);
    return s;
}

inline cube random_cube(unsigned n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<state_t> d(0, all_vars_mask(n));
    state_t m = d(rng);
    return {m, d(rng) & m};
}

/// A random DNF with 1..5 cubes, so monox can be checked by literal dropping.
inline std::vector<cube> random_dnf(unsigned n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> k(1, 5);
    std::vector<cube> out;
    for (int i = k(rng); i > 0; --i)
        out.push_back(random_cube(n, rng));
    return out;
}

struct population_member {
    generated_system sys;
    std::size_t k = 0;
    state_formula Bk;
    monotone_basis basis;
};

/// Random safe systems with nonempty Bad, n in [2, max_n], k in {0, 1, 2}.
inline std::vector<population_member> random_population(std::size_t count, unsigned max_n, std::uint64_t seed)
{
    std::vector<population_member> out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> nd(2, max_n);
    std::uniform_int_distribution<std::size_t> kd(0, 2);
    while (out.size() < count) {
        unsigned n = nd(rng);
        auto g = bench::random_system(n, rng());
        if (g.ts.bad().is_false())
            continue;
        population_member m;
        m.k = kd(rng);
        m.Bk = backward_reach(g.ts, m.k);
        m.basis = basis_of(m.Bk);
        m.sys = std::move(g);
        out.push_back(std::move(m));
    }
    return out;
}

inline bool frames_equal(const std::vector<state_formula>& a, const std::vector<state_formula>& b, std::size_t upto)
{
    for (std::size_t i = 0; i <= upto; ++i) {
        const auto& x = a[std::min(i, a.size() - 1)];
        const auto& y = b[std::min(i, b.size() - 1)];
        if (!x.equivalent(y))
            return false;
    }
    return true;
}

inline std::size_t lambda_index(const frame_trace& t) { return t.final_index(); }

} // namespace detail

// Criterion 1: skip-counter Lambda-PDR convergence.
inline bool skip_convergence(std::ostream& m)
{
    bool ok = true;
    std::vector<std::string> parts;
    for (unsigned n = 2; n <= 6; ++n) {
        auto g = bench::skip_counter(n);
        auto t = lambda_pdr(g.ts, 1);
        unsigned w = n + 1;
        cube eq3{(state_t{1} << n) | (all_vars_mask(w) << w) | (state_t{1} << (2 * w)), 0};
        bool f1 = t.frames.size() > 1 && t.frames[1].equivalent(state_formula::of_cube(g.ts.vocab(), eq3));
        bool fin = t.converged() && t.invariant().equivalent(*g.invariant);
        bool ind = t.converged() && is_inductive(g.ts, t.invariant()).holds;
        bool pass = t.converged() && t.frame_count() == 4 && f1 && fin && ind;
        ok = ok && pass;
        parts.push_back("n=" + std::to_string(n) + ":" + to_string(t.result) + "/" + std::to_string(t.frame_count()) +
                        (f1 ? "" : " F1!") + (fin ? "" : " inv!") + (ind ? "" : " ind!"));
    }
    m << detail::join(parts);
    return ok;
}

// Criterion 2: exact forward reachability needs exponentially many iterations.
inline bool exponential_gap(std::ostream& m)
{
    bool ok = true;
    std::vector<std::string> parts;
    for (unsigned n = 2; n <= 6; ++n) {
        auto g = bench::skip_counter(n);
        auto e = exact_forward_reach(g.ts);
        auto t = lambda_pdr(g.ts, 1);
        bool pass = e.converged() && e.frame_count() >= (std::size_t{1} << n) && t.frame_count() == 4;
        ok = ok && pass;
        parts.push_back("n=" + std::to_string(n) + ":" + std::to_string(e.frame_count()) + " vs " +
                        std::to_string(t.frame_count()));
    }
    m << detail::join(parts);
    return ok;
}

// Criterion 3: even counter cover, bound and invariant frame.
inline bool even_counter(std::ostream& m)
{
    bool ok = true;
    std::vector<std::string> parts;
    for (unsigned n = 2; n <= 6; ++n) {
        auto g = bench::even_counter(n);
        unsigned w = n + 1;
        cube b = cube::of_state(g.ts.bad().states().first(), w);
        auto cover = irredundant_dnf_cover(monotonized_relation(g.ts, reflect(b), b));
        cube expected{state_t{1} << w, 0};
        bool cov = cover.size() == 1 && cover[0] == expected;
        auto bound = bound_single(g.ts, b);
        auto t = lambda_pdr(g.ts, 0);
        auto x0_false = state_formula::of_cube(g.ts.vocab(), cube{1, 0});
        bool frame = t.converged() && t.final_index() == 2 && t.frames[2].equivalent(x0_false);
        bool pass = cov && bound == 2 && frame;
        ok = ok && pass;
        parts.push_back("n=" + std::to_string(n) + ":cover=" +
                        print_dnf(cover, *vocabulary::doubled(*g.ts.vocab())) + ",bound=" + std::to_string(bound) +
                        ",inv=F" + std::to_string(t.final_index()));
    }
    m << detail::join(parts);
    return ok;
}

// Criterion 4: two-bit setter first frame.
inline bool two_setter(std::ostream& m)
{
    bool ok = true;
    std::vector<std::string> parts;
    for (unsigned n = 3; n <= 6; ++n) {
        auto g = bench::two_setter(n);
        auto t = lambda_pdr(g.ts, 0);
        auto some_one = !state_formula::of_cube(g.ts.vocab(), cube{all_vars_mask(n), 0});
        bool f1 = t.frames.size() > 1 && t.frames[1].equivalent(some_one);
        bool conv = t.converged() && t.final_index() == 1;
        ok = ok && f1 && conv;
        std::string f1_desc = t.frames.size() > 1 ? (t.frames[1].equivalent(!g.ts.bad()) ? "!Bad" : "other") : "none";
        parts.push_back("n=" + std::to_string(n) + ":F1=" + (f1 ? "OR xj" : f1_desc) + ",inv=F" +
                        std::to_string(t.final_index()));
    }
    m << detail::join(parts);
    return ok;
}

// Criterion 5: monotone theory identities against definitional oracles.
inline bool monotone_oracles(std::ostream& m)
{
    const unsigned n = 4;
    auto v = vocabulary::make({"a", "b", "c", "d"});
    std::mt19937_64 rng(20261014);
    std::map<std::string, std::size_t> violations;
    auto check = [&](bool cond, const char* what) {
        if (!cond)
            ++violations[what];
    };
    std::size_t single = 0, multi = 0;
    for (; single < 600; ++single) {
        auto dnf = detail::random_dnf(n, rng);
        auto f = state_formula::of_dnf(v, dnf);
        cube b = detail::random_cube(n, rng);
        auto def = monox_definitional(f, b);
        check(monox(f, b).equivalent(def), "dnf-drop");
        check(state_formula(v, monox_sweep(f.states(), b)).equivalent(def), "sweep");
        check(state_formula(v, monox_states(f.states(), b)).equivalent(def), "cube-union");
        check(monox_sweep(def.states(), b) == def.states(), "idempotence");
        check(f.implies(def), "overapprox");
        auto g = f | state_formula(v, detail::random_set(n, rng));
        check(def.implies(monox_definitional(g, b)), "monotonicity");
        std::uniform_int_distribution<state_t> sd(0, all_vars_mask(n));
        state_t s1 = sd(rng), s2 = sd(rng);
        check(leq_b(s1, s2, b) == leq_b(s2, s1, reflect(b)), "reflection");
    }
    for (; multi < 300; ++multi) {
        auto f = state_formula(v, detail::random_set(n, rng));
        std::uniform_int_distribution<int> md(1, 3);
        monotone_basis B{v, {}};
        for (int i = md(rng); i > 0; --i)
            B.cubes.push_back(detail::random_cube(n, rng));
        auto h = mhull(f, B);
        auto clauses = mhull_cnf(f, B);
        check(h.states() == states_of(clauses, n), "cnf-characterization");
        state_set pointwise(n, true);
        B.states().states().for_each([&](state_t b) { pointwise &= monox_definitional(f, cube::of_state(b, n)).states(); });
        check(h.states() == pointwise, "decomposition");
        auto alt = monotone_basis{v, irredundant_dnf_cover(B.states())};
        check(mhull(f, alt).equivalent(h), "decomposition");
        check(mhull(h, B).equivalent(h), "idempotence");
        check(f.implies(h), "overapprox");
        auto g = f | state_formula(v, detail::random_set(n, rng));
        check(h.implies(mhull(g, B)), "monotonicity");
        auto h2 = mhull(state_formula(v, detail::random_set(n, rng)), B);
        check(in_mspan(h & h2, B), "conjunction-closure");
        // A span member implied by f: clauses of sampled basis states weakened until f implies them.
        std::vector<clause> span_clauses;
        auto f_states = f.states();
        for (int i = 0; i < 3; ++i) {
            state_t b = B.states().states().nth(std::uniform_int_distribution<std::uint64_t>(
                0, B.states().states().count() - 1)(rng));
            clause c = clause::negation_of(cube::of_state(b, n));
            bool implied = f_states.subset_of(states_of(std::vector<clause>{c}, n));
            std::uniform_int_distribution<state_t> dd(0, all_vars_mask(n));
            clause weaker{c.mask & dd(rng), 0};
            weaker.value = c.value & weaker.mask;
            if (weaker.mask != 0 && f_states.subset_of(states_of(std::vector<clause>{weaker}, n)))
                span_clauses.push_back(weaker);
            else if (implied)
                span_clauses.push_back(c);
        }
        auto phi = state_formula(v, states_of(span_clauses, n));
        check(h.implies(phi), "best-abstraction");
    }
    std::size_t total = 0;
    std::vector<std::string> parts;
    for (const auto& [k, c] : violations) {
        total += c;
        parts.push_back(k + "=" + std::to_string(c));
    }
    m << single << " (f,b) and " << multi << " (f,B) cases, violations " << total;
    if (total)
        m << " [" << detail::join(parts) << "]";
    return total == 0;
}

// Criterion 6: sandwich between Lambda-PDR frames and Kleene iterates.
inline bool sandwich(std::ostream& m)
{
    auto pop = detail::random_population(150, 6, 6);
    std::size_t violations = 0, equal_init = 0, failed = 0;
    for (const auto& p : pop) {
        const auto& ts = p.sys.ts;
        auto lam = lambda_pdr(ts, p.Bk, p.basis);
        auto kl = kleene_mspan(ts, p.basis);
        auto kf = [&](std::size_t i) -> const state_formula& { return kl.frames[std::min(i, kl.frames.size() - 1)]; };
        for (std::size_t i = 0; i + 1 < lam.frames.size(); ++i)
            if (!kf(i).implies(lam.frames[i + 1]) || !lam.frames[i + 1].implies(kf(i + 1)))
                ++violations;
        std::size_t istar = kleene_iterations(kl);
        if (lam.converged()) {
            std::size_t j = detail::lambda_index(lam);
            if ((j > istar ? j - istar : istar - j) > 1)
                ++violations;
        } else {
            ++failed;
            if (lam.index > istar + 1)
                ++violations;
        }
        if (in_mspan(ts.init(), p.basis)) {
            ++equal_init;
            for (std::size_t i = 0; i < lam.frames.size(); ++i)
                if (!lam.frames[i].equivalent(kf(i)))
                    ++violations;
        }
    }
    m << pop.size() << " systems (" << failed << " Lambda-PDR failures, " << equal_init
      << " with Init in span), violations " << violations;
    return violations == 0 && pop.size() >= 100;
}

// Criterion 7: abstract reach equals Kleene iterates.
inline bool abstract_reach_equivalence(std::ostream& m)
{
    auto pop = detail::random_population(150, 6, 6);
    std::size_t violations = 0, single = 0, hyper = 0;
    for (const auto& p : pop) {
        const auto& ts = p.sys.ts;
        std::size_t m_cubes = p.basis.size();
        if (m_cubes == 0 || m_cubes > 3 || (m_cubes > 1 && ts.num_vars() > 5))
            continue;
        (m_cubes == 1 ? single : hyper)++;
        auto kl = kleene_mspan(ts, p.basis);
        std::size_t count = kl.frames.size() + 1;
        auto full = build_abstract(ts, p.basis, abstraction_variant::pre_and_post);
        auto post_only = build_abstract(ts, p.basis, abstraction_variant::post_only);
        auto r1 = abstract_reach_sequence(full, count);
        auto r2 = abstract_reach_sequence(post_only, count);
        if (!detail::frames_equal(r1, kl.frames, count))
            ++violations;
        if (!detail::frames_equal(r1, r2, count))
            ++violations;
        for (std::size_t i = 0; i < count; ++i)
            if (abstract_image_factored(full, r1[i].states()) != abstract_image(full, r1[i].states()))
                ++violations;
    }
    m << single << " single-cube and " << hyper << " hyper bases, violations " << violations;
    return violations == 0 && single >= 20 && hyper >= 20;
}

// Criterion 8: frame indices within the diameter bounds.
inline bool diameter_bounds(std::ostream& m)
{
    std::size_t violations = 0, checked = 0;
    auto check_system = [&](const transition_system& ts, std::size_t k) {
        auto Bk = backward_reach(ts, k);
        auto basis = basis_of(Bk);
        if (basis.empty())
            return;
        auto lam = lambda_pdr(ts, Bk, basis);
        std::uint64_t bound = basis.size() == 1 ? bound_single(ts, basis.cubes[0]) : bound_hyper(ts, basis);
        ++checked;
        if (detail::lambda_index(lam) > bound)
            ++violations;
    };
    for (const auto& p : detail::random_population(150, 6, 6))
        check_system(p.sys.ts, p.k);
    for (unsigned n = 2; n <= 4; ++n)
        check_system(bench::skip_counter(n).ts, 1);
    for (unsigned n = 3; n <= 4; ++n)
        check_system(bench::bounce_skip_counter(n).ts, 1);
    for (unsigned n = 2; n <= 6; ++n)
        check_system(bench::even_counter(n).ts, 0);
    for (unsigned n = 3; n <= 6; ++n)
        check_system(bench::two_setter(n).ts, 0);
    for (unsigned n = 2; n <= 5; ++n)
        check_system(bench::wrap_counter(n).ts, 0);
    for (unsigned n = 4; n <= 8; n += 2)
        check_system(bench::majority_setter(n).ts, 0);
    for (unsigned n = 2; n <= 5; ++n)
        for (unsigned r = 1; r < n; ++r)
            check_system(bench::multiskip_counter(n, r).ts, 0);

    std::size_t diam_violations = 0, diam_checked = 0;
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<unsigned> nd(2, 7);
    for (; diam_checked < 200; ++diam_checked) {
        auto g = bench::random_system(nd(rng), rng(), false);
        if (diameter(g.ts) > cover_size(g.ts.relation()))
            ++diam_violations;
    }
    m << checked << " frame-index checks, violations " << violations << "; " << diam_checked
      << " diameter checks, violations " << diam_violations;
    return violations == 0 && diam_violations == 0;
}

// Criterion 9: bounce-back skip counter has a linear restricted cover.
inline bool bounce_counter(std::ostream& m)
{
    bool ok = true;
    double c = 0;
    std::vector<std::string> parts;
    for (unsigned n = 3; n <= 7; ++n) {
        auto g = bench::bounce_skip_counter(n);
        auto restricted = restrict(g.ts, *g.restriction);
        auto cubes = irredundant_dnf_cover(backward_reach(g.ts, 1));
        if (cubes.size() != 1) {
            ok = false;
            parts.push_back("n=" + std::to_string(n) + ":B1 not a cube");
            continue;
        }
        cube b = project_cube(cubes[0], *g.restriction, g.ts.num_vars());
        std::size_t cover = cover_size(monotonized_relation(restricted, reflect(b), b));
        auto t = lambda_pdr(g.ts, 1);
        c = std::max(c, static_cast<double>(cover) / n);
        bool pass = cover <= 4 * n && t.converged() && t.frame_count() <= cover + 1;
        ok = ok && pass;
        parts.push_back("n=" + std::to_string(n) + ":cover=" + std::to_string(cover) +
                        ",frames=" + std::to_string(t.frame_count()));
    }
    std::ostringstream cs;
    cs.precision(3);
    cs << c;
    m << detail::join(parts) << "; c=" << cs.str();
    return ok && c <= 4;
}

// Criterion 10: PDR frames lie in the span of B_N and contain the Lambda-PDR frames.
inline bool pdr_relationships(std::ostream& m)
{
    std::vector<policy> policies;
    for (const auto& name : policy_names())
        if (name != "random")
            policies.push_back(named_policy(name));
    for (std::uint64_t seed = 1; seed <= 6; ++seed)
        policies.push_back(named_policy("random", seed));
    std::size_t violations = 0, snapshots = 0, runs = 0;
    auto check_family = [&](const generated_system& g) {
        const auto& ts = g.ts;
        std::map<std::size_t, std::pair<monotone_basis, std::vector<state_formula>>> cache;
        auto span_of = [&](std::size_t N, std::size_t frames) -> const auto& {
            auto it = cache.find(N);
            if (it == cache.end() || it->second.second.size() < frames) {
                auto basis = basis_of(backward_reach(ts, N));
                auto seq = lambda_sequence(ts, basis, frames);
                it = cache.insert_or_assign(N, std::make_pair(basis, seq)).first;
            }
            return it->second;
        };
        for (const auto& pol : policies) {
            ++runs;
            auto r = pdr(ts, pol, 0, [&](const std::vector<state_formula>& F) {
                ++snapshots;
                std::size_t N = F.size() - 2;
                const auto& [basis, lam] = span_of(N, F.size());
                for (std::size_t i = 1; i < F.size(); ++i) {
                    if (!in_mspan(F[i], basis))
                        ++violations;
                    if (!lam[i].implies(F[i]))
                        ++violations;
                }
            });
            if (!r.trace.converged())
                ++violations;
        }
    };
    for (unsigned n = 2; n <= 4; ++n) {
        check_family(bench::skip_counter(n));
        check_family(bench::wrap_counter(n));
    }
    m << policies.size() << " policies, " << runs << " runs, " << snapshots << " snapshots, violations "
      << violations;
    return violations == 0;
}

// Criterion 11: separations between Lambda-PDR and PDR.
inline bool separations(std::ostream& m)
{
    bool ok = true;
    std::vector<std::string> parts;
    for (unsigned n = 2; n <= 5; ++n) {
        auto g = bench::wrap_counter(n);
        auto t = lambda_pdr(g.ts, 0);
        std::size_t worst = 0;
        bool all_conv = true;
        for (const auto& name : policy_names())
            for (std::uint64_t seed = 1; seed <= (name == "random" ? 3u : 1u); ++seed) {
                auto r = pdr(g.ts, named_policy(name, seed));
                all_conv = all_conv && r.trace.converged();
                worst = std::max(worst, r.frames_built);
            }
        bool pass = t.frame_count() >= (std::size_t{1} << n) && all_conv && worst <= 2 * (n + 1);
        ok = ok && pass;
        parts.push_back("wrap n=" + std::to_string(n) + ":" + std::to_string(t.frame_count()) + " vs pdr<=" +
                        std::to_string(worst));
    }
    for (unsigned n = 4; n <= 8; n += 2) {
        auto g = bench::majority_setter(n);
        auto t = lambda_pdr(g.ts, 0);
        bool frames_ok = t.converged();
        for (std::size_t i = 0; i < t.frames.size() && i < n; ++i) {
            auto expect = bench::set_of(g.ts.vocab(), [&](state_t s) { return std::popcount(s) <= static_cast<int>(i); });
            frames_ok = frames_ok && t.frames[i].equivalent(expect);
        }
        std::size_t middle = n / 2 - 1;
        std::size_t clauses = t.frames.size() > middle ? irredundant_cnf(t.frames[middle]).size() : 0;
        bool pass = frames_ok && clauses > n * n;
        ok = ok && pass;
        parts.push_back("majority n=" + std::to_string(n) + ":frames " + (frames_ok ? "ok" : "differ") + ",F" +
                        std::to_string(middle) + " clauses=" + std::to_string(clauses) + " vs n^2=" +
                        std::to_string(n * n));
    }
    m << detail::join(parts);
    return ok;
}

// Criterion 12: dual ITP and Lambda-PDR fence conditions on the skip counter.
inline bool fences(std::ostream& m)
{
    const unsigned n = 3;
    auto g = bench::skip_counter(n);
    const auto& I = *g.invariant;
    std::size_t d = diameter(g.ts);
    bool restart = true;
    for (std::size_t s = 0; s < (std::size_t{1} << n); ++s)
        restart = restart && dual_itp(g.ts, s, named_policy("adversarial")).result == itp_verdict::restart_needed;
    bool itp_small = true, itp_large = true;
    for (std::size_t s = 0; s < d; ++s)
        itp_small = itp_small && !fence_check_itp(g.ts, I, s);
    for (std::size_t s = d; s <= d + 2; ++s)
        itp_large = itp_large && fence_check_itp(g.ts, I, s);
    const std::size_t s = 3;
    bool lam_fence = fence_check_lambda(g.ts, I, 1, s);
    auto t = lambda_pdr(g.ts, 1);
    bool lam_conv = t.converged() && t.frame_count() <= s + 1;
    m << "restart for s<" << (1u << n) << ":" << (restart ? "yes" : "no") << ", diameter=" << d
      << ", itp fence false below/true from diameter:" << (itp_small && itp_large ? "yes" : "no")
      << ", lambda fence at s=" << s << ":" << (lam_fence ? "yes" : "no") << ", frames=" << t.frame_count();
    return restart && itp_small && itp_large && lam_fence && lam_conv;
}

inline std::vector<criterion> criteria()
{
    return {
        {1, "skip-counter convergence", {"lambda", "skip"}, 10,
         "n=2..6: converged with 4 frames, F1 = x_n=0 & y=0 & z=0, final frame = invariant and inductive",
         skip_convergence},
        {2, "exponential gap", {"exact", "skip"}, 30, "n=2..6: exact iterations >= 2^n, Lambda-PDR 4",
         exponential_gap},
        {3, "even counter", {"diameter", "bound", "even"}, 5,
         "n=2..6: cover = !x0', bound_single = 2, converged at F2 = !x0", even_counter},
        {4, "two-bit setter", {"lambda", "two"}, 5, "n=3..6: F1 = OR_j xj, converged at frame 1", two_setter},
        {5, "monotone oracle equivalence", {"monotone", "oracle"}, 60,
         ">=500 (f,b) and >=200 (f,B) cases at n=4, zero violations", monotone_oracles},
        {6, "sandwich and iteration counts", {"kleene", "sandwich"}, 120,
         ">=100 random safe systems, zero violations", sandwich},
        {7, "abstract reach equivalence", {"abstract", "reach"}, 300,
         "R^_i = F^_i for single and hyper bases, variants agree, zero violations", abstract_reach_equivalence},
        {8, "diameter bounds", {"diameter", "bound"}, 120,
         "frame index <= bound on all systems, diameter <= cover(Tr) on 200 systems", diameter_bounds},
        {9, "bounce-back skip counter", {"diameter", "bound", "bounce"}, 60,
         "n=3..7: restricted cover <= c*n with c <= 4, frames <= cover+1", bounce_counter},
        {10, "PDR relationships", {"pdr"}, 120,
         ">=10 policies: PDR frames in Mspan(B_N) and implied by Lambda-PDR(k=N) frames", pdr_relationships},
        {11, "Lambda-PDR vs PDR separations", {"pdr", "separation"}, 120,
         "wrap: Lambda frames >= 2^n, PDR <= 2(n+1); majority: frames = #1<=i, middle CNF > n^2", separations},
        {12, "dual ITP fence", {"itp", "fence"}, 30,
         "restart for s<2^n, itp fence false below/true from diameter, lambda fence at s=3 with <= 4 frames",
         fences},
    };
}

inline bool selected(const criterion& c, const std::string& filter)
{
    if (filter.empty())
        return true;
    if (filter == std::to_string(c.id) || c.name.find(filter) != std::string::npos)
        return true;
    for (const auto& t : c.tags)
        if (t == filter)
            return true;
    return false;
}

inline criterion_result run_criterion(const criterion& c)
{
    criterion_result r{c.id, c.name, false, "", c.expected, 0, c.limit};
    std::ostringstream out;
    auto start = std::chrono::steady_clock::now();
    try {
        r.passed = c.run(out);
    } catch (const std::exception& e) {
        out << "exception: " << e.what();
        r.passed = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > c.limit) {
        r.passed = false;
        out << " (time limit exceeded)";
    }
    r.measured = out.str();
    return r;
}

inline std::string format_line(const criterion_result& r, bool timing)
{
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.name
       << " | measured: " << r.measured << " | expected: " << r.expected;
    if (timing) {
        os.precision(3);
        os << std::fixed << " | " << r.seconds << "s";
    }
    return os.str();
}

/// Runs the selected criteria in id order; the result is ordered and independent of timing.
inline std::vector<criterion_result> run_all(const std::string& filter = "")
{
    std::vector<criterion_result> out;
    for (const auto& c : criteria())
        if (selected(c, filter))
            out.push_back(run_criterion(c));
    return out;
}

} // namespace monomc::suite

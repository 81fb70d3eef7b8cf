#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "abstract_ts.hpp"
#include "monotone.hpp"
#include "systems.hpp"

namespace monomc {

/// Resolves the nondeterministic choices of PDR and dual ITP.
struct policy {
    enum class cex_rule { lex_min, lex_max, random };
    enum class drop_rule { vocab, reverse, random };

    cex_rule cex_order = cex_rule::lex_min;
    drop_rule drop_order = drop_rule::vocab;
    std::uint64_t seed = 0;
    std::string name = "default";
};

/// Built-in policies: default, reverse, adversarial, lexmax, lexmax-reverse, random.
inline policy named_policy(const std::string& name, std::uint64_t seed = 0)
{
    policy p;
    p.name = name;
    p.seed = seed;
    if (name == "default") {
    } else if (name == "reverse" || name == "adversarial") {
        p.drop_order = policy::drop_rule::reverse;
    } else if (name == "lexmax") {
        p.cex_order = policy::cex_rule::lex_max;
    } else if (name == "lexmax-reverse") {
        p.cex_order = policy::cex_rule::lex_max;
        p.drop_order = policy::drop_rule::reverse;
    } else if (name == "random") {
        p.cex_order = policy::cex_rule::random;
        p.drop_order = policy::drop_rule::random;
    } else {
        throw error("unknown policy '" + name + "'");
    }
    return p;
}

inline std::vector<std::string> policy_names()
{
    return {"default", "reverse", "adversarial", "lexmax", "lexmax-reverse", "random"};
}

namespace detail {

class chooser {
public:
    explicit chooser(const policy& p) : _p(p), _rng(p.seed) {}

    /// Picks a member; precondition: non-empty.
    state_t pick(const state_set& s)
    {
        switch (_p.cex_order) {
        case policy::cex_rule::lex_min:
            return s.first();
        case policy::cex_rule::lex_max:
            return s.last();
        case policy::cex_rule::random:
            break;
        }
        std::uniform_int_distribution<std::uint64_t> d(0, s.count() - 1);
        return s.nth(d(_rng));
    }

    /// Variables in the order their literals are tried for removal.
    std::vector<unsigned> drop_order(unsigned n)
    {
        std::vector<unsigned> order(n);
        std::iota(order.begin(), order.end(), 0u);
        if (_p.drop_order == policy::drop_rule::reverse)
            std::reverse(order.begin(), order.end());
        else if (_p.drop_order == policy::drop_rule::random)
            std::shuffle(order.begin(), order.end(), _rng);
        return order;
    }

private:
    policy _p;
    std::mt19937_64 _rng;
};

inline bool meets_cube(const state_set& s, const cube& c)
{
    bool hit = false;
    c.for_each_state(s.num_vars(), [&](state_t x) { hit = hit || s.test(x); });
    return hit;
}

/// Whether no member of `keep` lies in the cube negated by clause c.
inline bool clause_keeps(const state_set& keep, const clause& c, std::uint64_t keep_count)
{
    cube falsifying = c.negation();
    unsigned free = keep.num_vars() - falsifying.literals();
    if ((std::uint64_t{1} << free) < keep_count)
        return !meets_cube(keep, falsifying);
    bool hit = false;
    keep.for_each([&](state_t s) { hit = hit || falsifying.contains(s); });
    return !hit;
}

/// Greedy single pass over `order`: drop a literal whenever the clause still keeps all of `keep`.
inline clause minimize_clause(state_t blocked, const state_set& keep, const std::vector<unsigned>& order)
{
    unsigned n = keep.num_vars();
    clause c = clause::negation_of(cube::of_state(blocked, n));
    std::uint64_t cnt = keep.count();
    for (unsigned v : order) {
        state_t bit = state_t{1} << v;
        clause trial{c.mask & ~bit, c.value & ~bit};
        if (clause_keeps(keep, trial, cnt))
            c = trial;
    }
    return c;
}

} // namespace detail

enum class lambda_mode { closed_form, clause_enumeration };

/// Lambda-PDR frame F_{i+1} from F_i: mhull(post*(F_i), B), or the conjunction of every
/// clause c contained in !sigma_b for sigma_b in B that post*(F_i) implies.
inline state_formula lambda_step(const transition_system& ts, const state_formula& F, const monotone_basis& B,
                                 lambda_mode mode = lambda_mode::closed_form)
{
    auto ps = post_star_step(ts, F);
    if (mode == lambda_mode::closed_form)
        return mhull(ps, B);
    unsigned n = ts.num_vars();
    require_enumerable(n, 5);
    state_set acc(n, true);
    B.states().states().for_each([&](state_t b) {
        clause full = clause::negation_of(cube::of_state(b, n));
        state_t m = full.mask;
        for (state_t sub = m;; sub = (sub - 1) & m) {
            clause c{sub, full.value & sub};
            if (detail::clause_keeps(ps.states(), c, ps.states().count()))
                acc &= states_of(std::vector<clause>{c}, n);
            if (sub == 0)
                break;
        }
    });
    return {ts.vocab(), std::move(acc)};
}

/**
 * @brief Lambda-PDR with an explicit B_k and basis of it.
 *
 * F_0 = Init; while F_i does not imply F_{i-1}: fail if post(F_i) meets B_k, else
 * F_{i+1} = mhull(post*(F_i), basis).
 */
inline frame_trace lambda_pdr(const transition_system& ts, const state_formula& Bk, const monotone_basis& basis,
                              lambda_mode mode = lambda_mode::closed_form,
                              std::size_t max_frames = std::numeric_limits<std::size_t>::max())
{
    frame_trace t;
    t.frames.push_back(ts.init());
    if (ts.init().states().intersects(Bk.states())) {
        t.result = verdict::unsafe;
        t.index = 0;
        return t;
    }
    for (std::size_t i = 0;; ++i) {
        const auto& F = t.frames[i];
        bool stable = i == 0 ? F.is_false() : F.implies(t.frames[i - 1]);
        if (stable) {
            t.result = verdict::converged;
            t.index = i;
            return t;
        }
        if (post(ts, F).states().intersects(Bk.states())) {
            t.result = verdict::failed_restart;
            t.index = i;
            return t;
        }
        if (i + 1 >= max_frames) {
            t.result = verdict::budget_exceeded;
            t.index = i;
            return t;
        }
        auto next = lambda_step(ts, F, basis, mode);
        t.frames.push_back(std::move(next));
    }
}

inline frame_trace lambda_pdr(const transition_system& ts, std::size_t k, lambda_mode mode = lambda_mode::closed_form)
{
    auto Bk = backward_reach(ts, k);
    return lambda_pdr(ts, Bk, basis_of(Bk), mode);
}

/// Lambda-PDR frames F_0..F_count ignoring the restart and convergence checks.
inline std::vector<state_formula> lambda_sequence(const transition_system& ts, const monotone_basis& basis,
                                                  std::size_t count)
{
    std::vector<state_formula> out{ts.init()};
    while (out.size() <= count)
        out.push_back(lambda_step(ts, out.back(), basis));
    return out;
}

struct escalation_result {
    frame_trace trace;
    std::size_t k = 0;
};

/// Runs Lambda-PDR with k, k+1, ... until it no longer fails, up to k_max.
inline escalation_result lambda_pdr_escalating(const transition_system& ts, std::size_t k0, std::size_t k_max)
{
    escalation_result r;
    for (std::size_t k = k0;; ++k) {
        r.k = k;
        r.trace = lambda_pdr(ts, k);
        if (r.trace.result != verdict::failed_restart || k >= k_max)
            return r;
    }
}

/// Kleene iterations in the span of a basis: F^_0 = mhull(Init), F^_{i+1} = mhull(post*(F^_i)).
inline frame_trace kleene_mspan(const transition_system& ts, const monotone_basis& basis)
{
    frame_trace t;
    t.frames.push_back(mhull(ts.init(), basis));
    for (std::size_t i = 0;; ++i) {
        const auto& F = t.frames[i];
        bool stable = i == 0 ? F.is_false() : F.implies(t.frames[i - 1]);
        if (stable) {
            t.result = verdict::converged;
            t.index = i;
            return t;
        }
        t.frames.push_back(mhull(post_star_step(ts, F), basis));
    }
}

inline frame_trace kleene_mspan(const transition_system& ts, std::size_t k)
{
    return kleene_mspan(ts, basis_of(backward_reach(ts, k)));
}

/// Iterations i* of a converged Kleene trace: the least i with F^_{i+1} = F^_i.
inline std::size_t kleene_iterations(const frame_trace& t) { return t.final_index(); }

struct pdr_result {
    frame_trace trace;
    std::vector<std::vector<clause>> lemmas; // lemmas[j]: clauses conjoined into F_j
    std::size_t blocked = 0;
    std::size_t frames_built = 0; // N when the run stopped
};

/// Called after each lemma with the current frames F_0..F_{N+1}.
using pdr_observer = std::function<void(const std::vector<state_formula>&)>;

inline std::size_t default_max_frames(const transition_system& ts)
{
    unsigned n = ts.num_vars();
    return n + 1 >= 63 ? std::numeric_limits<std::size_t>::max() : (std::size_t{1} << (n + 1)) + 2;
}

/**
 * @brief Basic PDR with recursive blocking and lemma strengthening of all earlier frames.
 *
 * Lemmas are minimized by a greedy pass in the policy's literal order, keeping
 * post*(F_{i-1}) => c (which includes Init => c). Returns the lowest i >= 1 with
 * F_i => F_{i-1} as converged(i).
 */
inline pdr_result pdr(const transition_system& ts, const policy& pol, std::size_t max_frames = 0,
                      const pdr_observer& observe = {})
{
    if (max_frames == 0)
        max_frames = default_max_frames(ts);
    unsigned n = ts.num_vars();
    detail::chooser choose(pol);
    pdr_result r;
    auto& F = r.trace.frames;
    F.push_back(ts.init());
    r.lemmas.emplace_back();
    const auto& bad = ts.bad().states();
    bool unsafe = false;

    std::function<void(state_t, std::size_t)> block = [&](state_t sb, std::size_t i) {
        if (unsafe)
            return;
        if (i == 0) {
            unsafe = true;
            return;
        }
        while (!unsafe) {
            // Pre-states of sb (or sb itself) inside F_{i-1}.
            state_set pre_in(n);
            if (F[i - 1].states().test(sb))
                pre_in.set(sb);
            ts.for_each_predecessor(sb, [&](state_t p) {
                if (F[i - 1].states().test(p))
                    pre_in.set(p);
            });
            if (pre_in.empty())
                break;
            block(choose.pick(pre_in), i - 1);
        }
        if (unsafe)
            return;
        auto keep = post_star_step(ts, F[i - 1]).states();
        clause c = detail::minimize_clause(sb, keep, choose.drop_order(n));
        state_set cs = states_of(std::vector<clause>{c}, n);
        for (std::size_t j = 1; j <= i; ++j) {
            F[j] = state_formula(ts.vocab(), F[j].states() & cs);
            r.lemmas[j].push_back(c);
        }
        ++r.blocked;
        if (observe)
            observe(F);
    };

    std::size_t N = 0;
    while (true) {
        for (std::size_t i = 1; i <= N; ++i)
            if (F[i].implies(F[i - 1])) {
                r.frames_built = N;
                r.trace.result = verdict::converged;
                r.trace.index = i;
                F.resize(i + 1);
                r.lemmas.resize(i + 1);
                return r;
            }
        if (N + 1 > max_frames) {
            r.frames_built = N;
            r.trace.result = verdict::budget_exceeded;
            r.trace.index = N;
            return r;
        }
        F.push_back(state_formula::top(ts.vocab()));
        F.back() = state_formula(ts.vocab(), F.back().states());
        r.lemmas.emplace_back();
        while (true) {
            state_set hits = F[N + 1].states() & bad;
            if (hits.empty())
                break;
            block(choose.pick(hits), N + 1);
            if (unsafe) {
                r.frames_built = N + 1;
                r.trace.result = verdict::unsafe;
                r.trace.index = 0;
                return r;
            }
        }
        ++N;
    }
}

enum class itp_verdict { invariant, restart_needed, unsafe };

inline const char* to_string(itp_verdict v)
{
    switch (v) {
    case itp_verdict::invariant:
        return "invariant";
    case itp_verdict::restart_needed:
        return "restart_needed";
    case itp_verdict::unsafe:
        return "unsafe";
    }
    return "?";
}

struct itp_result {
    itp_verdict result = itp_verdict::invariant;
    state_formula candidate;
    std::vector<clause> learned;
    std::optional<state_t> failing_cti;
};

/**
 * @brief Dual model-based interpolation with forward bound s.
 *
 * Starts from !Bad; each CTI pre-state outside R_s is excluded by a minimal clause
 * implied by R_s. A CTI inside R_s yields restart_needed.
 */
inline itp_result dual_itp(const transition_system& ts, std::size_t s, const policy& pol)
{
    unsigned n = ts.num_vars();
    detail::chooser choose(pol);
    itp_result r;
    auto Rs = reach_within(ts, s);
    r.candidate = !ts.bad();
    r.candidate = state_formula(ts.vocab(), r.candidate.states());
    if (Rs.states().intersects(ts.bad().states())) {
        r.result = itp_verdict::unsafe;
        return r;
    }
    while (true) {
        const auto& phi = r.candidate.states();
        state_set cti(n);
        phi.for_each([&](state_t x) {
            ts.for_each_successor(x, [&](state_t y) {
                if (!phi.test(y))
                    cti.set(x);
            });
        });
        if (cti.empty())
            break;
        state_t sb = choose.pick(cti);
        if (Rs.states().test(sb)) {
            r.result = itp_verdict::restart_needed;
            r.failing_cti = sb;
            return r;
        }
        clause c = detail::minimize_clause(sb, Rs.states(), choose.drop_order(n));
        r.learned.push_back(c);
        r.candidate = state_formula(ts.vocab(), phi & states_of(std::vector<clause>{c}, n));
    }
    r.result = itp_verdict::invariant;
    return r;
}

/// Boundary of I inside the concrete s-step reachable set.
inline bool fence_check_itp(const transition_system& ts, const state_formula& I, std::size_t s)
{
    return boundary_plus(I).implies(reach_within(ts, s));
}

/// I in the span of B_k and its boundary inside the abstract s-step reachable set.
inline bool fence_check_lambda(const transition_system& ts, const state_formula& I, std::size_t k, std::size_t s)
{
    auto basis = basis_of(backward_reach(ts, k));
    if (!in_mspan(I, basis))
        return false;
    if (basis.empty())
        return true; // the span is {true} and every abstract frame is true
    auto a = build_abstract(ts, basis);
    return boundary_plus(I).implies(abstract_reach(a, s));
}

} // namespace monomc

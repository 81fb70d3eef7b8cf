#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cover.hpp"
#include "formulas.hpp"
#include "monotone.hpp"

namespace monomc {

/**
 * @brief Finite transition system (Init, Tr, Bad).
 *
 * Tr is held as successor and predecessor adjacency over state indices; the relation
 * formula over the doubled vocabulary (pre bits low, post bits high) is derived on demand.
 */
class transition_system {
public:
    using successor_fn = std::function<void(state_t, std::vector<state_t>&)>;

    transition_system() = default;

    static transition_system from_successors(vocab_ptr v, state_formula init, state_formula bad,
                                             const successor_fn& succ)
    {
        unsigned n = v->size();
        require_enumerable(n, max_state_vars());
        transition_system ts;
        ts._vocab = v;
        ts._init = std::move(init);
        ts._bad = std::move(bad);
        check_same(ts._init.vocab(), v);
        check_same(ts._bad.vocab(), v);
        std::uint64_t size = std::uint64_t{1} << n;
        ts._succ_off.assign(size + 1, 0);
        std::vector<state_t> buf;
        for (std::uint64_t s = 0; s < size; ++s) {
            buf.clear();
            succ(static_cast<state_t>(s), buf);
            std::sort(buf.begin(), buf.end());
            buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
            for (auto t : buf) {
                if (t >= size)
                    throw error("successor outside the state space");
                ts._succ.push_back(t);
            }
            ts._succ_off[s + 1] = ts._succ.size();
        }
        ts.build_predecessors();
        return ts;
    }

    /// Tr given as a formula over the doubled vocabulary of v.
    static transition_system from_relation(vocab_ptr v, state_formula init, state_formula bad,
                                           const state_formula& tr)
    {
        unsigned n = v->size();
        if (tr.num_vars() != 2 * n)
            throw vocabulary_mismatch();
        state_t mask = all_vars_mask(n);
        std::vector<std::vector<state_t>> succ(std::size_t{1} << n);
        tr.states().for_each([&](state_t p) { succ[p & mask].push_back(p >> n); });
        return from_successors(std::move(v), std::move(init), std::move(bad),
                               [&](state_t s, std::vector<state_t>& out) { out = succ[s]; });
    }

    const vocab_ptr& vocab() const { return _vocab; }
    unsigned num_vars() const { return _vocab->size(); }
    const state_formula& init() const { return _init; }
    const state_formula& bad() const { return _bad; }

    template <class F>
    void for_each_successor(state_t s, F&& f) const
    {
        for (auto i = _succ_off[s]; i < _succ_off[s + 1]; ++i)
            f(_succ[i]);
    }

    template <class F>
    void for_each_predecessor(state_t s, F&& f) const
    {
        for (auto i = _pred_off[s]; i < _pred_off[s + 1]; ++i)
            f(_pred[i]);
    }

    std::size_t num_transitions() const { return _succ.size(); }

    bool has_transition(state_t s, state_t t) const
    {
        auto b = _succ.begin() + static_cast<std::ptrdiff_t>(_succ_off[s]);
        auto e = _succ.begin() + static_cast<std::ptrdiff_t>(_succ_off[s + 1]);
        return std::binary_search(b, e, t);
    }

    vocab_ptr doubled_vocab() const
    {
        if (!_doubled)
            _doubled = vocabulary::doubled(*_vocab);
        return _doubled;
    }

    /// Tr as a set of pairs; index = pre | post << n.
    state_formula relation() const
    {
        unsigned n = num_vars();
        require_enumerable(2 * n, max_relation_vars());
        state_set s(2 * n);
        for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p)
            for_each_successor(static_cast<state_t>(p), [&](state_t t) { s.set(static_cast<state_t>(p) | (t << n)); });
        return {doubled_vocab(), std::move(s)};
    }

private:
    void build_predecessors()
    {
        std::uint64_t size = _succ_off.size() - 1;
        _pred_off.assign(size + 1, 0);
        for (auto t : _succ)
            ++_pred_off[t + 1];
        for (std::uint64_t i = 0; i < size; ++i)
            _pred_off[i + 1] += _pred_off[i];
        _pred.assign(_succ.size(), 0);
        std::vector<std::size_t> fill(_pred_off.begin(), _pred_off.end() - 1);
        for (std::uint64_t s = 0; s < size; ++s)
            for (auto i = _succ_off[s]; i < _succ_off[s + 1]; ++i)
                _pred[fill[_succ[i]]++] = static_cast<state_t>(s);
    }

    vocab_ptr _vocab;
    mutable vocab_ptr _doubled;
    state_formula _init;
    state_formula _bad;
    std::vector<std::size_t> _succ_off;
    std::vector<state_t> _succ;
    std::vector<std::size_t> _pred_off;
    std::vector<state_t> _pred;
};

/// Outcome of an inference run.
enum class verdict { converged, failed_restart, unsafe, budget_exceeded };

inline const char* to_string(verdict v)
{
    switch (v) {
    case verdict::converged:
        return "converged";
    case verdict::failed_restart:
        return "failed_restart";
    case verdict::unsafe:
        return "unsafe";
    case verdict::budget_exceeded:
        return "budget_exceeded";
    }
    return "?";
}

/**
 * @brief Frames F_0..F_N with a verdict.
 *
 * converged(i) means F_i => F_{i-1} (F_{-1} = false); the invariant is F_{i-1}, which
 * equals F_i semantically, and frame_count() is i. failed_restart(i) names the frame at
 * which the run stopped.
 */
struct frame_trace {
    std::vector<state_formula> frames;
    verdict result = verdict::converged;
    std::size_t index = 0;

    bool converged() const { return result == verdict::converged; }

    std::size_t frame_count() const { return index; }

    /// Index of the invariant frame for converged runs, else the stopping index.
    std::size_t final_index() const { return converged() && index > 0 ? index - 1 : index; }

    const state_formula& invariant() const { return frames.at(final_index()); }
};

inline state_formula post(const transition_system& ts, const state_formula& S)
{
    check_same(ts.vocab(), S.vocab());
    state_set out(ts.num_vars());
    S.states().for_each([&](state_t s) { ts.for_each_successor(s, [&](state_t t) { out.set(t); }); });
    return {ts.vocab(), std::move(out)};
}

inline state_formula pre(const transition_system& ts, const state_formula& S)
{
    check_same(ts.vocab(), S.vocab());
    state_set out(ts.num_vars());
    S.states().for_each([&](state_t s) { ts.for_each_predecessor(s, [&](state_t t) { out.set(t); }); });
    return {ts.vocab(), std::move(out)};
}

/// S together with its successors.
inline state_formula post_star_step(const transition_system& ts, const state_formula& S)
{
    return S | post(ts, S);
}

/// Exact reachability frames F_{i+1} = post*(F_i) until a fixpoint or a bad frame.
inline frame_trace exact_forward_reach(const transition_system& ts)
{
    frame_trace t;
    t.frames.push_back(ts.init());
    for (std::size_t i = 0;; ++i) {
        const auto& cur = t.frames[i];
        if (cur.states().intersects(ts.bad().states())) {
            t.result = verdict::unsafe;
            t.index = i;
            return t;
        }
        if (i > 0 && cur.implies(t.frames[i - 1])) {
            t.result = verdict::converged;
            t.index = i;
            return t;
        }
        if (i == 0 && cur.is_false()) {
            t.result = verdict::converged;
            t.index = 0;
            return t;
        }
        auto next = post_star_step(ts, cur);
        t.frames.push_back(std::move(next));
    }
}

/// All states reachable from Init.
inline state_formula reachable_states(const transition_system& ts)
{
    state_set seen = ts.init().states();
    std::vector<state_t> stack = seen.members();
    while (!stack.empty()) {
        state_t s = stack.back();
        stack.pop_back();
        ts.for_each_successor(s, [&](state_t t) {
            if (!seen.test(t)) {
                seen.set(t);
                stack.push_back(t);
            }
        });
    }
    return {ts.vocab(), std::move(seen)};
}

/// States reachable in at most s steps.
inline state_formula reach_within(const transition_system& ts, std::size_t s)
{
    state_formula r = ts.init();
    state_formula frontier = r;
    for (std::size_t i = 0; i < s && !frontier.is_false(); ++i) {
        auto next = post(ts, frontier) - r;
        r = r | next;
        frontier = next;
    }
    return r;
}

/// B_k: states with a path of at most k steps into Bad.
inline state_formula backward_reach(const transition_system& ts, std::size_t k)
{
    state_formula b = ts.bad();
    state_formula frontier = b;
    for (std::size_t i = 0; i < k && !frontier.is_false(); ++i) {
        auto next = pre(ts, frontier) - b;
        b = b | next;
        frontier = next;
    }
    return state_formula(b.vocab(), b.states());
}

/// Basis from an irredundant prime cover of Bk.
inline monotone_basis basis_of(const state_formula& Bk)
{
    return {Bk.vocab(), irredundant_dnf_cover(Bk)};
}

struct inductive_check {
    enum class failure { none, initiation, consecution, safety };
    bool holds = true;
    failure violated = failure::none;
    std::optional<state_t> state;
    std::optional<state_t> successor;

    explicit operator bool() const { return holds; }
};

/// Checks Init => I, I & Tr => I', I => !Bad, in that order; reports the first witness.
inline inductive_check is_inductive(const transition_system& ts, const state_formula& I)
{
    check_same(ts.vocab(), I.vocab());
    inductive_check r;
    auto outside_init = ts.init() - I;
    if (!outside_init.is_false()) {
        r.holds = false;
        r.violated = inductive_check::failure::initiation;
        r.state = outside_init.states().first();
        return r;
    }
    bool found = false;
    I.states().for_each([&](state_t s) {
        if (found)
            return;
        ts.for_each_successor(s, [&](state_t t) {
            if (!found && !I.states().test(t)) {
                found = true;
                r.state = s;
                r.successor = t;
            }
        });
    });
    if (found) {
        r.holds = false;
        r.violated = inductive_check::failure::consecution;
        return r;
    }
    auto bad_in = I & ts.bad();
    if (!bad_in.is_false()) {
        r.holds = false;
        r.violated = inductive_check::failure::safety;
        r.state = bad_in.states().first();
    }
    return r;
}

/// Least s with Reach_s = Reach_{s+1}.
inline std::size_t diameter(const transition_system& ts)
{
    state_formula r = ts.init();
    state_formula frontier = r;
    std::size_t s = 0;
    while (true) {
        auto next = post(ts, frontier) - r;
        if (next.is_false())
            return s;
        r = r | next;
        frontier = next;
        ++s;
    }
}

/// States of I with a Hamming-distance-1 neighbour outside I.
inline state_formula boundary_plus(const state_formula& I)
{
    unsigned n = I.num_vars();
    state_set out(n);
    const auto& in = I.states();
    in.for_each([&](state_t s) {
        for (unsigned i = 0; i < n; ++i)
            if (!in.test(s ^ (state_t{1} << i))) {
                out.set(s);
                break;
            }
    });
    return {I.vocab(), std::move(out)};
}

/// Maps a state of the restricted vocabulary (free variables of `fixed`, in order) to the full one.
inline state_t embed_state(state_t r, const cube& fixed, unsigned n)
{
    state_t s = fixed.value;
    unsigned j = 0;
    for (unsigned i = 0; i < n; ++i)
        if (!fixed.has(i))
            s |= ((r >> j++) & 1u) << i;
    return s;
}

inline state_t project_state(state_t s, const cube& fixed, unsigned n)
{
    state_t r = 0;
    unsigned j = 0;
    for (unsigned i = 0; i < n; ++i)
        if (!fixed.has(i))
            r |= ((s >> i) & 1u) << j++;
    return r;
}

/// Drops the literals on fixed variables and renumbers the rest.
inline cube project_cube(const cube& c, const cube& fixed, unsigned n)
{
    return {project_state(c.mask, fixed, n), project_state(c.value, fixed, n)};
}

/// The restricted set conjoined with fixed, over the full vocabulary.
inline state_formula embed(const state_formula& r, const cube& fixed, const vocab_ptr& full)
{
    state_set out(full->size());
    r.states().for_each([&](state_t x) { out.set(embed_state(x, fixed, full->size())); });
    return {full, std::move(out)};
}

inline vocab_ptr restricted_vocab(const vocabulary& v, const cube& fixed)
{
    std::vector<std::string> names;
    for (unsigned i = 0; i < v.size(); ++i)
        if (!fixed.has(i))
            names.push_back(v.name(i));
    return vocabulary::make(std::move(names));
}

/// Project a full-vocabulary set onto the states that agree with fixed.
inline state_formula project(const state_formula& f, const cube& fixed, const vocab_ptr& restricted)
{
    unsigned n = f.num_vars();
    state_set out(restricted->size());
    f.states().for_each([&](state_t s) {
        if (fixed.contains(s))
            out.set(project_state(s, fixed, n));
    });
    return {restricted, std::move(out)};
}

/**
 * @brief Substitutes the fixed values into Init, Tr (both copies) and Bad and projects
 * those variables out.
 */
inline transition_system restrict(const transition_system& ts, const cube& fixed)
{
    unsigned n = ts.num_vars();
    if (fixed.mask == 0)
        return ts;
    if (!ts.init().states().intersects(states_of(fixed, n)))
        throw error("restriction inconsistent with Init");
    if (fixed.mask == all_vars_mask(n))
        throw error("restriction leaves no variables");
    auto rv = restricted_vocab(*ts.vocab(), fixed);
    return transition_system::from_successors(
        rv, project(ts.init(), fixed, rv), project(ts.bad(), fixed, rv), [&](state_t r, std::vector<state_t>& out) {
            ts.for_each_successor(embed_state(r, fixed, n), [&](state_t t) {
                if (fixed.contains(t))
                    out.push_back(project_state(t, fixed, n));
            });
        });
}

/**
 * @brief Hypertransition system of width m: a state is reachable in i steps if it is the root
 * of a tree of height at most i with Init leaves.
 *
 * The relation is either an explicit set over m pre-copies plus one post-copy (copy j occupies
 * bits [j n, (j+1) n), the post-state the top n bits) or a conjunction of m binary relations,
 * the j-th constraining (sigma_j, sigma').
 */
struct hyper_transition_system {
    vocab_ptr vocab;
    unsigned width = 1;
    state_formula init;
    state_formula bad;
    std::optional<state_set> explicit_relation;
    std::vector<state_set> factors;

    /// States sigma' with some sigma_1..sigma_m in S related to it.
    state_set image(const state_set& S) const
    {
        unsigned n = vocab->size();
        state_t mask = all_vars_mask(n);
        if (explicit_relation) {
            state_set out(n);
            explicit_relation->for_each([&](state_t t) {
                for (unsigned j = 0; j < width; ++j)
                    if (!S.test((t >> (j * n)) & mask))
                        return;
                out.set((t >> (width * n)) & mask);
            });
            return out;
        }
        state_set out(n, true);
        for (const auto& rel : factors) {
            state_set part(n);
            rel.for_each([&](state_t t) {
                if (S.test(t & mask))
                    part.set(t >> n);
            });
            out &= part;
        }
        return out;
    }
};

/// Tree-height reachability levels until the fixpoint; returns its index.
inline std::size_t diameter(const hyper_transition_system& hs)
{
    state_set level = hs.init.states();
    std::size_t s = 0;
    while (true) {
        state_set next = level | hs.image(level);
        if (next == level)
            return s;
        level = std::move(next);
        ++s;
    }
}

} // namespace monomc

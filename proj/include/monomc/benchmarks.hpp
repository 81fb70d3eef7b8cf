#pragma once

#include <bit>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "parser.hpp"
#include "systems.hpp"

namespace monomc {

struct generator_spec {
    std::string family;
    std::map<std::string, long> params;
    std::string description;
};

/**
 * @brief A generated system with the family's stated invariant, if any.
 *
 * `symbolic_tr` is an expression for Tr over the doubled vocabulary; `restricted_tr` is the
 * same for the restriction by `restriction` (skip-counter families: y = 0, z = 0).
 */
struct generated_system {
    generator_spec spec;
    transition_system ts;
    std::optional<state_formula> invariant;
    std::optional<std::string> symbolic_tr;
    std::optional<cube> restriction;
    std::optional<std::string> restricted_tr;
};

namespace bench {

inline std::vector<std::string> bit_names(const std::string& prefix, unsigned from, unsigned count)
{
    std::vector<std::string> out;
    for (unsigned i = 0; i < count; ++i)
        out.push_back(prefix + std::to_string(from + i));
    return out;
}

/// Names of the variables x_lo..x_{lo+w-1}, optionally primed.
inline std::vector<std::string> slice(const std::vector<std::string>& names, unsigned lo, unsigned w, bool primed)
{
    std::vector<std::string> out;
    for (unsigned i = 0; i < w; ++i)
        out.push_back(names[lo + i] + (primed ? "'" : ""));
    return out;
}

/// Conjunction fixing the bit-vector `v` (bit i of value on v[i]).
inline std::string eq_const(const std::vector<std::string>& v, std::uint64_t value)
{
    std::string out = "(";
    for (unsigned i = 0; i < v.size(); ++i) {
        if (i)
            out += " & ";
        out += ((value >> i) & 1u) ? v[i] : "!" + v[i];
    }
    return out + ")";
}

inline std::string eq_vec(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    std::string out = "(";
    for (unsigned i = 0; i < a.size(); ++i) {
        if (i)
            out += " & ";
        out += "(" + b[i] + " <-> " + a[i] + ")";
    }
    return out + ")";
}

/// b = a + 1 (mod 2^w) over bits starting at position `from` (lower bits are not involved).
inline std::string increment(const std::vector<std::string>& a, const std::vector<std::string>& b, unsigned from = 0)
{
    std::string out = "(";
    for (unsigned j = from; j < a.size(); ++j) {
        if (j > from)
            out += " & ";
        std::string carry;
        for (unsigned i = from; i < j; ++i)
            carry += (carry.empty() ? "" : " & ") + a[i];
        if (carry.empty())
            out += "(" + b[j] + " <-> !" + a[j] + ")";
        else
            out += "(" + b[j] + " <-> !(" + a[j] + " <-> (" + carry + ")))";
    }
    return out + ")";
}

inline state_formula set_of(const vocab_ptr& v, const std::function<bool(state_t)>& pred)
{
    state_set s(v->size());
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << v->size()); ++x)
        if (pred(static_cast<state_t>(x)))
            s.set(static_cast<state_t>(x));
    return {v, std::move(s)};
}

inline void require_param(const std::string& family, const std::string& p, long v, long lo, long hi)
{
    if (v < lo || v > hi)
        throw error(family + ": parameter " + p + "=" + std::to_string(v) + " out of range [" + std::to_string(lo) +
                    ", " + std::to_string(hi) + "]");
}

/// Skip-counter x-part step: x+1, skipping 10..0.
inline state_t skip_x_step(state_t x, unsigned n)
{
    state_t w = n + 1;
    state_t mod = state_t{1} << w;
    state_t t = (x + 1) % mod;
    if (t == (state_t{1} << n))
        t = (t + 1) % mod;
    return t;
}

inline generated_system counter_family(unsigned n, bool bounce)
{
    std::string fam = bounce ? "bounce_skip_counter" : "skip_counter";
    unsigned w = n + 1;
    auto names = bit_names("x", 0, w);
    auto ys = bit_names("y", 0, w);
    names.insert(names.end(), ys.begin(), ys.end());
    names.push_back("z");
    auto v = vocabulary::make(names);
    state_t xmask = all_vars_mask(w);
    state_t top = state_t{1} << n;
    state_t zbit = state_t{1} << (2 * w);
    auto succ = [=](state_t s, std::vector<state_t>& out) {
        state_t x = s & xmask, y = (s >> w) & xmask;
        if (s & zbit) {
            out.push_back(x | (((y + 1) & xmask) << w) | zbit);
            return;
        }
        out.push_back(skip_x_step(x, n) | (y << w));
        if (bounce) {
            if (x == top - 1)
                out.push_back(y << w);
            if (x == xmask)
                for (unsigned j = 0; j < n; ++j)
                    out.push_back((top | (state_t{1} << j)) | (y << w));
        }
    };
    auto init = set_of(v, [](state_t s) { return s == 0; });
    state_t bad_state = top | (xmask << w) | zbit;
    auto bad = set_of(v, [=](state_t s) { return s == bad_state; });
    generated_system g;
    g.spec = {fam, {{"n", static_cast<long>(n)}}, ""};
    g.ts = transition_system::from_successors(v, init, bad, succ);
    g.invariant = set_of(v, [=](state_t s) { return (s & xmask) != top && (s >> w) == 0; });

    auto X = slice(names, 0, w, false), Xp = slice(names, 0, w, true);
    auto Y = slice(names, w, w, false), Yp = slice(names, w, w, true);
    std::string skip = "((" + eq_const(X, top - 1) + " & " + eq_const(Xp, top + 1) + ") | (!" + eq_const(X, top - 1) +
                       " & " + increment(X, Xp) + "))";
    std::string xstep = skip;
    if (bounce) {
        std::string hi;
        for (unsigned j = 0; j < n; ++j)
            hi += (hi.empty() ? "" : " | ") + eq_const(Xp, top | (state_t{1} << j));
        xstep = "(" + skip + " | (" + eq_const(X, top - 1) + " & " + eq_const(Xp, 0) + ") | (" + eq_const(X, xmask) +
                " & (" + hi + ")))";
    }
    g.symbolic_tr = "(!z & !z' & " + eq_vec(Y, Yp) + " & " + xstep + ") | (z & z' & " + eq_vec(X, Xp) + " & " +
                    increment(Y, Yp) + ")";
    g.restriction = cube{~xmask & all_vars_mask(2 * w + 1), 0};
    g.restricted_tr = xstep;
    return g;
}

inline generated_system skip_counter(unsigned n)
{
    require_param("skip_counter", "n", n, 1, 9);
    return counter_family(n, false);
}

inline generated_system bounce_skip_counter(unsigned n)
{
    require_param("bounce_skip_counter", "n", n, 1, 9);
    return counter_family(n, true);
}

/// Even counter over x_0..x_n: even values step by 2 (mod 2^(n+1)); Bad = 10..01.
inline generated_system even_counter(unsigned n)
{
    require_param("even_counter", "n", n, 1, 19);
    unsigned w = n + 1;
    auto names = bit_names("x", 0, w);
    auto v = vocabulary::make(names);
    state_t mask = all_vars_mask(w);
    generated_system g;
    g.spec = {"even_counter", {{"n", static_cast<long>(n)}}, ""};
    g.ts = transition_system::from_successors(
        v, set_of(v, [](state_t s) { return s == 0; }),
        set_of(v, [=](state_t s) { return s == ((state_t{1} << n) | 1u); }),
        [=](state_t s, std::vector<state_t>& out) {
            if ((s & 1u) == 0)
                out.push_back((s + 2) & mask);
        });
    g.invariant = set_of(v, [](state_t s) { return (s & 1u) == 0; });
    auto X = slice(names, 0, w, false), Xp = slice(names, 0, w, true);
    g.symbolic_tr = "!x0 & !x0' & " + increment(X, Xp, 1);
    return g;
}

/// Variables x1..xn; Init 0; Bad = exactly one bit set; Tr sets two distinct zero bits.
inline generated_system two_setter(unsigned n)
{
    require_param("two_setter", "n", n, 2, 20);
    auto v = vocabulary::make(bit_names("x", 1, n));
    generated_system g;
    g.spec = {"two_setter", {{"n", static_cast<long>(n)}}, ""};
    g.ts = transition_system::from_successors(
        v, set_of(v, [](state_t s) { return s == 0; }), set_of(v, [](state_t s) { return std::popcount(s) == 1; }),
        [=](state_t s, std::vector<state_t>& out) {
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = i + 1; j < n; ++j)
                    if (!((s >> i) & 1u) && !((s >> j) & 1u))
                        out.push_back(s | (state_t{1} << i) | (state_t{1} << j));
        });
    return g;
}

/**
 * @brief Counter over x_0..x_n skipping nonzero multiples of 2^r.
 *
 * Low segment bits are x_{r-1}..x_0. From low bits all 1 it may bounce to the same upper
 * bits with exactly one low bit set, or to 0 when the upper bits are 0. Every nonzero
 * multiple of 2^r may jump to any other multiple of 2^r. Bad = 10..0.
 */
inline generated_system multiskip_counter(unsigned n, unsigned r)
{
    require_param("multiskip_counter", "n", n, 1, 19);
    require_param("multiskip_counter", "r", r, 1, n);
    unsigned w = n + 1;
    auto v = vocabulary::make(bit_names("x", 0, w));
    state_t mask = all_vars_mask(w);
    state_t low = (state_t{1} << r) - 1;
    auto is_skipped = [=](state_t s) { return s != 0 && (s & low) == 0; };
    generated_system g;
    g.spec = {"multiskip_counter", {{"n", static_cast<long>(n)}, {"r", static_cast<long>(r)}}, ""};
    g.ts = transition_system::from_successors(
        v, set_of(v, [](state_t s) { return s == 0; }), set_of(v, [=](state_t s) { return s == (state_t{1} << n); }),
        [=](state_t s, std::vector<state_t>& out) {
            state_t t = (s + 1) & mask;
            if (is_skipped(t))
                t = (t + 1) & mask;
            out.push_back(t);
            if ((s & low) == low) {
                for (unsigned i = 0; i < r; ++i)
                    out.push_back((s & ~low) | (state_t{1} << i));
                if ((s & ~low) == 0)
                    out.push_back(0);
            }
            if (is_skipped(s))
                for (state_t m = 0; m <= mask; m += low + 1)
                    if (m != s)
                        out.push_back(m);
        });
    g.invariant = set_of(v, [=](state_t s) { return !is_skipped(s); });
    return g;
}

/// Variables x1..xn; Init 0; Bad = all ones; Tr sets one of two distinct zero bits.
inline generated_system majority_setter(unsigned n)
{
    require_param("majority_setter", "n", n, 2, 20);
    auto v = vocabulary::make(bit_names("x", 1, n));
    state_t all = all_vars_mask(n);
    generated_system g;
    g.spec = {"majority_setter", {{"n", static_cast<long>(n)}}, ""};
    g.ts = transition_system::from_successors(
        v, set_of(v, [](state_t s) { return s == 0; }), set_of(v, [=](state_t s) { return s == all; }),
        [=](state_t s, std::vector<state_t>& out) {
            if (std::popcount(~s & all) < 2)
                return;
            for (unsigned i = 0; i < n; ++i)
                if (!((s >> i) & 1u))
                    out.push_back(s | (state_t{1} << i));
        });
    g.invariant = set_of(v, [=](state_t s) { return s != all; });
    return g;
}

/// Counter over x_0..x_n incrementing, except 1..10 wraps to 0; Bad = 1..1.
inline generated_system wrap_counter(unsigned n)
{
    require_param("wrap_counter", "n", n, 1, 19);
    unsigned w = n + 1;
    auto names = bit_names("x", 0, w);
    auto v = vocabulary::make(names);
    state_t mask = all_vars_mask(w);
    generated_system g;
    g.spec = {"wrap_counter", {{"n", static_cast<long>(n)}}, ""};
    g.ts = transition_system::from_successors(
        v, set_of(v, [](state_t s) { return s == 0; }), set_of(v, [=](state_t s) { return s == mask; }),
        [=](state_t s, std::vector<state_t>& out) { out.push_back(s == mask - 1 ? 0 : (s + 1) & mask); });
    g.invariant = set_of(v, [=](state_t s) { return s != mask; });
    auto X = slice(names, 0, w, false), Xp = slice(names, 0, w, true);
    g.symbolic_tr = "(" + eq_const(X, mask - 1) + " & " + eq_const(Xp, 0) + ") | (!" + eq_const(X, mask - 1) + " & " +
                    increment(X, Xp) + ")";
    return g;
}

/**
 * @brief Random sparse system over n variables.
 *
 * Each state gets 0, 1 or 2 random successors; Init is one or two random states. With
 * `safe`, Bad is one or two states outside the reachable set (empty if none exists);
 * otherwise Bad is one or two arbitrary states.
 */
inline generated_system random_system(unsigned n, std::uint64_t seed, bool safe = true)
{
    require_param("random", "n", n, 1, 16);
    std::mt19937_64 rng(seed);
    auto v = vocabulary::make(bit_names("p", 0, n));
    std::uint64_t size = std::uint64_t{1} << n;
    std::uniform_int_distribution<std::uint64_t> pick(0, size - 1);
    std::uniform_int_distribution<int> fan(0, 9);
    std::vector<std::vector<state_t>> succ(size);
    for (auto& s : succ) {
        int f = fan(rng);
        int k = f < 2 ? 0 : (f < 7 ? 1 : 2);
        for (int i = 0; i < k; ++i)
            s.push_back(static_cast<state_t>(pick(rng)));
    }
    std::vector<state_t> init_states{static_cast<state_t>(pick(rng))};
    if (fan(rng) < 3)
        init_states.push_back(static_cast<state_t>(pick(rng)));
    auto init = state_formula::of_states(v, init_states);
    auto tmp = transition_system::from_successors(v, init, state_formula(v, state_set(n)),
                                                  [&](state_t s, std::vector<state_t>& out) { out = succ[s]; });
    auto candidates = safe ? (!reachable_states(tmp)).states() : state_set(n, true);
    std::vector<state_t> bad_states;
    int wanted = fan(rng) < 5 ? 1 : 2;
    for (int i = 0; i < wanted && !candidates.empty(); ++i) {
        std::uniform_int_distribution<std::uint64_t> d(0, candidates.count() - 1);
        state_t b = candidates.nth(d(rng));
        bad_states.push_back(b);
        candidates.reset(b);
    }
    generated_system g;
    g.spec = {"random", {{"n", static_cast<long>(n)}, {"seed", static_cast<long>(seed)}}, ""};
    g.ts = transition_system::from_successors(v, init, state_formula::of_states(v, bad_states),
                                              [&](state_t s, std::vector<state_t>& out) { out = succ[s]; });
    return g;
}

} // namespace bench

inline std::vector<std::string> family_names()
{
    return {"skip_counter",      "bounce_skip_counter", "even_counter", "two_setter",
            "multiskip_counter", "majority_setter",     "wrap_counter", "random"};
}

/// Instantiates a family by name; parameters n (and r for multiskip_counter, seed for random).
inline generated_system generate(const generator_spec& spec)
{
    auto param = [&](const std::string& k, std::optional<long> dflt = std::nullopt) -> long {
        auto it = spec.params.find(k);
        if (it != spec.params.end())
            return it->second;
        if (dflt)
            return *dflt;
        throw error(spec.family + ": missing parameter " + k);
    };
    for (const auto& [k, val] : spec.params) {
        bool known = k == "n" || (k == "r" && spec.family == "multiskip_counter") ||
                     (k == "seed" && spec.family == "random");
        if (!known)
            throw error(spec.family + ": unknown parameter " + k);
    }
    auto nat = [&](const std::string& k, std::optional<long> dflt = std::nullopt) {
        long v = param(k, dflt);
        if (v < 0)
            throw error(spec.family + ": parameter " + k + " must be non-negative");
        return static_cast<unsigned>(v);
    };
    generated_system g;
    if (spec.family == "skip_counter")
        g = bench::skip_counter(nat("n"));
    else if (spec.family == "bounce_skip_counter")
        g = bench::bounce_skip_counter(nat("n"));
    else if (spec.family == "even_counter")
        g = bench::even_counter(nat("n"));
    else if (spec.family == "two_setter")
        g = bench::two_setter(nat("n"));
    else if (spec.family == "multiskip_counter")
        g = bench::multiskip_counter(nat("n"), nat("r"));
    else if (spec.family == "majority_setter")
        g = bench::majority_setter(nat("n"));
    else if (spec.family == "wrap_counter")
        g = bench::wrap_counter(nat("n"));
    else if (spec.family == "random")
        g = bench::random_system(nat("n"), nat("seed", 0));
    else
        throw error("unknown family '" + spec.family + "'");
    g.spec.description = spec.description;
    return g;
}

} // namespace monomc

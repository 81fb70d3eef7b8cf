#pragma once

#include <set>
#include <vector>

#include "cover.hpp"
#include "formulas.hpp"

namespace monomc {

/// A basis given as cubes b_1..b_m; the basis state set is their union.
struct monotone_basis {
    vocab_ptr vocab;
    std::vector<cube> cubes;

    state_formula states() const
    {
        return state_formula(vocab, states_of(cubes, vocab->size())).with_dnf(cubes);
    }
    std::size_t size() const { return cubes.size(); }
    bool empty() const { return cubes.empty(); }
};

/// v <=_b x: x differs from v only on variables of b where v agrees with b.
inline bool leq_b(state_t v, state_t x, const cube& b)
{
    state_t diff = v ^ x;
    return (diff & ~b.mask) == 0 && ((v ^ b.value) & diff) == 0;
}

/// The full cube of v without the literals that agree with b.
inline cube cube_mon(state_t v, const cube& b, unsigned n)
{
    state_t agree = b.mask & ~(v ^ b.value);
    state_t m = all_vars_mask(n) & ~agree;
    return {m, v & m};
}

/// Per-cube literal dropping: the monotonization of a DNF is the DNF of its dropped cubes.
inline cube drop_agreeing(const cube& d, const cube& b)
{
    state_t agree = d.mask & b.mask & ~(d.value ^ b.value);
    return {d.mask & ~agree, d.value & ~agree};
}

inline cube reflect(const cube& b) { return {b.mask, b.value ^ b.mask}; }

namespace detail {

/// One-coordinate closure step; `up` copies members with var=0 to var=1, otherwise the reverse.
inline void close_coordinate(state_set& s, unsigned var, bool up)
{
    auto& w = s.words();
    if (var >= 6) {
        std::size_t stride = std::size_t{1} << (var - 6);
        for (std::size_t base = 0; base < w.size(); base += 2 * stride)
            for (std::size_t i = base; i < base + stride; ++i) {
                if (up)
                    w[i + stride] |= w[i];
                else
                    w[i] |= w[i + stride];
            }
        return;
    }
    static constexpr std::uint64_t low[6] = {0x5555555555555555ull, 0x3333333333333333ull,
                                             0x0F0F0F0F0F0F0F0Full, 0x00FF00FF00FF00FFull,
                                             0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
    unsigned shift = 1u << var;
    for (auto& x : w) {
        if (up)
            x |= (x & low[var]) << shift;
        else
            x |= (x & ~low[var]) >> shift;
    }
    s.trim();
}

} // namespace detail

/// monox by closure sweep over the state set, one coordinate of b at a time.
inline state_set monox_sweep(state_set s, const cube& b)
{
    for (unsigned var = 0; var < s.num_vars(); ++var) {
        if (!b.has(var))
            continue;
        // From a state with var = b[var], the flipped state is also included.
        detail::close_coordinate(s, var, !b.polarity(var));
    }
    return s;
}

/// monox as the union of cube_mon(v, b) over all v in f.
inline state_set monox_states(const state_set& f, const cube& b)
{
    unsigned n = f.num_vars();
    state_set out(n);
    f.for_each([&](state_t v) {
        if (!out.test(v))
            cube_mon(v, b, n).for_each_state(n, [&](state_t x) { out.set(x); });
    });
    return out;
}

/// monox of a DNF by dropping, in each term, the literals that agree with b.
inline std::vector<cube> monox_dnf(const std::vector<cube>& dnf, const cube& b)
{
    std::vector<cube> out;
    out.reserve(dnf.size());
    for (const auto& d : dnf)
        out.push_back(drop_agreeing(d, b));
    return out;
}

/**
 * @brief Least b-monotone overapproximation of f: {x | some v in f has v <=_b x}.
 *
 * Uses literal dropping on f's DNF view when present (result keeps the dropped DNF),
 * otherwise the closure sweep.
 */
inline state_formula monox(const state_formula& f, const cube& b)
{
    unsigned n = f.num_vars();
    if (f.dnf_view()) {
        auto d = monox_dnf(*f.dnf_view(), b);
        state_set s = states_of(d, n);
        return state_formula(f.vocab(), std::move(s)).with_dnf(std::move(d));
    }
    return state_formula(f.vocab(), monox_sweep(f.states(), b));
}

/// Definitional monox by checking every pair (v, x); quadratic in the state count.
inline state_formula monox_definitional(const state_formula& f, const cube& b)
{
    unsigned n = f.num_vars();
    state_set out(n);
    auto members = f.states().members();
    for (state_t x = 0; x <= all_vars_mask(n); ++x) {
        for (auto v : members)
            if (leq_b(v, x, b)) {
                out.set(x);
                break;
            }
        if (x == all_vars_mask(n))
            break;
    }
    return {f.vocab(), std::move(out)};
}

/// Conjunction of monox(f, b_i) over the basis cubes; true for the empty basis.
inline state_formula mhull(const state_formula& f, const monotone_basis& B)
{
    check_same(f.vocab(), B.vocab);
    state_set acc(f.num_vars(), true);
    for (const auto& b : B.cubes) {
        acc &= monox_sweep(f.states(), b);
        if (acc == f.states())
            break;
    }
    return {f.vocab(), std::move(acc)};
}

inline bool in_mspan(const state_formula& f, const monotone_basis& B) { return mhull(f, B).equivalent(f); }

/**
 * @brief Subset-minimal clauses c with f => c that are falsified by some basis state.
 *
 * Per basis state b, a sub-clause of !b with literal mask m is implied by f iff no
 * state of f agrees with b on all of m. Minimal masks are found over the mask lattice.
 */
inline std::vector<clause> mhull_cnf(const state_formula& f, const monotone_basis& B)
{
    check_same(f.vocab(), B.vocab);
    unsigned n = f.num_vars();
    require_enumerable(n, 16);
    state_t all = all_vars_mask(n);
    std::size_t lattice = std::size_t{1} << n;
    std::set<std::pair<state_t, state_t>> seen;
    std::vector<clause> out;
    std::vector<std::uint8_t> hit(lattice);
    B.states().states().for_each([&](state_t b) {
        std::fill(hit.begin(), hit.end(), 0);
        // hit[m]: some state of f agrees with b on every variable of m.
        f.states().for_each([&](state_t s) { hit[all & ~(s ^ b)] = 1; });
        for (unsigned i = 0; i < n; ++i)
            for (std::size_t m = 0; m < lattice; ++m)
                if ((m >> i) & 1u)
                    hit[m & ~(std::size_t{1} << i)] |= hit[m];
        for (std::size_t m = 0; m < lattice; ++m) {
            if (hit[m])
                continue;
            bool minimal = true;
            for (unsigned i = 0; i < n && minimal; ++i)
                if (((m >> i) & 1u) && !hit[m & ~(std::size_t{1} << i)])
                    minimal = false;
            if (!minimal)
                continue;
            clause c{static_cast<state_t>(m), ~b & static_cast<state_t>(m)};
            if (seen.insert({c.mask, c.value}).second)
                out.push_back(c);
        }
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Literals shared by all basis cubes.
inline cube cube_join(const monotone_basis& B)
{
    if (B.cubes.empty())
        throw error("cube_join of an empty basis");
    cube j = B.cubes.front();
    for (const auto& c : B.cubes) {
        state_t keep = j.mask & c.mask & ~(j.value ^ c.value);
        j = {keep, j.value & keep};
    }
    return j;
}

/// Basis whose cubes are the full cubes of the given states.
inline monotone_basis basis_of_states(const state_formula& s)
{
    monotone_basis B{s.vocab(), {}};
    s.states().for_each([&](state_t x) { B.cubes.push_back(cube::of_state(x, s.num_vars())); });
    return B;
}

} // namespace monomc

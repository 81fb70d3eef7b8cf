#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "cover.hpp"
#include "monotone.hpp"
#include "systems.hpp"

namespace monomc {

enum class abstraction_kind { single_cube, hyper };

/// pre_and_post monotonizes pre-states by the reflected cube (join); post_only leaves them exact.
enum class abstraction_variant { pre_and_post, post_only };

/**
 * @brief Abstract (hyper)transition system of ts for a basis.
 *
 * Single cube b: abs_init = monox(Init, b), abs_tr = monox(Tr, (reflect(b), b)).
 * Hyper, cubes b_1..b_m with join J: abs_init = mhull(Init, B) and sigma' is a successor
 * of (sigma_1..sigma_m) iff each (sigma_i, sigma') is in monox(Tr | Init', (reflect(J), b_i)).
 * Per-cube binary relations are materialized when the doubled vocabulary is enumerable;
 * images are otherwise computed from ts directly. `base` must outlive this object.
 */
struct abstract_system {
    const transition_system* base = nullptr;
    monotone_basis basis;
    abstraction_kind kind = abstraction_kind::single_cube;
    abstraction_variant variant = abstraction_variant::pre_and_post;
    cube join;
    state_formula abs_init;
    std::vector<state_set> relations;

    std::size_t width() const { return basis.size(); }
    bool materialized() const { return !relations.empty(); }
};

namespace detail {

/// Cube over the doubled vocabulary: `pre` on the low copy, `post` on the high copy.
inline cube pair_cube(const cube& pre, const cube& post, unsigned n)
{
    return {pre.mask | (post.mask << n), pre.value | (post.value << n)};
}

inline state_set relation_pairs(const transition_system& ts)
{
    return ts.relation().states();
}

/// Tr | Init' as pairs.
inline state_set relation_or_init(const transition_system& ts)
{
    unsigned n = ts.num_vars();
    state_set s = relation_pairs(ts);
    ts.init().states().for_each([&](state_t t) {
        for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p)
            s.set(static_cast<state_t>(p) | (t << n));
    });
    return s;
}

/// States reached through a pair set from S.
inline state_set pair_image(const state_set& rel, const state_set& S, unsigned n)
{
    state_t mask = all_vars_mask(n);
    state_set out(n);
    rel.for_each([&](state_t p) {
        if (S.test(p & mask))
            out.set(p >> n);
    });
    return out;
}

} // namespace detail

inline abstract_system build_abstract(const transition_system& ts, const monotone_basis& basis,
                                      abstraction_variant variant = abstraction_variant::pre_and_post)
{
    if (basis.empty())
        throw error("abstract system of an empty basis");
    check_same(ts.vocab(), basis.vocab);
    unsigned n = ts.num_vars();
    abstract_system a;
    a.base = &ts;
    a.basis = basis;
    a.variant = variant;
    a.kind = basis.size() == 1 ? abstraction_kind::single_cube : abstraction_kind::hyper;
    a.join = cube_join(basis);
    if (a.kind == abstraction_kind::single_cube)
        a.abs_init = monox(state_formula(ts.vocab(), ts.init().states()), basis.cubes[0]);
    else
        a.abs_init = mhull(ts.init(), basis);
    a.abs_init = state_formula(ts.vocab(), a.abs_init.states());

    if (2 * n <= max_relation_vars()) {
        state_set pairs =
            a.kind == abstraction_kind::single_cube ? detail::relation_pairs(ts) : detail::relation_or_init(ts);
        cube pre_cube = variant == abstraction_variant::pre_and_post ? reflect(a.join) : cube{};
        for (const auto& b : basis.cubes)
            a.relations.push_back(monox_sweep(pairs, detail::pair_cube(pre_cube, b, n)));
    }
    return a;
}

/// The i-th per-cube relation as a formula over the doubled vocabulary.
inline state_formula abstract_relation(const abstract_system& a, std::size_t i)
{
    if (!a.materialized())
        throw limit_exceeded("abstract relation not materialized");
    return {a.base->doubled_vocab(), a.relations.at(i)};
}

/// Abstract image computed from the base system: monox(post(monox(S, J)) [| Init], b_i) per cube.
inline state_set abstract_image_factored(const abstract_system& a, const state_set& S)
{
    const auto& ts = *a.base;
    unsigned n = ts.num_vars();
    if (S.empty())
        return S;
    state_set source = a.variant == abstraction_variant::pre_and_post ? monox_sweep(S, a.join) : S;
    state_set succ = post(ts, state_formula(ts.vocab(), source)).states();
    if (a.kind == abstraction_kind::hyper)
        succ |= ts.init().states();
    state_set out(n, true);
    for (const auto& b : a.basis.cubes)
        out &= monox_sweep(succ, b);
    return out;
}

/// Abstract image: intersection over cubes of the per-cube relation images.
inline state_set abstract_image(const abstract_system& a, const state_set& S)
{
    if (!a.materialized())
        return abstract_image_factored(a, S);
    unsigned n = a.base->num_vars();
    state_set out(n, true);
    for (const auto& rel : a.relations) {
        out &= detail::pair_image(rel, S, n);
        if (out.empty())
            break;
    }
    return out;
}

/// R-hat_0..R-hat_count: states reachable in at most i abstract steps.
inline std::vector<state_formula> abstract_reach_sequence(const abstract_system& a, std::size_t count)
{
    std::vector<state_formula> out{a.abs_init};
    while (out.size() <= count) {
        const auto& cur = out.back().states();
        out.emplace_back(a.base->vocab(), cur | abstract_image(a, cur));
    }
    return out;
}

inline state_formula abstract_reach(const abstract_system& a, std::size_t i)
{
    return abstract_reach_sequence(a, i).back();
}

struct abstract_diameter {
    std::size_t steps = 0;
    bool reached_bad = false;
};

/// Least s with R-hat_s = R-hat_{s+1}, or the first s where R-hat_s meets Bad.
inline abstract_diameter diameter_of_abstract(const abstract_system& a)
{
    state_set cur = a.abs_init.states();
    const auto& bad = a.base->bad().states();
    for (std::size_t s = 0;; ++s) {
        if (cur.intersects(bad))
            return {s, true};
        state_set next = cur | abstract_image(a, cur);
        if (next == cur)
            return {s, false};
        cur = std::move(next);
    }
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

/// monox(Tr, (pre, post)) over the doubled vocabulary.
inline state_formula monotonized_relation(const transition_system& ts, const cube& pre, const cube& post_cube)
{
    unsigned n = ts.num_vars();
    auto rel = ts.relation();
    return {rel.vocab(), monox_sweep(rel.states(), detail::pair_cube(pre, post_cube, n))};
}

/// cover(monox(Tr, (reflect(b), b))) + 1.
inline std::uint64_t bound_single(const transition_system& ts, const cube& b)
{
    return cover_size(monotonized_relation(ts, reflect(b), b)) + 1;
}

/// prod_i (cover(monox(Tr, (reflect(J), b_i))) + cover(monox(Init, b_i))) + 1.
inline std::uint64_t bound_hyper(const transition_system& ts, const monotone_basis& B)
{
    cube j = cube_join(B);
    std::uint64_t product = 1;
    for (const auto& b : B.cubes) {
        std::uint64_t tr_part = cover_size(monotonized_relation(ts, reflect(j), b));
        std::uint64_t init_part =
            irredundant_dnf_cover(monox_sweep(ts.init().states(), b)).size();
        product = saturating_mul(product, tr_part + init_part);
    }
    return product == std::numeric_limits<std::uint64_t>::max() ? product : product + 1;
}

} // namespace monomc

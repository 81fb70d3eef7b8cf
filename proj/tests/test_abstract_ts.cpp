#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace monomc;

namespace {

/// Pairs (s, t) of Tr, optionally with every (p, init) added.
state_set pair_set(const transition_system& ts, bool with_init)
{
    unsigned n = ts.num_vars();
    state_set out(2 * n);
    for (std::uint64_t s = 0; s < oracle::universe(n); ++s)
        for (std::uint64_t t = 0; t < oracle::universe(n); ++t)
            if (ts.has_transition(static_cast<state_t>(s), static_cast<state_t>(t)) ||
                (with_init && ts.init().states().test(static_cast<state_t>(t))))
                out.set(static_cast<state_t>(s | (t << n)));
    return out;
}

cube doubled(const cube& pre, const cube& post, unsigned n)
{
    return {pre.mask | (post.mask << n), pre.value | (post.value << n)};
}

/// Abstract reach levels from definitions: per-cube monotonized pair sets, images intersected.
std::vector<state_set> abstract_levels(const transition_system& ts, const monotone_basis& B, std::size_t count,
                                       bool monotonize_pre)
{
    unsigned n = ts.num_vars();
    bool hyper = B.size() > 1;
    cube j = cube_join(B);
    cube pre = monotonize_pre ? reflect(j) : cube{};
    std::vector<state_set> rels;
    for (const auto& b : B.cubes)
        rels.push_back(oracle::monox(pair_set(ts, hyper), doubled(pre, b, n)));
    state_set init = hyper ? oracle::mhull(ts.init().states(), B.states().states())
                           : oracle::monox(ts.init().states(), B.cubes[0]);
    std::vector<state_set> out{init};
    while (out.size() <= count) {
        const auto& cur = out.back();
        state_set img(n, true);
        for (const auto& r : rels) {
            state_set part(n);
            for (std::uint64_t p = 0; p < oracle::universe(2 * n); ++p)
                if (r.test(static_cast<state_t>(p)) && cur.test(static_cast<state_t>(p) & all_vars_mask(n)))
                    part.set(static_cast<state_t>(p >> n));
            img &= part;
        }
        out.push_back(cur | img);
    }
    return out;
}

monotone_basis random_basis(const vocab_ptr& v, std::mt19937_64& rng, unsigned m)
{
    monotone_basis B{v, {}};
    for (unsigned i = 0; i < m; ++i)
        B.cubes.push_back(oracle::random_cube(v->size(), rng));
    return B;
}

} // namespace

TEST(AbstractSystem, EvenCounterRelationForgetsAllButTheLowBit)
{
    for (unsigned n = 2; n <= 5; ++n) {
        auto g = bench::even_counter(n);
        cube b = cube::of_state(g.ts.bad().states().first(), n + 1);
        auto a = build_abstract(g.ts, monotone_basis{g.ts.vocab(), {b}});
        ASSERT_TRUE(a.materialized());
        auto expect = parse_formula("!x0'", g.ts.doubled_vocab());
        EXPECT_TRUE(abstract_relation(a, 0).equivalent(expect));
        auto d = diameter_of_abstract(a);
        EXPECT_FALSE(d.reached_bad);
        EXPECT_EQ(d.steps, 1u);
        EXPECT_EQ(bound_single(g.ts, b), 2u);
    }
}

TEST(AbstractSystem, SkipCounterAbstractDiameterIsSmall)
{
    for (unsigned n = 1; n <= 3; ++n) {
        auto g = bench::skip_counter(n);
        auto basis = basis_of(backward_reach(g.ts, 1));
        ASSERT_EQ(basis.size(), 1u);
        auto d = diameter_of_abstract(build_abstract(g.ts, basis));
        EXPECT_FALSE(d.reached_bad);
        EXPECT_LE(d.steps, 3u) << "n=" << n;
    }
}

TEST(AbstractSystem, ReachMatchesDefinitionalConstruction)
{
    std::mt19937_64 rng(41);
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto g = bench::random_system(1 + seed % 4, seed, false);
        unsigned m = 1 + seed % 3;
        auto B = random_basis(g.ts.vocab(), rng, m);
        for (auto variant : {abstraction_variant::pre_and_post, abstraction_variant::post_only}) {
            auto a = build_abstract(g.ts, B, variant);
            auto seq = abstract_reach_sequence(a, 5);
            auto expect = abstract_levels(g.ts, B, 5, variant == abstraction_variant::pre_and_post);
            for (std::size_t i = 0; i < seq.size(); ++i)
                ASSERT_EQ(seq[i].states(), expect[i]) << "seed " << seed << " level " << i;
        }
    }
}

TEST(AbstractSystem, FactoredImageMatchesMaterialized)
{
    std::mt19937_64 rng(42);
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        auto g = bench::random_system(1 + seed % 7, seed, false);
        auto B = random_basis(g.ts.vocab(), rng, 1 + seed % 3);
        for (auto variant : {abstraction_variant::pre_and_post, abstraction_variant::post_only}) {
            auto a = build_abstract(g.ts, B, variant);
            ASSERT_TRUE(a.materialized());
            for (int k = 0; k < 4; ++k) {
                auto S = oracle::random_set(g.ts.num_vars(), rng);
                ASSERT_EQ(abstract_image(a, S), abstract_image_factored(a, S));
            }
        }
    }
}

TEST(AbstractSystem, OverApproximatesConcreteReach)
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto g = bench::random_system(1 + seed % 8, seed, false);
        auto Bk = backward_reach(g.ts, seed % 3);
        auto basis = basis_of(Bk);
        if (basis.empty())
            continue;
        auto a = build_abstract(g.ts, basis);
        auto seq = abstract_reach_sequence(a, 6);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            ASSERT_TRUE(reach_within(g.ts, i).implies(seq[i]));
            if (i > 0)
                ASSERT_TRUE(seq[i - 1].implies(seq[i]));
        }
    }
}

TEST(AbstractSystem, EmptyBasisIsRejected)
{
    auto g = bench::even_counter(2);
    EXPECT_THROW(build_abstract(g.ts, monotone_basis{g.ts.vocab(), {}}), error);
}

TEST(Bounds, NoTransitionsGivesOne)
{
    auto v = vocabulary::make({"a", "b", "c"});
    auto ts = transition_system::from_successors(v, state_formula::of_states(v, {0}), state_formula::of_states(v, {7}),
                                                 [](state_t, std::vector<state_t>&) {});
    EXPECT_EQ(bound_single(ts, cube::of_state(7, 3)), 1u);
    EXPECT_EQ(diameter_of_abstract(build_abstract(ts, monotone_basis{v, {cube::of_state(7, 3)}})).steps, 0u);
}

TEST(Bounds, HyperBoundIsTheProductOfPerCubeCovers)
{
    std::mt19937_64 rng(43);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto g = bench::random_system(2 + seed % 4, seed);
        auto B = random_basis(g.ts.vocab(), rng, 1 + seed % 3);
        unsigned n = g.ts.num_vars();
        cube j = cube_join(B);
        std::uint64_t product = 1;
        for (const auto& b : B.cubes) {
            auto rel = oracle::monox(pair_set(g.ts, false), doubled(reflect(j), b, n));
            auto init = oracle::monox(g.ts.init().states(), b);
            product *= irredundant_dnf_cover(rel).size() + irredundant_dnf_cover(init).size();
        }
        ASSERT_EQ(bound_hyper(g.ts, B), product + 1);
    }
}

TEST(Bounds, AbstractDiameterWithinSingleCubeBound)
{
    std::size_t checked = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto g = bench::random_system(2 + seed % 6, seed);
        auto basis = basis_of(backward_reach(g.ts, seed % 4));
        if (basis.size() != 1)
            continue;
        auto d = diameter_of_abstract(build_abstract(g.ts, basis));
        if (d.reached_bad)
            continue;
        ++checked;
        ASSERT_LE(d.steps, bound_single(g.ts, basis.cubes[0])) << "seed " << seed;
    }
    EXPECT_GE(checked, 20u);
}

TEST(Bounds, DroppedCoverCoversTheMonotonizedRelation)
{
    std::mt19937_64 rng(44);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto g = bench::random_system(2 + seed % 5, seed);
        unsigned n = g.ts.num_vars();
        cube b = oracle::random_cube(n, rng);
        auto tr_cover = irredundant_dnf_cover(g.ts.relation());
        // Dropping agreeing literals cube by cube covers the monotonized relation.
        std::vector<cube> dropped;
        for (const auto& c : tr_cover)
            dropped.push_back(drop_agreeing(c, doubled(reflect(b), b, n)));
        auto mono = monotonized_relation(g.ts, reflect(b), b);
        ASSERT_EQ(states_of(dropped, 2 * n), mono.states());
    }
}

TEST(Bounds, BounceCounterRestrictedCoverIsLinear)
{
    // Frozen from the cover computation: n + 1 cubes.
    for (unsigned n = 3; n <= 7; ++n) {
        auto g = bench::bounce_skip_counter(n);
        auto restricted = restrict(g.ts, *g.restriction);
        auto cubes = irredundant_dnf_cover(backward_reach(g.ts, 1));
        ASSERT_EQ(cubes.size(), 1u);
        cube b = project_cube(cubes[0], *g.restriction, g.ts.num_vars());
        EXPECT_EQ(b, cube::of_state(state_t{1} << n, n + 1));
        EXPECT_EQ(cover_size(monotonized_relation(restricted, reflect(b), b)), n + 1) << "n=" << n;
    }
}

TEST(Bounds, PlainSkipCounterRestrictedCoverIsExponential)
{
    // Frozen from the cover computation: 2^n cubes.
    for (unsigned n = 3; n <= 6; ++n) {
        auto g = bench::skip_counter(n);
        auto restricted = restrict(g.ts, *g.restriction);
        cube b = cube::of_state(state_t{1} << n, n + 1);
        EXPECT_EQ(cover_size(monotonized_relation(restricted, reflect(b), b)), std::size_t{1} << n) << "n=" << n;
    }
}

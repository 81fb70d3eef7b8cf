#include <gtest/gtest.h>

#include <bit>

#include "oracles.hpp"

using namespace monomc;

namespace {

std::vector<state_t> successors(const transition_system& ts, state_t s)
{
    std::vector<state_t> out;
    ts.for_each_successor(s, [&](state_t t) { out.push_back(t); });
    return out;
}

std::vector<generated_system> small_families()
{
    std::vector<generated_system> out;
    for (unsigned n = 1; n <= 4; ++n) {
        out.push_back(bench::skip_counter(n));
        out.push_back(bench::bounce_skip_counter(n));
    }
    for (unsigned n = 1; n <= 8; ++n) {
        out.push_back(bench::even_counter(n));
        out.push_back(bench::wrap_counter(n));
    }
    for (unsigned n = 2; n <= 8; ++n) {
        out.push_back(bench::two_setter(n));
        out.push_back(bench::majority_setter(n));
    }
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned r = 1; r <= n; ++r)
            out.push_back(bench::multiskip_counter(n, r));
    return out;
}

} // namespace

TEST(Families, StatedInvariantsAreInductive)
{
    for (const auto& g : small_families()) {
        if (!g.invariant)
            continue;
        auto r = is_inductive(g.ts, *g.invariant);
        EXPECT_TRUE(r.holds) << g.spec.family << " n=" << g.spec.params.at("n");
    }
}

TEST(Families, AllSafe)
{
    for (const auto& g : small_families())
        EXPECT_FALSE(reachable_states(g.ts).states().intersects(g.ts.bad().states()))
            << g.spec.family << " n=" << g.spec.params.at("n");
}

TEST(Families, SymbolicRelationMatchesSuccessors)
{
    for (const auto& g : small_families()) {
        if (!g.symbolic_tr || 2 * g.ts.num_vars() > max_relation_vars())
            continue;
        auto tr = parse_formula(*g.symbolic_tr, g.ts.doubled_vocab());
        EXPECT_TRUE(tr.equivalent(g.ts.relation())) << g.spec.family << " n=" << g.spec.params.at("n");
    }
}

TEST(Families, RestrictedRelationMatchesRestriction)
{
    for (const auto& g : small_families()) {
        if (!g.restriction)
            continue;
        ASSERT_TRUE(g.restricted_tr);
        auto r = restrict(g.ts, *g.restriction);
        auto tr = parse_formula(*g.restricted_tr, r.doubled_vocab());
        EXPECT_TRUE(tr.equivalent(r.relation())) << g.spec.family << " n=" << g.spec.params.at("n");
        // Everything reachable already satisfies the restriction.
        EXPECT_TRUE(reachable_states(g.ts).implies(state_formula::of_cube(g.ts.vocab(), *g.restriction)));
    }
}

TEST(SkipCounter, Examples)
{
    auto g = bench::skip_counter(2);
    EXPECT_EQ(g.ts.num_vars(), 7u);
    // x = 011 skips 100 and lands on 101; y and z stay 0.
    EXPECT_EQ(successors(g.ts, 0b011), (std::vector<state_t>{0b101}));
    EXPECT_EQ(successors(g.ts, 0b111), (std::vector<state_t>{0b000}));
    // With z = 1 only y counts.
    state_t z = 1u << 6;
    EXPECT_EQ(successors(g.ts, z | 0b100 | (0b111 << 3)), (std::vector<state_t>{z | 0b100}));
    EXPECT_EQ(g.ts.bad().states().members(), (std::vector<state_t>{z | (0b111 << 3) | 0b100}));
}

TEST(BounceSkipCounter, Examples)
{
    auto g = bench::bounce_skip_counter(2);
    EXPECT_EQ(successors(g.ts, 0b011), (std::vector<state_t>{0b000, 0b101}));
    EXPECT_EQ(successors(g.ts, 0b111), (std::vector<state_t>{0b000, 0b101, 0b110}));
}

TEST(EvenCounter, Examples)
{
    auto g = bench::even_counter(2);
    state_t s = 0;
    for (state_t expect : {2u, 4u, 6u, 0u}) {
        EXPECT_EQ(successors(g.ts, s), (std::vector<state_t>{expect}));
        s = expect;
    }
    EXPECT_TRUE(successors(g.ts, 0b011).empty());
    EXPECT_EQ(g.ts.bad().states().members(), (std::vector<state_t>{0b101}));
}

TEST(WrapCounter, Examples)
{
    auto g = bench::wrap_counter(2);
    EXPECT_EQ(successors(g.ts, 0b110), (std::vector<state_t>{0b000}));
    EXPECT_EQ(successors(g.ts, 0b101), (std::vector<state_t>{0b110}));
    EXPECT_EQ(g.ts.bad().states().members(), (std::vector<state_t>{0b111}));
}

TEST(WrapCounter, ExactFramesArePrefixes)
{
    for (unsigned n = 1; n <= 5; ++n) {
        auto g = bench::wrap_counter(n);
        auto t = exact_forward_reach(g.ts);
        ASSERT_TRUE(t.converged());
        for (std::size_t i = 0; i < t.frames.size(); ++i) {
            state_t top = static_cast<state_t>(std::min<std::size_t>(i, all_vars_mask(n + 1) - 1));
            ASSERT_TRUE(t.frames[i].equivalent(
                bench::set_of(g.ts.vocab(), [&](state_t s) { return s <= top; })));
        }
    }
}

TEST(TwoSetter, ReachableStatesHaveEvenWeight)
{
    for (unsigned n = 2; n <= 9; ++n) {
        auto g = bench::two_setter(n);
        EXPECT_EQ(g.ts.vocab()->name(0), "x1");
        auto reach = reachable_states(g.ts);
        reach.states().for_each([](state_t s) { ASSERT_EQ(std::popcount(s) % 2, 0); });
        EXPECT_EQ(g.ts.bad().states().count(), n);
        EXPECT_FALSE(g.invariant.has_value());
    }
}

TEST(MajoritySetter, ExactFramesCountOnes)
{
    for (unsigned n = 2; n <= 8; ++n) {
        auto g = bench::majority_setter(n);
        auto t = exact_forward_reach(g.ts);
        ASSERT_TRUE(t.converged());
        for (std::size_t i = 0; i < t.frames.size(); ++i) {
            auto limit = static_cast<int>(std::min<std::size_t>(i, n - 1));
            ASSERT_TRUE(t.frames[i].equivalent(
                bench::set_of(g.ts.vocab(), [&](state_t s) { return std::popcount(s) <= limit; })))
                << "n=" << n << " frame " << i;
        }
    }
}

TEST(MultiskipCounter, Examples)
{
    auto g = bench::multiskip_counter(2, 1);
    // 001 skips 010 and reaches 011; low bit set also bounces to 001 and, from the bottom, to 000.
    EXPECT_EQ(successors(g.ts, 0b001), (std::vector<state_t>{0b000, 0b001, 0b011}));
    EXPECT_EQ(successors(g.ts, 0b010), (std::vector<state_t>{0b000, 0b011, 0b100, 0b110}));
    EXPECT_TRUE(g.invariant->eval(0b000));
    EXPECT_FALSE(g.invariant->eval(0b100));
}

TEST(RandomSystem, DeterministicAndSafe)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto a = bench::random_system(6, seed), b = bench::random_system(6, seed);
        ASSERT_TRUE(a.ts.relation().equivalent(b.ts.relation()));
        ASSERT_TRUE(a.ts.init().equivalent(b.ts.init()));
        ASSERT_TRUE(a.ts.bad().equivalent(b.ts.bad()));
        ASSERT_FALSE(reachable_states(a.ts).states().intersects(a.ts.bad().states()));
        auto c = a.ts.init().states().count();
        ASSERT_TRUE(c == 1 || c == 2);
        ASSERT_LE(a.ts.bad().states().count(), 2u);
    }
    EXPECT_FALSE(bench::random_system(8, 1).ts.relation().equivalent(bench::random_system(8, 2).ts.relation()));
}

TEST(Generate, ByName)
{
    for (const auto& name : family_names()) {
        generator_spec spec{name, {{"n", 3}}, "d"};
        if (name == "multiskip_counter")
            spec.params["r"] = 2;
        auto g = generate(spec);
        EXPECT_EQ(g.spec.family, name);
        EXPECT_EQ(g.spec.description, "d");
    }
    auto g = generate({"random", {{"n", 5}, {"seed", 9}}, ""});
    EXPECT_TRUE(g.ts.relation().equivalent(bench::random_system(5, 9).ts.relation()));
}

TEST(Generate, RejectsBadParameters)
{
    EXPECT_THROW(generate({"nope", {{"n", 3}}, ""}), error);
    EXPECT_THROW(generate({"skip_counter", {}, ""}), error);
    EXPECT_THROW(generate({"skip_counter", {{"n", 0}}, ""}), error);
    EXPECT_THROW(generate({"skip_counter", {{"n", 10}}, ""}), error);
    EXPECT_THROW(generate({"skip_counter", {{"n", -1}}, ""}), error);
    EXPECT_THROW(generate({"skip_counter", {{"n", 2}, {"r", 1}}, ""}), error);
    EXPECT_THROW(generate({"two_setter", {{"n", 1}}, ""}), error);
    EXPECT_THROW(generate({"multiskip_counter", {{"n", 3}}, ""}), error);
    EXPECT_THROW(generate({"multiskip_counter", {{"n", 3}, {"r", 4}}, ""}), error);
    EXPECT_THROW(generate({"multiskip_counter", {{"n", 3}, {"r", 0}}, ""}), error);
    EXPECT_THROW(generate({"even_counter", {{"n", 3}, {"seed", 1}}, ""}), error);
}

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace monomc;

namespace {

vocab_ptr vars(unsigned n)
{
    std::vector<std::string> names;
    for (unsigned i = 0; i < n; ++i)
        names.push_back("x" + std::to_string(i));
    return vocabulary::make(names);
}

monotone_basis random_basis(const vocab_ptr& v, std::mt19937_64& rng, int max_cubes = 3)
{
    std::uniform_int_distribution<int> m(1, max_cubes);
    monotone_basis B{v, {}};
    for (int i = m(rng); i > 0; --i)
        B.cubes.push_back(oracle::random_cube(v->size(), rng));
    return B;
}

bool clause_implied(const state_set& f, const clause& c)
{
    return f.subset_of(states_of(std::vector<clause>{c}, f.num_vars()));
}

} // namespace

TEST(Order, Examples)
{
    cube zero = cube::of_state(0b000, 3);
    EXPECT_TRUE(leq_b(0b100, 0b100, zero));
    EXPECT_TRUE(leq_b(0b100, 0b111, zero));
    EXPECT_FALSE(leq_b(0b100, 0b011, zero));
}

TEST(Order, MatchesDefinition)
{
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 3000; ++iter) {
        unsigned n = 1 + iter % 8;
        cube b = oracle::random_cube(n, rng);
        std::uniform_int_distribution<state_t> d(0, all_vars_mask(n));
        state_t v = d(rng), x = d(rng);
        ASSERT_EQ(leq_b(v, x, b), oracle::below(v, x, b, n));
        // Reflection duality.
        ASSERT_EQ(leq_b(v, x, b), leq_b(x, v, reflect(b)));
    }
}

TEST(CubeMon, Examples)
{
    state_t v = 0b1011;
    EXPECT_EQ(cube_mon(v, cube::of_state(v, 4), 4), cube{});
    EXPECT_EQ(cube_mon(v, cube{}, 4), cube::of_state(v, 4));
    // Against b = (x0=0, x1=0, x3=1) only the disagreeing literals x0=1, x1=1 remain.
    cube b{0b1011, 0b1000};
    EXPECT_EQ(cube_mon(v, b, 4), (cube{0b0111, 0b0011}));
}

TEST(CubeMon, IsTheSetAboveTheState)
{
    std::mt19937_64 rng(12);
    for (int iter = 0; iter < 500; ++iter) {
        unsigned n = 1 + iter % 7;
        cube b = oracle::random_cube(n, rng);
        state_t v = std::uniform_int_distribution<state_t>(0, all_vars_mask(n))(rng);
        auto c = cube_mon(v, b, n);
        for (state_t x = 0; x <= all_vars_mask(n); ++x)
            ASSERT_EQ(c.contains(x), oracle::below(v, x, b, n));
    }
}

TEST(Monox, Examples)
{
    auto v = vars(3);
    cube b = cube::of_state(0, 3);
    EXPECT_TRUE(monox(state_formula::bottom(v), b).is_false());
    EXPECT_TRUE(monox(state_formula::top(v), b).is_true());
    auto m = monox(state_formula::of_states(v, {0b100}), b);
    EXPECT_EQ(m.states().members(), (std::vector<state_t>{0b100, 0b101, 0b110, 0b111}));
    EXPECT_TRUE(m.eval(0b111));
    EXPECT_FALSE(m.eval(0b011));
}

TEST(Monox, AllImplementationsAgreeWithDefinition)
{
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 400; ++iter) {
        unsigned n = 1 + iter % 8;
        auto v = vars(n);
        cube b = oracle::random_cube(n, rng);
        std::vector<cube> dnf;
        for (int i = 0; i < 1 + iter % 5; ++i)
            dnf.push_back(oracle::random_cube(n, rng));
        auto f = state_formula::of_dnf(v, dnf);
        auto expect = oracle::monox(f.states(), b);
        ASSERT_EQ(monox(f, b).states(), expect) << "literal dropping";
        ASSERT_EQ(monox_sweep(f.states(), b), expect);
        ASSERT_EQ(monox_states(f.states(), b), expect);
        ASSERT_EQ(monox_definitional(f, b).states(), expect);
    }
}

TEST(Monox, Properties)
{
    std::mt19937_64 rng(14);
    for (int iter = 0; iter < 500; ++iter) {
        unsigned n = 1 + iter % 8;
        auto f = oracle::random_set(n, rng), g = oracle::random_set(n, rng);
        cube b = oracle::random_cube(n, rng);
        auto mf = monox_sweep(f, b);
        ASSERT_TRUE(f.subset_of(mf));
        ASSERT_EQ(monox_sweep(mf, b), mf);
        ASSERT_TRUE(monox_sweep(f & g, b).subset_of(mf));
        ASSERT_EQ(monox_sweep(f | g, b), mf | monox_sweep(g, b));
    }
}

TEST(Mhull, Examples)
{
    auto v = vars(3);
    std::mt19937_64 rng(15);
    auto f = state_formula(v, oracle::random_set(3, rng));
    EXPECT_TRUE(mhull(f, monotone_basis{v, {}}).is_true());
    EXPECT_TRUE(in_mspan(state_formula::bottom(v), random_basis(v, rng)));
    EXPECT_TRUE(in_mspan(state_formula::top(v), random_basis(v, rng)));
}

TEST(Mhull, MatchesPointwiseOracle)
{
    std::mt19937_64 rng(16);
    for (int iter = 0; iter < 300; ++iter) {
        unsigned n = 1 + iter % 6;
        auto v = vars(n);
        auto f = state_formula(v, oracle::random_set(n, rng));
        auto B = random_basis(v, rng);
        ASSERT_EQ(mhull(f, B).states(), oracle::mhull(f.states(), B.states().states()));
    }
}

TEST(Mhull, LatticeProperties)
{
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 400; ++iter) {
        unsigned n = 1 + iter % 7;
        auto v = vars(n);
        auto f = state_formula(v, oracle::random_set(n, rng));
        auto g = f | state_formula(v, oracle::random_set(n, rng));
        auto B = random_basis(v, rng);
        auto h = mhull(f, B);
        ASSERT_TRUE(f.implies(h));
        ASSERT_TRUE(h.implies(mhull(g, B)));
        ASSERT_TRUE(mhull(h, B).equivalent(h));
        ASSERT_TRUE(in_mspan(h & mhull(g, B), B));
        // Any cube decomposition of the same basis states gives the same hull.
        monotone_basis alt{v, irredundant_dnf_cover(B.states())};
        ASSERT_TRUE(mhull(f, alt).equivalent(h));
        ASSERT_TRUE(mhull(f, basis_of_states(B.states())).equivalent(h));
    }
}

TEST(MhullCnf, CharacterizesTheHull)
{
    std::mt19937_64 rng(18);
    for (int iter = 0; iter < 300; ++iter) {
        unsigned n = 1 + iter % 5;
        auto v = vars(n);
        auto f = state_formula(v, oracle::random_set(n, rng));
        auto B = random_basis(v, rng);
        auto clauses = mhull_cnf(f, B);
        ASSERT_EQ(states_of(clauses, n), mhull(f, B).states());
        const state_set basis_states = B.states().states();
        for (const auto& c : clauses) {
            ASSERT_TRUE(clause_implied(f.states(), c));
            bool excludes = false;
            basis_states.for_each([&](state_t b) { excludes = excludes || !c.contains(b); });
            ASSERT_TRUE(excludes);
            for (unsigned i = 0; i < n; ++i)
                if ((c.mask >> i) & 1u) {
                    clause smaller{c.mask & ~(state_t{1} << i), c.value & ~(state_t{1} << i)};
                    ASSERT_FALSE(clause_implied(f.states(), smaller) &&
                                 [&] {
                                     bool ex = false;
                                     basis_states.for_each([&](state_t b) { ex = ex || !smaller.contains(b); });
                                     return ex;
                                 }())
                        << "clause not minimal";
                }
        }
    }
}

TEST(MhullCnf, FindsEveryMinimalAdmissibleClause)
{
    std::mt19937_64 rng(19);
    const unsigned n = 4;
    auto v = vars(n);
    auto cubes = oracle::all_cubes(n);
    for (int iter = 0; iter < 100; ++iter) {
        auto f = state_formula(v, oracle::random_set(n, rng));
        auto B = random_basis(v, rng);
        const state_set bs = B.states().states();
        auto admissible = [&](const clause& c) {
            if (!clause_implied(f.states(), c))
                return false;
            bool ex = false;
            bs.for_each([&](state_t b) { ex = ex || !c.contains(b); });
            return ex;
        };
        std::vector<clause> expect;
        for (const auto& q : cubes) {
            clause c{q.mask, q.value};
            if (!admissible(c))
                continue;
            bool minimal = true;
            for (unsigned i = 0; i < n; ++i)
                if ((c.mask >> i) & 1u)
                    minimal = minimal && !admissible({c.mask & ~(state_t{1} << i), c.value & ~(state_t{1} << i)});
            if (minimal)
                expect.push_back(c);
        }
        auto got = mhull_cnf(f, B);
        std::sort(expect.begin(), expect.end());
        ASSERT_EQ(mhull_cnf(f, B), expect);
    }
}

TEST(MhullCnf, TrueHasNoClauses)
{
    auto v = vars(3);
    std::mt19937_64 rng(20);
    EXPECT_TRUE(mhull_cnf(state_formula::top(v), random_basis(v, rng)).empty());
}

TEST(Reflect, Examples)
{
    EXPECT_EQ(reflect(cube{}), cube{});
    // x1 = 1 and x0 = 0 becomes x1 = 0 and x0 = 1.
    EXPECT_EQ(reflect(cube{0b11, 0b10}), (cube{0b11, 0b01}));
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        auto c = oracle::random_cube(8, rng);
        ASSERT_EQ(reflect(reflect(c)), c);
    }
}

TEST(CubeJoin, Examples)
{
    auto v = vars(3);
    cube b{0b110, 0b100};
    EXPECT_EQ(cube_join(monotone_basis{v, {b}}), b);
    // (x2=1 & x1=0) and (x2=1 & x0=1) share only x2=1.
    EXPECT_EQ(cube_join(monotone_basis{v, {cube{0b110, 0b100}, cube{0b101, 0b101}}}), (cube{0b100, 0b100}));
    EXPECT_THROW(cube_join(monotone_basis{v, {}}), error);
}

TEST(CubeJoin, IsTheLeastCubeContainingTheBasis)
{
    std::mt19937_64 rng(22);
    for (int iter = 0; iter < 300; ++iter) {
        unsigned n = 1 + iter % 6;
        auto v = vars(n);
        auto B = random_basis(v, rng);
        cube j = cube_join(B);
        const state_set bs = B.states().states();
        ASSERT_TRUE(bs.subset_of(oracle::cube_states(j, n)));
        std::size_t best = oracle::cube_states(j, n).count();
        for (const auto& c : oracle::all_cubes(n))
            if (bs.subset_of(oracle::cube_states(c, n)))
                ASSERT_GE(oracle::cube_states(c, n).count(), best);
    }
}

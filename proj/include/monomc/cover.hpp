#pragma once

#include <queue>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "formulas.hpp"

namespace monomc {

namespace detail {

/// Prime implicants via a table over all 3^n ternary cubes: digit 2 marks a free variable.
inline std::vector<cube> primes_ternary(const state_set& f)
{
    unsigned n = f.num_vars();
    std::vector<std::uint32_t> pow3(n + 1, 1);
    for (unsigned i = 1; i <= n; ++i)
        pow3[i] = pow3[i - 1] * 3;
    std::uint32_t total = pow3[n];
    std::vector<std::uint8_t> imp(total, 0);
    std::vector<std::uint8_t> digit(n, 0);

    for (std::uint32_t t = 0; t < total; ++t) {
        unsigned free_at = n;
        for (unsigned i = 0; i < n; ++i)
            if (digit[i] == 2) {
                free_at = i;
                break;
            }
        if (free_at == n) {
            state_t s = 0;
            for (unsigned i = 0; i < n; ++i)
                s |= static_cast<state_t>(digit[i]) << i;
            imp[t] = f.test(s);
        } else {
            imp[t] = imp[t - pow3[free_at]] & imp[t - 2 * pow3[free_at]];
        }
        for (unsigned i = 0; i < n; ++i) {
            if (++digit[i] < 3)
                break;
            digit[i] = 0;
        }
    }

    std::vector<cube> primes;
    std::fill(digit.begin(), digit.end(), 0);
    for (std::uint32_t t = 0; t < total; ++t) {
        if (imp[t]) {
            bool prime = true;
            cube c;
            for (unsigned i = 0; i < n && prime; ++i) {
                if (digit[i] == 2)
                    continue;
                if (imp[t + (2 - digit[i]) * pow3[i]])
                    prime = false;
                c.mask |= state_t{1} << i;
                c.value |= static_cast<state_t>(digit[i]) << i;
            }
            if (prime)
                primes.push_back(c);
        }
        for (unsigned i = 0; i < n; ++i) {
            if (++digit[i] < 3)
                break;
            digit[i] = 0;
        }
    }
    return primes;
}

/// Prime implicants by level-wise Quine-McCluskey merging from the minterms.
inline std::vector<cube> primes_merging(const state_set& f)
{
    unsigned n = f.num_vars();
    auto key = [](const cube& c) { return (std::uint64_t{c.mask} << 32) | c.value; };
    std::vector<cube> level;
    f.for_each([&](state_t s) { level.push_back(cube::of_state(s, n)); });
    std::vector<cube> primes;
    while (!level.empty()) {
        std::unordered_set<std::uint64_t> present;
        present.reserve(level.size() * 2);
        for (const auto& c : level)
            present.insert(key(c));
        std::unordered_set<std::uint64_t> merged_away;
        std::unordered_set<std::uint64_t> next_keys;
        std::vector<cube> next;
        for (const auto& c : level) {
            for (unsigned i = 0; i < n; ++i) {
                if (!c.has(i) || c.polarity(i))
                    continue;
                cube partner{c.mask, c.value | (state_t{1} << i)};
                if (!present.count(key(partner)))
                    continue;
                merged_away.insert(key(c));
                merged_away.insert(key(partner));
                cube m = c.without(i);
                if (next_keys.insert(key(m)).second)
                    next.push_back(m);
            }
        }
        for (const auto& c : level)
            if (!merged_away.count(key(c)))
                primes.push_back(c);
        level = std::move(next);
    }
    return primes;
}

} // namespace detail

/// All prime implicants of f, in (literal count, mask, value) order.
inline std::vector<cube> prime_implicants(const state_set& f)
{
    unsigned n = f.num_vars();
    std::vector<cube> primes;
    if (f.empty())
        return primes;
    if (n <= 10 || (n <= 16 && f.count() > 4096))
        primes = detail::primes_ternary(f);
    else
        primes = detail::primes_merging(f);
    std::sort(primes.begin(), primes.end(), [](const cube& a, const cube& b) {
        return std::make_tuple(a.literals(), a.mask, a.value) < std::make_tuple(b.literals(), b.mask, b.value);
    });
    return primes;
}

namespace detail {

inline std::vector<cube> sorted_cover(std::vector<cube> chosen)
{
    std::sort(chosen.begin(), chosen.end(), [](const cube& a, const cube& b) {
        return std::make_tuple(a.literals(), a.mask, a.value) < std::make_tuple(b.literals(), b.mask, b.value);
    });
    return chosen;
}

/// Drops, latest first, every chosen cube whose states are all covered by another chosen cube.
inline void remove_redundant(std::vector<cube>& chosen, std::vector<std::uint32_t>& covered, unsigned n)
{
    for (std::size_t i = chosen.size(); i-- > 0;) {
        bool redundant = true;
        chosen[i].for_each_state(n, [&](state_t s) { redundant = redundant && covered[s] >= 2; });
        if (redundant) {
            chosen[i].for_each_state(n, [&](state_t s) { --covered[s]; });
            chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
}

/// Calls fn(word index, bit mask) for each 64-bit word of a state set that meets the cube.
template <class F>
void for_each_cube_word(const cube& c, unsigned n, F&& fn)
{
    unsigned low_vars = std::min(n, 6u);
    std::uint64_t low = 0;
    for (unsigned p = 0; p < (1u << low_vars); ++p)
        if (((p ^ c.value) & c.mask & all_vars_mask(low_vars)) == 0)
            low |= std::uint64_t{1} << p;
    if (n <= 6) {
        fn(std::size_t{0}, low);
        return;
    }
    state_t high_mask = (c.mask >> 6) & all_vars_mask(n - 6);
    state_t high_value = (c.value >> 6) & high_mask;
    state_t free = all_vars_mask(n - 6) & ~high_mask;
    state_t sub = 0;
    do {
        fn(static_cast<std::size_t>(high_value | sub), low);
        sub = (sub - free) & free;
    } while (sub != 0);
}

inline bool cube_misses(const cube& c, const state_set& s)
{
    bool miss = true;
    for_each_cube_word(c, s.num_vars(), [&](std::size_t w, std::uint64_t m) { miss = miss && (s.words()[w] & m) == 0; });
    return miss;
}

/// Irredundant prime cover by expanding the least uncovered state, dropping literals in variable order.
inline std::vector<cube> cover_by_expansion(const state_set& f)
{
    unsigned n = f.num_vars();
    state_set outside = f.complement();
    state_set rest = f;
    std::vector<cube> chosen;
    while (!rest.empty()) {
        cube c = cube::of_state(rest.first(), n);
        for (unsigned v = 0; v < n; ++v) {
            cube d = c.without(v);
            if (cube_misses(d, outside))
                c = d;
        }
        chosen.push_back(c);
        for_each_cube_word(c, n, [&](std::size_t w, std::uint64_t m) { rest.words()[w] &= ~m; });
    }
    std::vector<std::uint32_t> covered(std::size_t{1} << n, 0);
    for (const auto& c : chosen)
        c.for_each_state(n, [&](state_t s) { ++covered[s]; });
    remove_redundant(chosen, covered, n);
    return sorted_cover(std::move(chosen));
}

} // namespace detail

/// Vocabularies up to this size use the prime-implicant cover; larger ones use expansion.
inline constexpr unsigned prime_cover_limit = 10;

/**
 * @brief Irredundant cover of f by prime implicants.
 *
 * Up to prime_cover_limit variables: greedy selection among all primes by most newly
 * covered states, ties broken by fewer literals and then (mask, value) order. Beyond
 * that: expansion of the least uncovered state. Either way, cubes covered by the
 * remaining selection are then removed, latest selection first, and the result is
 * sorted like prime_implicants.
 */
inline std::vector<cube> irredundant_dnf_cover(const state_set& f)
{
    unsigned n = f.num_vars();
    if (n > prime_cover_limit)
        return detail::cover_by_expansion(f);
    auto primes = prime_implicants(f);
    std::vector<cube> chosen;
    if (primes.empty())
        return chosen;

    std::vector<std::uint32_t> covered(std::size_t{1} << n, 0);
    std::uint64_t remaining = f.count();
    auto uncovered_in = [&](const cube& c) {
        std::uint64_t k = 0;
        c.for_each_state(n, [&](state_t s) { k += covered[s] == 0; });
        return k;
    };

    // (count, -index): larger count first, then lower index (fewer literals, lexicographic).
    using entry = std::pair<std::uint64_t, std::int64_t>;
    std::priority_queue<entry> queue;
    for (std::size_t i = 0; i < primes.size(); ++i)
        queue.push({std::uint64_t{1} << (n - primes[i].literals()), -static_cast<std::int64_t>(i)});

    while (remaining > 0 && !queue.empty()) {
        auto [stale, neg] = queue.top();
        queue.pop();
        const cube& c = primes[static_cast<std::size_t>(-neg)];
        auto fresh = uncovered_in(c);
        if (fresh == 0)
            continue;
        if (fresh != stale) {
            queue.push({fresh, neg});
            continue;
        }
        chosen.push_back(c);
        c.for_each_state(n, [&](state_t s) {
            if (covered[s] == 0)
                --remaining;
            ++covered[s];
        });
    }
    detail::remove_redundant(chosen, covered, n);
    return detail::sorted_cover(std::move(chosen));
}

inline std::vector<cube> irredundant_dnf_cover(const state_formula& f)
{
    require_enumerable(f.num_vars(), max_relation_vars());
    return irredundant_dnf_cover(f.states());
}

/// Irredundant CNF of f: negated cubes of an irredundant cover of the complement.
inline std::vector<clause> irredundant_cnf(const state_formula& f)
{
    std::vector<clause> out;
    for (const auto& c : irredundant_dnf_cover(f.states().complement()))
        out.push_back(clause::negation_of(c));
    return out;
}

inline std::size_t cover_size(const state_formula& f) { return irredundant_dnf_cover(f).size(); }

} // namespace monomc

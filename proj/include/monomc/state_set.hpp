#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace monomc {

using state_t = std::uint32_t;

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class vocabulary_mismatch : public error {
public:
    vocabulary_mismatch() : error("vocabulary mismatch") {}
};

class limit_exceeded : public error {
public:
    using error::error;
};

/// Hard ceiling on any enumerated vocabulary, independent of the environment.
inline constexpr unsigned hard_var_limit = 24;

/// Largest single vocabulary that may be enumerated. Honors MONOTONE_MC_MAX_N,
/// clamped to [1, hard_var_limit].
inline unsigned max_state_vars()
{
    static const unsigned value = [] {
        unsigned v = 20;
        if (const char* env = std::getenv("MONOTONE_MC_MAX_N")) {
            char* end = nullptr;
            long parsed = std::strtol(env, &end, 10);
            if (end != env && *end == '\0') {
                if (parsed < 1)
                    parsed = 1;
                if (parsed > static_cast<long>(hard_var_limit))
                    parsed = hard_var_limit;
                v = static_cast<unsigned>(parsed);
            }
        }
        return v;
    }();
    return value;
}

/// Largest vocabulary for explicit relation formulas (doubled or hyper copies).
inline unsigned max_relation_vars()
{
    return hard_var_limit;
}

/// Throws unless n <= limit; hard_var_limit caps every limit.
inline void require_enumerable(unsigned n, unsigned limit)
{
    if (n > std::min(limit, hard_var_limit))
        throw limit_exceeded("vocabulary of " + std::to_string(n) + " variables exceeds enumeration limit " +
                             std::to_string(std::min(limit, hard_var_limit)));
}

/// Dense set of states over n variables; bit s is state s.
class state_set {
public:
    state_set() = default;

    explicit state_set(unsigned n, bool full = false)
        : _n(n), _words(n >= 6 ? (std::size_t{1} << (n - 6)) : 1, full ? ~std::uint64_t{0} : 0)
    {
        trim();
    }

    unsigned num_vars() const { return _n; }
    std::uint64_t universe_size() const { return std::uint64_t{1} << _n; }

    bool test(state_t s) const { return (_words[s >> 6] >> (s & 63)) & 1u; }
    void set(state_t s) { _words[s >> 6] |= std::uint64_t{1} << (s & 63); }
    void reset(state_t s) { _words[s >> 6] &= ~(std::uint64_t{1} << (s & 63)); }

    std::uint64_t count() const
    {
        std::uint64_t c = 0;
        for (auto w : _words)
            c += std::popcount(w);
        return c;
    }

    bool empty() const
    {
        for (auto w : _words)
            if (w)
                return false;
        return true;
    }

    bool full() const { return count() == universe_size(); }

    /// Smallest member; precondition: non-empty.
    state_t first() const
    {
        for (std::size_t i = 0; i < _words.size(); ++i)
            if (_words[i])
                return static_cast<state_t>((i << 6) + std::countr_zero(_words[i]));
        throw error("first() on empty state set");
    }

    /// Largest member; precondition: non-empty.
    state_t last() const
    {
        for (std::size_t i = _words.size(); i-- > 0;)
            if (_words[i])
                return static_cast<state_t>((i << 6) + 63 - std::countl_zero(_words[i]));
        throw error("last() on empty state set");
    }

    /// The k-th smallest member (0-based); precondition: k < count().
    state_t nth(std::uint64_t k) const
    {
        for (std::size_t i = 0; i < _words.size(); ++i) {
            auto c = static_cast<std::uint64_t>(std::popcount(_words[i]));
            if (k < c) {
                auto w = _words[i];
                for (std::uint64_t j = 0; j < k; ++j)
                    w &= w - 1;
                return static_cast<state_t>((i << 6) + std::countr_zero(w));
            }
            k -= c;
        }
        throw error("nth() out of range");
    }

    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t i = 0; i < _words.size(); ++i) {
            auto w = _words[i];
            while (w) {
                f(static_cast<state_t>((i << 6) + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<state_t> members() const
    {
        std::vector<state_t> out;
        out.reserve(count());
        for_each([&](state_t s) { out.push_back(s); });
        return out;
    }

    bool subset_of(const state_set& o) const
    {
        check(o);
        for (std::size_t i = 0; i < _words.size(); ++i)
            if (_words[i] & ~o._words[i])
                return false;
        return true;
    }

    bool intersects(const state_set& o) const
    {
        check(o);
        for (std::size_t i = 0; i < _words.size(); ++i)
            if (_words[i] & o._words[i])
                return true;
        return false;
    }

    state_set& operator&=(const state_set& o)
    {
        check(o);
        for (std::size_t i = 0; i < _words.size(); ++i)
            _words[i] &= o._words[i];
        return *this;
    }

    state_set& operator|=(const state_set& o)
    {
        check(o);
        for (std::size_t i = 0; i < _words.size(); ++i)
            _words[i] |= o._words[i];
        return *this;
    }

    state_set& operator-=(const state_set& o)
    {
        check(o);
        for (std::size_t i = 0; i < _words.size(); ++i)
            _words[i] &= ~o._words[i];
        return *this;
    }

    state_set complement() const
    {
        state_set r = *this;
        for (auto& w : r._words)
            w = ~w;
        r.trim();
        return r;
    }

    friend state_set operator&(state_set a, const state_set& b) { return a &= b; }
    friend state_set operator|(state_set a, const state_set& b) { return a |= b; }
    friend state_set operator-(state_set a, const state_set& b) { return a -= b; }
    friend bool operator==(const state_set& a, const state_set& b) = default;

    std::vector<std::uint64_t>& words() { return _words; }
    const std::vector<std::uint64_t>& words() const { return _words; }

    void trim()
    {
        if (_n < 6)
            _words[0] &= (std::uint64_t{1} << (1u << _n)) - 1;
    }

private:
    void check(const state_set& o) const
    {
        if (o._n != _n)
            throw vocabulary_mismatch();
    }

    unsigned _n = 0;
    std::vector<std::uint64_t> _words{0};
};

} // namespace monomc

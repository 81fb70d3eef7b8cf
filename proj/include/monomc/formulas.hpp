#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "state_set.hpp"

namespace monomc {

class vocabulary;
using vocab_ptr = std::shared_ptr<const vocabulary>;

/// Ordered list of unique variable names. Variable i is bit i of a state index.
class vocabulary {
public:
    static vocab_ptr make(std::vector<std::string> names)
    {
        return std::shared_ptr<const vocabulary>(new vocabulary(std::move(names)));
    }

    /// Pre-state names x followed by post-state names x'.
    static vocab_ptr doubled(const vocabulary& base)
    {
        auto names = base._names;
        for (const auto& n : base._names)
            names.push_back(n + "'");
        return make(std::move(names));
    }

    /// m pre-state copies x_1..x_m followed by the post-state copy x'.
    static vocab_ptr hyper(const vocabulary& base, unsigned m)
    {
        std::vector<std::string> names;
        for (unsigned j = 1; j <= m; ++j)
            for (const auto& n : base._names)
                names.push_back(n + "_" + std::to_string(j));
        for (const auto& n : base._names)
            names.push_back(n + "'");
        return make(std::move(names));
    }

    unsigned size() const { return static_cast<unsigned>(_names.size()); }
    const std::string& name(unsigned i) const { return _names.at(i); }
    const std::vector<std::string>& names() const { return _names; }

    std::optional<unsigned> index(const std::string& name) const
    {
        auto it = _index.find(name);
        if (it == _index.end())
            return std::nullopt;
        return it->second;
    }

    bool same_as(const vocabulary& o) const { return this == &o || _names == o._names; }

private:
    explicit vocabulary(std::vector<std::string> names) : _names(std::move(names))
    {
        if (_names.empty())
            throw error("vocabulary must have at least one variable");
        if (_names.size() > 32)
            throw limit_exceeded("vocabulary exceeds 32 variables");
        for (unsigned i = 0; i < _names.size(); ++i) {
            if (_names[i].empty())
                throw error("empty variable name");
            if (!_index.emplace(_names[i], i).second)
                throw error("duplicate variable name '" + _names[i] + "'");
        }
    }

    std::vector<std::string> _names;
    std::unordered_map<std::string, unsigned> _index;
};

inline void check_same(const vocab_ptr& a, const vocab_ptr& b)
{
    if (a != b && !a->same_as(*b))
        throw vocabulary_mismatch();
}

inline state_t all_vars_mask(unsigned n) { return n >= 32 ? ~state_t{0} : ((state_t{1} << n) - 1); }

/// Consistent partial assignment: variables in `mask` take the bits of `value`.
/// Invariant: value has no bits outside mask. The empty cube is true.
struct cube {
    state_t mask = 0;
    state_t value = 0;

    static cube of_state(state_t s, unsigned n) { return {all_vars_mask(n), s & all_vars_mask(n)}; }

    bool contains(state_t s) const { return (s & mask) == value; }
    bool has(unsigned var) const { return (mask >> var) & 1u; }
    bool polarity(unsigned var) const { return (value >> var) & 1u; }
    unsigned literals() const { return static_cast<unsigned>(std::popcount(mask)); }

    cube with(unsigned var, bool val) const
    {
        state_t bit = state_t{1} << var;
        return {mask | bit, val ? (value | bit) : (value & ~bit)};
    }

    cube without(unsigned var) const
    {
        state_t bit = state_t{1} << var;
        return {mask & ~bit, value & ~bit};
    }

    /// Literal-subset relation: every literal of *this is a literal of o.
    bool subset_of(const cube& o) const { return (mask & ~o.mask) == 0 && (o.value & mask) == value; }

    friend bool operator==(const cube&, const cube&) = default;
    friend bool operator<(const cube& a, const cube& b)
    {
        return a.mask != b.mask ? a.mask < b.mask : a.value < b.value;
    }

    template <class F>
    void for_each_state(unsigned n, F&& f) const
    {
        state_t free = all_vars_mask(n) & ~mask;
        state_t sub = free;
        while (true) {
            f(value | sub);
            if (sub == 0)
                break;
            sub = (sub - 1) & free;
        }
    }
};

/// Disjunction of literals: true at s iff s agrees with some literal.
/// The empty clause is false.
struct clause {
    state_t mask = 0;
    state_t value = 0;

    bool contains(state_t s) const { return (~(s ^ value) & mask) != 0; }
    unsigned literals() const { return static_cast<unsigned>(std::popcount(mask)); }

    /// The cube of states falsifying this clause.
    cube negation() const { return {mask, ~value & mask}; }
    static clause negation_of(const cube& c) { return {c.mask, ~c.value & c.mask}; }

    bool subset_of(const clause& o) const { return (mask & ~o.mask) == 0 && (o.value & mask) == value; }

    friend bool operator==(const clause&, const clause&) = default;
    friend bool operator<(const clause& a, const clause& b)
    {
        return a.mask != b.mask ? a.mask < b.mask : a.value < b.value;
    }
};

inline std::string literal_text(const vocabulary& v, unsigned var, bool pol)
{
    return pol ? v.name(var) : "!" + v.name(var);
}

inline std::string to_string(const cube& c, const vocabulary& v)
{
    if (c.mask == 0)
        return "true";
    std::string out;
    unsigned lits = c.literals();
    for (unsigned i = 0; i < v.size(); ++i) {
        if (!c.has(i))
            continue;
        if (!out.empty())
            out += " & ";
        out += literal_text(v, i, c.polarity(i));
    }
    return lits > 1 ? "(" + out + ")" : out;
}

inline std::string to_string(const clause& c, const vocabulary& v)
{
    if (c.mask == 0)
        return "false";
    std::string out;
    unsigned lits = c.literals();
    for (unsigned i = 0; i < v.size(); ++i) {
        if (!((c.mask >> i) & 1u))
            continue;
        if (!out.empty())
            out += " | ";
        out += literal_text(v, i, (c.value >> i) & 1u);
    }
    return lits > 1 ? "(" + out + ")" : out;
}

inline state_set states_of(const cube& c, unsigned n)
{
    state_set s(n);
    c.for_each_state(n, [&](state_t x) { s.set(x); });
    return s;
}

inline state_set states_of(const std::vector<cube>& cubes, unsigned n)
{
    state_set s(n);
    for (const auto& c : cubes)
        c.for_each_state(n, [&](state_t x) { s.set(x); });
    return s;
}

inline state_set states_of(const std::vector<clause>& clauses, unsigned n)
{
    state_set s(n, true);
    for (const auto& c : clauses)
        c.negation().for_each_state(n, [&](state_t x) { s.reset(x); });
    return s;
}

/// Set of states with optional syntactic DNF/CNF views that denote exactly the same set.
class state_formula {
public:
    state_formula() = default;

    state_formula(vocab_ptr v, state_set s) : _vocab(std::move(v)), _set(std::move(s))
    {
        if (_set.num_vars() != _vocab->size())
            throw vocabulary_mismatch();
    }

    static state_formula top(vocab_ptr v)
    {
        require_enumerable(v->size(), max_relation_vars());
        unsigned n = v->size();
        state_formula f(std::move(v), state_set(n, true));
        f._dnf = std::vector<cube>{cube{}};
        f._cnf = std::vector<clause>{};
        return f;
    }

    static state_formula bottom(vocab_ptr v)
    {
        require_enumerable(v->size(), max_relation_vars());
        unsigned n = v->size();
        state_formula f(std::move(v), state_set(n));
        f._dnf = std::vector<cube>{};
        f._cnf = std::vector<clause>{clause{}};
        return f;
    }

    static state_formula of_cube(vocab_ptr v, const cube& c) { return of_dnf(std::move(v), {c}); }

    static state_formula of_dnf(vocab_ptr v, std::vector<cube> cubes)
    {
        require_enumerable(v->size(), max_relation_vars());
        unsigned n = v->size();
        state_formula f(std::move(v), states_of(cubes, n));
        f._dnf = std::move(cubes);
        return f;
    }

    static state_formula of_cnf(vocab_ptr v, std::vector<clause> clauses)
    {
        require_enumerable(v->size(), max_relation_vars());
        unsigned n = v->size();
        state_formula f(std::move(v), states_of(clauses, n));
        f._cnf = std::move(clauses);
        return f;
    }

    static state_formula of_states(vocab_ptr v, const std::vector<state_t>& states)
    {
        require_enumerable(v->size(), max_relation_vars());
        state_set s(v->size());
        for (auto x : states)
            s.set(x);
        return {std::move(v), std::move(s)};
    }

    const vocab_ptr& vocab() const { return _vocab; }
    unsigned num_vars() const { return _set.num_vars(); }
    const state_set& states() const { return _set; }

    const std::optional<std::vector<cube>>& dnf_view() const { return _dnf; }
    const std::optional<std::vector<clause>>& cnf_view() const { return _cnf; }

    state_formula& with_dnf(std::vector<cube> d)
    {
        _dnf = std::move(d);
        return *this;
    }

    state_formula& with_cnf(std::vector<clause> c)
    {
        _cnf = std::move(c);
        return *this;
    }

    bool eval(state_t s) const
    {
        if (s > all_vars_mask(num_vars()))
            throw vocabulary_mismatch();
        return _set.test(s);
    }

    bool is_false() const { return _set.empty(); }
    bool is_true() const { return _set.full(); }

    bool implies(const state_formula& g) const
    {
        check_same(_vocab, g._vocab);
        return _set.subset_of(g._set);
    }

    bool equivalent(const state_formula& g) const
    {
        check_same(_vocab, g._vocab);
        return _set == g._set;
    }

    friend state_formula operator&(const state_formula& a, const state_formula& b)
    {
        check_same(a._vocab, b._vocab);
        state_formula r(a._vocab, a._set & b._set);
        if (a._cnf && b._cnf) {
            auto c = *a._cnf;
            c.insert(c.end(), b._cnf->begin(), b._cnf->end());
            r._cnf = std::move(c);
        }
        return r;
    }

    friend state_formula operator|(const state_formula& a, const state_formula& b)
    {
        check_same(a._vocab, b._vocab);
        state_formula r(a._vocab, a._set | b._set);
        if (a._dnf && b._dnf) {
            auto d = *a._dnf;
            d.insert(d.end(), b._dnf->begin(), b._dnf->end());
            r._dnf = std::move(d);
        }
        return r;
    }

    friend state_formula operator-(const state_formula& a, const state_formula& b)
    {
        check_same(a._vocab, b._vocab);
        return {a._vocab, a._set - b._set};
    }

    state_formula operator!() const
    {
        state_formula r(_vocab, _set.complement());
        if (_dnf) {
            std::vector<clause> c;
            for (const auto& d : *_dnf)
                c.push_back(clause::negation_of(d));
            r._cnf = std::move(c);
        }
        if (_cnf) {
            std::vector<cube> d;
            for (const auto& c : *_cnf)
                d.push_back(c.negation());
            r._dnf = std::move(d);
        }
        return r;
    }

    /// True iff every attached view denotes exactly the semantic set.
    bool views_consistent() const
    {
        if (_dnf && states_of(*_dnf, num_vars()) != _set)
            return false;
        if (_cnf && states_of(*_cnf, num_vars()) != _set)
            return false;
        return true;
    }

private:
    vocab_ptr _vocab;
    state_set _set;
    std::optional<std::vector<cube>> _dnf;
    std::optional<std::vector<clause>> _cnf;
};

inline bool eval(const state_formula& f, state_t s) { return f.eval(s); }
inline bool implies(const state_formula& f, const state_formula& g) { return f.implies(g); }

} // namespace monomc

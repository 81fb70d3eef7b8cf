#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cover.hpp"
#include "formulas.hpp"

namespace monomc {

class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t pos)
        : error("parse error at position " + std::to_string(pos) + ": " + msg), _pos(pos)
    {
    }
    std::size_t position() const { return _pos; }

private:
    std::size_t _pos;
};

namespace detail {

struct expr {
    enum kind_t { konst, var, neg, conj, disj, impl, iff } kind;
    bool bval = false;
    unsigned index = 0;
    std::vector<std::unique_ptr<expr>> kids;
};

class formula_parser {
public:
    formula_parser(std::string_view text, const vocabulary& v) : _text(text), _vocab(v) {}

    std::unique_ptr<expr> parse()
    {
        auto e = parse_iff();
        skip_ws();
        if (_pos != _text.size())
            throw parse_error("unexpected '" + std::string(1, _text[_pos]) + "'", _pos);
        return e;
    }

private:
    void skip_ws()
    {
        while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
            ++_pos;
    }

    bool accept(std::string_view tok)
    {
        skip_ws();
        if (_text.substr(_pos, tok.size()) == tok) {
            _pos += tok.size();
            return true;
        }
        return false;
    }

    static std::unique_ptr<expr> binary(expr::kind_t k, std::unique_ptr<expr> a, std::unique_ptr<expr> b)
    {
        auto e = std::make_unique<expr>();
        e->kind = k;
        e->kids.push_back(std::move(a));
        e->kids.push_back(std::move(b));
        return e;
    }

    std::unique_ptr<expr> parse_iff()
    {
        auto lhs = parse_impl();
        while (accept("<->"))
            lhs = binary(expr::iff, std::move(lhs), parse_impl());
        return lhs;
    }

    std::unique_ptr<expr> parse_impl()
    {
        auto lhs = parse_or();
        skip_ws();
        if (_text.substr(_pos, 2) == "->") {
            _pos += 2;
            return binary(expr::impl, std::move(lhs), parse_impl());
        }
        return lhs;
    }

    std::unique_ptr<expr> parse_or()
    {
        auto first = parse_and();
        std::unique_ptr<expr> node;
        while (accept("|")) {
            if (!node) {
                node = std::make_unique<expr>();
                node->kind = expr::disj;
                node->kids.push_back(std::move(first));
            }
            node->kids.push_back(parse_and());
        }
        return node ? std::move(node) : std::move(first);
    }

    std::unique_ptr<expr> parse_and()
    {
        auto first = parse_unary();
        std::unique_ptr<expr> node;
        while (accept("&")) {
            if (!node) {
                node = std::make_unique<expr>();
                node->kind = expr::conj;
                node->kids.push_back(std::move(first));
            }
            node->kids.push_back(parse_unary());
        }
        return node ? std::move(node) : std::move(first);
    }

    std::unique_ptr<expr> parse_unary()
    {
        if (accept("!")) {
            auto e = std::make_unique<expr>();
            e->kind = expr::neg;
            e->kids.push_back(parse_unary());
            return e;
        }
        if (accept("(")) {
            auto e = parse_iff();
            if (!accept(")"))
                throw parse_error("expected ')'", _pos);
            return e;
        }
        skip_ws();
        if (_pos >= _text.size())
            throw parse_error("unexpected end of input", _pos);
        char c = _text[_pos];
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
            throw parse_error("unexpected '" + std::string(1, c) + "'", _pos);
        std::size_t start = _pos;
        while (_pos < _text.size() &&
               (std::isalnum(static_cast<unsigned char>(_text[_pos])) || _text[_pos] == '_' || _text[_pos] == '\''))
            ++_pos;
        std::string id(_text.substr(start, _pos - start));
        auto e = std::make_unique<expr>();
        if (id == "true" || id == "false") {
            e->kind = expr::konst;
            e->bval = id == "true";
            return e;
        }
        auto idx = _vocab.index(id);
        if (!idx)
            throw parse_error("unknown variable '" + id + "'", start);
        e->kind = expr::var;
        e->index = *idx;
        return e;
    }

    std::string_view _text;
    const vocabulary& _vocab;
    std::size_t _pos = 0;
};

inline state_set var_states(unsigned n, unsigned var)
{
    state_set s(n);
    if (var >= 6) {
        std::size_t block = std::size_t{1} << (var - 6);
        auto& w = s.words();
        for (std::size_t i = 0; i < w.size(); ++i)
            if ((i / block) & 1u)
                w[i] = ~std::uint64_t{0};
    } else {
        static constexpr std::uint64_t patterns[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull,
                                                      0xF0F0F0F0F0F0F0F0ull, 0xFF00FF00FF00FF00ull,
                                                      0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
        for (auto& w : s.words())
            w = patterns[var];
        s.trim();
    }
    return s;
}

inline state_set evaluate(const expr& e, unsigned n)
{
    switch (e.kind) {
    case expr::konst:
        return state_set(n, e.bval);
    case expr::var:
        return var_states(n, e.index);
    case expr::neg:
        return evaluate(*e.kids[0], n).complement();
    case expr::conj: {
        auto s = evaluate(*e.kids[0], n);
        for (std::size_t i = 1; i < e.kids.size(); ++i)
            s &= evaluate(*e.kids[i], n);
        return s;
    }
    case expr::disj: {
        auto s = evaluate(*e.kids[0], n);
        for (std::size_t i = 1; i < e.kids.size(); ++i)
            s |= evaluate(*e.kids[i], n);
        return s;
    }
    case expr::impl:
        return evaluate(*e.kids[0], n).complement() | evaluate(*e.kids[1], n);
    case expr::iff: {
        auto a = evaluate(*e.kids[0], n);
        auto b = evaluate(*e.kids[1], n);
        return (a & b) | (a.complement() & b.complement());
    }
    }
    return state_set(n);
}

/// Literal as (var, polarity), if e is one.
inline bool as_literal(const expr& e, unsigned& var, bool& pol)
{
    if (e.kind == expr::var) {
        var = e.index;
        pol = true;
        return true;
    }
    if (e.kind == expr::neg && e.kids[0]->kind == expr::var) {
        var = e.kids[0]->index;
        pol = false;
        return true;
    }
    return false;
}

/// Literal conjunction as a cube; `ok` false on contradiction (then the term is false).
inline bool as_cube(const expr& e, cube& out, bool& ok)
{
    out = cube{};
    ok = true;
    unsigned var;
    bool pol;
    auto add = [&](unsigned v, bool p) {
        if (out.has(v) && out.polarity(v) != p)
            ok = false;
        out = out.with(v, p);
    };
    if (e.kind == expr::konst && e.bval)
        return true;
    if (as_literal(e, var, pol)) {
        add(var, pol);
        return true;
    }
    if (e.kind != expr::conj)
        return false;
    for (const auto& k : e.kids) {
        if (!as_literal(*k, var, pol))
            return false;
        add(var, pol);
    }
    return true;
}

inline bool as_clause(const expr& e, clause& out, bool& tautology)
{
    out = clause{};
    tautology = false;
    unsigned var;
    bool pol;
    auto add = [&](unsigned v, bool p) {
        state_t bit = state_t{1} << v;
        if ((out.mask & bit) && (((out.value & bit) != 0) != p))
            tautology = true;
        out.mask |= bit;
        out.value = p ? (out.value | bit) : (out.value & ~bit);
    };
    if (e.kind == expr::konst && !e.bval)
        return true;
    if (as_literal(e, var, pol)) {
        add(var, pol);
        return true;
    }
    if (e.kind != expr::disj)
        return false;
    for (const auto& k : e.kids) {
        if (!as_literal(*k, var, pol))
            return false;
        add(var, pol);
    }
    return true;
}

inline std::optional<std::vector<cube>> dnf_shape(const expr& e)
{
    std::vector<cube> out;
    cube c;
    bool ok;
    if (e.kind == expr::konst && !e.bval)
        return out;
    if (as_cube(e, c, ok)) {
        if (ok)
            out.push_back(c);
        return out;
    }
    if (e.kind != expr::disj)
        return std::nullopt;
    for (const auto& k : e.kids) {
        if (!as_cube(*k, c, ok))
            return std::nullopt;
        if (ok)
            out.push_back(c);
    }
    return out;
}

inline std::optional<std::vector<clause>> cnf_shape(const expr& e)
{
    std::vector<clause> out;
    clause c;
    bool taut;
    if (e.kind == expr::konst && e.bval)
        return out;
    if (as_clause(e, c, taut)) {
        if (!taut)
            out.push_back(c);
        return out;
    }
    if (e.kind != expr::conj)
        return std::nullopt;
    for (const auto& k : e.kids) {
        if (!as_clause(*k, c, taut))
            return std::nullopt;
        if (!taut)
            out.push_back(c);
    }
    return out;
}

} // namespace detail

/**
 * @brief Parses a propositional expression over `v`.
 *
 * Grammar: identifiers, `true`, `false`, `!`, `&`, `|`, `->` (right-associative),
 * `<->`, parentheses; precedence `! > & > | > -> > <->`. A DNF or CNF view is
 * attached when the text already has that shape.
 */
inline state_formula parse_formula(std::string_view text, const vocab_ptr& v)
{
    require_enumerable(v->size(), max_relation_vars());
    auto e = detail::formula_parser(text, *v).parse();
    state_formula f(v, detail::evaluate(*e, v->size()));
    if (auto d = detail::dnf_shape(*e))
        f.with_dnf(std::move(*d));
    if (auto c = detail::cnf_shape(*e))
        f.with_cnf(std::move(*c));
    return f;
}

inline std::string print_dnf(const std::vector<cube>& cubes, const vocabulary& v)
{
    if (cubes.empty())
        return "false";
    std::string out;
    for (const auto& c : cubes) {
        if (!out.empty())
            out += " | ";
        out += to_string(c, v);
    }
    return out;
}

inline std::string print_cnf(const std::vector<clause>& clauses, const vocabulary& v)
{
    if (clauses.empty())
        return "true";
    std::string out;
    for (const auto& c : clauses) {
        if (!out.empty())
            out += " & ";
        out += to_string(c, v);
    }
    return out;
}

/// Text that parses back to the same set: the DNF view if present, else an irredundant cover.
inline std::string print(const state_formula& f)
{
    if (f.dnf_view())
        return print_dnf(*f.dnf_view(), *f.vocab());
    return print_dnf(irredundant_dnf_cover(f), *f.vocab());
}

} // namespace monomc

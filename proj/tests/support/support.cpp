#include "support.hpp"

#include <functional>

namespace lpeg::testing {

namespace {

// Oracle-local regex algebra; deliberately does not call the library's
// simplifiers or nullable().
RegexPtr mk(RegexKind kind, char c = '\0', RegexPtr a = nullptr, RegexPtr b = nullptr) {
    return std::make_shared<const Regex>(Regex{kind, c, std::move(a), std::move(b)});
}

bool oracle_nullable(const RegexPtr& r) {
    switch (r->kind) {
    case RegexKind::Epsilon:
    case RegexKind::Star:
        return true;
    case RegexKind::Concat:
        return oracle_nullable(r->lhs) && oracle_nullable(r->rhs);
    case RegexKind::Alt:
        return oracle_nullable(r->lhs) || oracle_nullable(r->rhs);
    default:
        return false;
    }
}

RegexPtr o_alt(RegexPtr a, RegexPtr b) {
    if (a->kind == RegexKind::EmptySet) return b;
    if (b->kind == RegexKind::EmptySet) return a;
    return mk(RegexKind::Alt, '\0', std::move(a), std::move(b));
}

RegexPtr o_concat(RegexPtr a, RegexPtr b) {
    if (a->kind == RegexKind::EmptySet || b->kind == RegexKind::EmptySet) return mk(RegexKind::EmptySet);
    if (a->kind == RegexKind::Epsilon) return b;
    return mk(RegexKind::Concat, '\0', std::move(a), std::move(b));
}

RegexPtr derivative(const RegexPtr& r, char c) {
    switch (r->kind) {
    case RegexKind::Epsilon:
    case RegexKind::EmptySet:
        return mk(RegexKind::EmptySet);
    case RegexKind::Char:
        return r->symbol == c ? mk(RegexKind::Epsilon) : mk(RegexKind::EmptySet);
    case RegexKind::Alt:
        return o_alt(derivative(r->lhs, c), derivative(r->rhs, c));
    case RegexKind::Concat: {
        RegexPtr left = o_concat(derivative(r->lhs, c), r->rhs);
        return oracle_nullable(r->lhs) ? o_alt(left, derivative(r->rhs, c)) : left;
    }
    case RegexKind::Star:
        return o_concat(derivative(r->lhs, c), r);
    }
    return mk(RegexKind::EmptySet);
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& items) {
    return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

std::size_t roll(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

char symbol(Rng& rng, std::string_view alphabet) { return alphabet[roll(rng, alphabet.size())]; }

class LpegGen {
public:
    LpegGen(Rng& rng, std::string alphabet, std::vector<std::string> names)
        : rng_(rng), alphabet_(std::move(alphabet)), names_(std::move(names)) {}

    ExprPtr nfree(std::size_t depth) {
        if (depth == 0) {
            switch (roll(rng_, 10)) {
            case 0: return empty();
            case 1: return any();
            default: return terminal(symbol(rng_, alphabet_));
            }
        }
        const std::size_t d = depth - 1;
        switch (roll(rng_, 13)) {
        case 0:
        case 1: return terminal(symbol(rng_, alphabet_));
        case 2:
        case 3: return seq(nfree(d), nfree(d));
        case 4:
        case 5: return choice(nfree(d), nfree(d));
        case 6: return star(nfree(d));
        case 7: return not_pred(nfree(d));
        case 8: return opt(nfree(d));
        case 9: return plus(nfree(d));
        case 10: return and_pred(nfree(d));
        case 11: return char_class(alphabet_.substr(0, 1 + roll(rng_, alphabet_.size())));
        default: return any();
        }
    }

    ExprPtr linear(std::size_t depth) {
        if (names_.empty()) return nfree(depth);
        if (depth == 0) {
            switch (roll(rng_, 4)) {
            case 0: return empty();
            case 1: return nonterminal(pick(rng_, names_));
            default: return terminal(symbol(rng_, alphabet_));
            }
        }
        const std::size_t d = depth - 1;
        switch (roll(rng_, 10)) {
        case 0: return nfree(depth);
        case 1:
        case 2: return seq(nfree(d), nonterminal(pick(rng_, names_)));
        case 3: return seq(nfree(d), linear(d));
        case 4:
        case 5: return choice(linear(d), linear(d));
        case 6:
        case 7: return seq(not_pred(linear(d)), linear(d));
        case 8: return roll(rng_, 2) ? opt(linear(d)) : and_pred(linear(d));
        default: return nonterminal(pick(rng_, names_));
        }
    }

private:
    Rng& rng_;
    std::string alphabet_;
    std::vector<std::string> names_;
};

} // namespace

bool regex_matches(const RegexPtr& r, std::string_view w) {
    RegexPtr cur = r;
    for (char c : w) {
        cur = derivative(cur, c);
        if (cur->kind == RegexKind::EmptySet) return false;
    }
    return oracle_nullable(cur);
}

std::vector<std::string> all_strings(std::string_view alphabet, std::size_t max_len) {
    std::vector<std::string> out{""};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (char c : alphabet) out.push_back(out[i] + c);
        begin = end;
    }
    return out;
}

Grammar random_lpeg(Rng& rng, const LpegShape& shape) {
    const std::size_t rule_count = 1 + roll(rng, shape.max_rules);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rule_count; ++i) names.push_back(std::string(1, static_cast<char>('A' + i)));
    LpegGen gen(rng, shape.alphabet, names);
    Grammar g(shape.alphabet, {}, nonterminal(names.front()));
    for (const auto& name : names) g.add_rule(name, gen.linear(1 + roll(rng, shape.max_depth)));
    return g;
}

Grammar random_wellformed_lpeg(Rng& rng, const LpegShape& shape) {
    while (true) {
        Grammar g = random_lpeg(rng, shape);
        if (check_wellformed(g).empty()) return g;
    }
}

ExprPtr random_linear(Rng& rng, const Grammar& g, std::size_t depth) {
    LpegGen gen(rng, g.alphabet(), g.nonterminals());
    return gen.linear(depth);
}

RegexPtr random_regex(Rng& rng, std::string_view alphabet, std::size_t depth) {
    if (depth == 0) {
        std::size_t r = roll(rng, 20);
        if (r == 0) return re::empty_set();
        if (r < 4) return re::epsilon();
        return re::ch(symbol(rng, alphabet));
    }
    switch (roll(rng, 7)) {
    case 0: return re::ch(symbol(rng, alphabet));
    case 1:
    case 2: return re::concat(random_regex(rng, alphabet, depth - 1), random_regex(rng, alphabet, depth - 1));
    case 3:
    case 4: return re::alt(random_regex(rng, alphabet, depth - 1), random_regex(rng, alphabet, depth - 1));
    default: return re::star(random_regex(rng, alphabet, depth - 1));
    }
}

Dfa random_dfa(Rng& rng, std::string_view alphabet, std::size_t max_states) {
    Dfa d;
    d.alphabet = std::string(alphabet);
    const std::size_t n = 1 + roll(rng, max_states);
    for (std::size_t q = 0; q < n; ++q) d.add_state(roll(rng, 2) == 0);
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t i = 0; i < alphabet.size(); ++i) d.next[q][i] = static_cast<std::uint32_t>(roll(rng, n));
    d.start = 0;
    return d;
}

BoolFn random_boolfn(Rng& rng, std::uint32_t variables, std::size_t depth) {
    if (depth == 0 || roll(rng, 5) == 0) {
        if (roll(rng, 12) == 0) return BoolFn::constant(roll(rng, 2) == 0);
        return BoolFn::state(static_cast<std::uint32_t>(roll(rng, variables)));
    }
    switch (roll(rng, 3)) {
    case 0: return ~random_boolfn(rng, variables, depth - 1);
    case 1: return random_boolfn(rng, variables, depth - 1) & random_boolfn(rng, variables, depth - 1);
    default: return random_boolfn(rng, variables, depth - 1) | random_boolfn(rng, variables, depth - 1);
    }
}

BoolFn equivalent_rewrite(Rng& rng, const BoolFn& f) {
    switch (f.op()) {
    case BoolFn::Op::False:
    case BoolFn::Op::True:
        return f;
    case BoolFn::Op::Var:
        if (roll(rng, 3) == 0) return f & (f | BoolFn::state(static_cast<std::uint32_t>(roll(rng, 4))));
        return f;
    case BoolFn::Op::Not:
        return ~equivalent_rewrite(rng, f.lhs());
    case BoolFn::Op::And: {
        BoolFn a = equivalent_rewrite(rng, f.lhs());
        BoolFn b = equivalent_rewrite(rng, f.rhs());
        switch (roll(rng, 3)) {
        case 0: return ~(~a | ~b);
        case 1: return b & a;
        default: return a & b;
        }
    }
    case BoolFn::Op::Or: {
        BoolFn a = equivalent_rewrite(rng, f.lhs());
        BoolFn b = equivalent_rewrite(rng, f.rhs());
        switch (roll(rng, 3)) {
        case 0: return ~(~a & ~b);
        case 1: return b | a;
        default: return a | b;
        }
    }
    }
    return f;
}

Bfa random_bfa(Rng& rng, std::string_view alphabet, std::uint32_t states) {
    Bfa b;
    b.alphabet = std::string(alphabet);
    b.state_count = states;
    for (StateId q = 0; q < states; ++q) {
        for (char a : alphabet)
            if (roll(rng, 3) != 0) b.set_transition(q, a, random_boolfn(rng, states, 2));
        if (roll(rng, 3) == 0) b.accepting.insert(q);
        if (roll(rng, 5) == 0) b.lookahead.insert(q);
    }
    b.initial = random_boolfn(rng, states, 3);
    return b;
}

} // namespace lpeg::testing

#include "lpeg/conversion.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

#include "lpeg/error.hpp"

namespace lpeg {

namespace {

constexpr std::size_t kBindThreshold = 8;

ExprPtr then(ExprPtr e, const ExprPtr& k) {
    if (!k || k->kind == ExprKind::Empty) return e;
    if (e->kind == ExprKind::Empty) return k;
    return seq(std::move(e), k);
}

bool is_primed(std::string_view name) { return !name.empty() && name.back() == '\''; }

/// Rebuilds binary/unary nodes with mapped children, sharing unchanged ones.
template <class F>
ExprPtr map_children(const ExprPtr& e, const F& f) {
    switch (e->kind) {
    case ExprKind::Seq:
    case ExprKind::Choice:
    case ExprKind::Alt: {
        ExprPtr a = f(e->lhs);
        ExprPtr b = f(e->rhs);
        if (a == e->lhs && b == e->rhs) return e;
        if (e->kind == ExprKind::Seq) return seq(a, b);
        if (e->kind == ExprKind::Choice) return choice(a, b);
        return alt(a, b);
    }
    case ExprKind::Star:
    case ExprKind::Not:
    case ExprKind::Opt:
    case ExprKind::Plus:
    case ExprKind::And: {
        ExprPtr a = f(e->lhs);
        if (a == e->lhs) return e;
        switch (e->kind) {
        case ExprKind::Star: return star(a);
        case ExprKind::Not: return not_pred(a);
        case ExprKind::Opt: return opt(a);
        case ExprKind::Plus: return plus(a);
        default: return and_pred(a);
        }
    }
    default:
        return e;
    }
}

/// Collects rules for a grammar under construction; names are reserved
/// before their bodies exist.
class RuleSink {
public:
    explicit RuleSink(const Grammar& base) {
        for (const auto& rule : base.rules()) names_.insert(rule.name);
    }

    std::string reserve(const std::string& base, bool bare_first) {
        std::string name = base;
        if (!bare_first || names_.contains(name)) {
            for (std::size_t n = 1;; ++n) {
                name = base + std::to_string(n);
                if (!names_.contains(name)) break;
            }
        }
        names_.insert(name);
        return name;
    }

    void define(std::string name, ExprPtr body) { rules_.push_back(Rule{std::move(name), std::move(body)}); }
    const std::vector<Rule>& rules() const { return rules_; }

private:
    std::set<std::string> names_;
    std::vector<Rule> rules_;
};

class StarLinearizer {
public:
    StarLinearizer(RuleSink& sink, std::string base) : sink_(sink), base_(std::move(base)) {}

    /// Linear expression equivalent to `e` followed by `k` (null k: nothing).
    ExprPtr run(const ExprPtr& e, const ExprPtr& k) {
        if (!contains_kind(e, ExprKind::Star)) return then(e, k);
        switch (e->kind) {
        case ExprKind::Seq:
            return run(e->lhs, run(e->rhs, k));
        case ExprKind::Choice: {
            if (!k || k->kind == ExprKind::Empty) return choice(run(e->lhs, nullptr), run(e->rhs, nullptr));
            ExprPtr c = bind(k);
            // once e1 has matched the choice is committed, even if k then fails
            return choice(run(e->lhs, c), seq(not_pred(run(e->lhs, nullptr)), run(e->rhs, c)));
        }
        case ExprKind::Star: {
            std::string name = sink_.reserve(base_, false);
            ExprPtr self = nonterminal(name);
            ExprPtr body = choice(run(e->lhs, self), then(not_pred(run(e->lhs, nullptr)), k));
            sink_.define(name, body);
            return self;
        }
        case ExprKind::Not:
            return then(not_pred(run(e->lhs, nullptr)), k);
        default:
            throw ConversionError("star linearization expects desugared input, got " + to_compact(e));
        }
    }

private:
    ExprPtr bind(const ExprPtr& k) {
        if (k->kind == ExprKind::NonTerminal || node_count(k) <= kBindThreshold) return k;
        std::string name = sink_.reserve(base_, false);
        sink_.define(name, k);
        return nonterminal(name);
    }

    RuleSink& sink_;
    std::string base_;
};

struct Fragment {
    BoolFn initial;
    StateSet accepting;
    StateSet lookahead;
    StateId begin = 0; // states created while building this fragment
    StateId end = 0;
};

StateSet set_union(const StateSet& a, const StateSet& b) {
    StateSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

class Builder {
public:
    Builder(const Grammar& g, const ConstructOptions& options) : g_(g), options_(options) {
        c_.bfa.alphabet = g.alphabet();
    }

    Construction finish(MatchMode mode) {
        Fragment top = build(g_.start());
        Bfa& b = c_.bfa;
        b.initial = top.initial;
        b.accepting = top.accepting;
        b.lookahead = top.lookahead;
        if (mode == MatchMode::Prefix)
            for (StateId t : top.accepting)
                for (char a : b.alphabet) b.set_transition(t, a, BoolFn::state(t));
        return std::move(c_);
    }

private:
    StateId fresh() {
        if (c_.bfa.state_count >= options_.max_states)
            throw ResourceError("BFA construction exceeded the state budget of " + std::to_string(options_.max_states));
        return c_.bfa.add_state();
    }

    Fragment leaf_on(const std::string& symbols, StateId begin) {
        StateId s = fresh();
        StateId t = fresh();
        for (char a : symbols)
            if (c_.bfa.alphabet.find(a) != std::string::npos) c_.bfa.set_transition(s, a, BoolFn::state(t));
        return Fragment{BoolFn::state(s), {t}, {}, begin, c_.bfa.state_count};
    }

    Fragment build(const ExprPtr& e) {
        const StateId begin = c_.bfa.state_count;
        switch (e->kind) {
        case ExprKind::Empty: {
            StateId s = fresh();
            return Fragment{BoolFn::state(s), {s}, {}, begin, c_.bfa.state_count};
        }
        case ExprKind::Char:
            return leaf_on(std::string(1, e->symbol), begin);
        case ExprKind::Any:
            return leaf_on(c_.bfa.alphabet, begin);
        case ExprKind::Class:
            return leaf_on(e->text, begin);
        case ExprKind::Not: {
            Fragment body = build(e->lhs);
            StateId s = fresh();
            StateSet looped = set_union(body.accepting, body.lookahead);
            for (StateId t : looped)
                for (char a : c_.bfa.alphabet) c_.bfa.set_transition(t, a, BoolFn::state(t));
            return Fragment{BoolFn::state(s) & ~body.initial, {s}, looped, begin, c_.bfa.state_count};
        }
        case ExprKind::Seq: {
            Fragment first = build(e->lhs);
            Fragment second = build(e->rhs);
            if (second.begin < first.end) throw ConversionError("fragments share states");
            auto& delta = c_.bfa.delta;
            auto it = delta.lower_bound({first.begin, std::numeric_limits<char>::min()});
            for (; it != delta.end() && it->first.first < first.end; ++it)
                it->second = phi(it->second, second.initial, first.accepting);
            return Fragment{phi(first.initial, second.initial, first.accepting), second.accepting,
                            set_union(first.lookahead, second.lookahead), begin, c_.bfa.state_count};
        }
        case ExprKind::Alt: {
            Fragment a = build(e->lhs);
            Fragment b = build(e->rhs);
            return Fragment{a.initial | b.initial, set_union(a.accepting, b.accepting),
                            set_union(a.lookahead, b.lookahead), begin, c_.bfa.state_count};
        }
        case ExprKind::NonTerminal: {
            auto known = c_.temp_of.find(e->text);
            if (known != c_.temp_of.end())
                return Fragment{BoolFn::temp(known->second), {}, {}, begin, begin};
            const ExprPtr* body = g_.find(e->text);
            if (body == nullptr || !*body) throw ConversionError("undefined nonterminal " + e->text);
            auto index = static_cast<std::uint32_t>(c_.temp_of.size());
            c_.temp_of.emplace(e->text, index);
            c_.bfa.temp_names.emplace(index, e->text);
            Fragment f = build(*body);
            c_.initial_of.emplace(e->text, f.initial);
            f.begin = begin;
            return f;
        }
        default:
            throw ConversionError("construct found a non-linear or unexpected node: " + to_compact(e));
        }
    }

    const Grammar& g_;
    ConstructOptions options_;
    Construction c_;
};

std::string describe(const LpegJudgement& j) {
    std::string out = "grammar is not an LPEG:";
    for (const auto& v : j.violations) out += "\n  " + v.rule + ": " + to_compact(v.expr) + " (" + v.reason + ")";
    return out;
}

class PiBuilder {
public:
    explicit PiBuilder(RuleSink& sink) : sink_(sink) {}

    ExprPtr run(const RegexPtr& r, const ExprPtr& k) {
        switch (r->kind) {
        case RegexKind::Epsilon:
            return k;
        case RegexKind::EmptySet:
            return then(not_pred(empty()), k);
        case RegexKind::Char:
            return then(terminal(r->symbol), k);
        case RegexKind::Concat:
            if (is_empty_language(r)) return then(not_pred(empty()), k);
            return run(r->lhs, run(r->rhs, k));
        case RegexKind::Alt: {
            if (is_empty_language(r->lhs)) return run(r->rhs, k);
            if (is_empty_language(r->rhs)) return run(r->lhs, k);
            ExprPtr c = bind(k, "C", kBindThreshold);
            ExprPtr first = bind(run(r->lhs, c), "D", 4 * kBindThreshold);
            return choice(first, run(r->rhs, c));
        }
        case RegexKind::Star: {
            RegexPtr body = nullable(r->lhs) ? without_epsilon(r->lhs) : r->lhs;
            if (is_empty_language(body)) return k;
            std::string name = sink_.reserve("A", true);
            ExprPtr self = nonterminal(name);
            sink_.define(name, choice(run(body, self), k));
            return self;
        }
        }
        return k;
    }

private:
    ExprPtr bind(const ExprPtr& e, const std::string& base, std::size_t threshold) {
        if (e->kind == ExprKind::NonTerminal || node_count(e) <= threshold) return e;
        std::string name = sink_.reserve(base, true);
        sink_.define(name, e);
        return nonterminal(name);
    }

    RuleSink& sink_;
};

} // namespace

ExprPtr rewrite_choices(const ExprPtr& e) {
    if (e->kind == ExprKind::Choice) {
        ExprPtr a = rewrite_choices(e->lhs);
        ExprPtr b = rewrite_choices(e->rhs);
        return alt(a, seq(not_pred(a), b));
    }
    return map_children(e, [](const ExprPtr& c) { return rewrite_choices(c); });
}

Grammar rewrite_choices(const Grammar& g) {
    Grammar out(g.alphabet(), {}, rewrite_choices(g.start()));
    for (const auto& rule : g.rules()) out.add_rule(rule.name, rewrite_choices(rule.body));
    return out;
}

ExprPtr copy_expr(const ExprPtr& e) {
    if (e->kind == ExprKind::NonTerminal) return is_primed(e->text) ? e : nonterminal(e->text + "'");
    return map_children(e, [](const ExprPtr& c) { return copy_expr(c); });
}

ExprPtr cn(const ExprPtr& e) {
    if (e->kind == ExprKind::Not) return not_pred(copy_expr(e->lhs));
    return map_children(e, [](const ExprPtr& c) { return cn(c); });
}

Grammar cg(const Grammar& g) {
    for (const auto& rule : g.rules())
        if (is_primed(rule.name)) throw GrammarError("nonterminal " + rule.name + " already carries a prime");
    Grammar out(g.alphabet(), {}, cn(g.start()));
    for (const auto& rule : g.rules()) out.add_rule(rule.name, cn(rule.body));
    for (const auto& rule : g.rules()) out.add_rule(rule.name + "'", copy_expr(rule.body));
    return out;
}

Grammar linearize_stars(const Grammar& g) {
    RuleSink sink(g);
    std::vector<Rule> rewritten;
    ExprPtr start = StarLinearizer(sink, "S").run(g.start(), nullptr);
    for (const auto& rule : g.rules())
        rewritten.push_back(Rule{rule.name, StarLinearizer(sink, rule.name).run(rule.body, nullptr)});
    Grammar out(g.alphabet(), {}, start);
    for (auto& rule : rewritten) out.add_rule(rule.name, rule.body);
    for (const auto& rule : sink.rules()) out.add_rule(rule.name, rule.body);
    return out;
}

Construction construct_bfa(const Grammar& g, MatchMode mode, const ConstructOptions& options) {
    return Builder(g, options).finish(mode);
}

Bfa substitute_temps(const Construction& c) {
    std::map<std::uint32_t, std::string> name_of;
    for (const auto& [name, index] : c.temp_of) name_of.emplace(index, name);

    std::map<std::uint32_t, BoolFn> resolved;
    std::set<std::uint32_t> active;
    std::function<const BoolFn&(std::uint32_t)> resolve = [&](std::uint32_t t) -> const BoolFn& {
        auto done = resolved.find(t);
        if (done != resolved.end()) return done->second;
        auto name = name_of.find(t);
        if (name == name_of.end()) throw ConversionError("temporary variable without a nonterminal");
        auto init = c.initial_of.find(name->second);
        if (init == c.initial_of.end())
            throw ConversionError("no initial function recorded for " + name->second);
        if (!active.insert(t).second)
            throw ConversionError("initial function of " + name->second + " depends on itself");
        BoolFn f = substitute(init->second, [&](Var v) -> std::optional<BoolFn> {
            if (!v.is_temp()) return std::nullopt;
            return resolve(v.index);
        });
        active.erase(t);
        return resolved.emplace(t, f).first->second;
    };
    auto replace = [&](const BoolFn& f) {
        return substitute(f, [&](Var v) -> std::optional<BoolFn> {
            if (!v.is_temp()) return std::nullopt;
            return resolve(v.index);
        });
    };

    Bfa out = c.bfa;
    out.initial = replace(out.initial);
    for (auto& [key, f] : out.delta) f = replace(f);
    if (!out.finalized()) throw ConversionError("temporary variables remain after substitution");
    return out;
}

Grammar prepare_for_construction(const Grammar& g) {
    LpegJudgement judgement = is_lpeg(g);
    if (!judgement.is_lpeg) throw GrammarError(describe(judgement));
    std::vector<Diagnostic> problems = check_wellformed(g);
    if (!problems.empty()) {
        std::string message = "grammar is not well-formed:";
        for (const auto& d : problems) message += "\n  " + d.rule + ": " + d.message;
        throw GrammarError(message);
    }
    Grammar plain = desugar(g, StarElimination::NonterminalBodies);
    return cg(rewrite_choices(linearize_stars(plain)));
}

Bfa lpeg_to_bfa(const Grammar& g, MatchMode mode, const PipelineOptions& options) {
    return substitute_temps(construct_bfa(prepare_for_construction(g), mode, options.construct));
}

Dfa lpeg_to_dfa(const Grammar& g, MatchMode mode, const PipelineOptions& options) {
    Dfa d = bfa_to_dfa(lpeg_to_bfa(g, mode, options), options.determinize);
    return options.minimize ? dfa_minimize(d) : d;
}

Grammar pi_regex(const RegexPtr& r, const Grammar& g) {
    RuleSink sink(g);
    ExprPtr start = PiBuilder(sink).run(r, g.start() ? g.start() : empty());
    Grammar out(normalize_alphabet(g.alphabet() + regex_alphabet(r)), {}, start);
    for (const auto& rule : g.rules()) out.add_rule(rule.name, rule.body);
    for (const auto& rule : sink.rules()) out.add_rule(rule.name, rule.body);
    return out;
}

Grammar regex_to_lpeg(const RegexPtr& r, std::string_view alphabet, bool anchored) {
    std::string sigma = normalize_alphabet(std::string(alphabet) + regex_alphabet(r));
    ExprPtr k = anchored && !sigma.empty() ? not_pred(any()) : empty();
    return pi_regex(r, Grammar(sigma, {}, k));
}

RegexPtr dfa_to_regex(const Dfa& input) {
    Dfa d = dfa_minimize(input);
    const std::size_t n = d.size();

    // states that can reach acceptance
    std::vector<bool> live(d.accepting.begin(), d.accepting.end());
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t q = 0; q < n; ++q) {
            if (live[q]) continue;
            for (std::uint32_t t : d.next[q])
                if (live[t]) {
                    live[q] = true;
                    changed = true;
                    break;
                }
        }
    }
    if (!live[d.start]) return re::empty_set();

    // generalized automaton: n states, plus source n and sink n + 1
    const std::size_t src = n, dst = n + 1;
    std::vector<std::vector<RegexPtr>> edge(n + 2, std::vector<RegexPtr>(n + 2, re::empty_set()));
    edge[src][d.start] = re::epsilon();
    for (std::size_t q = 0; q < n; ++q) {
        if (!live[q]) continue;
        if (d.accepting[q]) edge[q][dst] = re::epsilon();
        for (std::size_t i = 0; i < d.alphabet.size(); ++i) {
            std::uint32_t t = d.next[q][i];
            if (live[t]) edge[q][t] = re::alt_s(edge[q][t], re::ch(d.alphabet[i]));
        }
    }

    std::vector<bool> gone(n, false);
    for (std::size_t q = 0; q < n; ++q) gone[q] = !live[q];
    for (std::size_t round = 0; round < n; ++round) {
        // cheapest state first: fewest in x out edges, then lowest index
        std::size_t pick = n;
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (std::size_t k = 0; k < n; ++k) {
            if (gone[k]) continue;
            std::size_t in = 0, out = 0;
            for (std::size_t p = 0; p < n + 2; ++p) {
                if (p != k && (p >= n || !gone[p]) && edge[p][k]->kind != RegexKind::EmptySet) ++in;
                if (p != k && (p >= n || !gone[p]) && edge[k][p]->kind != RegexKind::EmptySet) ++out;
            }
            if (in * out < best) {
                best = in * out;
                pick = k;
            }
        }
        if (pick == n) break;
        const std::size_t k = pick;
        RegexPtr loop = re::star_s(edge[k][k]);
        for (std::size_t p = 0; p < n + 2; ++p) {
            if (p == k || (p < n && gone[p]) || edge[p][k]->kind == RegexKind::EmptySet) continue;
            for (std::size_t q = 0; q < n + 2; ++q) {
                if (q == k || (q < n && gone[q]) || edge[k][q]->kind == RegexKind::EmptySet) continue;
                edge[p][q] = re::alt_s(edge[p][q], re::concat_s(edge[p][k], re::concat_s(loop, edge[k][q])));
            }
        }
        gone[k] = true;
    }
    return edge[src][dst];
}

Grammar dfa_to_lpeg(const Dfa& d) {
    return regex_to_lpeg(dfa_to_regex(d), d.alphabet);
}

} // namespace lpeg

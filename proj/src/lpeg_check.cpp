#include <algorithm>
#include <functional>
#include <set>

#include "lpeg/grammar.hpp"

namespace lpeg {

namespace {

using Path = std::vector<std::size_t>;

Path extend(Path path, std::size_t index) {
    path.push_back(index);
    return path;
}

/// Walks an expression against the linear-expression syntax:
///   e ::= p | p A | p e | e / e | !e e      (p nonterminal-free)
/// A bare nonterminal reads as ε A and a trailing !e as !e ε.
class LinearityJudge {
public:
    LinearityJudge(std::string rule, std::vector<Violation>& out) : rule_(std::move(rule)), out_(out) {}

    void check(const ExprPtr& e, const Path& path) {
        if (!contains_nonterminal(e)) return;
        switch (e->kind) {
        case ExprKind::NonTerminal:
            return;
        case ExprKind::Choice:
        case ExprKind::Alt:
            check(e->lhs, extend(path, 0));
            check(e->rhs, extend(path, 1));
            return;
        case ExprKind::Opt:
        case ExprKind::Not:
        case ExprKind::And:
            check(e->lhs, extend(path, 0));
            return;
        case ExprKind::Star:
        case ExprKind::Plus:
            report(e, path, "repetition of an expression that contains a nonterminal");
            return;
        case ExprKind::Seq:
            check_sequence(e, path);
            return;
        default:
            return;
        }
    }

private:
    void check_sequence(const ExprPtr& e, const Path& path) {
        Path item_path = path;
        ExprPtr cur = e;
        while (cur->kind == ExprKind::Seq) {
            const ExprPtr& item = cur->lhs;
            Path here = extend(item_path, 0);
            if (contains_nonterminal(item)) {
                if (item->kind == ExprKind::Not || item->kind == ExprKind::And) {
                    check(item->lhs, extend(here, 0));
                } else {
                    report(e, path, "nonterminal is followed by further expressions");
                    return;
                }
            }
            item_path.push_back(1);
            cur = cur->rhs;
        }
        check(cur, item_path);
    }

    void report(const ExprPtr& e, const Path& path, std::string reason) {
        out_.push_back(Violation{rule_, path, e, std::move(reason)});
    }

    std::string rule_;
    std::vector<Violation>& out_;
};

using NullableMap = std::map<std::string, bool, std::less<>>;

void initial_calls(const ExprPtr& e, const NullableMap& rules, std::set<std::string>& out) {
    switch (e->kind) {
    case ExprKind::NonTerminal:
        out.insert(e->text);
        return;
    case ExprKind::Seq:
        initial_calls(e->lhs, rules, out);
        if (nullable(e->lhs, rules)) initial_calls(e->rhs, rules, out);
        return;
    case ExprKind::Choice:
    case ExprKind::Alt:
        initial_calls(e->lhs, rules, out);
        initial_calls(e->rhs, rules, out);
        return;
    case ExprKind::Star:
    case ExprKind::Opt:
    case ExprKind::Plus:
    case ExprKind::Not:
    case ExprKind::And:
        initial_calls(e->lhs, rules, out);
        return;
    default:
        return;
    }
}

} // namespace

bool nullable(const ExprPtr& e, const NullableMap& rules) {
    switch (e->kind) {
    case ExprKind::Empty:
    case ExprKind::Star:
    case ExprKind::Opt:
    case ExprKind::Not:
    case ExprKind::And:
        return true;
    case ExprKind::Char:
    case ExprKind::Any:
    case ExprKind::Class:
        return false;
    case ExprKind::Plus:
        return nullable(e->lhs, rules);
    case ExprKind::Seq:
        return nullable(e->lhs, rules) && nullable(e->rhs, rules);
    case ExprKind::Choice:
    case ExprKind::Alt:
        return nullable(e->lhs, rules) || nullable(e->rhs, rules);
    case ExprKind::NonTerminal: {
        auto it = rules.find(e->text);
        return it != rules.end() && it->second;
    }
    }
    return false;
}

NullableMap nullable_rules(const Grammar& g) {
    NullableMap out;
    for (const auto& rule : g.rules()) out[rule.name] = false;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& rule : g.rules()) {
            if (out[rule.name] || !rule.body) continue;
            if (nullable(rule.body, out)) {
                out[rule.name] = true;
                changed = true;
            }
        }
    }
    return out;
}

LpegJudgement is_lpeg(const Grammar& g) {
    LpegJudgement result;
    LinearityJudge("start", result.violations).check(g.start(), {});
    for (const auto& rule : g.rules()) LinearityJudge(rule.name, result.violations).check(rule.body, {});
    result.is_lpeg = result.violations.empty();
    return result;
}

std::vector<Diagnostic> check_wellformed(const Grammar& g) {
    std::vector<Diagnostic> out;
    const NullableMap null_rules = nullable_rules(g);

    auto check_repetitions = [&](const std::string& where, const ExprPtr& body) {
        std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& e) {
            if (!e) return;
            if ((e->kind == ExprKind::Star || e->kind == ExprKind::Plus) && nullable(e->lhs, null_rules))
                out.push_back({where, "repetition body can succeed without consuming input: " + to_compact(e)});
            walk(e->lhs);
            walk(e->rhs);
        };
        walk(body);
    };
    check_repetitions("start", g.start());
    for (const auto& rule : g.rules()) check_repetitions(rule.name, rule.body);

    // left recursion: a cycle in the "called at the same input position" graph
    std::map<std::string, std::set<std::string>> calls;
    for (const auto& rule : g.rules()) initial_calls(rule.body, null_rules, calls[rule.name]);

    enum class Mark { None, Active, Done };
    std::map<std::string, Mark> mark;
    std::vector<std::string> stack;
    std::set<std::string> reported;
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
        mark[name] = Mark::Active;
        stack.push_back(name);
        for (const auto& next : calls[name]) {
            if (mark[next] == Mark::Active) {
                std::string cycle;
                auto it = std::find(stack.begin(), stack.end(), next);
                for (; it != stack.end(); ++it) cycle += *it + " -> ";
                cycle += next;
                if (reported.insert(next).second)
                    out.push_back({next, "left recursion through a nullable prefix: " + cycle});
            } else if (mark[next] == Mark::None && g.defines(next)) {
                visit(next);
            }
        }
        stack.pop_back();
        mark[name] = Mark::Done;
    };
    for (const auto& rule : g.rules())
        if (mark[rule.name] == Mark::None) visit(rule.name);
    return out;
}

} // namespace lpeg

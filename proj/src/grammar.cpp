#include "lpeg/grammar.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lpeg/error.hpp"

namespace lpeg {

Grammar::Grammar(std::string alphabet, std::vector<Rule> rules, ExprPtr start)
    : alphabet_(normalize_alphabet(alphabet)), start_(std::move(start)) {
    for (auto& rule : rules) add_rule(std::move(rule.name), std::move(rule.body));
}

const ExprPtr* Grammar::find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return nullptr;
    return &rules_[it->second].body;
}

std::vector<std::string> Grammar::nonterminals() const {
    std::vector<std::string> out;
    out.reserve(rules_.size());
    for (const auto& rule : rules_) out.push_back(rule.name);
    return out;
}

void Grammar::add_rule(std::string name, ExprPtr body) {
    if (index_.count(name) != 0) throw GrammarError("duplicate rule for nonterminal " + name);
    index_.emplace(name, rules_.size());
    rules_.push_back(Rule{std::move(name), std::move(body)});
}

void Grammar::set_alphabet(std::string_view symbols) { alphabet_ = normalize_alphabet(symbols); }

std::string Grammar::fresh_name(std::string_view base) const {
    for (std::size_t n = 1;; ++n) {
        std::string candidate = std::string(base) + std::to_string(n);
        if (!defines(candidate)) return candidate;
    }
}

std::string normalize_alphabet(std::string_view symbols) {
    std::string out(symbols);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void validate_grammar(const Grammar& g) {
    if (!g.start()) throw GrammarError("grammar has no start expression");
    auto check = [&](const std::string& where, const ExprPtr& body) {
        std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& e) {
            if (!e) return;
            switch (e->kind) {
            case ExprKind::NonTerminal:
                if (!g.defines(e->text))
                    throw GrammarError("undefined nonterminal " + e->text + " referenced from " + where);
                break;
            case ExprKind::Char:
                if (g.alphabet().find(e->symbol) == std::string::npos)
                    throw GrammarError("terminal '" + std::string(1, e->symbol) + "' in " + where +
                                       " is not in the alphabet");
                break;
            case ExprKind::Class:
                for (char c : e->text)
                    if (g.alphabet().find(c) == std::string::npos)
                        throw GrammarError("class member '" + std::string(1, c) + "' in " + where +
                                           " is not in the alphabet");
                break;
            case ExprKind::Any:
                if (g.alphabet().empty()) throw GrammarError("'.' used in " + where + " but the alphabet is empty");
                break;
            default:
                break;
            }
            walk(e->lhs);
            walk(e->rhs);
        };
        walk(body);
    };
    check("start", g.start());
    for (const auto& rule : g.rules()) check(rule.name, rule.body);
}

bool structurally_equal(const Grammar& a, const Grammar& b) {
    if (a.alphabet() != b.alphabet() || a.rules().size() != b.rules().size()) return false;
    if (!structurally_equal(a.start(), b.start())) return false;
    for (std::size_t i = 0; i < a.rules().size(); ++i) {
        const auto& ra = a.rules()[i];
        const auto& rb = b.rules()[i];
        if (ra.name != rb.name || !structurally_equal(ra.body, rb.body)) return false;
    }
    return true;
}

namespace {

std::string quote_alphabet(std::string_view symbols) {
    std::string out = "'";
    for (char c : symbols) {
        switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\\': out += "\\\\"; break;
        case '\'': out += "\\'"; break;
        default: out += c;
        }
    }
    return out + "'";
}

class Desugarer {
public:
    Desugarer(Grammar& out, StarElimination stars) : out_(out), stars_(stars) {}

    ExprPtr run(const ExprPtr& e, const std::string& base) {
        switch (e->kind) {
        case ExprKind::Class: {
            std::vector<ExprPtr> items;
            for (char c : e->text) items.push_back(terminal(c));
            return choice_of(items);
        }
        case ExprKind::Opt:
            return choice(run(e->lhs, base), empty());
        case ExprKind::Plus:
            return seq(run(e->lhs, base), run(star(e->lhs), base));
        case ExprKind::And:
            return not_pred(not_pred(run(e->lhs, base)));
        case ExprKind::Star: {
            ExprPtr body = run(e->lhs, base);
            if (stars_ == StarElimination::All || contains_nonterminal(body)) {
                std::string name = out_.fresh_name(base);
                // reserve the name before the rule body exists
                out_.add_rule(name, nullptr);
                pending_.push_back(Rule{name, choice(seq(body, nonterminal(name)), empty())});
                return nonterminal(name);
            }
            return body == e->lhs ? e : star(body);
        }
        case ExprKind::Seq:
        case ExprKind::Choice:
        case ExprKind::Alt:
        case ExprKind::Not: {
            ExprPtr lhs = run(e->lhs, base);
            ExprPtr rhs = e->rhs ? run(e->rhs, base) : nullptr;
            if (lhs == e->lhs && rhs == e->rhs) return e;
            auto copy = std::make_shared<Expr>(*e);
            copy->lhs = std::move(lhs);
            copy->rhs = std::move(rhs);
            return copy;
        }
        default:
            return e;
        }
    }

    std::vector<Rule> take_pending() { return std::move(pending_); }

private:
    Grammar& out_;
    StarElimination stars_;
    std::vector<Rule> pending_;
};

} // namespace

std::string print_grammar(const Grammar& g) {
    std::string out = "%alphabet " + quote_alphabet(g.alphabet()) + "\n";
    const auto& rules = g.rules();
    const bool start_is_rule = g.start()->kind == ExprKind::NonTerminal;
    if (!start_is_rule) {
        out += g.fresh_name("Start") + " <- " + to_source(g.start()) + "\n";
    } else if (rules.empty() || rules.front().name != g.start()->text) {
        out += "%start " + g.start()->text + "\n";
    }
    for (const auto& rule : rules) out += rule.name + " <- " + to_source(rule.body) + "\n";
    return out;
}

Grammar desugar(const Grammar& g, StarElimination stars) {
    // Names are reserved in `scratch` so fresh rules never collide, then the
    // result is assembled in file order: original rules first.
    Grammar scratch(g.alphabet(), {}, nullptr);
    for (const auto& rule : g.rules()) scratch.add_rule(rule.name, nullptr);
    Desugarer pass(scratch, stars);

    std::vector<Rule> rules;
    for (const auto& rule : g.rules()) rules.push_back(Rule{rule.name, pass.run(rule.body, rule.name)});
    ExprPtr start = pass.run(g.start(), "S");
    for (auto& rule : pass.take_pending()) rules.push_back(std::move(rule));

    return Grammar(g.alphabet(), std::move(rules), std::move(start));
}

} // namespace lpeg

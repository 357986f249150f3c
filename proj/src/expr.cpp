#include "lpeg/expr.hpp"

#include <functional>
#include <set>

namespace lpeg {

namespace {

ExprPtr make(ExprKind kind, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

int precedence(ExprKind kind) {
    switch (kind) {
    case ExprKind::Choice:
    case ExprKind::Alt:
        return 1;
    case ExprKind::Seq:
        return 2;
    case ExprKind::Not:
    case ExprKind::And:
        return 3;
    case ExprKind::Star:
    case ExprKind::Opt:
    case ExprKind::Plus:
        return 4;
    default:
        return 5;
    }
}

std::string escape_char(char c, char quote) {
    switch (c) {
    case '\n': return "\\n";
    case '\t': return "\\t";
    case '\\': return "\\\\";
    default: break;
    }
    if (c == quote) return std::string("\\") + c;
    return std::string(1, c);
}

std::string escape_class(std::string_view members) {
    std::string out;
    for (char c : members) {
        if (c == '[' || c == ']') {
            out += '\\';
            out += c;
        } else {
            out += escape_char(c, 0);
        }
    }
    return out;
}

// Seq nodes nest to the right; the spine is the list of their left children
// followed by the final right child.
std::vector<ExprPtr> seq_spine(const ExprPtr& e) {
    std::vector<ExprPtr> items;
    const Expr* node = e.get();
    ExprPtr cur = e;
    while (node->kind == ExprKind::Seq) {
        items.push_back(node->lhs);
        cur = node->rhs;
        node = cur.get();
    }
    items.push_back(cur);
    return items;
}

struct Printer {
    bool compact;

    std::string wrap(const ExprPtr& e, int min_prec) const {
        std::string s = print(e);
        if (precedence(e->kind) < min_prec) return "(" + s + ")";
        return s;
    }

    std::string print(const ExprPtr& e) const {
        switch (e->kind) {
        case ExprKind::Empty:
            return compact ? "ε" : "''";
        case ExprKind::Char:
            return compact ? std::string(1, e->symbol) : "'" + escape_char(e->symbol, '\'') + "'";
        case ExprKind::Any:
            return ".";
        case ExprKind::NonTerminal:
            return e->text;
        case ExprKind::Class:
            return "[" + escape_class(e->text) + "]";
        case ExprKind::Choice:
            return wrap(e->lhs, 2) + " / " + wrap(e->rhs, 1);
        case ExprKind::Alt:
            return wrap(e->lhs, 2) + " | " + wrap(e->rhs, 1);
        case ExprKind::Seq:
            return print_seq(e);
        case ExprKind::Not:
            return "!" + wrap(e->lhs, 3);
        case ExprKind::And:
            return "&" + wrap(e->lhs, 3);
        case ExprKind::Star:
            return wrap(e->lhs, 4) + "*";
        case ExprKind::Opt:
            return wrap(e->lhs, 4) + "?";
        case ExprKind::Plus:
            return wrap(e->lhs, 4) + "+";
        }
        return {};
    }

    std::string print_seq(const ExprPtr& e) const {
        const auto items = seq_spine(e);
        std::string out;
        std::string run; // pending merged literal
        auto flush = [&] {
            if (run.empty()) return;
            if (!out.empty() && !compact) out += ' ';
            out += compact ? run : "'" + run + "'";
            run.clear();
        };
        for (const auto& item : items) {
            if (item->kind == ExprKind::Char) {
                run += compact ? std::string(1, item->symbol) : escape_char(item->symbol, '\'');
                continue;
            }
            flush();
            if (!out.empty() && !compact) out += ' ';
            // a left-nested sequence keeps its parentheses so the tree round-trips
            out += wrap(item, 3);
        }
        flush();
        return out;
    }
};

} // namespace

ExprPtr empty() { return make(ExprKind::Empty); }

ExprPtr terminal(char c) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Char;
    e->symbol = c;
    return e;
}

ExprPtr any() { return make(ExprKind::Any); }
ExprPtr seq(ExprPtr a, ExprPtr b) { return make(ExprKind::Seq, std::move(a), std::move(b)); }
ExprPtr choice(ExprPtr a, ExprPtr b) { return make(ExprKind::Choice, std::move(a), std::move(b)); }
ExprPtr star(ExprPtr body) { return make(ExprKind::Star, std::move(body)); }
ExprPtr not_pred(ExprPtr body) { return make(ExprKind::Not, std::move(body)); }

ExprPtr nonterminal(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::NonTerminal;
    e->text = std::move(name);
    return e;
}

ExprPtr char_class(std::string members) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Class;
    e->text = std::move(members);
    return e;
}

ExprPtr opt(ExprPtr body) { return make(ExprKind::Opt, std::move(body)); }
ExprPtr plus(ExprPtr body) { return make(ExprKind::Plus, std::move(body)); }
ExprPtr and_pred(ExprPtr body) { return make(ExprKind::And, std::move(body)); }
ExprPtr alt(ExprPtr a, ExprPtr b) { return make(ExprKind::Alt, std::move(a), std::move(b)); }

ExprPtr literal(std::string_view text) {
    std::vector<ExprPtr> items;
    for (char c : text) items.push_back(terminal(c));
    return seq_of(items);
}

ExprPtr seq_of(const std::vector<ExprPtr>& items) {
    if (items.empty()) return empty();
    ExprPtr out = items.back();
    for (auto it = items.rbegin() + 1; it != items.rend(); ++it) out = seq(*it, out);
    return out;
}

ExprPtr choice_of(const std::vector<ExprPtr>& items) {
    if (items.empty()) return empty();
    ExprPtr out = items.back();
    for (auto it = items.rbegin() + 1; it != items.rend(); ++it) out = choice(*it, out);
    return out;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->symbol != b->symbol || a->text != b->text) return false;
    return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

std::vector<ExprPtr> children(const ExprPtr& e) {
    std::vector<ExprPtr> out;
    if (e->lhs) out.push_back(e->lhs);
    if (e->rhs) out.push_back(e->rhs);
    return out;
}

ExprPtr at_path(const ExprPtr& root, const std::vector<std::size_t>& path) {
    ExprPtr cur = root;
    for (std::size_t index : path) {
        auto kids = children(cur);
        if (index >= kids.size()) return nullptr;
        cur = kids[index];
    }
    return cur;
}

bool contains_kind(const ExprPtr& e, ExprKind kind) {
    if (!e) return false;
    if (e->kind == kind) return true;
    return contains_kind(e->lhs, kind) || contains_kind(e->rhs, kind);
}

bool contains_nonterminal(const ExprPtr& e) { return contains_kind(e, ExprKind::NonTerminal); }

std::size_t node_count(const ExprPtr& e) {
    if (!e) return 0;
    return 1 + node_count(e->lhs) + node_count(e->rhs);
}

std::vector<std::string> referenced_nonterminals(const ExprPtr& e) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& x) {
        if (!x) return;
        if (x->kind == ExprKind::NonTerminal && seen.insert(x->text).second) out.push_back(x->text);
        walk(x->lhs);
        walk(x->rhs);
    };
    walk(e);
    return out;
}

std::string to_source(const ExprPtr& e) { return Printer{false}.print(e); }
std::string to_compact(const ExprPtr& e) { return Printer{true}.print(e); }

} // namespace lpeg

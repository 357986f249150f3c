#include "lpeg/regex.hpp"

#include <set>

#include "lpeg/error.hpp"

namespace lpeg {

namespace re {

namespace {

RegexPtr node(RegexKind kind, char c = '\0', RegexPtr a = nullptr, RegexPtr b = nullptr) {
    return std::make_shared<const Regex>(Regex{kind, c, std::move(a), std::move(b)});
}

} // namespace

RegexPtr epsilon() {
    static const RegexPtr e = node(RegexKind::Epsilon);
    return e;
}

RegexPtr empty_set() {
    static const RegexPtr e = node(RegexKind::EmptySet);
    return e;
}

RegexPtr ch(char c) { return node(RegexKind::Char, c); }
RegexPtr concat(RegexPtr a, RegexPtr b) { return node(RegexKind::Concat, '\0', std::move(a), std::move(b)); }
RegexPtr alt(RegexPtr a, RegexPtr b) { return node(RegexKind::Alt, '\0', std::move(a), std::move(b)); }
RegexPtr star(RegexPtr a) { return node(RegexKind::Star, '\0', std::move(a)); }

RegexPtr concat_s(RegexPtr a, RegexPtr b) {
    if (a->kind == RegexKind::EmptySet || b->kind == RegexKind::EmptySet) return empty_set();
    if (a->kind == RegexKind::Epsilon) return b;
    if (b->kind == RegexKind::Epsilon) return a;
    // keep concatenations right-nested
    if (a->kind == RegexKind::Concat) return concat_s(a->lhs, concat_s(a->rhs, b));
    return concat(std::move(a), std::move(b));
}

RegexPtr alt_s(RegexPtr a, RegexPtr b) {
    if (a->kind == RegexKind::EmptySet) return b;
    if (b->kind == RegexKind::EmptySet) return a;
    if (structurally_equal(a, b)) return a;
    if (a->kind == RegexKind::Epsilon && nullable(b)) return b;
    if (b->kind == RegexKind::Epsilon && nullable(a)) return a;
    return alt(std::move(a), std::move(b));
}

RegexPtr star_s(RegexPtr a) {
    if (a->kind == RegexKind::EmptySet || a->kind == RegexKind::Epsilon) return epsilon();
    if (a->kind == RegexKind::Star) return a;
    return star(std::move(a));
}

} // namespace re

bool structurally_equal(const RegexPtr& a, const RegexPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case RegexKind::Epsilon:
    case RegexKind::EmptySet:
        return true;
    case RegexKind::Char:
        return a->symbol == b->symbol;
    case RegexKind::Star:
        return structurally_equal(a->lhs, b->lhs);
    case RegexKind::Concat:
    case RegexKind::Alt:
        return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
    }
    return false;
}

bool nullable(const RegexPtr& r) {
    switch (r->kind) {
    case RegexKind::Epsilon:
    case RegexKind::Star:
        return true;
    case RegexKind::EmptySet:
    case RegexKind::Char:
        return false;
    case RegexKind::Concat:
        return nullable(r->lhs) && nullable(r->rhs);
    case RegexKind::Alt:
        return nullable(r->lhs) || nullable(r->rhs);
    }
    return false;
}

bool is_empty_language(const RegexPtr& r) {
    switch (r->kind) {
    case RegexKind::EmptySet:
        return true;
    case RegexKind::Concat:
        return is_empty_language(r->lhs) || is_empty_language(r->rhs);
    case RegexKind::Alt:
        return is_empty_language(r->lhs) && is_empty_language(r->rhs);
    default:
        return false;
    }
}

std::size_t node_count(const RegexPtr& r) {
    if (!r) return 0;
    return 1 + node_count(r->lhs) + node_count(r->rhs);
}

std::string regex_alphabet(const RegexPtr& r) {
    std::set<char> symbols;
    auto walk = [&](auto& self, const RegexPtr& n) -> void {
        if (!n) return;
        if (n->kind == RegexKind::Char) symbols.insert(n->symbol);
        self(self, n->lhs);
        self(self, n->rhs);
    };
    walk(walk, r);
    return std::string(symbols.begin(), symbols.end());
}

RegexPtr without_epsilon(const RegexPtr& r) {
    switch (r->kind) {
    case RegexKind::Epsilon:
    case RegexKind::EmptySet:
        return re::empty_set();
    case RegexKind::Char:
        return r;
    case RegexKind::Alt:
        return re::alt_s(without_epsilon(r->lhs), without_epsilon(r->rhs));
    case RegexKind::Star: {
        RegexPtr body = without_epsilon(r->lhs);
        return re::concat_s(body, re::star_s(body));
    }
    case RegexKind::Concat: {
        if (!nullable(r)) return r;
        // both sides nullable: (a\e) b | (b\e)
        return re::alt_s(re::concat_s(without_epsilon(r->lhs), r->rhs), without_epsilon(r->rhs));
    }
    }
    return r;
}

namespace {

bool special(char c) { return c == '|' || c == '(' || c == ')' || c == '*' || c == '\\' || c == '[' || c == ']'; }

class RegexParser {
public:
    explicit RegexParser(std::string_view text) : text_(text) {}

    RegexPtr parse() {
        RegexPtr r = alternation();
        if (pos_ < text_.size()) fail("unexpected ')'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, 1, pos_ + 1); }

    RegexPtr alternation() {
        RegexPtr r = concatenation();
        while (pos_ < text_.size() && text_[pos_] == '|') {
            ++pos_;
            r = re::alt(r, concatenation());
        }
        return r;
    }

    RegexPtr concatenation() {
        RegexPtr r;
        while (pos_ < text_.size() && text_[pos_] != '|' && text_[pos_] != ')') {
            RegexPtr item = repetition();
            r = r ? re::concat(r, item) : item;
        }
        return r ? r : re::epsilon();
    }

    RegexPtr repetition() {
        RegexPtr r = atom();
        while (pos_ < text_.size() && text_[pos_] == '*') {
            ++pos_;
            r = re::star(r);
        }
        return r;
    }

    RegexPtr atom() {
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RegexPtr inner = alternation();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == '[') {
            if (text_.substr(pos_, 2) != "[]") fail("'[' only appears in the empty-set token []");
            pos_ += 2;
            return re::empty_set();
        }
        if (c == '*') fail("'*' without an operand");
        if (c == ']') fail("unexpected ']'");
        if (c == '\\') {
            if (pos_ + 1 >= text_.size()) fail("dangling escape");
            char e = text_[pos_ + 1];
            if (!special(e)) fail(std::string("unknown escape \\") + e);
            pos_ += 2;
            return re::ch(e);
        }
        ++pos_;
        return re::ch(c);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

int precedence(RegexKind k) {
    switch (k) {
    case RegexKind::Alt: return 1;
    case RegexKind::Concat: return 2;
    case RegexKind::Star: return 3;
    default: return 4;
    }
}

void print(const RegexPtr& r, int outer, std::string& out) {
    bool paren = precedence(r->kind) < outer;
    if (paren) out += '(';
    switch (r->kind) {
    case RegexKind::Epsilon:
        out += "()";
        break;
    case RegexKind::EmptySet:
        out += "[]";
        break;
    case RegexKind::Char:
        if (special(r->symbol)) out += '\\';
        out += r->symbol;
        break;
    case RegexKind::Concat:
        print(r->lhs, 2, out);
        print(r->rhs, 2, out);
        break;
    case RegexKind::Alt:
        print(r->lhs, 1, out);
        out += '|';
        print(r->rhs, 1, out);
        break;
    case RegexKind::Star:
        print(r->lhs, 4, out);
        out += '*';
        break;
    }
    if (paren) out += ')';
}

} // namespace

RegexPtr parse_regex(std::string_view text) { return RegexParser(text).parse(); }

std::string to_string(const RegexPtr& r) {
    std::string out;
    print(r, 0, out);
    return out;
}

} // namespace lpeg

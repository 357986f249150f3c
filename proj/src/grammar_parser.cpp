#include <cctype>
#include <optional>
#include <set>

#include "lpeg/error.hpp"
#include "lpeg/grammar.hpp"

namespace lpeg {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Recursive-descent parser over a single line.
class LineParser {
public:
    LineParser(std::string_view line, std::size_t line_no, std::set<char>& literals)
        : text_(line), line_(line_no), literals_(literals) {}

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, pos_ + 1); }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                pos_ = text_.size();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    std::string identifier() {
        skip_space();
        if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail("expected a nonterminal name");
        std::size_t begin = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(begin, pos_ - begin));
    }

    char escaped() {
        // pos_ is just past the backslash
        if (pos_ >= text_.size()) fail("dangling escape");
        char c = text_[pos_++];
        switch (c) {
        case 'n': return '\n';
        case 't': return '\t';
        case '\\':
        case '\'':
        case '"':
        case '[':
        case ']':
            return c;
        default:
            --pos_;
            fail(std::string("unknown escape \\") + c);
        }
    }

    std::string quoted() {
        char quote = text_[pos_++];
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) fail("unterminated literal");
            char c = text_[pos_++];
            if (c == quote) break;
            if (c == '\\') c = escaped();
            out += c;
        }
        return out;
    }

    std::string directive_symbols() {
        skip_space();
        if (pos_ < text_.size() && (text_[pos_] == '\'' || text_[pos_] == '"')) return quoted();
        std::string out;
        while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '\t' && text_[pos_] != '#') {
            char c = text_[pos_++];
            if (c == '\\') c = escaped();
            out += c;
        }
        return out;
    }

    ExprPtr expression() {
        std::vector<ExprPtr> alternatives{sequence()};
        while (accept("/")) alternatives.push_back(sequence());
        return choice_of(alternatives);
    }

private:
    struct Item {
        ExprPtr expr;
        std::string splice; // non-empty for a bare multi-symbol literal
    };

    ExprPtr sequence() {
        std::vector<ExprPtr> items;
        while (true) {
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] == '/' || text_[pos_] == ')') break;
            Item item = prefixed();
            if (!item.splice.empty()) {
                for (char c : item.splice) items.push_back(terminal(c));
            } else {
                items.push_back(item.expr);
            }
        }
        if (items.empty()) fail("empty sequence (write '' for the empty string)");
        return seq_of(items);
    }

    Item prefixed() {
        skip_space();
        if (accept("!")) return Item{not_pred(prefixed().expr), {}};
        if (accept("&")) return Item{and_pred(prefixed().expr), {}};
        Item item = primary();
        while (true) {
            if (accept("*")) {
                item = Item{star(item.expr), {}};
            } else if (accept("?")) {
                item = Item{opt(item.expr), {}};
            } else if (accept("+")) {
                item = Item{plus(item.expr), {}};
            } else {
                return item;
            }
        }
    }

    Item primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("expected an expression");
        char c = text_[pos_];
        if (c == '\'' || c == '"') {
            std::string text = quoted();
            for (char s : text) literals_.insert(s);
            if (text.empty()) return Item{empty(), {}};
            return Item{literal(text), text.size() > 1 ? text : std::string{}};
        }
        if (c == '[') {
            ++pos_;
            std::string members;
            while (true) {
                if (pos_ >= text_.size()) fail("unterminated character class");
                char m = text_[pos_++];
                if (m == ']') break;
                if (m == '\\') m = escaped();
                if (members.find(m) == std::string::npos) members += m;
                literals_.insert(m);
            }
            if (members.empty()) fail("empty character class");
            return Item{char_class(members), {}};
        }
        if (c == '.') {
            ++pos_;
            return Item{any(), {}};
        }
        if (c == '(') {
            ++pos_;
            ExprPtr inner = expression();
            if (!accept(")")) fail("expected ')'");
            return Item{inner, {}};
        }
        if (is_ident_start(c)) {
            std::size_t begin = pos_;
            std::string name = identifier();
            if (accept("<-")) {
                pos_ = begin;
                fail("rule definitions must start a new line");
            }
            return Item{nonterminal(name), {}};
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
    std::set<char>& literals_;
};

} // namespace

Grammar parse_grammar(std::string_view text) {
    std::set<char> literals;
    std::optional<std::string> alphabet;
    std::optional<std::pair<std::string, std::size_t>> start_name;
    std::vector<std::pair<Rule, std::size_t>> rules;

    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(begin, end - begin);
        ++line_no;
        begin = end + 1;

        LineParser p(line, line_no, literals);
        if (p.at_end()) continue;
        if (p.accept("%")) {
            std::string directive = p.identifier();
            if (directive == "alphabet") {
                if (alphabet) p.fail("duplicate %alphabet directive");
                alphabet = p.directive_symbols();
                if (alphabet->empty()) p.fail("%alphabet needs at least one symbol");
            } else if (directive == "start") {
                if (start_name) p.fail("duplicate %start directive");
                start_name = std::make_pair(p.identifier(), line_no);
            } else {
                p.fail("unknown directive %" + directive);
            }
            if (!p.at_end()) p.fail("trailing text after directive");
            continue;
        }
        std::string name = p.identifier();
        if (!p.accept("<-")) p.fail("expected '<-'");
        ExprPtr body = p.expression();
        if (!p.at_end()) p.fail("unexpected ')'");
        for (const auto& [rule, at] : rules)
            if (rule.name == name) throw ParseError("duplicate rule for nonterminal " + name, line_no, 1);
        rules.emplace_back(Rule{std::move(name), std::move(body)}, line_no);
    }
    if (rules.empty()) throw ParseError("grammar has no rules");

    std::string sigma;
    if (alphabet) {
        sigma = *alphabet;
    } else {
        sigma.assign(literals.begin(), literals.end());
    }
    Grammar g(sigma, {}, nullptr);
    for (auto& [rule, at] : rules) g.add_rule(rule.name, rule.body);

    if (start_name) {
        if (!g.defines(start_name->first))
            throw ParseError("%start names undefined nonterminal " + start_name->first, start_name->second, 1);
        g.set_start(nonterminal(start_name->first));
    } else {
        g.set_start(nonterminal(rules.front().first.name));
    }

    for (const auto& [rule, at] : rules) {
        for (const auto& ref : referenced_nonterminals(rule.body))
            if (!g.defines(ref)) throw ParseError("undefined nonterminal " + ref, at, 1);
        if (contains_kind(rule.body, ExprKind::Any) && g.alphabet().empty())
            throw ParseError("'.' used but the alphabet is empty", at, 1);
    }
    try {
        validate_grammar(g);
    } catch (const GrammarError& e) {
        throw ParseError(e.what());
    }
    return g;
}

} // namespace lpeg

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lpeg {

enum class ExprKind {
    Empty,
    Char,
    Any,
    Seq,
    Choice, // prioritized
    Star,
    Not,
    NonTerminal,
    // sugar, removed by desugar()
    Class,
    Opt,
    Plus,
    And,
    // unordered alternation; only produced inside the conversion pipeline
    Alt,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable parsing-expression node. Binary nodes use both children, unary
/// nodes only `lhs`. `text` holds the nonterminal name or the class members.
struct Expr {
    ExprKind kind = ExprKind::Empty;
    char symbol = 0;
    std::string text;
    ExprPtr lhs;
    ExprPtr rhs;
};

ExprPtr empty();
ExprPtr terminal(char c);
ExprPtr any();
ExprPtr seq(ExprPtr a, ExprPtr b);
ExprPtr choice(ExprPtr a, ExprPtr b);
ExprPtr star(ExprPtr body);
ExprPtr not_pred(ExprPtr body);
ExprPtr nonterminal(std::string name);
ExprPtr char_class(std::string members);
ExprPtr opt(ExprPtr body);
ExprPtr plus(ExprPtr body);
ExprPtr and_pred(ExprPtr body);
ExprPtr alt(ExprPtr a, ExprPtr b);

/// 'xyz' as a right-nested sequence; the empty string yields Empty.
ExprPtr literal(std::string_view text);
/// Right-nested sequence / choice over the items; an empty list yields Empty.
ExprPtr seq_of(const std::vector<ExprPtr>& items);
ExprPtr choice_of(const std::vector<ExprPtr>& items);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

/// Children in path order (index 0 = lhs, 1 = rhs).
std::vector<ExprPtr> children(const ExprPtr& e);
/// Follows a child-index path from `root`; returns null if the path leaves the tree.
ExprPtr at_path(const ExprPtr& root, const std::vector<std::size_t>& path);

bool contains_nonterminal(const ExprPtr& e);
bool contains_kind(const ExprPtr& e, ExprKind kind);
std::size_t node_count(const ExprPtr& e);
/// Nonterminal names referenced anywhere in `e`, in first-occurrence order.
std::vector<std::string> referenced_nonterminals(const ExprPtr& e);

/// Grammar-file syntax; parse_grammar() reads it back to a structurally
/// equal tree. Alt prints as `|` and is not part of the file syntax.
std::string to_source(const ExprPtr& e);
/// Dense notation used in reports: `aAa`, `B*`, `!(aA') b`.
std::string to_compact(const ExprPtr& e);

} // namespace lpeg

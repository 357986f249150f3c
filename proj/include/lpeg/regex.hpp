#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace lpeg {

enum class RegexKind { Epsilon, EmptySet, Char, Concat, Alt, Star };

struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

struct Regex {
    RegexKind kind = RegexKind::Epsilon;
    char symbol = '\0';
    RegexPtr lhs;
    RegexPtr rhs;
};

namespace re {

// Plain constructors: build exactly the node asked for.
RegexPtr epsilon();
RegexPtr empty_set();
RegexPtr ch(char c);
RegexPtr concat(RegexPtr a, RegexPtr b);
RegexPtr alt(RegexPtr a, RegexPtr b);
RegexPtr star(RegexPtr a);

// Simplifying constructors: drop EmptySet and Epsilon units, collapse
// duplicate alternatives and nested stars.
RegexPtr concat_s(RegexPtr a, RegexPtr b);
RegexPtr alt_s(RegexPtr a, RegexPtr b);
RegexPtr star_s(RegexPtr a);

} // namespace re

bool structurally_equal(const RegexPtr& a, const RegexPtr& b);
bool nullable(const RegexPtr& r);
bool is_empty_language(const RegexPtr& r);
std::size_t node_count(const RegexPtr& r);
/// Sorted distinct symbols.
std::string regex_alphabet(const RegexPtr& r);

/// A regex for L(r) minus the empty string.
RegexPtr without_epsilon(const RegexPtr& r);

/// Syntax: juxtaposition, `|`, `*`, parentheses; `\` escapes any of
/// `| ( ) * \`. An empty operand is epsilon, so `a|` and `()` are valid.
/// Throws ParseError.
RegexPtr parse_regex(std::string_view text);
/// Inverse of parse_regex; EmptySet prints as `[]`, which parse_regex also
/// reads.
std::string to_string(const RegexPtr& r);

} // namespace lpeg

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lpeg/expr.hpp"

namespace lpeg {

struct Rule {
    std::string name;
    ExprPtr body;
};

/// The 4-tuple (N, Sigma, P, e_s). N is the set of rule names; the alphabet
/// is kept as a sorted string of distinct bytes.
class Grammar {
public:
    Grammar() = default;
    Grammar(std::string alphabet, std::vector<Rule> rules, ExprPtr start);

    const std::string& alphabet() const noexcept { return alphabet_; }
    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const ExprPtr& start() const noexcept { return start_; }

    /// Rule body for `name`, or null when the nonterminal is undefined.
    const ExprPtr* find(std::string_view name) const;
    bool defines(std::string_view name) const { return find(name) != nullptr; }
    std::vector<std::string> nonterminals() const;

    /// Throws GrammarError on a duplicate name.
    void add_rule(std::string name, ExprPtr body);
    void set_start(ExprPtr start) { start_ = std::move(start); }
    void set_alphabet(std::string_view symbols);

    /// `base` followed by the smallest numeric suffix not already a rule name.
    std::string fresh_name(std::string_view base) const;

private:
    std::string alphabet_;
    std::vector<Rule> rules_;
    std::map<std::string, std::size_t, std::less<>> index_;
    ExprPtr start_;
};

/// Sorted, duplicate-free copy of `symbols`.
std::string normalize_alphabet(std::string_view symbols);

/// Throws GrammarError unless every referenced nonterminal has a rule, every
/// terminal is in the alphabet, and the alphabet is non-empty when Any is used.
void validate_grammar(const Grammar& g);

bool structurally_equal(const Grammar& a, const Grammar& b);

/// Parses the grammar file format:
///   Name <- expression        one rule per line, `#` comments
///   %alphabet abc             explicit Sigma (otherwise: literal symbols)
///   %start Name               start nonterminal (otherwise: first rule)
/// Throws ParseError (with line/column) or GrammarError.
Grammar parse_grammar(std::string_view text);

/// Renders `g` in the file format. A start expression that is not a single
/// nonterminal is emitted as a fresh leading rule.
std::string print_grammar(const Grammar& g);

enum class StarElimination {
    NonterminalBodies, // only stars whose body references a nonterminal
    All,
};

/// Removes Class/Opt/Plus/And and replaces stars with fresh recursive rules
/// `A <- e A / ''` according to `stars`. Any is kept.
Grammar desugar(const Grammar& g, StarElimination stars = StarElimination::NonterminalBodies);

struct Violation {
    std::string rule; // rule name, or "start"
    std::vector<std::size_t> path;
    ExprPtr expr;
    std::string reason;
};

struct LpegJudgement {
    bool is_lpeg = true;
    std::vector<Violation> violations;
};

/// Syntactic LPEG check over the start expression and every rule body.
LpegJudgement is_lpeg(const Grammar& g);

struct Diagnostic {
    std::string rule; // rule name, or "start"
    std::string message;
};

/// Rejects left recursion through a nullable prefix and repetitions whose body
/// can succeed without consuming. Empty result means well-formed.
std::vector<Diagnostic> check_wellformed(const Grammar& g);

/// Conservative "may succeed without consuming input" for every rule.
std::map<std::string, bool, std::less<>> nullable_rules(const Grammar& g);
bool nullable(const ExprPtr& e, const std::map<std::string, bool, std::less<>>& rules);

} // namespace lpeg

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "lpeg/bfa.hpp"
#include "lpeg/dfa.hpp"
#include "lpeg/grammar.hpp"
#include "lpeg/interp.hpp"
#include "lpeg/regex.hpp"

namespace lpeg {

/// e1 / e2  ->  e1 | !e1 e2, bottom-up.
ExprPtr rewrite_choices(const ExprPtr& e);
Grammar rewrite_choices(const Grammar& g);

/// Appends a prime to every nonterminal name that does not already end in one.
ExprPtr copy_expr(const ExprPtr& e);
/// Replaces the body of every not-predicate by its copy.
ExprPtr cn(const ExprPtr& e);
/// Rules A <- cn(e_A), then A' <- copy(e_A) for every rule, start cn(e_s).
/// Throws GrammarError if a primed name already exists.
Grammar cg(const Grammar& g);

/// Removes every repetition while keeping the grammar linear. e* followed by
/// k becomes a fresh rule R <- e R / !e k, so the repetition stays greedy and
/// the only nonterminal sits in tail position. A large k shared by several
/// alternatives is bound to a fresh rule first. Expects desugared LPEG input.
Grammar linearize_stars(const Grammar& g);

struct Construction {
    Bfa bfa; // may mention temps
    std::map<std::string, std::uint32_t> temp_of;
    std::map<std::string, BoolFn> initial_of;
};

struct ConstructOptions {
    std::size_t max_states = 1000000;
};

/// The T translation of a prepared grammar (choices rewritten, cg applied,
/// no repetitions or sugar). Prefix mode additionally loops every accepting
/// state on all symbols, so a match may be followed by anything.
Construction construct_bfa(const Grammar& g, MatchMode mode, const ConstructOptions& options = {});

/// Replaces f_tmp_A by A's initial function until no temps remain.
/// Throws ConversionError on a cyclic or unresolved temp.
Bfa substitute_temps(const Construction& c);

struct PipelineOptions {
    ConstructOptions construct;
    DeterminizeOptions determinize;
    bool minimize = true;
};

/// Judgement, well-formedness, desugaring, star linearization, choice
/// rewriting and cg. Throws GrammarError listing the problems.
Grammar prepare_for_construction(const Grammar& g);

Bfa lpeg_to_bfa(const Grammar& g, MatchMode mode, const PipelineOptions& options = {});
Dfa lpeg_to_dfa(const Grammar& g, MatchMode mode, const PipelineOptions& options = {});

/// The continuation-grammar translation of a regex; `g` supplies the
/// continuation as its start expression.
Grammar pi_regex(const RegexPtr& r, const Grammar& g);

/// pi_regex against an end-of-input continuation `!.` (or against the empty
/// continuation when `anchored` is false). The alphabet is `alphabet` plus the
/// regex symbols.
Grammar regex_to_lpeg(const RegexPtr& r, std::string_view alphabet = "", bool anchored = true);

/// State elimination.
RegexPtr dfa_to_regex(const Dfa& d);
Grammar dfa_to_lpeg(const Dfa& d);

} // namespace lpeg

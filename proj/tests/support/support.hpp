#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lpeg/bfa.hpp"
#include "lpeg/boolfn.hpp"
#include "lpeg/dfa.hpp"
#include "lpeg/grammar.hpp"
#include "lpeg/regex.hpp"

namespace lpeg::testing {

using Rng = std::mt19937_64;

/// Brzozowski derivative matcher, kept apart from the library code paths.
bool regex_matches(const RegexPtr& r, std::string_view w);

/// Every string over `alphabet` with length <= max_len.
std::vector<std::string> all_strings(std::string_view alphabet, std::size_t max_len);

struct LpegShape {
    std::string alphabet = "ab";
    std::size_t max_rules = 3;
    std::size_t max_depth = 4;
};

/// A random grammar that passes is_lpeg by construction. Not necessarily
/// well-formed; callers filter with check_wellformed.
Grammar random_lpeg(Rng& rng, const LpegShape& shape = {});
/// Random well-formed LPEG (retries until check_wellformed is clean).
Grammar random_wellformed_lpeg(Rng& rng, const LpegShape& shape = {});
/// Random linear expression over the rule names of `g` (no nonterminal when
/// `g` has no rules).
ExprPtr random_linear(Rng& rng, const Grammar& g, std::size_t depth);

RegexPtr random_regex(Rng& rng, std::string_view alphabet, std::size_t depth);
/// Total DFA with 1..max_states states.
Dfa random_dfa(Rng& rng, std::string_view alphabet, std::size_t max_states);
BoolFn random_boolfn(Rng& rng, std::uint32_t variables, std::size_t depth);
/// A semantically equal formula with a different shape (De Morgan, double
/// negation, absorption, commutation).
BoolFn equivalent_rewrite(Rng& rng, const BoolFn& f);
/// Random temp-free BFA.
Bfa random_bfa(Rng& rng, std::string_view alphabet, std::uint32_t states);

} // namespace lpeg::testing

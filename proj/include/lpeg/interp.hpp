#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "lpeg/grammar.hpp"

namespace lpeg {

/// Outcome of running an expression on an input: the number of terminals
/// consumed, or failure.
struct MatchResult {
    bool success = false;
    std::size_t length = 0;

    static MatchResult consumed(std::size_t n) { return {true, n}; }
    static MatchResult fail() { return {false, 0}; }

    friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

std::string to_string(const MatchResult& r);

struct InterpOptions {
    /// Nonterminal nesting limit; unset means 10 * |input| + 100.
    std::optional<std::size_t> max_depth;
    /// Packrat memoization of nonterminal results. Never changes the result.
    bool memoize = false;
};

/// PEG consume semantics of `e` (over the rules of `g`) on `input`, matched
/// from its first symbol. Sugar nodes are interpreted directly; Alt is
/// rejected. Throws ResourceError when the depth limit is hit.
MatchResult consume(const Grammar& g, const ExprPtr& e, std::string_view input, const InterpOptions& options = {});

enum class MatchMode {
    Prefix, // the start expression succeeds, consuming any amount
    Exact,  // the start expression consumes the whole input
};

bool lang_member(const Grammar& g, std::string_view input, MatchMode mode);

/// Calls `visit` on every string over `alphabet` of length <= max_len, shortest
/// first, then in alphabet order. Stops early when `visit` returns false.
void for_each_string(std::string_view alphabet, std::size_t max_len,
                     const std::function<bool(const std::string&)>& visit);

/// First input (in for_each_string order) on which the two start expressions
/// give different MatchResults, or nullopt when they agree on all of them.
std::optional<std::string> expr_equiv_bounded(const Grammar& g1, const Grammar& g2, std::size_t max_len);

} // namespace lpeg

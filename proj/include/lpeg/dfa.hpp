#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lpeg {

/// Total deterministic automaton. States are 0..size()-1; next[q][i] is the
/// successor of q on alphabet[i].
struct Dfa {
    std::string alphabet; // sorted, distinct
    std::vector<std::vector<std::uint32_t>> next;
    std::vector<bool> accepting;
    std::uint32_t start = 0;
    std::vector<std::string> names; // empty: s0, s1, ...

    std::size_t size() const { return next.size(); }
    /// Index of c in the alphabet, or -1.
    int symbol_index(char c) const;
    std::string name(std::uint32_t q) const;
    std::uint32_t add_state(bool accept);
};

/// Throws Error unless transitions are total, in range, and start exists.
void validate_dfa(const Dfa& d);

/// Symbols outside the alphabet reject.
bool dfa_match(const Dfa& d, std::string_view w);

/// Drops unreachable states, merges equivalent ones (Hopcroft), and numbers
/// the result breadth-first from the start state in alphabet order, so equal
/// languages give identical automata.
Dfa dfa_minimize(const Dfa& d);

struct EquivResult {
    bool equal = true;
    std::optional<std::string> counterexample; // shortest, then least in alphabet order
};

/// Product breadth-first search. Throws Error on alphabet mismatch.
EquivResult dfa_equiv(const Dfa& a, const Dfa& b);

/// Sorted keys, total transitions.
std::string dfa_to_json(const Dfa& d);
/// Missing transitions go to a single added sink. Throws ParseError.
Dfa dfa_from_json(std::string_view text);
std::string dfa_to_dot(const Dfa& d);

} // namespace lpeg

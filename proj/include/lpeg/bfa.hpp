#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "lpeg/boolfn.hpp"
#include "lpeg/dfa.hpp"

namespace lpeg {

/// Boolean finite automaton (Q, Sigma, delta, f0, F, P). States are
/// 0..state_count-1 and appear in functions as Var::state(i). Absent
/// transitions are the constant false.
struct Bfa {
    std::uint32_t state_count = 0;
    std::string alphabet;
    std::map<std::pair<StateId, char>, BoolFn> delta;
    BoolFn initial;
    StateSet accepting;
    StateSet lookahead;
    std::map<std::uint32_t, std::string> temp_names; // f_tmp index -> nonterminal

    StateId add_state() { return state_count++; }
    const BoolFn& transition(StateId q, char a) const;
    void set_transition(StateId q, char a, BoolFn f);
    /// True when no function mentions a temp variable.
    bool finalized() const;
    VarNamer namer() const;
};

struct DeterminizeOptions {
    std::size_t max_states = 1000000;
};

/// Substitutes delta(q, a) for every q. Throws ConversionError if f has temps.
BoolFn bfa_step(const Bfa& b, const BoolFn& f, char a);
BoolFn bfa_run(const Bfa& b, const BoolFn& f, std::string_view w);

/// delta(f0, w) under q -> [q in F u P]. Symbols outside Sigma reject.
bool bfa_accepts(const Bfa& b, std::string_view w);

/// Every |x| with some split w = xyz where
/// eval_P(delta(eval_F(delta(f0, x), F), y), P) holds.
std::set<std::size_t> bfa_consume(const Bfa& b, std::string_view w);
/// As bfa_consume with z empty: y is the whole rest of w. Negative lookahead
/// sees all remaining input, which matches parsing-expression semantics.
std::set<std::size_t> bfa_consume_anchored(const Bfa& b, std::string_view w);

/// Subset-style construction over canonical functions. Throws ResourceError
/// past options.max_states.
Dfa bfa_to_dfa(const Bfa& b, const DeterminizeOptions& options = {});

std::string bfa_to_dot(const Bfa& b);

} // namespace lpeg

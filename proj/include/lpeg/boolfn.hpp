#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpeg/bdd.hpp"

namespace lpeg {

using StateId = std::uint32_t;
using StateSet = std::set<StateId>;

/// A boolean variable: either the variable of automaton state q_i, or the
/// temporary variable f_tmp of a nonterminal (numbered by the builder).
struct Var {
    enum class Kind : std::uint8_t { State, Temp };

    Kind kind = Kind::State;
    std::uint32_t index = 0;

    static constexpr Var state(std::uint32_t i) { return Var{Kind::State, i}; }
    static constexpr Var temp(std::uint32_t i) { return Var{Kind::Temp, i}; }
    bool is_temp() const { return kind == Kind::Temp; }

    friend auto operator<=>(const Var&, const Var&) = default;
};

/// Immutable boolean formula over Vars with true/false, not, and, or.
/// Constructors fold constants (x & true = x, !!x = x, ...) but do not
/// otherwise normalize; use canonical() for semantic comparison.
class BoolFn {
public:
    enum class Op : std::uint8_t { False, True, Var, Not, And, Or };

    BoolFn();
    static BoolFn constant(bool value);
    static BoolFn variable(Var v);
    static BoolFn state(StateId q) { return variable(Var::state(q)); }
    static BoolFn temp(std::uint32_t t) { return variable(Var::temp(t)); }

    Op op() const { return node_->op; }
    bool is_false() const { return op() == Op::False; }
    bool is_true() const { return op() == Op::True; }
    Var var() const { return node_->var; }
    const BoolFn& lhs() const { return *node_->lhs; }
    const BoolFn& rhs() const { return *node_->rhs; }
    const void* identity() const { return node_.get(); }

    friend BoolFn operator&(const BoolFn& a, const BoolFn& b);
    friend BoolFn operator|(const BoolFn& a, const BoolFn& b);
    friend BoolFn operator~(const BoolFn& a);

    /// Structural equality.
    friend bool operator==(const BoolFn& a, const BoolFn& b);

private:
    struct Node {
        Op op = Op::False;
        Var var;
        std::shared_ptr<const BoolFn> lhs;
        std::shared_ptr<const BoolFn> rhs;
    };
    explicit BoolFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static BoolFn make(Op op, const BoolFn& a, const BoolFn& b);

    std::shared_ptr<const Node> node_;
};

using Substitution = std::function<std::optional<BoolFn>(Var)>;

/// Simultaneous substitution: each variable v with map(v) set is replaced by
/// that function; the replacements themselves are not substituted again.
BoolFn substitute(const BoolFn& f, const Substitution& map);
BoolFn substitute(const BoolFn& f, const std::map<Var, BoolFn>& map);

bool evaluate(const BoolFn& f, const std::function<bool(Var)>& assignment);
/// Throws std::out_of_range for a variable missing from `assignment`.
bool evaluate(const BoolFn& f, const std::map<Var, bool>& assignment);

std::set<Var> variables(const BoolFn& f);
bool has_temps(const BoolFn& f);
std::size_t size(const BoolFn& f);

/// Every state variable in `accepting` replaced by true, then simplified.
BoolFn eval_f(const BoolFn& f, const StateSet& accepting);
/// State variables in `lookahead` set to true, every other variable false.
bool eval_p(const BoolFn& f, const StateSet& lookahead);
/// Every state variable s in `accepting` replaced by (s | f2).
BoolFn phi(const BoolFn& f1, const BoolFn& f2, const StateSet& accepting);

using VarNamer = std::function<std::string(Var)>;
/// q<i> for states, f_tmp_<i> for temps.
std::string default_var_name(Var v);
/// ASCII infix with minimal parentheses: `q0 | (q11 | q12) & !q2`.
std::string to_string(const BoolFn& f, const VarNamer& name = default_var_name);

/// Reduced ordered decision diagram of f under the global Var order,
/// flattened. Two formulas have equal canonical forms iff they agree on every
/// assignment.
struct CanonicalForm {
    struct Node {
        Var var;
        std::uint32_t low;
        std::uint32_t high;
        friend bool operator==(const Node&, const Node&) = default;
    };
    std::vector<Node> nodes; // indices 0 and 1 are the constants
    std::uint32_t root = 0;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical(const BoolFn& f);
std::string to_string(const CanonicalForm& c, const VarNamer& name = default_var_name);
bool equivalent(const BoolFn& a, const BoolFn& b);

/// Builds f in `mgr`; `level` gives the BDD level of each variable.
BddManager::Ref to_bdd(BddManager& mgr, const BoolFn& f, const std::function<std::uint32_t(Var)>& level);

} // namespace lpeg

#include "lpeg/boolfn.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace lpeg {

namespace {

template <class F>
BoolFn rebuild(const BoolFn& f, std::unordered_map<const void*, BoolFn>& memo, const F& leaf) {
    switch (f.op()) {
    case BoolFn::Op::False:
    case BoolFn::Op::True:
        return f;
    case BoolFn::Op::Var:
        return leaf(f);
    default:
        break;
    }
    auto it = memo.find(f.identity());
    if (it != memo.end()) return it->second;
    BoolFn out;
    if (f.op() == BoolFn::Op::Not) {
        BoolFn a = rebuild(f.lhs(), memo, leaf);
        out = a.identity() == f.lhs().identity() ? f : ~a;
    } else {
        BoolFn a = rebuild(f.lhs(), memo, leaf);
        BoolFn b = rebuild(f.rhs(), memo, leaf);
        if (a.identity() == f.lhs().identity() && b.identity() == f.rhs().identity())
            out = f;
        else
            out = f.op() == BoolFn::Op::And ? (a & b) : (a | b);
    }
    memo.emplace(f.identity(), out);
    return out;
}

template <class Visit>
void walk_vars(const BoolFn& f, std::unordered_map<const void*, bool>& seen, const Visit& visit) {
    switch (f.op()) {
    case BoolFn::Op::False:
    case BoolFn::Op::True:
        return;
    case BoolFn::Op::Var:
        visit(f.var());
        return;
    default:
        break;
    }
    if (!seen.emplace(f.identity(), true).second) return;
    walk_vars(f.lhs(), seen, visit);
    if (f.op() != BoolFn::Op::Not) walk_vars(f.rhs(), seen, visit);
}

const BoolFn& false_fn() {
    static const BoolFn f = BoolFn::constant(false);
    return f;
}

} // namespace

BoolFn::BoolFn() : BoolFn(false_fn()) {}

BoolFn BoolFn::constant(bool value) {
    static const BoolFn t(std::make_shared<const Node>(Node{Op::True, {}, nullptr, nullptr}));
    static const BoolFn f(std::make_shared<const Node>(Node{Op::False, {}, nullptr, nullptr}));
    return value ? t : f;
}

BoolFn BoolFn::variable(Var v) {
    return BoolFn(std::make_shared<const Node>(Node{Op::Var, v, nullptr, nullptr}));
}

BoolFn BoolFn::make(Op op, const BoolFn& a, const BoolFn& b) {
    return BoolFn(std::make_shared<const Node>(
        Node{op, {}, std::make_shared<const BoolFn>(a), op == Op::Not ? nullptr : std::make_shared<const BoolFn>(b)}));
}

BoolFn operator&(const BoolFn& a, const BoolFn& b) {
    if (a.is_false() || b.is_false()) return BoolFn::constant(false);
    if (a.is_true()) return b;
    if (b.is_true()) return a;
    if (a.identity() == b.identity()) return a;
    return BoolFn::make(BoolFn::Op::And, a, b);
}

BoolFn operator|(const BoolFn& a, const BoolFn& b) {
    if (a.is_true() || b.is_true()) return BoolFn::constant(true);
    if (a.is_false()) return b;
    if (b.is_false()) return a;
    if (a.identity() == b.identity()) return a;
    return BoolFn::make(BoolFn::Op::Or, a, b);
}

BoolFn operator~(const BoolFn& a) {
    if (a.is_true()) return BoolFn::constant(false);
    if (a.is_false()) return BoolFn::constant(true);
    if (a.op() == BoolFn::Op::Not) return a.lhs();
    return BoolFn::make(BoolFn::Op::Not, a, a);
}

bool operator==(const BoolFn& a, const BoolFn& b) {
    if (a.identity() == b.identity()) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
    case BoolFn::Op::False:
    case BoolFn::Op::True:
        return true;
    case BoolFn::Op::Var:
        return a.var() == b.var();
    case BoolFn::Op::Not:
        return a.lhs() == b.lhs();
    default:
        return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

BoolFn substitute(const BoolFn& f, const Substitution& map) {
    std::unordered_map<const void*, BoolFn> memo;
    return rebuild(f, memo, [&](const BoolFn& leaf) {
        std::optional<BoolFn> r = map(leaf.var());
        return r ? *r : leaf;
    });
}

BoolFn substitute(const BoolFn& f, const std::map<Var, BoolFn>& map) {
    return substitute(f, [&](Var v) -> std::optional<BoolFn> {
        auto it = map.find(v);
        if (it == map.end()) return std::nullopt;
        return it->second;
    });
}

bool evaluate(const BoolFn& f, const std::function<bool(Var)>& assignment) {
    std::unordered_map<const void*, bool> memo;
    std::function<bool(const BoolFn&)> go = [&](const BoolFn& g) -> bool {
        switch (g.op()) {
        case BoolFn::Op::False:
            return false;
        case BoolFn::Op::True:
            return true;
        case BoolFn::Op::Var:
            return assignment(g.var());
        default:
            break;
        }
        auto it = memo.find(g.identity());
        if (it != memo.end()) return it->second;
        bool r;
        if (g.op() == BoolFn::Op::Not)
            r = !go(g.lhs());
        else if (g.op() == BoolFn::Op::And)
            r = go(g.lhs()) && go(g.rhs());
        else
            r = go(g.lhs()) || go(g.rhs());
        memo.emplace(g.identity(), r);
        return r;
    };
    return go(f);
}

bool evaluate(const BoolFn& f, const std::map<Var, bool>& assignment) {
    return evaluate(f, [&](Var v) {
        auto it = assignment.find(v);
        if (it == assignment.end()) throw std::out_of_range("unassigned variable " + default_var_name(v));
        return it->second;
    });
}

std::set<Var> variables(const BoolFn& f) {
    std::set<Var> out;
    std::unordered_map<const void*, bool> seen;
    walk_vars(f, seen, [&](Var v) { out.insert(v); });
    return out;
}

bool has_temps(const BoolFn& f) {
    bool found = false;
    std::unordered_map<const void*, bool> seen;
    walk_vars(f, seen, [&](Var v) { found = found || v.is_temp(); });
    return found;
}

std::size_t size(const BoolFn& f) {
    std::unordered_map<const void*, bool> seen;
    std::function<std::size_t(const BoolFn&)> go = [&](const BoolFn& g) -> std::size_t {
        if (g.op() == BoolFn::Op::False || g.op() == BoolFn::Op::True || g.op() == BoolFn::Op::Var) return 1;
        if (!seen.emplace(g.identity(), true).second) return 0;
        std::size_t n = 1 + go(g.lhs());
        if (g.op() != BoolFn::Op::Not) n += go(g.rhs());
        return n;
    };
    return go(f);
}

BoolFn eval_f(const BoolFn& f, const StateSet& accepting) {
    return substitute(f, [&](Var v) -> std::optional<BoolFn> {
        if (!v.is_temp() && accepting.contains(v.index)) return BoolFn::constant(true);
        return std::nullopt;
    });
}

bool eval_p(const BoolFn& f, const StateSet& lookahead) {
    return evaluate(f, [&](Var v) { return !v.is_temp() && lookahead.contains(v.index); });
}

BoolFn phi(const BoolFn& f1, const BoolFn& f2, const StateSet& accepting) {
    return substitute(f1, [&](Var v) -> std::optional<BoolFn> {
        if (!v.is_temp() && accepting.contains(v.index)) return BoolFn::variable(v) | f2;
        return std::nullopt;
    });
}

std::string default_var_name(Var v) {
    return (v.is_temp() ? "f_tmp_" : "q") + std::to_string(v.index);
}

std::string to_string(const BoolFn& f, const VarNamer& name) {
    auto prec = [](BoolFn::Op op) {
        switch (op) {
        case BoolFn::Op::Or: return 1;
        case BoolFn::Op::And: return 2;
        case BoolFn::Op::Not: return 3;
        default: return 4;
        }
    };
    std::function<std::string(const BoolFn&, int)> go = [&](const BoolFn& g, int outer) -> std::string {
        std::string s;
        switch (g.op()) {
        case BoolFn::Op::False: return "false";
        case BoolFn::Op::True: return "true";
        case BoolFn::Op::Var: return name(g.var());
        case BoolFn::Op::Not: s = "!" + go(g.lhs(), 3); break;
        case BoolFn::Op::And: s = go(g.lhs(), 2) + " & " + go(g.rhs(), 2); break;
        case BoolFn::Op::Or: s = go(g.lhs(), 1) + " | " + go(g.rhs(), 1); break;
        }
        return prec(g.op()) < outer ? "(" + s + ")" : s;
    };
    return go(f, 0);
}

BddManager::Ref to_bdd(BddManager& mgr, const BoolFn& f, const std::function<std::uint32_t(Var)>& level) {
    std::unordered_map<const void*, BddManager::Ref> memo;
    std::function<BddManager::Ref(const BoolFn&)> go = [&](const BoolFn& g) -> BddManager::Ref {
        switch (g.op()) {
        case BoolFn::Op::False: return BddManager::kFalse;
        case BoolFn::Op::True: return BddManager::kTrue;
        case BoolFn::Op::Var: return mgr.variable(level(g.var()));
        default: break;
        }
        auto it = memo.find(g.identity());
        if (it != memo.end()) return it->second;
        BddManager::Ref r;
        if (g.op() == BoolFn::Op::Not)
            r = mgr.negate(go(g.lhs()));
        else if (g.op() == BoolFn::Op::And)
            r = mgr.conjoin(go(g.lhs()), go(g.rhs()));
        else
            r = mgr.disjoin(go(g.lhs()), go(g.rhs()));
        memo.emplace(g.identity(), r);
        return r;
    };
    return go(f);
}

CanonicalForm canonical(const BoolFn& f) {
    std::set<Var> vars = variables(f);
    std::vector<Var> order(vars.begin(), vars.end());
    BddManager mgr(12);
    BddManager::Ref root = to_bdd(mgr, f, [&](Var v) {
        return static_cast<std::uint32_t>(std::lower_bound(order.begin(), order.end(), v) - order.begin());
    });

    CanonicalForm out;
    out.nodes.push_back({Var{}, 0, 0});
    out.nodes.push_back({Var{}, 1, 1});
    std::unordered_map<BddManager::Ref, std::uint32_t> index{{BddManager::kFalse, 0}, {BddManager::kTrue, 1}};
    std::function<std::uint32_t(BddManager::Ref)> go = [&](BddManager::Ref r) -> std::uint32_t {
        auto it = index.find(r);
        if (it != index.end()) return it->second;
        std::uint32_t lo = go(mgr.low(r));
        std::uint32_t hi = go(mgr.high(r));
        auto id = static_cast<std::uint32_t>(out.nodes.size());
        out.nodes.push_back({order[mgr.level(r)], lo, hi});
        index.emplace(r, id);
        return id;
    };
    out.root = go(root);
    return out;
}

std::string to_string(const CanonicalForm& c, const VarNamer& name) {
    std::function<std::string(std::uint32_t)> go = [&](std::uint32_t i) -> std::string {
        if (i < 2) return i ? "1" : "0";
        const auto& n = c.nodes[i];
        return "(" + name(n.var) + " ? " + go(n.high) + " : " + go(n.low) + ")";
    };
    return go(c.root);
}

bool equivalent(const BoolFn& a, const BoolFn& b) {
    return canonical(a) == canonical(b);
}

} // namespace lpeg

#include "lpeg/bfa.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "lpeg/error.hpp"

namespace lpeg {

namespace {

const BoolFn& false_fn() {
    static const BoolFn f = BoolFn::constant(false);
    return f;
}

void require_finalized(const Bfa& b) {
    if (!b.finalized()) throw ConversionError("BFA still contains temporary variables");
}

/// The automaton's functions as decision diagrams with level = state index.
class BddView {
public:
    /// With `fold_constants`, states whose value is the same after every
    /// suffix are replaced by that constant. This keeps acceptance under the
    /// F u P assignment intact but changes what eval_p would see, so consume
    /// does not use it.
    BddView(const Bfa& b, bool fold_constants) : b_(b) {
        require_finalized(b);
        auto level = [](Var v) { return v.index; };
        for (char a : b.alphabet) {
            std::vector<BddManager::Ref> row(b.state_count, BddManager::kFalse);
            for (StateId q = 0; q < b.state_count; ++q) row[q] = to_bdd(mgr_, b.transition(q, a), level);
            step_.push_back(std::move(row));
        }
        if (fold_constants) fold();
        final_true_.resize(b.state_count);
        for (StateId q = 0; q < b.state_count; ++q)
            final_true_[q] = b.accepting.contains(q) ? BddManager::kTrue : mgr_.variable(q);
        accept_value_.resize(b.state_count);
        lookahead_value_.resize(b.state_count);
        for (StateId q = 0; q < b.state_count; ++q) {
            lookahead_value_[q] = b.lookahead.contains(q);
            accept_value_[q] = lookahead_value_[q] || b.accepting.contains(q);
        }
        initial_ = to_bdd(mgr_, b.initial, level);
        if (fold_constants) initial_ = mgr_.compose(initial_, fixed_);
    }

    BddManager::Ref initial() const { return initial_; }

    BddManager::Ref step(BddManager::Ref f, char a) {
        std::size_t i = b_.alphabet.find(a);
        if (i == std::string::npos) return BddManager::kFalse;
        return mgr_.compose(f, step_[i]);
    }
    BddManager::Ref eval_f(BddManager::Ref f) { return mgr_.compose(f, final_true_); }
    bool eval_p(BddManager::Ref f) const { return mgr_.evaluate(f, lookahead_value_); }
    bool accepts(BddManager::Ref f) const { return mgr_.evaluate(f, accept_value_); }
    std::size_t allocated() const { return mgr_.allocated(); }

private:
    /// Greatest fixpoint: a state in F u P stays "always true" while each of
    /// its successor functions is true given the current guesses, a state
    /// outside stays "always false" while each is false.
    void fold() {
        const StateId n = b_.state_count;
        enum class Guess { True, False, Free };
        std::vector<Guess> guess(n);
        for (StateId q = 0; q < n; ++q)
            guess[q] = b_.accepting.contains(q) || b_.lookahead.contains(q) ? Guess::True : Guess::False;
        std::vector<BddManager::Ref> assumed(n);
        for (bool changed = true; changed;) {
            changed = false;
            for (StateId q = 0; q < n; ++q)
                assumed[q] = guess[q] == Guess::True    ? BddManager::kTrue
                             : guess[q] == Guess::False ? BddManager::kFalse
                                                        : mgr_.variable(q);
            for (StateId q = 0; q < n; ++q) {
                if (guess[q] == Guess::Free) continue;
                const BddManager::Ref want = guess[q] == Guess::True ? BddManager::kTrue : BddManager::kFalse;
                for (const auto& row : step_) {
                    if (mgr_.compose(row[q], assumed) != want) {
                        guess[q] = Guess::Free;
                        changed = true;
                        break;
                    }
                }
            }
        }
        fixed_ = assumed;
        for (auto& row : step_)
            for (StateId q = 0; q < n; ++q) row[q] = guess[q] == Guess::Free ? mgr_.compose(row[q], fixed_) : fixed_[q];
    }

    const Bfa& b_;
    std::vector<BddManager::Ref> fixed_;
    BddManager mgr_;
    std::vector<std::vector<BddManager::Ref>> step_;
    std::vector<BddManager::Ref> final_true_;
    std::vector<bool> accept_value_;
    std::vector<bool> lookahead_value_;
    BddManager::Ref initial_ = BddManager::kFalse;
};

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

bool foreign_symbol(const Bfa& b, std::string_view w) {
    for (char c : w)
        if (b.alphabet.find(c) == std::string::npos) return true;
    return false;
}

} // namespace

const BoolFn& Bfa::transition(StateId q, char a) const {
    auto it = delta.find({q, a});
    return it == delta.end() ? false_fn() : it->second;
}

void Bfa::set_transition(StateId q, char a, BoolFn f) {
    if (f.is_false())
        delta.erase({q, a});
    else
        delta[{q, a}] = std::move(f);
}

bool Bfa::finalized() const {
    if (has_temps(initial)) return false;
    for (const auto& [key, f] : delta)
        if (has_temps(f)) return false;
    return true;
}

VarNamer Bfa::namer() const {
    return [this](Var v) {
        if (v.is_temp()) {
            auto it = temp_names.find(v.index);
            if (it != temp_names.end()) return "f_tmp_" + it->second;
        }
        return default_var_name(v);
    };
}

BoolFn bfa_step(const Bfa& b, const BoolFn& f, char a) {
    if (has_temps(f)) throw ConversionError("cannot step a function with temporary variables");
    return substitute(f, [&](Var v) -> std::optional<BoolFn> { return b.transition(v.index, a); });
}

BoolFn bfa_run(const Bfa& b, const BoolFn& f, std::string_view w) {
    BoolFn g = f;
    for (char a : w) g = bfa_step(b, g, a);
    return g;
}

bool bfa_accepts(const Bfa& b, std::string_view w) {
    require_finalized(b);
    if (foreign_symbol(b, w)) return false;
    // delta(f0, w)(c) evaluated right to left: value[q] = delta(q, suffix)(c)
    std::vector<char> value(b.state_count);
    for (StateId q = 0; q < b.state_count; ++q) value[q] = b.accepting.contains(q) || b.lookahead.contains(q);
    std::vector<char> prev(b.state_count);
    for (std::size_t i = w.size(); i-- > 0;) {
        for (StateId q = 0; q < b.state_count; ++q)
            prev[q] = evaluate(b.transition(q, w[i]), [&](Var v) { return value[v.index] != 0; });
        value.swap(prev);
    }
    return evaluate(b.initial, [&](Var v) { return value[v.index] != 0; });
}

std::set<std::size_t> bfa_consume(const Bfa& b, std::string_view w) {
    BddView view(b, false);
    std::set<std::size_t> out;
    BddManager::Ref fx = view.initial();
    for (std::size_t x = 0; x <= w.size(); ++x) {
        if (x > 0) fx = view.step(fx, w[x - 1]);
        BddManager::Ref g = view.eval_f(fx);
        for (std::size_t y = 0;; ++y) {
            if (view.eval_p(g)) {
                out.insert(x);
                break;
            }
            if (x + y == w.size()) break;
            g = view.step(g, w[x + y]);
        }
    }
    return out;
}

std::set<std::size_t> bfa_consume_anchored(const Bfa& b, std::string_view w) {
    BddView view(b, false);
    std::set<std::size_t> out;
    BddManager::Ref fx = view.initial();
    for (std::size_t x = 0; x <= w.size(); ++x) {
        if (x > 0) fx = view.step(fx, w[x - 1]);
        BddManager::Ref g = view.eval_f(fx);
        for (std::size_t i = x; i < w.size(); ++i) g = view.step(g, w[i]);
        if (view.eval_p(g)) out.insert(x);
    }
    return out;
}

Dfa bfa_to_dfa(const Bfa& b, const DeterminizeOptions& options) {
    BddView view(b, true);
    Dfa d;
    d.alphabet = b.alphabet;
    std::unordered_map<BddManager::Ref, std::uint32_t> index;
    std::vector<BddManager::Ref> functions;
    std::deque<std::uint32_t> queue;
    auto intern = [&](BddManager::Ref f) {
        auto [it, fresh] = index.emplace(f, static_cast<std::uint32_t>(functions.size()));
        if (fresh) {
            if (functions.size() >= options.max_states)
                throw ResourceError("determinization exceeded the state budget of " +
                                    std::to_string(options.max_states));
            functions.push_back(f);
            d.add_state(view.accepts(f));
            queue.push_back(it->second);
        }
        return it->second;
    };
    d.start = intern(view.initial());
    while (!queue.empty()) {
        std::uint32_t s = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < b.alphabet.size(); ++i) {
            std::uint32_t t = intern(view.step(functions[s], b.alphabet[i]));
            d.next[s][i] = t;
        }
    }
    return d;
}

std::string bfa_to_dot(const Bfa& b) {
    const VarNamer name = b.namer();
    std::ostringstream out;
    out << "digraph BFA {\n  rankdir=LR;\n";
    out << "  init [shape=plaintext, label=\"f0 = " << dot_escape(to_string(b.initial, name)) << "\"];\n";
    for (StateId q = 0; q < b.state_count; ++q) {
        std::string tags;
        if (b.accepting.contains(q)) tags += "F";
        if (b.lookahead.contains(q)) tags += tags.empty() ? "P" : ",P";
        out << "  q" << q << " [label=\"q" << q << (tags.empty() ? "" : " (" + tags + ")") << "\""
            << (b.accepting.contains(q) || b.lookahead.contains(q) ? ", shape=doublecircle" : ", shape=circle")
            << "];\n";
    }
    for (const auto& f0_var : variables(b.initial))
        if (!f0_var.is_temp()) out << "  init -> q" << f0_var.index << " [style=dashed];\n";
    for (const auto& [key, f] : b.delta) {
        const auto& [q, a] = key;
        std::string label(1, a);
        if (f.op() != BoolFn::Op::Var) label += ": " + to_string(f, name);
        for (const auto& v : variables(f)) {
            if (v.is_temp()) continue;
            out << "  q" << q << " -> q" << v.index << " [label=\"" << dot_escape(label) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace lpeg

#include "lpeg/truth_table.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "lpeg/kernels.hpp"

namespace lpeg {

TruthTable::TruthTable(std::size_t variables, bool value) : vars_(variables) {
    if (variables > kMaxVariables) throw std::invalid_argument("truth table limited to 16 variables");
    std::size_t rows = std::size_t{1} << variables;
    bits_.assign((rows + 63) / 64, value ? ~std::uint64_t{0} : 0);
    clear_tail();
}

TruthTable TruthTable::variable(std::size_t variables, std::size_t index) {
    if (index >= variables) throw std::invalid_argument("variable index out of range");
    TruthTable t(variables);
    std::size_t rows = std::size_t{1} << variables;
    for (std::size_t i = 0; i < rows; ++i)
        if ((i >> index) & 1U) t.bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
    return t;
}

void TruthTable::clear_tail() {
    std::size_t rows = std::size_t{1} << vars_;
    if (rows < 64) bits_[0] &= (std::uint64_t{1} << rows) - 1;
}

void TruthTable::check_compatible(const TruthTable& o) const {
    if (vars_ != o.vars_) throw std::invalid_argument("truth tables over different variable counts");
}

std::size_t TruthTable::count() const { return kernels::active().popcount_words(bits_); }

TruthTable TruthTable::operator&(const TruthTable& o) const {
    check_compatible(o);
    TruthTable r(vars_);
    kernels::active().and_words(r.bits_, bits_, o.bits_);
    return r;
}

TruthTable TruthTable::operator|(const TruthTable& o) const {
    check_compatible(o);
    TruthTable r(vars_);
    kernels::active().or_words(r.bits_, bits_, o.bits_);
    return r;
}

TruthTable TruthTable::andnot(const TruthTable& o) const {
    check_compatible(o);
    TruthTable r(vars_);
    kernels::active().andnot_words(r.bits_, bits_, o.bits_);
    return r;
}

TruthTable TruthTable::operator~() const {
    TruthTable r(vars_);
    kernels::active().not_words(r.bits_, bits_);
    r.clear_tail();
    return r;
}

bool TruthTable::operator==(const TruthTable& o) const {
    return vars_ == o.vars_ && kernels::active().equal_words(bits_, o.bits_);
}

TruthTable truth_table(const BoolFn& f, std::span<const Var> order) {
    if (order.size() > TruthTable::kMaxVariables) throw std::invalid_argument("truth table limited to 16 variables");
    auto position = [&](Var v) {
        auto it = std::find(order.begin(), order.end(), v);
        if (it == order.end()) throw std::invalid_argument("variable " + default_var_name(v) + " not in order");
        return static_cast<std::size_t>(it - order.begin());
    };
    std::unordered_map<const void*, TruthTable> memo;
    std::function<TruthTable(const BoolFn&)> go = [&](const BoolFn& g) -> TruthTable {
        switch (g.op()) {
        case BoolFn::Op::False: return TruthTable(order.size(), false);
        case BoolFn::Op::True: return TruthTable(order.size(), true);
        case BoolFn::Op::Var: return TruthTable::variable(order.size(), position(g.var()));
        default: break;
        }
        auto it = memo.find(g.identity());
        if (it != memo.end()) return it->second;
        TruthTable r = g.op() == BoolFn::Op::Not ? ~go(g.lhs())
                       : g.op() == BoolFn::Op::And ? go(g.lhs()) & go(g.rhs())
                                                   : go(g.lhs()) | go(g.rhs());
        memo.emplace(g.identity(), r);
        return r;
    };
    return go(f);
}

} // namespace lpeg

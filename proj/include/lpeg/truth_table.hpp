#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpeg/boolfn.hpp"

namespace lpeg {

/// Exhaustive truth table over at most 16 variables; bit i holds the value
/// under the assignment whose j-th variable is bit j of i. Used to
/// cross-check the decision-diagram backend.
class TruthTable {
public:
    static constexpr std::size_t kMaxVariables = 16;

    explicit TruthTable(std::size_t variables, bool value = false);
    static TruthTable variable(std::size_t variables, std::size_t index);

    std::size_t variables() const { return vars_; }
    bool at(std::uint64_t assignment) const { return (bits_[assignment >> 6] >> (assignment & 63)) & 1U; }
    std::size_t count() const;
    std::span<const std::uint64_t> words() const { return bits_; }

    TruthTable operator&(const TruthTable& o) const;
    TruthTable operator|(const TruthTable& o) const;
    TruthTable operator~() const;
    TruthTable andnot(const TruthTable& o) const;
    bool operator==(const TruthTable& o) const;

private:
    void clear_tail();
    void check_compatible(const TruthTable& o) const;

    std::size_t vars_;
    std::vector<std::uint64_t> bits_;
};

/// Table of f with variable order `order` (position = bit). Throws
/// std::invalid_argument for more than 16 variables or a variable of f
/// missing from `order`.
TruthTable truth_table(const BoolFn& f, std::span<const Var> order);

} // namespace lpeg

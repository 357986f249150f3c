#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

namespace lpeg {

/// Shared, reduced ordered binary decision diagrams. Variables are levels
/// 0, 1, 2, ... tested in increasing order. Equal functions built in the same
/// manager get the same Ref, which makes semantic equality a pointer compare.
/// Nodes are never freed; a manager lives as long as one automaton job.
class BddManager {
public:
    using Ref = std::uint32_t;
    static constexpr Ref kFalse = 0;
    static constexpr Ref kTrue = 1;
    static constexpr std::uint32_t kTerminalLevel = UINT32_MAX;

    explicit BddManager(unsigned cache_bits = 18);

    Ref constant(bool value) const { return value ? kTrue : kFalse; }
    Ref variable(std::uint32_t level);

    Ref ite(Ref f, Ref g, Ref h);
    Ref negate(Ref f) { return ite(f, kFalse, kTrue); }
    Ref conjoin(Ref f, Ref g) { return ite(f, g, kFalse); }
    Ref disjoin(Ref f, Ref g) { return ite(f, kTrue, g); }

    /// Simultaneous substitution of level i by replacement[i]; levels past the
    /// end of `replacement` are kept.
    Ref compose(Ref f, std::span<const Ref> replacement);

    bool evaluate(Ref f, const std::function<bool(std::uint32_t)>& assignment) const;
    /// assignment[level]; levels past the end read as false.
    bool evaluate(Ref f, const std::vector<bool>& assignment) const;

    std::uint32_t level(Ref f) const { return nodes_[f].level; }
    Ref low(Ref f) const { return nodes_[f].low; }
    Ref high(Ref f) const { return nodes_[f].high; }

    /// Total nodes allocated, including the two terminals.
    std::size_t allocated() const { return nodes_.size(); }
    /// Nodes reachable from f, including terminals.
    std::size_t node_count(Ref f) const;

private:
    struct Node {
        std::uint32_t level;
        Ref low;
        Ref high;
    };
    struct Key {
        std::uint32_t level;
        Ref low;
        Ref high;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::uint64_t h = k.level;
            h = h * 0x9E3779B97F4A7C15ULL + k.low;
            h = h * 0x9E3779B97F4A7C15ULL + k.high;
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };
    struct CacheEntry {
        Ref f = kFalse, g = kFalse, h = kFalse, result = kFalse;
        bool valid = false;
    };

    Ref make(std::uint32_t level, Ref low, Ref high);

    std::vector<Node> nodes_;
    std::unordered_map<Key, Ref, KeyHash> unique_;
    std::vector<CacheEntry> cache_;
    std::size_t cache_mask_;
};

} // namespace lpeg

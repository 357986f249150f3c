#include "lpeg/bdd.hpp"

#include <algorithm>
#include <unordered_set>

namespace lpeg {

BddManager::BddManager(unsigned cache_bits)
    : cache_(std::size_t{1} << cache_bits), cache_mask_((std::size_t{1} << cache_bits) - 1) {
    nodes_.push_back({kTerminalLevel, kFalse, kFalse});
    nodes_.push_back({kTerminalLevel, kTrue, kTrue});
}

BddManager::Ref BddManager::make(std::uint32_t level, Ref low, Ref high) {
    if (low == high) return low;
    Key key{level, low, high};
    auto it = unique_.find(key);
    if (it != unique_.end()) return it->second;
    auto ref = static_cast<Ref>(nodes_.size());
    nodes_.push_back({level, low, high});
    unique_.emplace(key, ref);
    return ref;
}

BddManager::Ref BddManager::variable(std::uint32_t level) {
    return make(level, kFalse, kTrue);
}

BddManager::Ref BddManager::ite(Ref f, Ref g, Ref h) {
    if (f == kTrue) return g;
    if (f == kFalse) return h;
    if (g == h) return g;
    if (g == kTrue && h == kFalse) return f;
    if (g == f) g = kTrue;
    if (h == f) h = kFalse;
    if (g == h) return g;

    std::uint64_t hash = f;
    hash = hash * 0x9E3779B97F4A7C15ULL + g;
    hash = hash * 0x9E3779B97F4A7C15ULL + h;
    CacheEntry& slot = cache_[(hash ^ (hash >> 31)) & cache_mask_];
    if (slot.valid && slot.f == f && slot.g == g && slot.h == h) return slot.result;

    std::uint32_t top = std::min({level(f), level(g), level(h)});
    auto cof = [&](Ref r, bool hi) {
        if (level(r) != top) return r;
        return hi ? high(r) : low(r);
    };
    Ref lo = ite(cof(f, false), cof(g, false), cof(h, false));
    Ref hi = ite(cof(f, true), cof(g, true), cof(h, true));
    Ref r = make(top, lo, hi);

    CacheEntry& again = cache_[(hash ^ (hash >> 31)) & cache_mask_];
    again = {f, g, h, r, true};
    return r;
}

BddManager::Ref BddManager::compose(Ref f, std::span<const Ref> replacement) {
    std::unordered_map<Ref, Ref> memo;
    auto go = [&](auto& self, Ref n) -> Ref {
        if (n <= kTrue) return n;
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        std::uint32_t lv = level(n);
        Ref test = lv < replacement.size() ? replacement[lv] : variable(lv);
        Ref hi = self(self, high(n));
        Ref lo = self(self, low(n));
        Ref r = ite(test, hi, lo);
        memo.emplace(n, r);
        return r;
    };
    return go(go, f);
}

bool BddManager::evaluate(Ref f, const std::function<bool(std::uint32_t)>& assignment) const {
    while (f > kTrue) f = assignment(level(f)) ? high(f) : low(f);
    return f == kTrue;
}

bool BddManager::evaluate(Ref f, const std::vector<bool>& assignment) const {
    while (f > kTrue) {
        std::uint32_t lv = level(f);
        f = lv < assignment.size() && assignment[lv] ? high(f) : low(f);
    }
    return f == kTrue;
}

std::size_t BddManager::node_count(Ref f) const {
    std::unordered_set<Ref> seen;
    std::vector<Ref> stack{f};
    while (!stack.empty()) {
        Ref r = stack.back();
        stack.pop_back();
        if (!seen.insert(r).second || r <= kTrue) continue;
        stack.push_back(low(r));
        stack.push_back(high(r));
    }
    return seen.size();
}

} // namespace lpeg

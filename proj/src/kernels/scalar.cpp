#include <bit>

#include "lpeg/kernels.hpp"

namespace lpeg::kernels {

namespace {

void and_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] & b[i];
}

void or_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] | b[i];
}

void andnot_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] & ~b[i];
}

void not_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = ~a[i];
}

bool equal_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

std::size_t popcount_words(std::span<const std::uint64_t> a) {
    std::size_t n = 0;
    for (std::uint64_t w : a) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

} // namespace

const Table& scalar() {
    static const Table table{and_words, or_words, andnot_words, not_words, equal_words, popcount_words};
    return table;
}

} // namespace lpeg::kernels

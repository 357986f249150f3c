#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace lpeg::kernels {

enum class Isa { Scalar, Avx2 };

// dst may alias a or b; all spans have equal length.
using BinaryFn = void (*)(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                          std::span<const std::uint64_t> b);
using UnaryFn = void (*)(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a);
using EqualFn = bool (*)(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
using PopcountFn = std::size_t (*)(std::span<const std::uint64_t> a);

struct Table {
    BinaryFn and_words;
    BinaryFn or_words;
    BinaryFn andnot_words; // a & ~b
    UnaryFn not_words;
    EqualFn equal_words;
    PopcountFn popcount_words;
};

const Table& scalar();
/// Null when the build has no AVX2 variant.
const Table* avx2();

bool isa_available(Isa isa);
/// Best available table, chosen once at first use.
const Table& active();
Isa active_isa();
/// Overrides dispatch (tests and benchmarks). Throws if unavailable.
void force_isa(Isa isa);

} // namespace lpeg::kernels

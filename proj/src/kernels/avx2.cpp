#include <immintrin.h>

#include <bit>

#include "lpeg/kernels.hpp"

namespace lpeg::kernels {

namespace {

#define LPEG_AVX2 __attribute__((target("avx2")))

inline LPEG_AVX2 __m256i load(const std::uint64_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline LPEG_AVX2 void store(std::uint64_t* p, __m256i v) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

LPEG_AVX2 void and_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                         std::span<const std::uint64_t> b) {
    std::size_t i = 0;
    for (; i + 4 <= dst.size(); i += 4) store(&dst[i], _mm256_and_si256(load(&a[i]), load(&b[i])));
    for (; i < dst.size(); ++i) dst[i] = a[i] & b[i];
}

LPEG_AVX2 void or_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                        std::span<const std::uint64_t> b) {
    std::size_t i = 0;
    for (; i + 4 <= dst.size(); i += 4) store(&dst[i], _mm256_or_si256(load(&a[i]), load(&b[i])));
    for (; i < dst.size(); ++i) dst[i] = a[i] | b[i];
}

LPEG_AVX2 void andnot_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                            std::span<const std::uint64_t> b) {
    std::size_t i = 0;
    // _mm256_andnot_si256(x, y) = ~x & y
    for (; i + 4 <= dst.size(); i += 4) store(&dst[i], _mm256_andnot_si256(load(&b[i]), load(&a[i])));
    for (; i < dst.size(); ++i) dst[i] = a[i] & ~b[i];
}

LPEG_AVX2 void not_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a) {
    const __m256i ones = _mm256_set1_epi64x(-1);
    std::size_t i = 0;
    for (; i + 4 <= dst.size(); i += 4) store(&dst[i], _mm256_xor_si256(load(&a[i]), ones));
    for (; i < dst.size(); ++i) dst[i] = ~a[i];
}

LPEG_AVX2 bool equal_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::size_t i = 0;
    for (; i + 4 <= a.size(); i += 4) {
        __m256i x = _mm256_xor_si256(load(&a[i]), load(&b[i]));
        if (!_mm256_testz_si256(x, x)) return false;
    }
    for (; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

LPEG_AVX2 std::size_t popcount_words(std::span<const std::uint64_t> a) {
    // no AVX2 popcount instruction; unrolled scalar popcnt
    std::size_t n0 = 0, n1 = 0, n2 = 0, n3 = 0, i = 0;
    for (; i + 4 <= a.size(); i += 4) {
        n0 += static_cast<std::size_t>(std::popcount(a[i]));
        n1 += static_cast<std::size_t>(std::popcount(a[i + 1]));
        n2 += static_cast<std::size_t>(std::popcount(a[i + 2]));
        n3 += static_cast<std::size_t>(std::popcount(a[i + 3]));
    }
    for (; i < a.size(); ++i) n0 += static_cast<std::size_t>(std::popcount(a[i]));
    return n0 + n1 + n2 + n3;
}

} // namespace

const Table* avx2() {
    static const Table table{and_words, or_words, andnot_words, not_words, equal_words, popcount_words};
    return &table;
}

} // namespace lpeg::kernels

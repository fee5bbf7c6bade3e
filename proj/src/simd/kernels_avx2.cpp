// Compiled with -mavx2 only for this translation unit; callers reach these
// functions through the runtime dispatch in kernels.cpp.

#include <cstddef>
#include <cstdint>

#include <immintrin.h>

#include "pmod/simd/kernels.hpp"

namespace pmod::simd::detail {

namespace {

// Lanes use 32-bit arithmetic, so p² must stay below 2³².
constexpr Residue lane_modulus_limit = 1u << 16;

struct Barrett {
    __m256i p;
    __m256i p_minus_one;
    __m256i m; // ⌊2³²/p⌋
};

inline Barrett make_barrett(Residue p)
{
    const auto m = static_cast<std::uint32_t>((std::uint64_t(1) << 32) / p);
    return {_mm256_set1_epi32(static_cast<int>(p)), _mm256_set1_epi32(static_cast<int>(p - 1)),
            _mm256_set1_epi32(static_cast<int>(m))};
}

// t < 2³² per lane. q = ⌊t·m/2³²⌋ underestimates ⌊t/p⌋ by at most one, so
// one conditional subtraction finishes the reduction.
inline __m256i reduce(__m256i t, const Barrett& b)
{
    const __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(t, b.m), 32);
    const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(t, 32), b.m);
    const __m256i q = _mm256_blend_epi32(even, odd, 0xAA);
    __m256i r = _mm256_sub_epi32(t, _mm256_mullo_epi32(q, b.p));
    const __m256i over = _mm256_cmpgt_epi32(r, b.p_minus_one);
    return _mm256_sub_epi32(r, _mm256_and_si256(over, b.p));
}

} // namespace

void axpy_avx2(std::span<Residue> dst, std::span<const Residue> src, Residue c, Residue p)
{
    if (c == 0)
        return;
    if (p >= lane_modulus_limit) {
        axpy_scalar(dst, src, c, p);
        return;
    }
    const Barrett b = make_barrett(p);
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const std::size_t n = dst.size();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
        const auto* s = reinterpret_cast<const __m256i*>(src.data() + i);
        const __m256i t = _mm256_add_epi32(_mm256_loadu_si256(d),
                                           _mm256_mullo_epi32(_mm256_loadu_si256(s), vc));
        _mm256_storeu_si256(d, reduce(t, b));
    }
    axpy_scalar(dst.subspan(i), src.subspan(i), c, p);
}

void scale_avx2(std::span<Residue> dst, Residue c, Residue p)
{
    if (p >= lane_modulus_limit) {
        scale_scalar(dst, c, p);
        return;
    }
    const Barrett b = make_barrett(p);
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const std::size_t n = dst.size();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
        _mm256_storeu_si256(d, reduce(_mm256_mullo_epi32(_mm256_loadu_si256(d), vc), b));
    }
    scale_scalar(dst.subspan(i), c, p);
}

} // namespace pmod::simd::detail

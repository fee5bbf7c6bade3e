#pragma once

// Row kernels for dense linear algebra over 𝔽_p.
//
// Every elimination step and every matrix product in the library bottoms out
// in two operations on residue rows: dst += c·src and dst *= c. A scalar
// reference implementation always exists; an AVX2 variant is compiled in on
// x86-64 and selected at runtime when the CPU supports it. Both must produce
// bit-identical rows (see tests/test_simd.cpp).
//
// Inputs must already be reduced: all residues and c in [0, p).

#include <span>
#include <string_view>

#include "pmod/field.hpp"

namespace pmod::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

using AxpyFn = void (*)(std::span<Residue> dst, std::span<const Residue> src, Residue c, Residue p);
using ScaleFn = void (*)(std::span<Residue> dst, Residue c, Residue p);

struct Kernels {
    Isa isa;
    AxpyFn axpy;   ///< dst[i] = dst[i] + c·src[i] mod p
    ScaleFn scale; ///< dst[i] = c·dst[i] mod p
};

const Kernels& scalar_kernels();

/// nullptr when the build or the CPU lacks AVX2.
const Kernels* avx2_kernels();

/// The kernels used by Matrix. Chosen once: AVX2 when available, unless the
/// environment variable PMOD_SIMD is set to `scalar`.
const Kernels& active_kernels();

namespace detail {
void axpy_scalar(std::span<Residue> dst, std::span<const Residue> src, Residue c, Residue p);
void scale_scalar(std::span<Residue> dst, Residue c, Residue p);
#if defined(__x86_64__) || defined(_M_X64)
void axpy_avx2(std::span<Residue> dst, std::span<const Residue> src, Residue c, Residue p);
void scale_avx2(std::span<Residue> dst, Residue c, Residue p);
#endif
} // namespace detail

} // namespace pmod::simd

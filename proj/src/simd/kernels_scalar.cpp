#include <cstddef>

#include "pmod/simd/kernels.hpp"

namespace pmod::simd::detail {

void axpy_scalar(std::span<Residue> dst, std::span<const Residue> src, Residue c, Residue p)
{
    if (c == 0)
        return;
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = add_mod(dst[i], mul_mod(c, src[i], p), p);
}

void scale_scalar(std::span<Residue> dst, Residue c, Residue p)
{
    for (auto& v : dst)
        v = mul_mod(c, v, p);
}

} // namespace pmod::simd::detail

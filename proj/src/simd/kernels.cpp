#include "pmod/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace pmod::simd {

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

const Kernels& scalar_kernels()
{
    static const Kernels k{Isa::scalar, &detail::axpy_scalar, &detail::scale_scalar};
    return k;
}

const Kernels* avx2_kernels()
{
#if defined(PMOD_HAVE_AVX2)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") != 0;
    }();
    static const Kernels k{Isa::avx2, &detail::axpy_avx2, &detail::scale_avx2};
    return supported ? &k : nullptr;
#else
    return nullptr;
#endif
}

const Kernels& active_kernels()
{
    static const Kernels& chosen = []() -> const Kernels& {
        const char* forced = std::getenv("PMOD_SIMD");
        if (forced != nullptr && std::string_view(forced) == "scalar")
            return scalar_kernels();
        if (const Kernels* k = avx2_kernels())
            return *k;
        return scalar_kernels();
    }();
    return chosen;
}

} // namespace pmod::simd

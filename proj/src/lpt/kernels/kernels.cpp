#include "lpt/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "lpt/kernels/kernels_detail.hpp"

namespace lpt::kernels {

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "?";
}

bool isa_available(Isa isa) {
    if (isa == Isa::scalar) return true;
#if defined(LPT_HAVE_AVX2_KERNELS) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Isa resolve_isa() {
    if (const char* env = std::getenv("LPT_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0 && isa_available(Isa::avx2)) return Isa::avx2;
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

Isa active_isa() {
    static const Isa isa = resolve_isa();
    return isa;
}

template <typename T>
const Table<T>& table(Isa isa) {
#ifdef LPT_HAVE_AVX2_KERNELS
    if (isa == Isa::avx2) return detail::avx2_table<T>();
#else
    (void)isa;
#endif
    return detail::scalar_table<T>();
}

template const Table<float>& table<float>(Isa);
template const Table<double>& table<double>(Isa);

}  // namespace lpt::kernels

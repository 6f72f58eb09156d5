#include "lpt/degrade/dct.hpp"

#include <cmath>

#include "lpt/kernels/kernels.hpp"

namespace lpt::degrade {

namespace {

struct DctBasis {
    Block8 c;   // C[k][n] = ck * cos(pi*(2n+1)*k/16), ck = sqrt(1/8) or sqrt(2/8)
    Block8 ct;  // transpose
};

const DctBasis& basis() {
    static const DctBasis b = [] {
        DctBasis out;
        const double pi = std::acos(-1.0);
        for (int k = 0; k < 8; ++k) {
            const double ck = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int n = 0; n < 8; ++n) {
                const double v = ck * std::cos(pi * (2.0 * n + 1.0) * k / 16.0);
                out.c[static_cast<size_t>(k) * 8 + n] = v;
                out.ct[static_cast<size_t>(n) * 8 + k] = v;
            }
        }
        return out;
    }();
    return b;
}

}  // namespace

Block8 blockwise_dct(const Block8& block) {
    const auto& k = kernels::table<double>();
    const DctBasis& b = basis();
    Block8 tmp, out;
    k.gemm_nn(8, 8, 8, b.c.data(), block.data(), tmp.data(), false);
    k.gemm_nn(8, 8, 8, tmp.data(), b.ct.data(), out.data(), false);
    return out;
}

Block8 blockwise_idct(const Block8& coeffs) {
    const auto& k = kernels::table<double>();
    const DctBasis& b = basis();
    Block8 tmp, out;
    k.gemm_nn(8, 8, 8, b.ct.data(), coeffs.data(), tmp.data(), false);
    k.gemm_nn(8, 8, 8, tmp.data(), b.c.data(), out.data(), false);
    return out;
}

}  // namespace lpt::degrade

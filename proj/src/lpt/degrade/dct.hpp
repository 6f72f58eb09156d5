#pragma once

#include <array>

namespace lpt::degrade {

using Block8 = std::array<double, 64>;  // row-major 8x8

// Orthonormal 2-D DCT-II and its inverse, computed as C * X * C^T through the
// kernel dispatch layer. idct(dct(x)) reproduces x to double round-off.
Block8 blockwise_dct(const Block8& block);
Block8 blockwise_idct(const Block8& coeffs);

}  // namespace lpt::degrade

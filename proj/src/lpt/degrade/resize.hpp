#pragma once

#include "lpt/image.hpp"

namespace lpt::degrade {

// Bilinear resampling with half-pixel-center coordinates and edge clamping:
// source coordinate of output x is (x + 0.5) * w_src / w_dst - 0.5.
GrayImage bilinear_resize(const GrayImage& img, int w, int h);

}  // namespace lpt::degrade

#pragma once

#include <cstdint>
#include <stdexcept>

#include "lpt/image.hpp"
#include "lpt/qf/qtable.hpp"

namespace lpt::degrade {

struct DegradeParams {
    int r_w = 180;       // target pixel width, in [20,180]
    int qf = 100;        // JPEG quality factor, in [1,100]
    uint64_t seed = 0;   // provenance of the draw; the pipeline itself is deterministic

    void validate() const {
        if (r_w < 20 || r_w > 180) {
            throw std::out_of_range("DegradeParams: r_w must be in [20,180]");
        }
        if (qf < 1 || qf > 100) {
            throw std::out_of_range("DegradeParams: qf must be in [1,100]");
        }
    }
};

// Quantization-domain JPEG round trip: scale to [0,255], shift by -128, tile
// into 8x8 blocks (edge replication pads to a multiple of 8), DCT, divide by
// the table with round-half-away-from-zero, multiply back, inverse DCT, +128,
// clamp, rescale to [0,1]. No entropy coding; pixels match what a codec's
// quantization stage produces.
GrayImage jpeg_degrade(const GrayImage& img, const qf::QuantTable& q);

// Full degradation chain: bilinear downsample to width r_w (height keeps the
// aspect ratio, rounded, min 1), jpeg_degrade at standard_qtable(qf), bilinear
// upsample back to the input size.
GrayImage degrade_pipeline(const GrayImage& img, const DegradeParams& p);

}  // namespace lpt::degrade

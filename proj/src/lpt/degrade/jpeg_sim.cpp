#include "lpt/degrade/jpeg_sim.hpp"

#include <algorithm>
#include <cmath>

#include "lpt/degrade/dct.hpp"
#include "lpt/degrade/resize.hpp"

namespace lpt::degrade {

GrayImage jpeg_degrade(const GrayImage& img, const qf::QuantTable& q) {
    const int bw = (img.width + 7) / 8;
    const int bh = (img.height + 7) / 8;
    const int pw = bw * 8;
    const int ph = bh * 8;

    // [0,1] -> level-shifted [−128,127] with edge replication padding
    std::vector<double> shifted(static_cast<size_t>(pw) * ph);
    for (int y = 0; y < ph; ++y) {
        const int sy = std::min(y, img.height - 1);
        for (int x = 0; x < pw; ++x) {
            const int sx = std::min(x, img.width - 1);
            shifted[static_cast<size_t>(y) * pw + x] = img.at(sx, sy) * 255.0 - 128.0;
        }
    }

    Block8 block;
    for (int by = 0; by < bh; ++by) {
        for (int bx = 0; bx < bw; ++bx) {
            for (int y = 0; y < 8; ++y) {
                for (int x = 0; x < 8; ++x) {
                    block[static_cast<size_t>(y) * 8 + x] =
                        shifted[static_cast<size_t>(by * 8 + y) * pw + (bx * 8 + x)];
                }
            }
            Block8 coeffs = blockwise_dct(block);
            for (size_t i = 0; i < 64; ++i) {
                const double step = static_cast<double>(q.steps[i]);
                // std::round is round-half-away-from-zero
                coeffs[i] = std::round(coeffs[i] / step) * step;
            }
            Block8 rec = blockwise_idct(coeffs);
            for (int y = 0; y < 8; ++y) {
                for (int x = 0; x < 8; ++x) {
                    shifted[static_cast<size_t>(by * 8 + y) * pw + (bx * 8 + x)] =
                        rec[static_cast<size_t>(y) * 8 + x];
                }
            }
        }
    }

    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double v = shifted[static_cast<size_t>(y) * pw + x] + 128.0;
            out.at(x, y) = std::clamp(v, 0.0, 255.0) / 255.0;
        }
    }
    return out;
}

GrayImage degrade_pipeline(const GrayImage& img, const DegradeParams& p) {
    p.validate();
    const int rh = std::max(
        1, static_cast<int>(std::lround(static_cast<double>(img.height) * p.r_w / img.width)));
    GrayImage down = bilinear_resize(img, p.r_w, rh);
    GrayImage crushed = jpeg_degrade(down, qf::standard_qtable(p.qf));
    return bilinear_resize(crushed, img.width, img.height);
}

}  // namespace lpt::degrade

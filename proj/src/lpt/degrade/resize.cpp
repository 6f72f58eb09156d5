#include "lpt/degrade/resize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpt::degrade {

namespace {

struct Tap {
    int i0;
    int i1;
    double w1;  // weight of i1; i0 gets 1 - w1
};

Tap make_tap(int dst, int src_size, double ratio) {
    double s = (static_cast<double>(dst) + 0.5) * ratio - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_size - 1));
    int i0 = static_cast<int>(std::floor(s));
    int i1 = std::min(i0 + 1, src_size - 1);
    return Tap{i0, i1, s - static_cast<double>(i0)};
}

}  // namespace

GrayImage bilinear_resize(const GrayImage& img, int w, int h) {
    if (w < 1 || h < 1) throw std::invalid_argument("bilinear_resize: target size must be >= 1");
    if (img.width == w && img.height == h) return img;

    std::vector<Tap> xs(static_cast<size_t>(w));
    std::vector<Tap> ys(static_cast<size_t>(h));
    const double rx = static_cast<double>(img.width) / w;
    const double ry = static_cast<double>(img.height) / h;
    for (int x = 0; x < w; ++x) xs[static_cast<size_t>(x)] = make_tap(x, img.width, rx);
    for (int y = 0; y < h; ++y) ys[static_cast<size_t>(y)] = make_tap(y, img.height, ry);

    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        const Tap& ty = ys[static_cast<size_t>(y)];
        const double* r0 = &img.pixels[static_cast<size_t>(ty.i0) * img.width];
        const double* r1 = &img.pixels[static_cast<size_t>(ty.i1) * img.width];
        for (int x = 0; x < w; ++x) {
            const Tap& tx = xs[static_cast<size_t>(x)];
            const double top = r0[tx.i0] + (r0[tx.i1] - r0[tx.i0]) * tx.w1;
            const double bot = r1[tx.i0] + (r1[tx.i1] - r1[tx.i0]) * tx.w1;
            out.at(x, y) = top + (bot - top) * ty.w1;
        }
    }
    return out;
}

}  // namespace lpt::degrade

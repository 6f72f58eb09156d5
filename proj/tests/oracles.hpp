#pragma once

// Test-only reference implementations, deliberately written as straight-line
// code independent of the production paths they check.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lpt/image.hpp"
#include "lpt/qf/qtable.hpp"
#include "lpt/utf8.hpp"

namespace oracle {

// Direct O(64^2) per-block JPEG quantization round trip: explicit cosine sums
// instead of the production matrix form.
inline lpt::GrayImage naive_jpeg_degrade(const lpt::GrayImage& img,
                                         const lpt::qf::QuantTable& q) {
    const double pi = std::acos(-1.0);
    const int bw = (img.width + 7) / 8;
    const int bh = (img.height + 7) / 8;

    auto src = [&](int x, int y) {
        x = std::min(x, img.width - 1);
        y = std::min(y, img.height - 1);
        return img.at(x, y) * 255.0 - 128.0;
    };

    lpt::GrayImage out(img.width, img.height);
    for (int by = 0; by < bh; ++by) {
        for (int bx = 0; bx < bw; ++bx) {
            double coeff[8][8];
            for (int u = 0; u < 8; ++u) {
                for (int v = 0; v < 8; ++v) {
                    const double cu = u == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
                    const double cv = v == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
                    double s = 0.0;
                    for (int y = 0; y < 8; ++y) {
                        for (int x = 0; x < 8; ++x) {
                            s += src(bx * 8 + x, by * 8 + y) *
                                 std::cos((2.0 * x + 1.0) * v * pi / 16.0) *
                                 std::cos((2.0 * y + 1.0) * u * pi / 16.0);
                        }
                    }
                    coeff[u][v] = 0.25 * cu * cv * s;
                }
            }
            for (int u = 0; u < 8; ++u) {
                for (int v = 0; v < 8; ++v) {
                    const double step = q.at(u, v);
                    coeff[u][v] = std::round(coeff[u][v] / step) * step;
                }
            }
            for (int y = 0; y < 8; ++y) {
                for (int x = 0; x < 8; ++x) {
                    if (bx * 8 + x >= img.width || by * 8 + y >= img.height) continue;
                    double s = 0.0;
                    for (int u = 0; u < 8; ++u) {
                        for (int v = 0; v < 8; ++v) {
                            const double cu = u == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
                            const double cv = v == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
                            s += cu * cv * coeff[u][v] *
                                 std::cos((2.0 * x + 1.0) * v * pi / 16.0) *
                                 std::cos((2.0 * y + 1.0) * u * pi / 16.0);
                        }
                    }
                    const double rec = std::clamp(0.25 * s + 128.0, 0.0, 255.0);
                    out.at(bx * 8 + x, by * 8 + y) = rec / 255.0;
                }
            }
        }
    }
    return out;
}

// Textbook full-matrix edit distance over code points.
inline size_t naive_levenshtein(const std::string& sa, const std::string& sb) {
    const auto a = lpt::utf8_decode(sa);
    const auto b = lpt::utf8_decode(sb);
    std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1, 0));
    for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                                d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
        }
    }
    return d[a.size()][b.size()];
}

}  // namespace oracle

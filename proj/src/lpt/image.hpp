#pragma once

#include <string>
#include <vector>

namespace lpt {

// Grayscale raster, row-major, values in [0,1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

    double at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    double& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }

    bool same_size(const GrayImage& o) const {
        return width == o.width && height == o.height;
    }
};

double mean_abs_diff(const GrayImage& a, const GrayImage& b);
double mean_sq_diff(const GrayImage& a, const GrayImage& b);
double max_abs_diff(const GrayImage& a, const GrayImage& b);

// Binary PGM (P5), maxval 255.
void write_pgm(const GrayImage& img, const std::string& path);
GrayImage read_pgm(const std::string& path);

}  // namespace lpt

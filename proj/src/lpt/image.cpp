#include "lpt/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lpt {

double mean_abs_diff(const GrayImage& a, const GrayImage& b) {
    if (!a.same_size(b)) throw std::invalid_argument("mean_abs_diff: size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.pixels.size(); ++i) s += std::abs(a.pixels[i] - b.pixels[i]);
    return s / static_cast<double>(a.pixels.size());
}

double mean_sq_diff(const GrayImage& a, const GrayImage& b) {
    if (!a.same_size(b)) throw std::invalid_argument("mean_sq_diff: size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.pixels.size(); ++i) {
        double d = a.pixels[i] - b.pixels[i];
        s += d * d;
    }
    return s / static_cast<double>(a.pixels.size());
}

double max_abs_diff(const GrayImage& a, const GrayImage& b) {
    if (!a.same_size(b)) throw std::invalid_argument("max_abs_diff: size mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.pixels.size(); ++i) {
        m = std::max(m, std::abs(a.pixels[i] - b.pixels[i]));
    }
    return m;
}

void write_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_pgm: cannot open " + path);
    f << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> row(static_cast<size_t>(img.width));
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double v = std::clamp(img.at(x, y), 0.0, 1.0);
            row[static_cast<size_t>(x)] =
                static_cast<unsigned char>(std::lround(v * 255.0));
        }
        f.write(reinterpret_cast<const char*>(row.data()), img.width);
    }
    if (!f) throw std::runtime_error("write_pgm: write failed for " + path);
}

namespace {

int next_pgm_int(std::istream& in) {
    // skips whitespace and '#' comments per the netpbm header grammar
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF) throw std::runtime_error("read_pgm: truncated header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    return value;
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_pgm: cannot open " + path);
    char m0 = 0, m1 = 0;
    f.get(m0);
    f.get(m1);
    if (m0 != 'P' || m1 != '5') throw std::runtime_error("read_pgm: not a binary PGM (P5)");
    int w = next_pgm_int(f);
    int h = next_pgm_int(f);
    int maxval = next_pgm_int(f);
    if (w < 1 || h < 1) throw std::runtime_error("read_pgm: bad dimensions");
    if (maxval != 255) throw std::runtime_error("read_pgm: only maxval 255 supported");
    GrayImage img(w, h);
    std::vector<unsigned char> row(static_cast<size_t>(w));
    for (int y = 0; y < h; ++y) {
        f.read(reinterpret_cast<char*>(row.data()), w);
        if (!f) throw std::runtime_error("read_pgm: truncated pixel data");
        for (int x = 0; x < w; ++x) {
            img.at(x, y) = static_cast<double>(row[static_cast<size_t>(x)]) / 255.0;
        }
    }
    return img;
}

}  // namespace lpt

#include "lpt/synth/plate.hpp"

#include <algorithm>

#include "lpt/rng.hpp"
#include "lpt/synth/font.hpp"
#include "lpt/utf8.hpp"

namespace lpt::synth {

int PlateString::glyph_count() const {
    return static_cast<int>(utf8_decode(text()).size());
}

void PlateString::validate(const Alphabet& a) const {
    auto check_part = [&](const std::string& part, size_t lo, size_t hi, const char* name) {
        const auto cps = utf8_decode(part);
        if (cps.size() < lo || cps.size() > hi) {
            throw std::invalid_argument(std::string("PlateString: bad ") + name + " length");
        }
        for (uint32_t cp : cps) a.id_of(cp);  // throws UnknownGlyphError
    };
    check_part(district, 1, 3, "district");
    check_part(middle, 1, 2, "middle");
    check_part(number, 1, 4, "number");
    for (char c : number) {
        if (c < '0' || c > '9') throw std::invalid_argument("PlateString: number part not digits");
    }
    if (glyph_count() > kMaxLabelGlyphs) {
        throw std::invalid_argument("PlateString: more than 9 glyphs");
    }
}

namespace {

const std::vector<uint32_t>& district_letters() {
    static const std::vector<uint32_t> v = [] {
        std::vector<uint32_t> out;
        for (uint32_t c = 'A'; c <= 'Z'; ++c) out.push_back(c);
        out.push_back(0xC4);
        out.push_back(0xD6);
        out.push_back(0xDC);
        return out;
    }();
    return v;
}

std::string sample_chars(SplitMix64& rng, const std::vector<uint32_t>& set, int count) {
    std::vector<uint32_t> cps;
    cps.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        cps.push_back(set[static_cast<size_t>(
            rng.uniform_int(0, static_cast<int64_t>(set.size()) - 1))]);
    }
    return utf8_encode(cps);
}

}  // namespace

PlateString sample_plate_string(uint64_t rng_seed, const SampleOptions& opts) {
    if (opts.min_glyphs < 3 || opts.max_glyphs > 7 || opts.min_glyphs > opts.max_glyphs) {
        throw std::invalid_argument("SampleOptions: glyph budget must satisfy 3 <= min <= max <= 7");
    }
    SplitMix64 rng(rng_seed);

    // each later part's range shrinks so district+middle+number stays in budget
    const int d = static_cast<int>(rng.uniform_int(1, std::min(3, opts.max_glyphs - 2)));
    const int m = static_cast<int>(rng.uniform_int(1, std::min(2, opts.max_glyphs - d - 1)));
    const int n_lo = std::max(1, opts.min_glyphs - d - m);
    const int n_hi = std::min(4, opts.max_glyphs - d - m);
    const int n = static_cast<int>(rng.uniform_int(n_lo, n_hi));

    static const std::vector<uint32_t> plain_letters = [] {
        std::vector<uint32_t> out;
        for (uint32_t c = 'A'; c <= 'Z'; ++c) out.push_back(c);
        return out;
    }();
    static const std::vector<uint32_t> digits = [] {
        std::vector<uint32_t> out;
        for (uint32_t c = '0'; c <= '9'; ++c) out.push_back(c);
        return out;
    }();

    PlateString p;
    p.district = sample_chars(rng, district_letters(), d);
    p.middle = sample_chars(rng, plain_letters, m);
    p.number = sample_chars(rng, digits, n);
    return p;
}

GrayImage render_text(const std::string& text, const RenderOptions& opts) {
    const std::vector<uint32_t> cps = utf8_decode(text);
    const int n = static_cast<int>(cps.size());
    if (n * opts.cell_w > opts.width) {
        throw TextTooWideError("render_text: " + std::to_string(n) + " cells of " +
                               std::to_string(opts.cell_w) + " px exceed width " +
                               std::to_string(opts.width));
    }
    const int glyph_h = kGlyphRows * opts.glyph_scale;
    if (glyph_h > opts.height) {
        throw std::invalid_argument("render_text: glyph taller than canvas");
    }

    GrayImage img(opts.width, opts.height, opts.background);
    const int x0 = (opts.width - n * opts.cell_w) / 2;
    const int y0 = (opts.height - glyph_h) / 2;
    const int inset = (opts.cell_w - kGlyphCols * opts.glyph_scale) / 2;

    for (int i = 0; i < n; ++i) {
        const GlyphBitmap* g = find_glyph(cps[static_cast<size_t>(i)]);
        if (!g) {
            throw UnknownGlyphError("render_text: no bitmap for '" +
                                    utf8_encode_one(cps[static_cast<size_t>(i)]) + "'");
        }
        const int gx = x0 + i * opts.cell_w + inset;
        for (int r = 0; r < kGlyphRows; ++r) {
            for (int c = 0; c < kGlyphCols; ++c) {
                if (!g->test(r, c)) continue;
                for (int dy = 0; dy < opts.glyph_scale; ++dy) {
                    for (int dx = 0; dx < opts.glyph_scale; ++dx) {
                        img.at(gx + c * opts.glyph_scale + dx,
                               y0 + r * opts.glyph_scale + dy) = opts.ink;
                    }
                }
            }
        }
    }
    return img;
}

GrayImage render_plate(const PlateString& p, const RenderOptions& opts) {
    return render_text(p.text(), opts);
}

}  // namespace lpt::synth

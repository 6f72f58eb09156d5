#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "lpt/image.hpp"
#include "lpt/synth/alphabet.hpp"

namespace lpt::synth {

struct TextTooWideError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// German-format plate: district '-' letters '-' digits. The rendered text
// joins the parts with '-' and carries at most 9 glyphs in total.
struct PlateString {
    std::string district;  // 1-3 letters (umlauts allowed)
    std::string middle;    // 1-2 letters
    std::string number;    // 1-4 digits

    std::string text() const { return district + "-" + middle + "-" + number; }
    int glyph_count() const;  // including separators

    void validate(const Alphabet& a = Alphabet::german()) const;
};

struct SampleOptions {
    // glyph budget for district+middle+number, separators excluded;
    // 7 is the most the 9-glyph label can hold
    int min_glyphs = 3;
    int max_glyphs = 7;
};

// Deterministic for a given seed. Part lengths are uniform over the range
// that keeps the plate inside the glyph budget; characters are uniform over
// the part's legal glyph set (district may carry umlauts, middle may not).
PlateString sample_plate_string(uint64_t rng_seed, const SampleOptions& opts = {});

struct RenderOptions {
    int width = 180;
    int height = 40;
    int cell_w = 19;
    int glyph_scale = 3;
    double background = 0.92;
    double ink = 0.08;

    static RenderOptions paper() { return RenderOptions{}; }
    static RenderOptions desk() { return RenderOptions{120, 28, 14, 2, 0.92, 0.08}; }
};

// Deterministic nearest-cell rendering onto a light background, glyphs laid
// out left to right and centered. Throws TextTooWideError when the glyph
// cells do not fit the canvas width.
GrayImage render_text(const std::string& text, const RenderOptions& opts = {});
GrayImage render_plate(const PlateString& p, const RenderOptions& opts = {});

}  // namespace lpt::synth

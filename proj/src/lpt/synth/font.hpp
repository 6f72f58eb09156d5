#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace lpt::synth {

// Compiled-in monospaced bitmap font: 5x7 letter shapes in a 5x9 cell that
// leaves headroom for the umlaut dots. Row 7 of the base shape is the
// baseline.
inline constexpr int kGlyphCols = 5;
inline constexpr int kGlyphRows = 9;

struct GlyphBitmap {
    std::array<uint8_t, kGlyphRows> rows{};  // 5 LSBs used, MSB side is the left edge

    bool test(int row, int col) const {
        return (rows[static_cast<size_t>(row)] >> (kGlyphCols - 1 - col)) & 1;
    }
};

// nullptr when the code point is not in the atlas
const GlyphBitmap* find_glyph(uint32_t codepoint);

}  // namespace lpt::synth

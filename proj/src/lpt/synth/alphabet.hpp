#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace lpt::synth {

struct UnknownGlyphError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fixed label layout: up to 9 glyphs plus SOS and EOS.
inline constexpr int kMaxLabelLen = 11;
inline constexpr int kMaxLabelGlyphs = kMaxLabelLen - 2;

// Output vocabulary: dense 0-based glyph ids in a stable order, with SOS, EOS
// and PAD appended as the last three ids.
class Alphabet {
  public:
    explicit Alphabet(std::vector<uint32_t> glyphs);

    // A-Z, umlauts, 0-9, '-'  (40 glyphs, vocabulary size 43)
    static const Alphabet& german();

    int glyph_count() const { return static_cast<int>(glyphs_.size()); }
    int size() const { return glyph_count() + 3; }
    int sos_id() const { return glyph_count(); }
    int eos_id() const { return glyph_count() + 1; }
    int pad_id() const { return glyph_count() + 2; }

    bool contains(uint32_t cp) const { return ids_.count(cp) != 0; }
    int id_of(uint32_t cp) const;
    uint32_t glyph(int id) const;

    // [SOS, glyph ids..., EOS], padded with PAD to max_len.
    std::vector<int> encode_label(const std::string& text, int max_len = kMaxLabelLen) const;

    // Inverse: strips specials, stops at EOS.
    std::string decode_ids(const std::vector<int>& ids) const;

  private:
    std::vector<uint32_t> glyphs_;
    std::unordered_map<uint32_t, int> ids_;
};

}  // namespace lpt::synth

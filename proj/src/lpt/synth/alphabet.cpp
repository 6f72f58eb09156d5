#include "lpt/synth/alphabet.hpp"

#include "lpt/utf8.hpp"

namespace lpt::synth {

Alphabet::Alphabet(std::vector<uint32_t> glyphs) : glyphs_(std::move(glyphs)) {
    if (glyphs_.empty()) throw std::invalid_argument("Alphabet: empty glyph set");
    for (size_t i = 0; i < glyphs_.size(); ++i) {
        if (!ids_.emplace(glyphs_[i], static_cast<int>(i)).second) {
            throw std::invalid_argument("Alphabet: duplicate glyph");
        }
    }
}

const Alphabet& Alphabet::german() {
    static const Alphabet a = [] {
        std::vector<uint32_t> g;
        for (uint32_t c = 'A'; c <= 'Z'; ++c) g.push_back(c);
        g.push_back(0xC4);  // Ä
        g.push_back(0xD6);  // Ö
        g.push_back(0xDC);  // Ü
        for (uint32_t c = '0'; c <= '9'; ++c) g.push_back(c);
        g.push_back('-');
        return Alphabet(g);
    }();
    return a;
}

int Alphabet::id_of(uint32_t cp) const {
    auto it = ids_.find(cp);
    if (it == ids_.end()) {
        throw UnknownGlyphError("Alphabet: unknown glyph '" + utf8_encode_one(cp) + "'");
    }
    return it->second;
}

uint32_t Alphabet::glyph(int id) const {
    if (id < 0 || id >= glyph_count()) {
        throw std::out_of_range("Alphabet: glyph id out of range");
    }
    return glyphs_[static_cast<size_t>(id)];
}

std::vector<int> Alphabet::encode_label(const std::string& text, int max_len) const {
    const std::vector<uint32_t> cps = utf8_decode(text);
    if (static_cast<int>(cps.size()) > max_len - 2) {
        throw std::invalid_argument("encode_label: text of " + std::to_string(cps.size()) +
                                    " glyphs does not fit in " + std::to_string(max_len));
    }
    std::vector<int> out;
    out.reserve(static_cast<size_t>(max_len));
    out.push_back(sos_id());
    for (uint32_t cp : cps) out.push_back(id_of(cp));
    out.push_back(eos_id());
    while (static_cast<int>(out.size()) < max_len) out.push_back(pad_id());
    return out;
}

std::string Alphabet::decode_ids(const std::vector<int>& ids) const {
    std::vector<uint32_t> cps;
    for (int id : ids) {
        if (id == eos_id()) break;
        if (id == sos_id() || id == pad_id()) continue;
        cps.push_back(glyph(id));
    }
    return utf8_encode(cps);
}

}  // namespace lpt::synth

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpt {

// Minimal UTF-8 helpers. Plate strings carry the German umlauts, so anything
// that counts characters (edit distance, glyph lookup) works on code points.
std::vector<uint32_t> utf8_decode(const std::string& s);
std::string utf8_encode(const std::vector<uint32_t>& cps);
std::string utf8_encode_one(uint32_t cp);

}  // namespace lpt

#include <filesystem>
#include <set>

#include "doctest.h"
#include "lpt/image.hpp"
#include "lpt/synth/font.hpp"
#include "lpt/synth/plate.hpp"
#include "lpt/utf8.hpp"

using namespace lpt;
using namespace lpt::synth;

TEST_CASE("alphabet layout") {
    const Alphabet& a = Alphabet::german();
    CHECK(a.glyph_count() == 40);
    CHECK(a.size() == 43);
    CHECK(a.sos_id() == 40);
    CHECK(a.eos_id() == 41);
    CHECK(a.pad_id() == 42);
    CHECK(a.id_of('A') == 0);
    CHECK(a.id_of('Z') == 25);
    CHECK(a.id_of(0xC4) == 26);  // Ä
    CHECK(a.id_of('0') == 29);
    CHECK(a.id_of('-') == 39);
    CHECK_THROWS_AS(a.id_of('a'), UnknownGlyphError);

    // the glyph-count knob: a 41-glyph variant shifts the specials by one
    std::vector<uint32_t> extended;
    for (uint32_t c = 'A'; c <= 'Z'; ++c) extended.push_back(c);
    extended.insert(extended.end(), {0xC4, 0xD6, 0xDC});
    for (uint32_t c = '0'; c <= '9'; ++c) extended.push_back(c);
    extended.push_back('-');
    extended.push_back(0x2E);  // '.'
    Alphabet b(extended);
    CHECK(b.glyph_count() == 41);
    CHECK(b.size() == 44);
    CHECK(b.sos_id() == 41);
}

TEST_CASE("encode_label layout and round trip") {
    const Alphabet& a = Alphabet::german();

    SUBCASE("single glyph example") {
        const std::vector<int> ids = a.encode_label("A");
        CHECK(ids.size() == 11);
        CHECK(ids[0] == 40);
        CHECK(ids[1] == 0);
        CHECK(ids[2] == 41);
        for (size_t i = 3; i < ids.size(); ++i) CHECK(ids[i] == 42);
    }
    SUBCASE("nine glyphs leave no PAD before EOS") {
        const std::string label = "ABC-DE-12";
        REQUIRE(utf8_decode(label).size() == 9);
        const std::vector<int> ids = a.encode_label(label);
        CHECK(ids.size() == 11);
        CHECK(ids[10] == a.eos_id());
        for (size_t i = 1; i < 10; ++i) CHECK(ids[i] != a.pad_id());
    }
    SUBCASE("unknown glyph and overflow") {
        CHECK_THROWS_AS(a.encode_label("A?C"), UnknownGlyphError);
        CHECK_THROWS(a.encode_label("ABC-DE-1234"));  // 11 glyphs
    }
    SUBCASE("round trip over random plates") {
        for (uint64_t seed = 0; seed < 1000; ++seed) {
            const PlateString p = sample_plate_string(seed);
            CHECK(a.decode_ids(a.encode_label(p.text())) == p.text());
        }
    }
}

TEST_CASE("plate sampling is deterministic and format-legal") {
    CHECK(sample_plate_string(0).text() == sample_plate_string(0).text());

    std::set<uint32_t> district_seen, middle_seen, digit_seen;
    std::set<int> d_len, m_len, n_len;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const PlateString p = sample_plate_string(static_cast<uint64_t>(i));
        p.validate();  // throws when any invariant is broken
        const auto d = utf8_decode(p.district);
        const auto m = utf8_decode(p.middle);
        const auto g = utf8_decode(p.number);
        d_len.insert(static_cast<int>(d.size()));
        m_len.insert(static_cast<int>(m.size()));
        n_len.insert(static_cast<int>(g.size()));
        CHECK(d.size() >= 1);
        CHECK(d.size() <= 3);
        CHECK(m.size() >= 1);
        CHECK(m.size() <= 2);
        CHECK(g.size() >= 1);
        CHECK(g.size() <= 4);
        CHECK(p.glyph_count() <= 9);
        if (i < 10000) {
            district_seen.insert(d.begin(), d.end());
            middle_seen.insert(m.begin(), m.end());
            digit_seen.insert(g.begin(), g.end());
        }
    }
    // every legal glyph of each part shows up within 10k seeds
    CHECK(district_seen.size() == 29);
    CHECK(middle_seen.size() == 26);
    CHECK(digit_seen.size() == 10);
    // all part lengths occur
    CHECK(d_len == std::set<int>{1, 2, 3});
    CHECK(m_len == std::set<int>{1, 2});
    CHECK(n_len == std::set<int>{1, 2, 3, 4});
}

TEST_CASE("glyph budget constraint") {
    SampleOptions desk{4, 6};
    for (uint64_t seed = 0; seed < 2000; ++seed) {
        const PlateString p = sample_plate_string(seed, desk);
        const int glyphs = p.glyph_count() - 2;  // separators out
        CHECK(glyphs >= 4);
        CHECK(glyphs <= 6);
    }
    CHECK_THROWS(sample_plate_string(0, SampleOptions{2, 6}));
    CHECK_THROWS(sample_plate_string(0, SampleOptions{3, 8}));
}

TEST_CASE("render_plate") {
    const PlateString pa{"A", "A", "1"};
    const PlateString pb{"B", "B", "8"};

    SUBCASE("deterministic, sized, in range, light background, dark strokes") {
        const GrayImage img = render_plate(pa);
        CHECK(img.width == 180);
        CHECK(img.height == 40);
        CHECK(render_plate(pa).pixels == img.pixels);
        int dark = 0, light = 0;
        for (double v : img.pixels) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            if (v <= 0.2) ++dark;
            if (v >= 0.8) ++light;
        }
        CHECK(dark > 0);
        CHECK(light > 0);
        CHECK(dark + light == static_cast<int>(img.pixels.size()));
    }
    SUBCASE("different plates render differently") {
        CHECK(render_plate(pa).pixels != render_plate(pb).pixels);
    }
    SUBCASE("umlauts render with dots above the base letter") {
        const GrayImage uml = render_text("Ü");
        const GrayImage base = render_text("U");
        CHECK(uml.pixels != base.pixels);
    }
    SUBCASE("text too wide") {
        CHECK_THROWS_AS(render_text("ABCDEFGHIJ"), TextTooWideError);  // 10 cells of 19 px
        RenderOptions narrow;
        narrow.width = 60;
        CHECK_THROWS_AS(render_plate(pa, narrow), TextTooWideError);
    }
    SUBCASE("desk preset") {
        const GrayImage img = render_plate(pa, RenderOptions::desk());
        CHECK(img.width == 120);
        CHECK(img.height == 28);
    }
    SUBCASE("every alphabet glyph has a bitmap") {
        const Alphabet& a = Alphabet::german();
        for (int id = 0; id < a.glyph_count(); ++id) {
            CHECK(find_glyph(a.glyph(id)) != nullptr);
        }
    }
}

TEST_CASE("pgm round trip") {
    const GrayImage img = render_plate(PlateString{"MÜ", "X", "99"});
    const std::string path = (std::filesystem::temp_directory_path() / "lpt_test.pgm").string();
    write_pgm(img, path);
    const GrayImage back = read_pgm(path);
    REQUIRE(back.same_size(img));
    // 8-bit quantization is the only loss
    CHECK(max_abs_diff(back, img) <= 0.5 / 255.0 + 1e-12);
    std::filesystem::remove(path);
}

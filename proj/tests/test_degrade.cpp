#include <cmath>

#include "doctest.h"
#include "lpt/degrade/dct.hpp"
#include "lpt/degrade/jpeg_sim.hpp"
#include "lpt/degrade/resize.hpp"
#include "lpt/rng.hpp"
#include "lpt/synth/plate.hpp"
#include "oracles.hpp"

using namespace lpt;
using namespace lpt::degrade;

TEST_CASE("bilinear resize basics") {
    SplitMix64 rng(1);
    GrayImage img(13, 7);
    for (auto& p : img.pixels) p = rng.u01();

    SUBCASE("same size is the identity") {
        GrayImage same = bilinear_resize(img, 13, 7);
        CHECK(same.pixels == img.pixels);
    }
    SUBCASE("constant image stays constant at any size") {
        GrayImage flat(5, 9, 0.37);
        for (auto [w, h] : {std::pair{2, 3}, {17, 1}, {40, 40}}) {
            GrayImage r = bilinear_resize(flat, w, h);
            for (double v : r.pixels) CHECK(v == doctest::Approx(0.37).epsilon(1e-12));
        }
    }
    SUBCASE("2x1 ramp to 4x1, hand-evaluated taps") {
        // half-pixel centers map output x to source 0.5*x - 0.25, clamped:
        // [0, 0.25, 0.75, 1]
        GrayImage ramp(2, 1);
        ramp.at(0, 0) = 0.0;
        ramp.at(1, 0) = 1.0;
        GrayImage up = bilinear_resize(ramp, 4, 1);
        const double expect[4] = {0.0, 0.25, 0.75, 1.0};
        for (int x = 0; x < 4; ++x) {
            CHECK(up.at(x, 0) == doctest::Approx(expect[x]).epsilon(1e-12));
        }
        for (int x = 1; x < 4; ++x) CHECK(up.at(x, 0) >= up.at(x - 1, 0));
    }
    SUBCASE("values remain in [0,1]") {
        GrayImage r = bilinear_resize(img, 29, 3);
        for (double v : r.pixels) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("blockwise dct") {
    SUBCASE("constant block is DC-only") {
        Block8 flat;
        flat.fill(128.0);
        Block8 c = blockwise_dct(flat);
        CHECK(c[0] == doctest::Approx(128.0 * 8.0).epsilon(1e-12));
        for (size_t i = 1; i < 64; ++i) CHECK(std::abs(c[i]) < 1e-10);
    }
    SUBCASE("orthonormality preserves the l2 norm") {
        SplitMix64 rng(2);
        Block8 x;
        for (auto& v : x) v = rng.u01() * 255.0 - 128.0;
        Block8 c = blockwise_dct(x);
        double nx = 0.0, nc = 0.0;
        for (size_t i = 0; i < 64; ++i) {
            nx += x[i] * x[i];
            nc += c[i] * c[i];
        }
        CHECK(std::abs(std::sqrt(nx) - std::sqrt(nc)) < 1e-10);
    }
    SUBCASE("idct inverts dct to double round-off") {
        SplitMix64 rng(3);
        Block8 x;
        for (auto& v : x) v = rng.u01() * 255.0 - 128.0;
        Block8 back = blockwise_idct(blockwise_dct(x));
        for (size_t i = 0; i < 64; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-10);
    }
}

TEST_CASE("jpeg_degrade") {
    const synth::PlateString plate{"NBG", "XY", "12"};
    const GrayImage clean = synth::render_plate(plate);

    SUBCASE("unit table only costs transform round-off") {
        qf::QuantTable ones;
        ones.steps.fill(1);
        GrayImage out = jpeg_degrade(clean, ones);
        CHECK(out.same_size(clean));
        CHECK(max_abs_diff(out, clean) < 2.0 / 255.0);

        // pixels on the 8-bit grid keep the round-off below one level
        GrayImage eight_bit = clean;
        for (auto& p : eight_bit.pixels) p = std::round(p * 255.0) / 255.0;
        CHECK(max_abs_diff(jpeg_degrade(eight_bit, ones), eight_bit) < 1.0 / 255.0);
    }
    SUBCASE("constant image stays constant under any table") {
        GrayImage flat(20, 12, 0.6);
        for (int qfv : {1, 10, 50, 100}) {
            GrayImage out = jpeg_degrade(flat, qf::standard_qtable(qfv));
            for (double v : out.pixels) CHECK(v == doctest::Approx(out.pixels[0]).epsilon(1e-12));
        }
        // with a unit table the constant also keeps its value
        qf::QuantTable ones;
        ones.steps.fill(1);
        GrayImage out = jpeg_degrade(flat, ones);
        for (double v : out.pixels) CHECK(std::abs(v - 0.6) < 1.0 / 255.0);
    }
    SUBCASE("idempotent for constant images") {
        GrayImage flat(16, 16, 0.23);
        for (int qfv : {1, 7, 35, 90}) {
            const qf::QuantTable t = qf::standard_qtable(qfv);
            GrayImage once = jpeg_degrade(flat, t);
            GrayImage twice = jpeg_degrade(once, t);
            CHECK(max_abs_diff(once, twice) < 1e-9);
        }
    }
    SUBCASE("matches the straight-line oracle on a fixed 16x16 image at QF=10") {
        GrayImage img(16, 16);
        for (int y = 0; y < 16; ++y) {
            for (int x = 0; x < 16; ++x) {
                img.at(x, y) = static_cast<double>((x * 16 + y * 3) % 256) / 255.0;
            }
        }
        const qf::QuantTable t = qf::standard_qtable(10);
        GrayImage got = jpeg_degrade(img, t);
        GrayImage want = oracle::naive_jpeg_degrade(img, t);
        CHECK(max_abs_diff(got, want) < 1e-9);
    }
    SUBCASE("oracle also agrees on non-multiple-of-8 sizes") {
        GrayImage img(13, 10);
        SplitMix64 rng(4);
        for (auto& p : img.pixels) p = rng.u01();
        const qf::QuantTable t = qf::standard_qtable(25);
        CHECK(max_abs_diff(jpeg_degrade(img, t), oracle::naive_jpeg_degrade(img, t)) < 1e-9);
    }
}

TEST_CASE("degrade_pipeline") {
    const synth::PlateString plate{"B", "AB", "42"};
    const GrayImage clean = synth::render_plate(plate);

    SUBCASE("qf=100 at full width is a near-identity") {
        GrayImage out = degrade_pipeline(clean, DegradeParams{180, 100, 0});
        CHECK(out.width == 180);
        CHECK(out.height == 40);
        CHECK(max_abs_diff(out, clean) < 2.0 / 255.0);
    }
    SUBCASE("deterministic") {
        DegradeParams p{55, 13, 0};
        GrayImage a = degrade_pipeline(clean, p);
        GrayImage b = degrade_pipeline(clean, p);
        CHECK(a.pixels == b.pixels);
    }
    SUBCASE("output stays in range and size") {
        for (int rw : {20, 67, 180}) {
            for (int qfv : {1, 50, 100}) {
                GrayImage out = degrade_pipeline(clean, DegradeParams{rw, qfv, 0});
                CHECK(out.width == clean.width);
                CHECK(out.height == clean.height);
                for (double v : out.pixels) {
                    CHECK(v >= 0.0);
                    CHECK(v <= 1.0);
                }
            }
        }
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS(degrade_pipeline(clean, DegradeParams{10, 50, 0}));
        CHECK_THROWS(degrade_pipeline(clean, DegradeParams{50, 0, 0}));
    }
}

TEST_CASE("severe degradation is nontrivial and ordered") {
    double mae_severe = 0.0;
    double mse_severe = 0.0, mse_mild = 0.0;
    const int n = 100;
    for (int i = 0; i < n; ++i) {
        const synth::PlateString p = synth::sample_plate_string(static_cast<uint64_t>(i));
        const GrayImage clean = synth::render_plate(p);
        const GrayImage severe = degrade_pipeline(clean, DegradeParams{20, 1, 0});
        const GrayImage mild = degrade_pipeline(clean, DegradeParams{180, 100, 0});
        mae_severe += mean_abs_diff(severe, clean);
        mse_severe += mean_sq_diff(severe, clean);
        mse_mild += mean_sq_diff(mild, clean);
    }
    CHECK(mae_severe / n > 0.02);
    CHECK(mse_severe / n > mse_mild / n);
}

/*
 * Copyright 2026 AMPCS contributors
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include <ampcs/image.hpp>

#include "helpers.hpp"

using namespace ampcs;
using ampcs::test::TempDir;

TEST_SUITE_BEGIN("imaging");

TEST_CASE("load_image decodes a small binary PGM") {
    TempDir tmp;
    const auto path = tmp / "small.pgm";
    ampcs::test::write_bytes(path, std::string("P5\n2 2\n255\n") +
                                       std::string("\x00\x00\xff\x80", 4));
    const GrayImage img = load_image(path);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 0, 255, 128});
}

TEST_CASE("load_image accepts space-separated headers") {
    TempDir tmp;
    const auto path = tmp / "one.pgm";
    ampcs::test::write_bytes(path, std::string("P5 1 1 255 ") + '\x7f');
    const GrayImage img = load_image(path);
    CHECK(img.width == 1);
    CHECK(img.height == 1);
    CHECK(img.pixels == std::vector<std::uint8_t>{127});
}

TEST_CASE("load_image rejects bad input") {
    TempDir tmp;

    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_image(tmp / "nope.pgm"), IoError);
    }
    SUBCASE("wrong magic") {
        const auto path = tmp / "color.ppm";
        ampcs::test::write_bytes(path, "P6\n1 1\n255\nxyz");
        CHECK_THROWS_AS(load_image(path), FormatError);
    }
    SUBCASE("wrong depth") {
        const auto path = tmp / "depth.pgm";
        ampcs::test::write_bytes(path, std::string("P5\n1 1\n65535\n") + "ab");
        CHECK_THROWS_AS(load_image(path), FormatError);
    }
    SUBCASE("truncated raster") {
        const auto path = tmp / "short.pgm";
        ampcs::test::write_bytes(path, "P5\n4 4\n255\nabc");
        CHECK_THROWS_AS(load_image(path), FormatError);
    }
    SUBCASE("zero area") {
        const auto path = tmp / "zero.pgm";
        ampcs::test::write_bytes(path, "P5\n0 0\n255\n");
        CHECK_THROWS_AS(load_image(path), FormatError);
    }
    SUBCASE("absurd dimensions") {
        const auto path = tmp / "huge.pgm";
        ampcs::test::write_bytes(path, "P5\n999999999999 1\n255\nx");
        CHECK_THROWS_AS(load_image(path), FormatError);
    }
}

TEST_CASE("save_image emits the exact P5 byte layout and round-trips") {
    TempDir tmp;
    GrayImage img;
    img.width = 3;
    img.height = 2;
    img.pixels = {1, 2, 3, 250, 251, 252};
    const auto path = tmp / "out.pgm";
    save_image(img, path);

    const std::string bytes = ampcs::test::read_bytes(path);
    CHECK(bytes == std::string("P5\n3 2\n255\n") + '\x01' + '\x02' + '\x03' + '\xfa' +
                       '\xfb' + '\xfc');
    CHECK(load_image(path) == img);
}

TEST_CASE("histogram counts intensities") {
    GrayImage img{2, 2, {0, 0, 255, 128}};
    const Histogram h = histogram(img);
    CHECK(h.bins[0] == 2);
    CHECK(h.bins[128] == 1);
    CHECK(h.bins[255] == 1);
    CHECK(h.total == 4);
    CHECK(std::accumulate(h.bins.begin(), h.bins.end(), std::uint64_t{0}) == 4);

    GrayImage zeros{16, 16, std::vector<std::uint8_t>(256, 0)};
    const Histogram hz = histogram(zeros);
    CHECK(hz.bins[0] == 256);
    CHECK(hz.total == 256);

    GrayImage single{1, 1, {5}};
    const Histogram hs = histogram(single);
    CHECK(hs.bins[5] == 1);
    CHECK(hs.total == 1);
}

TEST_CASE("histogram conservation holds for random images") {
    Prng rng(42);
    for (int i = 0; i < 50; ++i) {
        const int w = 1 + static_cast<int>(rng.index(40));
        const int h = 1 + static_cast<int>(rng.index(40));
        const GrayImage img = ampcs::test::random_image(rng, w, h);
        const Histogram hist = histogram(img);
        CHECK(std::accumulate(hist.bins.begin(), hist.bins.end(), std::uint64_t{0}) ==
              static_cast<std::uint64_t>(w) * h);
        CHECK(hist.total == static_cast<std::uint64_t>(w) * h);
    }
}

TEST_CASE("normalize divides by the tallest bin") {
    Histogram h;
    h.bins[0] = 2;
    h.bins[17] = 1;
    h.total = 3;
    const NormalizedHistogram n = normalize(h);
    CHECK(n.values[0] == 1.0);
    CHECK(n.values[17] == 0.5);
    CHECK(n.values[200] == 0.0);

    SUBCASE("uniform histogram maps to all ones") {
        Histogram u;
        u.bins.fill(7);
        u.total = 7 * 256;
        const NormalizedHistogram nu = normalize(u);
        CHECK(std::all_of(nu.values.begin(), nu.values.end(),
                          [](double v) { return v == 1.0; }));
    }
    SUBCASE("empty histogram is rejected") {
        CHECK_THROWS_AS(normalize(Histogram{}), EmptyHistogram);
    }
}

TEST_CASE("normalize preserves the argmax bin") {
    Prng rng(7);
    for (int i = 0; i < 30; ++i) {
        const GrayImage img = ampcs::test::random_image(rng, 16, 16);
        const Histogram h = histogram(img);
        const NormalizedHistogram n = normalize(h);
        const auto arg_h = std::max_element(h.bins.begin(), h.bins.end()) - h.bins.begin();
        const auto arg_n =
            std::max_element(n.values.begin(), n.values.end()) - n.values.begin();
        CHECK(arg_h == arg_n);
    }
}

TEST_CASE("sample_stride picks every stride-th value") {
    std::vector<double> ramp(256);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        ramp[i] = static_cast<double>(i) / 255.0;
    }
    const auto out = sample_stride(ramp, 8);
    REQUIRE(out.size() == 32);
    for (std::size_t j = 0; j < out.size(); ++j) {
        CHECK(out[j] == doctest::Approx(8.0 * j / 255.0).epsilon(1e-15));
    }

    SUBCASE("degenerate stride keeps only the first value") {
        const auto one = sample_stride(ramp, 256);
        CHECK(one == std::vector<double>{ramp[0]});
    }
    SUBCASE("stride must divide 256") {
        CHECK_THROWS_AS(sample_stride(ramp, 7), BadStride);
        CHECK_THROWS_AS(sample_stride(ramp, 0), BadStride);
    }
    SUBCASE("input must hold 256 values") {
        CHECK_THROWS_AS(sample_stride(std::vector<double>(100), 4), BadLength);
    }
}

TEST_CASE("sample_stride of a normalized histogram yields 32 values in [0, 1]") {
    Prng rng(11);
    for (int i = 0; i < 20; ++i) {
        const GrayImage img = ampcs::test::random_image(rng, 32, 32);
        const NormalizedHistogram n = normalize(histogram(img));
        const auto out = sample_stride(n.values, 8);
        REQUIRE(out.size() == 32);
        for (double v : out) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("motion_blur with extent 1 is the identity") {
    Prng rng(3);
    const GrayImage img = ampcs::test::random_image(rng, 12, 9);
    CHECK(motion_blur(img, 1, Axis::Horizontal) == img);
    CHECK(motion_blur(img, 1, Axis::Vertical) == img);
}

TEST_CASE("motion_blur leaves constant images unchanged") {
    GrayImage img{10, 10, std::vector<std::uint8_t>(100, 77)};
    CHECK(motion_blur(img, 9, Axis::Horizontal) == img);
    CHECK(motion_blur(img, 4, Axis::Vertical) == img);
}

TEST_CASE("motion_blur spreads an impulse across the window") {
    // 1x9 row with a single 255 at the center, extent 9: every window
    // contains the impulse exactly once (replication only duplicates border
    // values), so each output pixel is round(255/9) = 28.
    GrayImage row{9, 1, {0, 0, 0, 0, 255, 0, 0, 0, 0}};
    const GrayImage out = motion_blur(row, 9, Axis::Horizontal);
    CHECK(out.pixels == std::vector<std::uint8_t>(9, 28));
}

TEST_CASE("motion_blur rejects extents wider than the blur axis") {
    GrayImage img{8, 4, std::vector<std::uint8_t>(32, 0)};
    CHECK_THROWS_AS(motion_blur(img, 0, Axis::Horizontal), BadExtent);
    CHECK_THROWS_AS(motion_blur(img, 9, Axis::Horizontal), BadExtent); // > width
    CHECK_THROWS_AS(motion_blur(img, 5, Axis::Vertical), BadExtent);   // > height
    CHECK_NOTHROW(motion_blur(img, 5, Axis::Horizontal));
}

TEST_CASE("motion_blur approximately preserves the mean") {
    Prng rng(5);
    for (int i = 0; i < 10; ++i) {
        const GrayImage img = ampcs::test::random_image(rng, 64, 64);
        const GrayImage out = motion_blur(img, 5, Axis::Horizontal);
        const auto mean = [](const GrayImage& g) {
            double acc = 0.0;
            for (auto p : g.pixels) acc += p;
            return acc / static_cast<double>(g.pixels.size());
        };
        CHECK(std::abs(mean(img) - mean(out)) <= 1.0);
    }
}

TEST_CASE("vertical blur is the transpose of horizontal blur") {
    Prng rng(9);
    const GrayImage img = ampcs::test::random_image(rng, 7, 13);
    const auto transpose = [](const GrayImage& g) {
        GrayImage t;
        t.width = g.height;
        t.height = g.width;
        t.pixels.resize(g.pixels.size());
        for (int y = 0; y < g.height; ++y) {
            for (int x = 0; x < g.width; ++x) {
                t.pixels[static_cast<std::size_t>(x) * t.width + y] = g.at(x, y);
            }
        }
        return t;
    };
    const GrayImage a = motion_blur(img, 3, Axis::Vertical);
    const GrayImage b = transpose(motion_blur(transpose(img), 3, Axis::Horizontal));
    CHECK(a == b);
}

TEST_CASE("brightness_shift applies a clamped multiplicative gain") {
    GrayImage img{3, 1, {100, 250, 0}};
    SUBCASE("factor 0 is the identity") {
        CHECK(brightness_shift(img, 0.0) == img);
    }
    SUBCASE("plus ten percent") {
        const GrayImage out = brightness_shift(img, 0.10);
        CHECK(out.pixels == std::vector<std::uint8_t>{110, 255, 0});
    }
    SUBCASE("factor bounds") {
        CHECK_THROWS_AS(brightness_shift(img, 1.5), BadFactor);
        CHECK_THROWS_AS(brightness_shift(img, -1.01), BadFactor);
    }
    SUBCASE("outputs stay in range for random factors") {
        Prng rng(13);
        for (int i = 0; i < 20; ++i) {
            const GrayImage rnd = ampcs::test::random_image(rng, 8, 8);
            const GrayImage out = brightness_shift(rnd, rng.uniform(-1.0, 1.0));
            CHECK(out.pixels.size() == rnd.pixels.size());
        }
    }
}

TEST_SUITE_END();

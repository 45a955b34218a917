#include "histlight/imgproc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

namespace histlight {
namespace {

RgbImage solid(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  RgbImage img(w, h);
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    img.pixels[3 * p] = r;
    img.pixels[3 * p + 1] = g;
    img.pixels[3 * p + 2] = b;
  }
  return img;
}

ValueChannel random_channel(std::mt19937& rng, int w, int h, int levels) {
  std::uniform_int_distribution<int> d(0, levels - 1);
  std::vector<int> v(static_cast<std::size_t>(w) * h);
  for (int& x : v) x = d(rng);
  return ValueChannel(w, h, levels, std::move(v));
}

TEST(Hsv, PrimaryAndGray) {
  const HsvImage red = rgb_to_hsv(solid(1, 1, 255, 0, 0));
  EXPECT_DOUBLE_EQ(red.h[0], 0.0);
  EXPECT_DOUBLE_EQ(red.s[0], 1.0);
  EXPECT_DOUBLE_EQ(red.v[0], 1.0);

  const HsvImage gray = rgb_to_hsv(solid(1, 1, 128, 128, 128));
  EXPECT_DOUBLE_EQ(gray.s[0], 0.0);
  EXPECT_DOUBLE_EQ(gray.v[0], 128.0 / 255.0);

  const HsvImage blue = rgb_to_hsv(solid(1, 1, 0, 0, 200));
  EXPECT_DOUBLE_EQ(blue.h[0], 240.0);
}

TEST(Hsv, Inverse) {
  HsvImage h;
  h.width = 2;
  h.height = 1;
  h.h = {0.0, 0.0};
  h.s = {1.0, 0.0};
  h.v = {1.0, 0.5};
  const RgbImage rgb = hsv_to_rgb(h);
  EXPECT_EQ(rgb.pixels[0], 255);
  EXPECT_EQ(rgb.pixels[1], 0);
  EXPECT_EQ(rgb.pixels[2], 0);
  for (int c = 3; c < 6; ++c) EXPECT_NEAR(rgb.pixels[c], 128, 1);
}

TEST(Hsv, RoundTripEveryColorCube) {
  RgbImage img(64, 64 * 64);
  std::size_t p = 0;
  for (int r = 0; r < 256; r += 4) {
    for (int g = 0; g < 256; g += 4) {
      for (int b = 0; b < 256; b += 4, ++p) {
        img.pixels[3 * p] = static_cast<std::uint8_t>(r + 3 * (b & 1));
        img.pixels[3 * p + 1] = static_cast<std::uint8_t>(g + 1);
        img.pixels[3 * p + 2] = static_cast<std::uint8_t>(b + 2);
      }
    }
  }
  const RgbImage back = hsv_to_rgb(rgb_to_hsv(img));
  for (std::size_t k = 0; k < img.pixels.size(); ++k) {
    ASSERT_LE(std::abs(img.pixels[k] - back.pixels[k]), 1) << k;
  }
}

TEST(Quantize, Examples) {
  HsvImage h;
  h.width = 3;
  h.height = 1;
  h.h = {0, 0, 0};
  h.s = {0, 0, 0};
  h.v = {1.0, 0.2499, 0.0};
  EXPECT_EQ(quantize_value_channel(h, 256).data, (std::vector<int>{255, 64, 0}));
  h.v = {0.5, 0.25, 1.0};
  EXPECT_EQ(quantize_value_channel(h, 3).data, (std::vector<int>{1, 1, 2}));
  EXPECT_THROW(quantize_value_channel(h, 1), Error);
}

TEST(Gradient, ConstantIsZero) {
  const ValueChannel s(5, 4, 256, std::vector<int>(20, 77));
  for (GradientOperator op : {GradientOperator::ForwardL1, GradientOperator::Sobel}) {
    for (int v : gradient_channel(s, op).data) EXPECT_EQ(v, 0);
  }
}

TEST(Gradient, VerticalStep) {
  std::vector<int> v(6 * 3);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 6; ++x) v[y * 6 + x] = x < 3 ? 10 : 50;
  }
  const ValueChannel g = gradient_channel(ValueChannel(6, 3, 256, v));
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 6; ++x) EXPECT_EQ(g.at(x, y), x == 2 ? 40 : 0);
  }
}

TEST(Gradient, MatchesTwoLoopOracle) {
  std::mt19937 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const ValueChannel s = random_channel(rng, 4, 4, rep % 2 ? 8 : 256);
    const ValueChannel g = gradient_channel(s);
    for (int y = 0; y < 4; ++y) {
      for (int x = 0; x < 4; ++x) {
        int dx = 0, dy = 0;
        if (x < 3) dx = s.data[y * 4 + x + 1] - s.data[y * 4 + x];
        if (y < 3) dy = s.data[(y + 1) * 4 + x] - s.data[y * 4 + x];
        EXPECT_EQ(g.at(x, y), std::min(std::abs(dx) + std::abs(dy), s.levels - 1));
      }
    }
  }
}

TEST(Gradient, SobelStepResponse) {
  std::vector<int> v(6 * 6);
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 6; ++x) v[y * 6 + x] = x < 3 ? 0 : 80;
  }
  const ValueChannel g =
      gradient_channel(ValueChannel(6, 6, 256, v), GradientOperator::Sobel);
  // |Gx| = 4 * 80 on both sides of the edge, Gy = 0.
  EXPECT_EQ(g.at(2, 3), 40);
  EXPECT_EQ(g.at(3, 3), 40);
  EXPECT_EQ(g.at(0, 3), 0);
  EXPECT_EQ(g.at(5, 3), 0);
}

TEST(Equalize, TwoLevelImage) {
  std::vector<int> v(100, 0);
  for (int k = 75; k < 100; ++k) v[k] = 255;
  const ValueChannel out = histogram_equalize(ValueChannel(10, 10, 256, v));
  EXPECT_EQ(out.data[0], static_cast<int>(std::lround(0.75 * 255)));
  EXPECT_EQ(out.data[99], 255);
}

TEST(Equalize, UniformIsNearIdentity) {
  std::vector<int> v;
  for (int k = 0; k < 256; ++k) v.insert(v.end(), 3, k);
  const std::vector<int> map =
      equalization_map(compute_count_histogram(ValueChannel(256, 3, 256, v), 256));
  for (int k = 0; k < 256; ++k) EXPECT_NEAR(map[k], k, 1);
}

TEST(Equalize, MatchesCdfOracle) {
  std::mt19937 rng(32);
  for (int rep = 0; rep < 20; ++rep) {
    const ValueChannel s = random_channel(rng, 9, 7, 8);
    const std::vector<double> counts = testing::count_levels(s.data, 8);
    const ValueChannel out = histogram_equalize(s);
    for (std::size_t p = 0; p < s.data.size(); ++p) {
      double cdf = 0.0;
      for (int j = 0; j <= s.data[p]; ++j) cdf += counts[j];
      EXPECT_EQ(out.data[p], static_cast<int>(std::lround(7 * cdf / 63.0)));
    }
  }
}

TEST(Match, SelfTargetKeepsHistogram) {
  std::mt19937 rng(33);
  const ValueChannel s = random_channel(rng, 40, 30, 64);
  const CountHistogram h = compute_count_histogram(s, 64);
  EXPECT_EQ(compute_count_histogram(histogram_match(s, h), 64), h);
}

TEST(Match, ConstantImageToSpike) {
  const ValueChannel s(4, 4, 16, std::vector<int>(16, 3));
  std::vector<double> t(16, 0.0);
  t[11] = 16;
  const ValueChannel out = histogram_match(s, CountHistogram(t, 16));
  for (int v : out.data) EXPECT_EQ(v, 11);
}

TEST(Match, RejectsBadTargets) {
  const ValueChannel s(2, 2, 4, {0, 1, 2, 3});
  EXPECT_THROW(histogram_match(s, CountHistogram({0, 0, 0, 0}, 4)), Error);
  EXPECT_THROW(histogram_match(s, CountHistogram({1, 1, 1, 2}, 4)), Error);
  EXPECT_THROW(histogram_match(s, CountHistogram({2, 2}, 4)), Error);
}

TEST(Match, UniformTargetAgreesWithEqualization) {
  for (const RgbImage& img : testing::fixture_images()) {
    const ValueChannel s = quantize_value_channel(rgb_to_hsv(img), 256);
    const double n = static_cast<double>(s.pixel_count());
    const CountHistogram uniform(std::vector<double>(256, n / 256), n);
    const ValueChannel matched = histogram_match(s, uniform);
    const ValueChannel he = histogram_equalize(s);
    for (std::size_t p = 0; p < s.data.size(); ++p) {
      ASSERT_LE(std::abs(matched.data[p] - he.data[p]), 1);
    }
  }
}

TEST(Match, MapsAreMonotone) {
  std::mt19937 rng(34);
  for (int rep = 0; rep < 50; ++rep) {
    const CountHistogram a = testing::random_histogram(rng, 32, 500.0);
    const CountHistogram b = testing::random_histogram(rng, 32, 500.0);
    const std::vector<int> m = matching_map(a, b);
    const std::vector<int> e = equalization_map(a);
    for (int k = 1; k < 32; ++k) {
      EXPECT_GE(m[k], m[k - 1]);
      EXPECT_GE(e[k], e[k - 1]);
    }
  }
}

TEST(Enhance, KeepsDimensionsAndIsDeterministic) {
  const RgbImage img = synthetic_low_light_scene(97, 61, 9);
  const RgbImage a = enhance(img, OptParams{}, GammaParam{});
  const RgbImage b = enhance(img, OptParams{}, GammaParam{});
  EXPECT_EQ(a.width, 97);
  EXPECT_EQ(a.height, 61);
  EXPECT_EQ(a, b);
}

TEST(Enhance, OnlyValueChannelChanges) {
  const RgbImage img = testing::fixture_images()[2];
  const EnhanceResult res = enhance_detailed(img, OptParams{}, GammaParam{2.2});
  const HsvImage in = rgb_to_hsv(img);
  HsvImage rebuilt = in;
  const HsvImage out = rgb_to_hsv(res.image);
  const ValueChannel vq = quantize_value_channel(out, 256);
  for (std::size_t p = 0; p < vq.data.size(); ++p) rebuilt.v[p] = vq.data[p] / 255.0;
  EXPECT_EQ(hsv_to_rgb(rebuilt), res.image);
}

TEST(Enhance, GammaOneStaysClose) {
  const auto fixtures = testing::fixture_images();
  for (int f = 0; f < 3; ++f) {
    const RgbImage out = enhance(fixtures[f], OptParams{}, GammaParam{1.0});
    const ValueChannel a = quantize_value_channel(rgb_to_hsv(fixtures[f]), 256);
    const ValueChannel b = quantize_value_channel(rgb_to_hsv(out), 256);
    double sum = 0.0;
    for (std::size_t p = 0; p < a.data.size(); ++p) sum += std::abs(a.data[p] - b.data[p]);
    EXPECT_LE(sum / a.data.size(), 2.0) << "fixture " << f;
  }
}

TEST(Enhance, BrightensLowLight) {
  for (const RgbImage& img : testing::fixture_images()) {
    const RgbImage out = enhance(img, OptParams{}, GammaParam{2.2});
    EXPECT_GT(testing::mean_value_level(out), testing::mean_value_level(img) + 5.0);
  }
}

TEST(Enhance, ConstantColorLiftsValue) {
  for (int v : {20, 60, 120}) {
    const RgbImage img = solid(32, 32, static_cast<std::uint8_t>(v),
                               static_cast<std::uint8_t>(v / 2), 0);
    for (double gamma : {1.0, 2.2}) {
      const RgbImage out = enhance(img, OptParams{}, GammaParam{gamma});
      const std::uint8_t* first = out.at(0, 0);
      for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) {
          ASSERT_TRUE(std::equal(first, first + 3, out.at(x, y)));
        }
      }
      const double expected = 255.0 * std::pow(v / 255.0, 1.0 / gamma);
      EXPECT_NEAR(first[0], expected, 3.0) << v << " " << gamma;
    }
  }
}

TEST(Resize, NearestSampling) {
  RgbImage img(4, 2);
  for (int x = 0; x < 4; ++x) img.at(x, 1)[0] = static_cast<std::uint8_t>(10 * x);
  const RgbImage up = resize_nearest(img, 8, 4);
  EXPECT_EQ(up.at(7, 3)[0], 30);
  EXPECT_EQ(up.at(0, 3)[0], 0);
  EXPECT_EQ(up.at(2, 0)[0], 0);
  const RgbImage same = resize_nearest(img, 4, 2);
  EXPECT_EQ(same, img);
}

}  // namespace
}  // namespace histlight

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pixelport/errors.hpp"
#include "pixelport/pixel_modes.hpp"

using namespace pixelport;

namespace {

ComplexGrid random_grid(int w, int h, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  ComplexGrid g(w, h);
  for (auto& v : g.values) v = {u(rng), u(rng)};
  return g;
}

}  // namespace

TEST(Decompose, ZeroField) {
  const auto geom = GridGeometry::centered(3, 2, 0.7);
  const ImageField f = decompose(ComplexGrid(3, 2), geom);
  for (auto a : f.amplitudes) EXPECT_EQ(a, Amplitude{});
}

TEST(Decompose, SinglePixelScalesByPitch) {
  ComplexGrid g(1, 1);
  g.at(0, 0) = 1.0;
  const ImageField f = decompose(g, GridGeometry::centered(1, 1, 0.5));
  EXPECT_DOUBLE_EQ(f.amplitudes[0].real(), 0.5);
  EXPECT_EQ(f.amplitudes[0].imag(), 0.0);
}

TEST(Decompose, UniformFieldNormalised) {
  const int w = 6, h = 5;
  const double pitch = 0.3;
  const double n = w * h;
  ComplexGrid g(w, h);
  for (auto& v : g.values) v = 1.0 / (pitch * std::sqrt(n));
  const ImageField f = decompose(g, GridGeometry::centered(w, h, pitch));
  EXPECT_NEAR(f.total_energy(), 1.0, 1e-14);
}

TEST(Decompose, ShapeMismatch) {
  EXPECT_THROW(decompose(ComplexGrid(3, 3), GridGeometry::centered(3, 4, 1.0)), DimensionError);
}

TEST(Decompose, RejectsNonFinite) {
  ComplexGrid g(2, 2);
  g.at(1, 1) = {std::nan(""), 0.0};
  EXPECT_THROW(decompose(g, GridGeometry::centered(2, 2, 1.0)), std::invalid_argument);
}

TEST(Synthesize, Division) {
  ImageField f{GridGeometry::centered(1, 1, 0.5), {0.5}, 1.0};
  EXPECT_DOUBLE_EQ(synthesize(f).at(0, 0).real(), 1.0);
}

TEST(Synthesize, RoundTripIsExactForRandomImages) {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const ComplexGrid x = random_grid(8, 8, seed);
    // pitch a power of two keeps multiply/divide exact.
    const ComplexGrid y = synthesize(decompose(x, GridGeometry::centered(8, 8, 0.25)));
    double worst = 0.0;
    for (std::size_t k = 0; k < x.values.size(); ++k) worst = std::max(worst, std::abs(x.values[k] - y.values[k]));
    EXPECT_EQ(worst, 0.0);
  }
}

TEST(Synthesize, RoundTripGeneralPitch) {
  const ComplexGrid x = random_grid(7, 3, 11);
  const ComplexGrid y = synthesize(decompose(x, GridGeometry::centered(7, 3, 0.37)));
  for (std::size_t k = 0; k < x.values.size(); ++k) EXPECT_NEAR(std::abs(x.values[k] - y.values[k]), 0.0, 1e-15);
}

TEST(Synthesize, GlobalScaleUndone) {
  const ComplexGrid x = random_grid(4, 4, 2);
  ImageField f = decompose(x, GridGeometry::centered(4, 4, 1.0));
  const Amplitude s{0.0, 2.0};
  for (auto& a : f.amplitudes) a *= s;
  f.global_scale = s;
  const ComplexGrid y = synthesize(f);
  for (std::size_t k = 0; k < x.values.size(); ++k) EXPECT_NEAR(std::abs(x.values[k] - y.values[k]), 0.0, 1e-15);
}

TEST(PartnerIndex, CornerToCorner) {
  const auto g = GridGeometry::centered(4, 4, 1.0);
  EXPECT_EQ(partner_index({0, 0}, g), (PixelIndex{3, 3}));
  EXPECT_EQ(partner_index({1, 3}, g), (PixelIndex{2, 0}));
}

TEST(PartnerIndex, CenterFixed) {
  EXPECT_EQ(partner_index({2, 2}, GridGeometry::centered(5, 5, 1.0)), (PixelIndex{2, 2}));
}

TEST(PartnerIndex, Involution) {
  const auto g = GridGeometry::centered(5, 3, 1.0);
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) EXPECT_EQ(partner_index(partner_index({i, j}, g), g), (PixelIndex{i, j}));
}

TEST(PartnerIndex, OutOfBounds) {
  const auto g = GridGeometry::centered(4, 4, 1.0);
  EXPECT_THROW(partner_index({4, 0}, g), BoundsError);
  EXPECT_THROW(partner_index({0, -1}, g), BoundsError);
  EXPECT_THROW(pixel_center({-1, 0}, g), BoundsError);
}

TEST(PixelCenter, Definition) {
  const GridGeometry g{3, 3, 1.0, {0.0, 0.0}};
  EXPECT_EQ(pixel_center({0, 0}, g), (Vec2{0.5, 0.5}));
  EXPECT_EQ(pixel_center({2, 1}, g), (Vec2{2.5, 1.5}));
}

TEST(PixelCenter, ExplicitOriginSymmetric) {
  const GridGeometry g{4, 4, 1.0, {-2.0, -2.0}};
  EXPECT_EQ(GridGeometry::centered(4, 4, 1.0), g);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      const Vec2 a = pixel_center({i, j}, g), b = pixel_center({3 - i, 3 - j}, g);
      EXPECT_EQ(a.x, -b.x);
      EXPECT_EQ(a.y, -b.y);
    }
}

TEST(PixelCenter, PartnersAreExactNegatives) {
  for (int w : {1, 2, 5, 8})
    for (double pitch : {0.1, 0.37, 1.0}) {
      const auto g = GridGeometry::centered(w, w + 1, pitch);
      for (std::size_t k = 0; k < g.size(); ++k) {
        const PixelIndex p = g.unflat(k);
        const Vec2 a = pixel_center(p, g), b = pixel_center(partner_index(p, g), g);
        EXPECT_EQ(a.x, -b.x);
        EXPECT_EQ(a.y, -b.y);
      }
    }
}

TEST(Geometry, Validation) {
  EXPECT_THROW((GridGeometry{0, 3, 1.0, {}}).validate(), DimensionError);
  EXPECT_THROW((GridGeometry{3, 3, 0.0, {}}).validate(), std::invalid_argument);
  EXPECT_THROW((GridGeometry{3, 3, 1.0, {std::nan(""), 0.0}}).validate(), std::invalid_argument);
  EXPECT_NO_THROW(GridGeometry::centered(2, 2, 1.0).validate());
}

TEST(ReflectToPartnerPlane, MovesEveryPixel) {
  const auto g = GridGeometry::centered(3, 2, 1.0);
  const ImageField f = decompose(random_grid(3, 2, 5), g);
  const ImageField r = reflect_to_partner_plane(f);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const PixelIndex p = g.unflat(k);
    EXPECT_EQ(r.at(partner_index(p, g)), f.at(p));
  }
  const ImageField back = reflect_to_partner_plane(r);
  EXPECT_EQ(back.amplitudes, f.amplitudes);
}

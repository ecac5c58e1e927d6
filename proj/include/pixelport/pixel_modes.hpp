#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pixelport {

/// Dimensionless complex field amplitude (coherent-state label).
using Amplitude = std::complex<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  double norm_sq() const { return x * x + y * y; }
};

struct PixelIndex {
  int i = 0;  // column
  int j = 0;  // row

  friend bool operator==(const PixelIndex&, const PixelIndex&) = default;
};

/// Square-pixel raster. Pixel (0,0) has its lower-left corner at `origin`.
struct GridGeometry {
  int width = 1;
  int height = 1;
  double pitch = 1.0;
  Vec2 origin;

  /// Grid of the given size whose center sits on the optical axis, so that
  /// partner pixels have centers x and -x.
  static GridGeometry centered(int width, int height, double pitch);

  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
  double pixel_area() const { return pitch * pitch; }
  bool contains(PixelIndex p) const { return p.i >= 0 && p.i < width && p.j >= 0 && p.j < height; }
  std::size_t flat(PixelIndex p) const {
    return static_cast<std::size_t>(p.j) * static_cast<std::size_t>(width) + static_cast<std::size_t>(p.i);
  }
  PixelIndex unflat(std::size_t k) const {
    return {static_cast<int>(k % static_cast<std::size_t>(width)),
            static_cast<int>(k / static_cast<std::size_t>(width))};
  }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

/// Row-major 2D array of complex samples with an explicit shape.
struct ComplexGrid {
  int width = 0;
  int height = 0;
  std::vector<Amplitude> values;

  ComplexGrid() = default;
  ComplexGrid(int w, int h) : width(w), height(h), values(static_cast<std::size_t>(w) * h) {}

  Amplitude& at(int i, int j) { return values[static_cast<std::size_t>(j) * width + i]; }
  const Amplitude& at(int i, int j) const { return values[static_cast<std::size_t>(j) * width + i]; }
};

/// Coherent-state image as a product over pixel modes: pixel j carries the
/// coherent amplitude alpha_tilde_j = global_scale * gamma_j.
struct ImageField {
  GridGeometry geometry;
  std::vector<Amplitude> amplitudes;  // alpha_tilde_j, row-major
  Amplitude global_scale{1.0, 0.0};

  Amplitude& at(PixelIndex p) { return amplitudes[geometry.flat(p)]; }
  const Amplitude& at(PixelIndex p) const { return amplitudes[geometry.flat(p)]; }

  /// Throws DimensionError on shape mismatch, std::invalid_argument on non-finite entries.
  void validate() const;

  /// Sum of |alpha_tilde_j|^2, the mean photon number of the whole image.
  double total_energy() const;
};

/// Pixel-mode coefficients from mode values sampled at pixel centers:
/// gamma_j = c_j * sqrt(A) = c_j * pitch.
ImageField decompose(const ComplexGrid& samples, const GridGeometry& geometry);

/// Inverse of decompose: c_j = alpha_tilde_j / (global_scale * pitch).
ComplexGrid synthesize(const ImageField& field);

/// Pixel correlated with `p` through the down-converted anti-correlation
/// k1 = -k2: point reflection through the grid center.
PixelIndex partner_index(PixelIndex p, const GridGeometry& geometry);

/// Transverse position of the pixel center.
Vec2 pixel_center(PixelIndex p, const GridGeometry& geometry);

/// Copy of `field` with every pixel moved to its partner position.
ImageField reflect_to_partner_plane(const ImageField& field);

}  // namespace pixelport

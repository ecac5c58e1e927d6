#include "pixelport/pixel_modes.hpp"

#include <cmath>
#include <string>

#include "pixelport/errors.hpp"

namespace pixelport {

namespace {

void require_finite(Amplitude a, const char* what) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
    throw std::invalid_argument(std::string(what) + ": non-finite amplitude");
  }
}

void check_bounds(PixelIndex p, const GridGeometry& g) {
  if (!g.contains(p)) {
    throw BoundsError("pixel (" + std::to_string(p.i) + ", " + std::to_string(p.j) +
                      ") outside " + std::to_string(g.width) + "x" + std::to_string(g.height) +
                      " grid");
  }
}

}  // namespace

GridGeometry GridGeometry::centered(int width, int height, double pitch) {
  GridGeometry g{width, height, pitch, {}};
  g.origin = {-0.5 * width * pitch, -0.5 * height * pitch};
  g.validate();
  return g;
}

void GridGeometry::validate() const {
  if (width < 1 || height < 1) throw DimensionError("grid width and height must be >= 1");
  if (!(pitch > 0.0) || !std::isfinite(pitch)) throw std::invalid_argument("pixel pitch must be > 0");
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw std::invalid_argument("grid origin must be finite");
  }
}

void ImageField::validate() const {
  geometry.validate();
  if (amplitudes.size() != geometry.size()) {
    throw DimensionError("image has " + std::to_string(amplitudes.size()) + " amplitudes, grid has " +
                         std::to_string(geometry.size()) + " pixels");
  }
  require_finite(global_scale, "global scale");
  for (const auto& a : amplitudes) require_finite(a, "image");
}

double ImageField::total_energy() const {
  double e = 0.0;
  for (const auto& a : amplitudes) e += std::norm(a);
  return e;
}

ImageField decompose(const ComplexGrid& samples, const GridGeometry& geometry) {
  geometry.validate();
  if (samples.width != geometry.width || samples.height != geometry.height ||
      samples.values.size() != geometry.size()) {
    throw DimensionError("sample array " + std::to_string(samples.width) + "x" +
                         std::to_string(samples.height) + " does not match grid " +
                         std::to_string(geometry.width) + "x" + std::to_string(geometry.height));
  }
  ImageField field{geometry, {}, {1.0, 0.0}};
  field.amplitudes.reserve(samples.values.size());
  for (const auto& c : samples.values) {
    require_finite(c, "sample");
    field.amplitudes.push_back(c * geometry.pitch);
  }
  return field;
}

ComplexGrid synthesize(const ImageField& field) {
  field.validate();
  ComplexGrid out(field.geometry.width, field.geometry.height);
  const bool unit_scale = field.global_scale == Amplitude{1.0, 0.0};
  for (std::size_t k = 0; k < field.amplitudes.size(); ++k) {
    Amplitude gamma = unit_scale ? field.amplitudes[k] : field.amplitudes[k] / field.global_scale;
    out.values[k] = gamma / field.geometry.pitch;
  }
  return out;
}

PixelIndex partner_index(PixelIndex p, const GridGeometry& geometry) {
  check_bounds(p, geometry);
  return {geometry.width - 1 - p.i, geometry.height - 1 - p.j};
}

Vec2 pixel_center(PixelIndex p, const GridGeometry& geometry) {
  check_bounds(p, geometry);
  // Offsets from the grid center are half-integers, so partner centers are
  // exact negatives of each other when the grid is centered.
  const double cx = geometry.origin.x + 0.5 * geometry.width * geometry.pitch;
  const double cy = geometry.origin.y + 0.5 * geometry.height * geometry.pitch;
  const double di = p.i - 0.5 * (geometry.width - 1);
  const double dj = p.j - 0.5 * (geometry.height - 1);
  return {cx + di * geometry.pitch, cy + dj * geometry.pitch};
}

ImageField reflect_to_partner_plane(const ImageField& field) {
  field.validate();
  ImageField out = field;
  const auto& g = field.geometry;
  for (std::size_t k = 0; k < g.size(); ++k) {
    PixelIndex p = g.unflat(k);
    out.at(partner_index(p, g)) = field.amplitudes[k];
  }
  return out;
}

}  // namespace pixelport

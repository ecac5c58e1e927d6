#include "pixelport/spdc_squeezing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pixelport/errors.hpp"
#include "pixelport/parallel.hpp"

namespace pixelport {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be > 0");
}

void require_angle(double theta) {
  if (!(theta >= 0.0) || !(theta < std::numbers::pi / 2)) {
    throw DomainError("theta_d must lie in [0, pi/2)");
  }
}

}  // namespace

std::vector<std::string> SpdcParams::validate() const {
  require_positive(w_p, "w_p");
  require_positive(w_0, "w_0");
  require_positive(L, "L");
  require_positive(k_p, "k_p");
  require_positive(k_d, "k_d");
  require_positive(f, "f");
  require_angle(theta_d);
  if (!(Xi >= 0.0) || !std::isfinite(Xi)) throw DomainError("Xi must be >= 0");
  std::vector<std::string> warnings;
  if (w_0 / w_p > 0.1) {
    warnings.push_back("w_0/w_p = " + std::to_string(w_0 / w_p) +
                       " > 0.1: wide-pump closed form is approximate");
  }
  return warnings;
}

void RingParams::validate() const {
  if (!(r0 >= 0.0) || !std::isfinite(r0)) throw DomainError("ring radius r0 must be >= 0");
  require_positive(R, "ring width R");
  if (!(Xi >= 0.0) || !std::isfinite(Xi)) throw DomainError("Xi must be >= 0");
}

SqueezingProfile SqueezingProfile::uniform(const GridGeometry& geometry, double r) {
  geometry.validate();
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeezing r must be finite and >= 0");
  return {geometry, std::vector<double>(geometry.size(), r)};
}

void SqueezingProfile::validate() const {
  geometry.validate();
  if (r.size() != geometry.size()) throw DimensionError("squeezing profile does not match its grid");
  for (double v : r) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("squeezing values must be finite and >= 0");
  }
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double chi(const SpdcParams& params) {
  require_angle(params.theta_d);
  const double s = std::sin(params.theta_d);
  return params.k_d * s * s / std::cos(params.theta_d);
}

double delta_kz(Vec2 k1, Vec2 k2, const SpdcParams& params) {
  const Vec2 d{k1.x - k2.x, k1.y - k2.y};
  return d.norm_sq() / (2.0 * params.k_p) - chi(params);
}

double eta_k(Vec2 k0, const SpdcParams& params) {
  const double arg = k0.norm_sq() * params.L / params.k_p - 0.5 * params.L * chi(params);
  return params.Xi * sinc(arg);
}

double eta_x(Vec2 x0, const RingParams& ring) {
  const double arg = (x0.norm_sq() - ring.r0 * ring.r0) / (ring.R * ring.R);
  return ring.Xi * sinc(arg);
}

RingParams ring_from_spdc(const SpdcParams& params) {
  require_angle(params.theta_d);
  return {params.f * std::tan(params.theta_d), 2.0 * params.f / std::sqrt(params.L * params.k_p),
          params.Xi};
}

double far_field_wavenumber(double radius, const SpdcParams& params) {
  return radius * params.k_p / (2.0 * params.f);
}

QuadratureResult eta_quadrature(Vec2 k0, const SpdcParams& params, int n_steps,
                                QuadratureRule rule) {
  if (n_steps < 16) throw DomainError("quadrature needs at least 16 steps");
  if (rule == QuadratureRule::Simpson && n_steps % 2 != 0) {
    throw DomainError("Simpson quadrature needs an even step count");
  }
  // Phase rate of the integrand exp(i z rate).
  const double rate = chi(params) - 2.0 * k0.norm_sq() / params.k_p;
  const double h = params.L / n_steps;
  const double z0 = -0.5 * params.L;
  std::complex<double> acc{0.0, 0.0};
  if (rule == QuadratureRule::Midpoint) {
    for (int i = 0; i < n_steps; ++i) {
      const double z = z0 + (i + 0.5) * h;
      acc += std::polar(1.0, rate * z);
    }
    acc *= h;
  } else {
    for (int i = 0; i <= n_steps; ++i) {
      const double z = z0 + i * h;
      const double w = (i == 0 || i == n_steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += w * std::polar(1.0, rate * z);
    }
    acc *= h / 3.0;
  }
  acc *= params.Xi / params.L;
  return {acc.real(), acc.imag()};
}

std::complex<double> eta_overlap(Vec2 k_a, Vec2 k_b, const SpdcParams& params, int n_steps,
                                 PumpModel model) {
  if (n_steps < 16 || n_steps % 2 != 0) throw DomainError("Simpson quadrature needs an even step count >= 16");
  const Vec2 sum{k_a.x + k_b.x, k_a.y + k_b.y};
  const Vec2 diff{k_a.x - k_b.x, k_a.y - k_b.y};
  double prefactor = params.Xi / params.L;
  double envelope = -0.125 * params.w_0 * params.w_0 * sum.norm_sq();
  if (model == PumpModel::Finite) {
    const double wp2 = params.w_p * params.w_p;
    const double w02 = params.w_0 * params.w_0;
    prefactor = 2.0 * params.Xi * wp2 / ((w02 + 2.0 * wp2) * params.L);
    envelope = -wp2 * w02 * sum.norm_sq() / (4.0 * (w02 + 2.0 * wp2));
  }
  const double rate = chi(params) - diff.norm_sq() / (2.0 * params.k_p);
  const double h = params.L / n_steps;
  const double z0 = -0.5 * params.L;
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i <= n_steps; ++i) {
    const double w = (i == 0 || i == n_steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * std::polar(1.0, rate * (z0 + i * h));
  }
  return acc * (h / 3.0) * prefactor * std::exp(envelope);
}

SqueezingProfile profile_for_grid(const GridGeometry& geometry, const RingParams& ring,
                                  int threads) {
  geometry.validate();
  ring.validate();
  SqueezingProfile profile{geometry, std::vector<double>(geometry.size())};
  const int rows = geometry.height;
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(static)
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < geometry.width; ++i) {
      const PixelIndex p{i, j};
      profile.r[geometry.flat(p)] = std::abs(eta_x(pixel_center(p, geometry), ring));
    }
  }
  return profile;
}

SqueezingProfile profile_for_grid_serial(const GridGeometry& geometry, const RingParams& ring) {
  geometry.validate();
  ring.validate();
  SqueezingProfile profile{geometry, std::vector<double>(geometry.size())};
  for (std::size_t k = 0; k < geometry.size(); ++k) {
    profile.r[k] = std::abs(eta_x(pixel_center(geometry.unflat(k), geometry), ring));
  }
  return profile;
}

std::vector<double> sinc_zero_radii(const RingParams& ring, double x_max) {
  ring.validate();
  const double r02 = ring.r0 * ring.r0;
  const double step = std::numbers::pi * ring.R * ring.R;
  std::vector<double> zeros;
  // Inner zeros (m < 0) exist only while r0^2 + m pi R^2 stays non-negative.
  for (int m = -1; r02 + m * step >= 0.0; --m) {
    const double x = std::sqrt(r02 + m * step);
    if (x <= x_max) zeros.push_back(x);
  }
  for (int m = 1;; ++m) {
    const double x = std::sqrt(r02 + m * step);
    if (x > x_max) break;
    zeros.push_back(x);
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

std::vector<double> radial_samples(const RingParams& ring, int n) {
  ring.validate();
  if (n < 2) throw DomainError("radial sampling needs at least 2 points");
  const double x_max = ring.r0 + 4.0 * ring.R;
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n) + 16);
  for (int i = 0; i < n; ++i) xs.push_back(x_max * i / (n - 1));
  xs.push_back(ring.r0);
  for (double z : sinc_zero_radii(ring, x_max)) xs.push_back(z);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace pixelport

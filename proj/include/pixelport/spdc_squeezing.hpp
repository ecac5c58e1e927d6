#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pixelport/pixel_modes.hpp"

namespace pixelport {

/// Physical parameters of a type-I down-conversion source with a Gaussian pump.
/// Lengths share one (arbitrary) unit; wavenumbers are in inverse units.
struct SpdcParams {
  double w_p = 1.0;      // pump waist
  double w_0 = 0.01;     // detector-mode waist
  double L = 1.0;        // crystal length
  double k_p = 1.0;      // pump wavenumber
  double k_d = 0.5;      // degenerate signal/idler wavenumber
  double theta_d = 0.0;  // down-conversion angle [rad]
  double f = 1.0;        // lens focal length
  double Xi = 1.0;       // effective squeezing scale (dimensionless)

  /// Throws DomainError for out-of-range values. Returns non-fatal warnings
  /// (currently: w_0 / w_p > 0.1, where the wide-pump limit is doubtful).
  std::vector<std::string> validate() const;
};

/// Far-field squeezing ring: radius r0, width R, peak Xi.
struct RingParams {
  double r0 = 1.0;
  double R = 0.5;
  double Xi = 1.0;

  void validate() const;
};

/// Per-pixel squeezing magnitude r_j >= 0 on a grid.
struct SqueezingProfile {
  GridGeometry geometry;
  std::vector<double> r;

  static SqueezingProfile uniform(const GridGeometry& geometry, double r);
  double at(PixelIndex p) const { return r[geometry.flat(p)]; }
  void validate() const;
};

/// Unnormalised sinc, sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// Non-collinear phase-matching offset chi = k_d sin^2(theta_d) / cos(theta_d).
double chi(const SpdcParams& params);

/// Longitudinal phase mismatch |k1 - k2|^2 / (2 k_p) - chi.
double delta_kz(Vec2 k1, Vec2 k2, const SpdcParams& params);

/// Closed-form overlap at k_a = -k_b = k0:
/// Xi * sinc(|k0|^2 L / k_p - L chi / 2).
double eta_k(Vec2 k0, const SpdcParams& params);

/// Far-field ring Xi * sinc((|x0|^2 - r0^2) / R^2). Negative on odd side lobes.
double eta_x(Vec2 x0, const RingParams& ring);

/// r0 = f tan(theta_d), R = 2 f / sqrt(L k_p).
RingParams ring_from_spdc(const SpdcParams& params);

/// |k0| corresponding to a far-field position: |x0| k_p / (2 f).
double far_field_wavenumber(double radius, const SpdcParams& params);

enum class QuadratureRule { Midpoint, Simpson };

struct QuadratureResult {
  double value = 0.0;  // real part of the z-integral
  double imag = 0.0;   // imaginary part, zero up to rounding on the symmetric interval
};

/// Numerical z-integration of (Xi/L) exp(-2iz|k0|^2/k_p + iz chi) over
/// [-L/2, L/2]. Simpson needs an even step count.
QuadratureResult eta_quadrature(Vec2 k0, const SpdcParams& params, int n_steps,
                                QuadratureRule rule = QuadratureRule::Simpson);

enum class PumpModel {
  Wide,    // w_p >> w_0 limit: prefactor Xi/L, Gaussian exp(-w_0^2 |k_a + k_b|^2 / 8)
  Finite,  // full prefactor 2 Xi w_p^2 / ((w_0^2 + 2 w_p^2) L)
};

/// Two-point overlap eta(k_a, k_b) by Simpson quadrature over the crystal.
std::complex<double> eta_overlap(Vec2 k_a, Vec2 k_b, const SpdcParams& params, int n_steps,
                                 PumpModel model = PumpModel::Wide);

/// r_j = |eta_x(center_j)| for every pixel. OpenMP over rows; threads = 0 uses the default cap.
SqueezingProfile profile_for_grid(const GridGeometry& geometry, const RingParams& ring,
                                  int threads = 0);

/// Serial reference for profile_for_grid.
SqueezingProfile profile_for_grid_serial(const GridGeometry& geometry, const RingParams& ring);

/// Radial positions for a ring cross-section: `n` uniform points on
/// [0, r0 + 4R] merged with r0 and every sinc zero inside that range.
std::vector<double> radial_samples(const RingParams& ring, int n = 512);

/// Radii where eta_x vanishes, i.e. |x|^2 = r0^2 + m pi R^2 for nonzero m, up to x_max.
std::vector<double> sinc_zero_radii(const RingParams& ring, double x_max);

}  // namespace pixelport

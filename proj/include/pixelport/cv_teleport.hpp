#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pixelport/parallel.hpp"
#include "pixelport/pixel_modes.hpp"
#include "pixelport/spdc_squeezing.hpp"

namespace pixelport {

/// Result of one single-pixel teleportation run.
struct TeleportOutcome {
  Amplitude beta;    // Bell measurement result
  Amplitude zeta;    // Bob's amplitude before feedback: tanh(r) (alpha_tilde - beta)
  Amplitude output;  // after the unit-gain displacement: zeta + beta
  double fidelity = 0.0;
};

struct FidelityMap {
  GridGeometry geometry;
  std::vector<double> per_pixel_fidelity;
  double image_fidelity = 0.0;  // mean over pixels

  double at(PixelIndex p) const { return per_pixel_fidelity[geometry.flat(p)]; }
};

/// Bob's conditional amplitude tanh(r) (alpha_tilde - beta).
Amplitude conditional_amplitude(Amplitude alpha_tilde, Amplitude beta, double r);

/// Unit-gain feedback: zeta + beta.
Amplitude feedback_displace(Amplitude zeta, Amplitude beta, double r);

/// exp(-(1 - tanh r)^2 |alpha_tilde - beta|^2).
double conditional_fidelity(Amplitude alpha_tilde, Amplitude beta, double r);

/// (1 + tanh r) / 2.
double average_fidelity(double r);

/// Adopted outcome density p(beta) = exp(-|beta - alpha_tilde|^2 / cosh^2 r) / (pi cosh^2 r).
double bell_outcome_density(Amplitude alpha_tilde, Amplitude beta, double r);

/// Variance of each quadrature component of beta: cosh^2(r) / 2.
double bell_outcome_component_variance(double r);

/// Draws beta from p(beta) = exp(-|beta - alpha_tilde|^2 / cosh^2 r) / (pi cosh^2 r).
template <class URBG>
Amplitude sample_bell_outcome(Amplitude alpha_tilde, double r, URBG& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(bell_outcome_component_variance(r)));
  const double re = normal(rng);
  const double im = normal(rng);
  return {alpha_tilde.real() + re, alpha_tilde.imag() + im};
}

/// Deterministic part of a pixel teleportation, for a known outcome beta.
TeleportOutcome teleport_with_outcome(Amplitude alpha_tilde, double r, Amplitude beta);

template <class URBG>
TeleportOutcome teleport_pixel(Amplitude alpha_tilde, double r, URBG& rng) {
  return teleport_with_outcome(alpha_tilde, r, sample_bell_outcome(alpha_tilde, r, rng));
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

/// Sample mean of F(beta) over `samples` draws. Draws are split into fixed
/// chunks, each with its own stream, so the result does not depend on threads.
MonteCarloEstimate monte_carlo_average_fidelity(Amplitude alpha_tilde, double r,
                                                std::uint64_t samples, std::uint64_t seed,
                                                int threads = 0);

MonteCarloEstimate monte_carlo_average_fidelity_serial(Amplitude alpha_tilde, double r,
                                                       std::uint64_t samples, std::uint64_t seed);

enum class OutputPlane {
  Upright,  // Bob's image un-reflected for display (default)
  Raw,      // physical plane: pixel j lands on partner_index(j)
};

struct TeleportOptions {
  std::uint64_t seed = 0;
  // 0 = analytic (no sampling), 1 = one stochastic realization, >1 = per-pixel averages.
  std::uint64_t shots = 0;
  OutputPlane plane = OutputPlane::Upright;
  int threads = 0;
};

struct TeleportedImage {
  ImageField output;
  FidelityMap fidelity;
};

/// Teleports every pixel through its own channel with squeezing profile.r[j].
/// Pixel j uses random stream (seed, j).
TeleportedImage teleport_image(const ImageField& input, const SqueezingProfile& profile,
                               const TeleportOptions& options);

/// Serial reference for teleport_image (ignores options.threads).
TeleportedImage teleport_image_serial(const ImageField& input, const SqueezingProfile& profile,
                                      const TeleportOptions& options);

/// Closed-form image fidelity mean_j (1 + tanh r_j) / 2.
double analytic_image_fidelity(const SqueezingProfile& profile);

}  // namespace pixelport

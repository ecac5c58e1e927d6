#include "pixelport/cv_teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pixelport/errors.hpp"

namespace pixelport {

namespace {

constexpr std::uint64_t kMonteCarloChunk = 8192;

void require_squeezing(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeezing r must be finite and >= 0");
}

struct PixelResult {
  Amplitude output;
  double fidelity;
};

PixelResult run_pixel(Amplitude alpha_tilde, double r, std::uint64_t seed, std::uint64_t stream_id,
                      std::uint64_t shots) {
  if (shots == 0) return {alpha_tilde, average_fidelity(r)};
  Stream rng = make_stream(seed, stream_id);
  if (shots == 1) {
    const TeleportOutcome o = teleport_pixel(alpha_tilde, r, rng);
    return {o.output, o.fidelity};
  }
  Amplitude out_sum{0.0, 0.0};
  double f_sum = 0.0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const TeleportOutcome o = teleport_pixel(alpha_tilde, r, rng);
    out_sum += o.output;
    f_sum += o.fidelity;
  }
  const double n = static_cast<double>(shots);
  return {out_sum / n, f_sum / n};
}

void check_inputs(const ImageField& input, const SqueezingProfile& profile) {
  input.validate();
  profile.validate();
  if (!(input.geometry == profile.geometry)) {
    throw DimensionError("squeezing profile grid does not match image grid");
  }
}

TeleportedImage assemble(const ImageField& input, std::vector<PixelResult> results,
                         OutputPlane plane) {
  const GridGeometry& g = input.geometry;
  TeleportedImage out{ImageField{g, std::vector<Amplitude>(g.size()), input.global_scale},
                      FidelityMap{g, std::vector<double>(g.size()), 0.0}};
  for (std::size_t k = 0; k < g.size(); ++k) {
    std::size_t dest = k;
    if (plane == OutputPlane::Raw) dest = g.flat(partner_index(g.unflat(k), g));
    out.output.amplitudes[dest] = results[k].output;
    out.fidelity.per_pixel_fidelity[dest] = results[k].fidelity;
  }
  out.fidelity.image_fidelity =
      pairwise_sum(out.fidelity.per_pixel_fidelity) / static_cast<double>(g.size());
  return out;
}

struct ChunkSums {
  double f = 0.0;
  double f2 = 0.0;
};

ChunkSums run_chunk(Amplitude alpha_tilde, double r, std::uint64_t seed, std::uint64_t chunk,
                    std::uint64_t count) {
  Stream rng = make_stream(seed, chunk);
  ChunkSums s;
  for (std::uint64_t m = 0; m < count; ++m) {
    const double f = conditional_fidelity(alpha_tilde, sample_bell_outcome(alpha_tilde, r, rng), r);
    s.f += f;
    s.f2 += f * f;
  }
  return s;
}

MonteCarloEstimate finish(const std::vector<ChunkSums>& chunks, std::uint64_t samples) {
  double f = 0.0, f2 = 0.0;
  for (const auto& c : chunks) {
    f += c.f;
    f2 += c.f2;
  }
  const double n = static_cast<double>(samples);
  MonteCarloEstimate est;
  est.samples = samples;
  est.mean = f / n;
  if (samples > 1) {
    const double var = std::max(0.0, (f2 - n * est.mean * est.mean) / (n - 1.0));
    est.standard_error = std::sqrt(var / n);
  }
  return est;
}

}  // namespace

Amplitude conditional_amplitude(Amplitude alpha_tilde, Amplitude beta, double r) {
  require_squeezing(r);
  return std::tanh(r) * (alpha_tilde - beta);
}

Amplitude feedback_displace(Amplitude zeta, Amplitude beta, double r) {
  require_squeezing(r);
  return zeta + beta;
}

double conditional_fidelity(Amplitude alpha_tilde, Amplitude beta, double r) {
  require_squeezing(r);
  const double loss = 1.0 - std::tanh(r);
  return std::exp(-loss * loss * std::norm(alpha_tilde - beta));
}

double average_fidelity(double r) {
  require_squeezing(r);
  return 0.5 * (1.0 + std::tanh(r));
}

double bell_outcome_density(Amplitude alpha_tilde, Amplitude beta, double r) {
  require_squeezing(r);
  const double c2 = std::cosh(r) * std::cosh(r);
  return std::exp(-std::norm(beta - alpha_tilde) / c2) / (std::numbers::pi * c2);
}

double bell_outcome_component_variance(double r) {
  require_squeezing(r);
  const double c = std::cosh(r);
  return 0.5 * c * c;
}

TeleportOutcome teleport_with_outcome(Amplitude alpha_tilde, double r, Amplitude beta) {
  TeleportOutcome o;
  o.beta = beta;
  o.zeta = conditional_amplitude(alpha_tilde, beta, r);
  o.output = feedback_displace(o.zeta, beta, r);
  o.fidelity = conditional_fidelity(alpha_tilde, beta, r);
  return o;
}

MonteCarloEstimate monte_carlo_average_fidelity(Amplitude alpha_tilde, double r,
                                                std::uint64_t samples, std::uint64_t seed,
                                                int threads) {
  require_squeezing(r);
  if (samples == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
  const std::uint64_t n_chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<ChunkSums> chunks(n_chunks);
  const auto n = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(static)
  for (std::int64_t c = 0; c < n; ++c) {
    const auto cu = static_cast<std::uint64_t>(c);
    const std::uint64_t count = std::min(kMonteCarloChunk, samples - cu * kMonteCarloChunk);
    chunks[cu] = run_chunk(alpha_tilde, r, seed, cu, count);
  }
  return finish(chunks, samples);
}

MonteCarloEstimate monte_carlo_average_fidelity_serial(Amplitude alpha_tilde, double r,
                                                       std::uint64_t samples, std::uint64_t seed) {
  require_squeezing(r);
  if (samples == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
  const std::uint64_t n_chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<ChunkSums> chunks;
  chunks.reserve(n_chunks);
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    const std::uint64_t count = std::min(kMonteCarloChunk, samples - c * kMonteCarloChunk);
    chunks.push_back(run_chunk(alpha_tilde, r, seed, c, count));
  }
  return finish(chunks, samples);
}

TeleportedImage teleport_image(const ImageField& input, const SqueezingProfile& profile,
                               const TeleportOptions& options) {
  check_inputs(input, profile);
  const std::size_t n = input.geometry.size();
  std::vector<PixelResult> results(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for num_threads(resolve_threads(options.threads)) schedule(static)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    results[ku] = run_pixel(input.amplitudes[ku], profile.r[ku], options.seed, ku, options.shots);
  }
  return assemble(input, std::move(results), options.plane);
}

TeleportedImage teleport_image_serial(const ImageField& input, const SqueezingProfile& profile,
                                      const TeleportOptions& options) {
  check_inputs(input, profile);
  std::vector<PixelResult> results;
  results.reserve(input.geometry.size());
  for (std::size_t k = 0; k < input.geometry.size(); ++k) {
    results.push_back(run_pixel(input.amplitudes[k], profile.r[k], options.seed, k, options.shots));
  }
  return assemble(input, std::move(results), options.plane);
}

double analytic_image_fidelity(const SqueezingProfile& profile) {
  profile.validate();
  std::vector<double> f(profile.r.size());
  std::transform(profile.r.begin(), profile.r.end(), f.begin(), average_fidelity);
  return pairwise_sum(f) / static_cast<double>(f.size());
}

}  // namespace pixelport

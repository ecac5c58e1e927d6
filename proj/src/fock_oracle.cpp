#include "pixelport/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pixelport/errors.hpp"
#include "pixelport/parallel.hpp"

namespace pixelport::fock {

namespace {

const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_dim(int dim) {
  if (dim < 2) throw DimensionError("Fock truncation needs dim >= 2");
}

void require_same_shape(const FockVector& a, const FockVector& b) {
  if (a.dim != b.dim || a.n_modes != b.n_modes) throw DimensionError("Fock vectors differ in shape");
}

// Edge-trimmed squared norm: every mode below `limit`.
double trimmed_norm_sq(const FockVector& v, int limit) {
  double s = 0.0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(v.data.size()); ++k) {
    bool inside = true;
    for (int m = 0; m < v.n_modes && inside; ++m) inside = v.photons(k, m) < limit;
    if (inside) s += std::norm(v.data[static_cast<Eigen::Index>(k)]);
  }
  return s;
}

FockVector axpy(std::complex<double> a, const FockVector& x, const FockVector& y) {
  require_same_shape(x, y);
  FockVector out = y;
  out.data += a * x.data;
  return out;
}

// Bell contraction with a ready-made displacement matrix.
BellProjection project_with(const FockVector& joint, const CMatrix& d) {
  const int dim = joint.dim;
  FockVector bob = FockVector::zeros(dim, 1);
  const std::size_t sa = joint.stride(0), sb = joint.stride(1);
  for (int b = 0; b < dim; ++b) {
    std::complex<double> acc{0.0, 0.0};
    for (int s = 0; s < dim; ++s) {
      const std::size_t base = static_cast<std::size_t>(s) * sa + static_cast<std::size_t>(b) * sb;
      for (int c = 0; c < dim; ++c) {
        acc += std::conj(d(c, s)) * joint.data[static_cast<Eigen::Index>(base + static_cast<std::size_t>(c))];
      }
    }
    bob.data[b] = kInvSqrtPi * acc;
  }
  BellProjection out;
  out.bob_norm = bob.norm();
  out.density = out.bob_norm * out.bob_norm;
  if (out.bob_norm > 0.0) bob.data /= out.bob_norm;
  out.bob_state = std::move(bob);
  return out;
}

// Sum of p(beta) * weight(beta) over the grid, rows accumulated in a fixed order.
template <class RowFn>
double grid_sum(const BetaGrid& grid, double half_width, int threads, bool parallel, RowFn row_fn) {
  if (grid.points_per_axis < 3) throw std::invalid_argument("beta grid needs >= 3 points per axis");
  const int n = grid.points_per_axis;
  const double step = 2.0 * half_width / (n - 1);
  std::vector<double> rows(static_cast<std::size_t>(n));
  if (parallel) {
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(dynamic)
    for (int iy = 0; iy < n; ++iy) rows[static_cast<std::size_t>(iy)] = row_fn(iy, step);
  } else {
    for (int iy = 0; iy < n; ++iy) rows[static_cast<std::size_t>(iy)] = row_fn(iy, step);
  }
  double total = 0.0;
  for (double v : rows) total += v;
  return total * step * step;
}

double average_fidelity_impl(Amplitude alpha_tilde, double r, int dim, const BetaGrid& grid,
                             int threads, bool parallel) {
  const FockVector joint = teleport_input(alpha_tilde, r, dim);
  const FockVector target = coherent_state(alpha_tilde, dim);
  const double half = grid.half_width_sigmas * std::cosh(r);
  const Displacement disp(dim, std::abs(alpha_tilde) + half);
  const int n = grid.points_per_axis;
  return grid_sum(grid, half, threads, parallel, [&](int iy, double step) {
    double row = 0.0;
    for (int ix = 0; ix < n; ++ix) {
      const Amplitude offset{-half + ix * step, -half + iy * step};
      if (std::abs(offset) > half) continue;
      const CMatrix d = disp.matrix(alpha_tilde + offset);
      const BellProjection proj = project_with(joint, d);
      if (proj.bob_norm == 0.0) continue;
      const CVector out = d * proj.bob_state.data;
      row += proj.density * std::norm(target.data.dot(out));
    }
    return row;
  });
}

}  // namespace

FockVector FockVector::zeros(int dim, int n_modes) {
  require_dim(dim);
  if (n_modes < 1 || n_modes > 3) throw DimensionError("Fock vectors hold 1 to 3 modes");
  Eigen::Index size = 1;
  for (int m = 0; m < n_modes; ++m) size *= dim;
  return {dim, n_modes, CVector::Zero(size)};
}

std::size_t FockVector::stride(int mode) const {
  std::size_t s = 1;
  for (int m = mode + 1; m < n_modes; ++m) s *= static_cast<std::size_t>(dim);
  return s;
}

std::size_t FockVector::index(std::span<const int> photons) const {
  if (static_cast<int>(photons.size()) != n_modes) throw DimensionError("photon tuple has wrong length");
  std::size_t k = 0;
  for (int n : photons) {
    if (n < 0 || n >= dim) throw BoundsError("photon number outside truncation");
    k = k * static_cast<std::size_t>(dim) + static_cast<std::size_t>(n);
  }
  return k;
}

double FockVector::tail_population() const {
  const int top = dim - (dim + 9) / 10;
  double s = 0.0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(data.size()); ++k) {
    bool in_tail = false;
    for (int m = 0; m < n_modes && !in_tail; ++m) in_tail = photons(k, m) >= top;
    if (in_tail) s += std::norm(data[static_cast<Eigen::Index>(k)]);
  }
  return s;
}

Eigen::MatrixXd ladder_matrix(int dim, LadderKind kind) {
  require_dim(dim);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) m(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
  return kind == LadderKind::Create ? m : Eigen::MatrixXd(m.transpose());
}

FockVector apply(const LadderOp& op, const FockVector& v) {
  if (op.dim != v.dim) throw DimensionError("ladder operator truncation differs from state");
  if (op.mode < 0 || op.mode >= v.n_modes) throw DimensionError("ladder operator mode out of range");
  FockVector out = FockVector::zeros(v.dim, v.n_modes);
  const std::size_t s = v.stride(op.mode);
  for (std::size_t k = 0; k < static_cast<std::size_t>(v.data.size()); ++k) {
    const int n = v.photons(k, op.mode);
    const auto src = static_cast<Eigen::Index>(k);
    if (op.kind == LadderKind::Annihilate) {
      if (n > 0) out.data[static_cast<Eigen::Index>(k - s)] += std::sqrt(static_cast<double>(n)) * v.data[src];
    } else if (n + 1 < v.dim) {
      out.data[static_cast<Eigen::Index>(k + s)] += std::sqrt(static_cast<double>(n + 1)) * v.data[src];
    }
  }
  return out;
}

FockVector apply_single_mode(const CMatrix& m, const FockVector& v, int mode) {
  if (m.rows() != v.dim || m.cols() != v.dim) throw DimensionError("single-mode matrix size differs from state");
  if (mode < 0 || mode >= v.n_modes) throw DimensionError("mode out of range");
  FockVector out = FockVector::zeros(v.dim, v.n_modes);
  const std::size_t s = v.stride(mode);
  for (std::size_t k = 0; k < static_cast<std::size_t>(v.data.size()); ++k) {
    const int n = v.photons(k, mode);
    const std::size_t base = k - static_cast<std::size_t>(n) * s;
    std::complex<double> acc{0.0, 0.0};
    for (int j = 0; j < v.dim; ++j) {
      acc += m(n, j) * v.data[static_cast<Eigen::Index>(base + static_cast<std::size_t>(j) * s)];
    }
    out.data[static_cast<Eigen::Index>(k)] = acc;
  }
  return out;
}

FockVector tensor(const FockVector& a, const FockVector& b) {
  if (a.dim != b.dim) throw DimensionError("tensor factors need the same truncation");
  FockVector out = FockVector::zeros(a.dim, a.n_modes + b.n_modes);
  const auto nb = b.data.size();
  for (Eigen::Index i = 0; i < a.data.size(); ++i) {
    out.data.segment(i * nb, nb) = a.data[i] * b.data;
  }
  return out;
}

FockVector coherent_state(Amplitude alpha, int dim) {
  FockVector v = FockVector::zeros(dim, 1);
  std::complex<double> c = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < dim; ++n) {
    v.data[n] = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

FockVector two_mode_squeezed(double r, int dim) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeezing r must be finite and >= 0");
  FockVector v = FockVector::zeros(dim, 2);
  const double t = std::tanh(r);
  double c = 1.0 / std::cosh(r);
  for (int n = 0; n < dim; ++n) {
    const int idx[] = {n, n};
    v.data[static_cast<Eigen::Index>(v.index(idx))] = c;
    c *= t;
  }
  return v;
}

int truncation_margin(int dim) { return (dim + 4) / 5; }

int Displacement::padded_dim(int dim, double max_abs_beta) {
  require_dim(dim);
  if (!(max_abs_beta >= 0.0) || !std::isfinite(max_abs_beta)) throw DomainError("max |beta| must be finite and >= 0");
  if (max_abs_beta == 0.0) return 2 * dim;
  const double reach = std::sqrt(static_cast<double>(dim)) + max_abs_beta;
  const int needed = static_cast<int>(std::ceil(reach * reach + 2.0 * reach)) + 8;
  return std::max(2 * dim, needed);
}

Displacement::Displacement(int dim, double max_abs_beta) : dim_(dim) {
  const int work = padded_dim(dim, max_abs_beta);
  // Hermitian generator -i(a^dag - a); D(|beta|) = exp(i |beta| K).
  CMatrix k = CMatrix::Zero(work, work);
  for (int n = 0; n + 1 < work; ++n) {
    const double s = std::sqrt(static_cast<double>(n + 1));
    k(n + 1, n) = {0.0, -s};
    k(n, n + 1) = {0.0, s};
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(k);
  eigenvalues_ = solver.eigenvalues();
  top_vectors_ = solver.eigenvectors().topRows(dim);
}

CMatrix Displacement::matrix(Amplitude beta) const {
  const double mag = std::abs(beta);
  const double phase = std::arg(beta);
  Eigen::VectorXcd spectral(eigenvalues_.size());
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) spectral[i] = std::polar(1.0, mag * eigenvalues_[i]);
  CMatrix d = top_vectors_ * spectral.asDiagonal() * top_vectors_.adjoint();
  // Rotate back: exp(i phase n) exp(|beta| (a^dag - a)) exp(-i phase n).
  for (int m = 0; m < dim_; ++m) {
    for (int n = 0; n < dim_; ++n) d(m, n) *= std::polar(1.0, phase * (m - n));
  }
  return d;
}

CMatrix displacement_matrix(Amplitude beta, int dim) { return Displacement(dim).matrix(beta); }


BellProjection project_bell(const FockVector& joint, Amplitude beta, const Displacement& disp) {
  if (joint.n_modes != 3) throw DimensionError("Bell projection needs a three-mode (A, B, C) state");
  if (disp.dim() != joint.dim) throw DimensionError("displacement truncation differs from state");
  return project_with(joint, disp.matrix(beta));
}

BellProjection project_bell(const FockVector& joint, Amplitude beta) {
  return project_bell(joint, beta, Displacement(joint.dim, std::abs(beta)));
}

FockVector teleport_input(Amplitude alpha_tilde, double r, int dim) {
  return tensor(two_mode_squeezed(r, dim), coherent_state(alpha_tilde, dim));
}

double bell_probability_density(Amplitude alpha_tilde, double r, Amplitude beta, int dim) {
  return project_bell(teleport_input(alpha_tilde, r, dim), beta).density;
}

double EigenResiduals::max() const {
  return std::max({annihilation_c, annihilation_a, q_difference, p_sum});
}

EigenResiduals verify_eigen_relations(Amplitude beta, int dim) {
  if (dim < 4) throw DimensionError("eigen-relation check needs dim >= 4");
  const CMatrix d = displacement_matrix(beta, dim);
  // psi(s, c) = <c|D(beta)|s> / sqrt(pi): modes (A, C).
  FockVector psi = FockVector::zeros(dim, 2);
  for (int s = 0; s < dim; ++s) {
    for (int c = 0; c < dim; ++c) {
      const int idx[] = {s, c};
      psi.data[static_cast<Eigen::Index>(psi.index(idx))] = kInvSqrtPi * d(c, s);
    }
  }
  const LadderOp a_A{dim, LadderKind::Annihilate, 0}, ad_A{dim, LadderKind::Create, 0};
  const LadderOp a_C{dim, LadderKind::Annihilate, 1}, ad_C{dim, LadderKind::Create, 1};
  const FockVector aA = apply(a_A, psi), adA = apply(ad_A, psi);
  const FockVector aC = apply(a_C, psi), adC = apply(ad_C, psi);

  const int limit = dim - truncation_margin(dim);
  const double ref = std::sqrt(trimmed_norm_sq(psi, limit));
  auto rel = [&](const FockVector& residual) { return std::sqrt(trimmed_norm_sq(residual, limit)) / ref; };

  // (a_C - a_A^dag - beta) psi
  FockVector r1 = axpy(-1.0, adA, aC);
  r1 = axpy(-beta, psi, r1);
  // (a_A - a_C^dag + beta^*) psi
  FockVector r2 = axpy(-1.0, adC, aA);
  r2 = axpy(std::conj(beta), psi, r2);
  // (q_C - q_A)/sqrt2 = (a_C + a_C^dag - a_A - a_A^dag)/2
  FockVector q = axpy(1.0, adC, aC);
  q = axpy(-1.0, aA, q);
  q = axpy(-1.0, adA, q);
  q.data *= 0.5;
  q = axpy(-beta.real(), psi, q);
  // (p_A + p_C)/sqrt2 = i (a_A^dag - a_A + a_C^dag - a_C)/2
  FockVector p = axpy(-1.0, aA, adA);
  p = axpy(1.0, adC, p);
  p = axpy(-1.0, aC, p);
  p.data *= std::complex<double>(0.0, 0.5);
  p = axpy(-beta.imag(), psi, p);

  return EigenResiduals{rel(r1), rel(r2), rel(q), rel(p)};
}

PhotocurrentCheck photocurrent_check(double lo_magnitude, double phase, HomodynePort port,
                                     const FockVector& test_state) {
  if (test_state.n_modes != 2) throw DimensionError("photocurrent check needs a two-mode (A, C) test state");
  if (!(lo_magnitude >= 0.0)) throw DomainError("LO magnitude must be >= 0");
  const int dim = test_state.dim;
  const FockVector lo = coherent_state(std::polar(lo_magnitude, phase), dim);
  const FockVector full = tensor(test_state, lo);  // modes (A, C, LO)

  const double sign = port == HomodynePort::QuadratureDifference ? -1.0 : 1.0;
  // Signal entering the detector beamsplitter: (a_C + sign a_A)/sqrt2.
  const FockVector sig = axpy(sign * kInvSqrt2, apply({dim, LadderKind::Annihilate, 0}, full),
                              axpy(kInvSqrt2, apply({dim, LadderKind::Annihilate, 1}, full),
                                   FockVector::zeros(dim, 3)));
  const FockVector l = apply({dim, LadderKind::Annihilate, 2}, full);
  // Output modes A_1 = (l - s)/sqrt2, A_2 = (l + s)/sqrt2 applied to the state.
  const FockVector out1 = axpy(-kInvSqrt2, sig, axpy(kInvSqrt2, l, FockVector::zeros(dim, 3)));
  const FockVector out2 = axpy(kInvSqrt2, sig, axpy(kInvSqrt2, l, FockVector::zeros(dim, 3)));

  PhotocurrentCheck res;
  res.lhs = out2.data.squaredNorm() - out1.data.squaredNorm();

  // x_phi = (e^{-i phi} a + e^{i phi} a^dag)/sqrt2 on each of A and C.
  const std::complex<double> e = std::polar(1.0, phase);
  auto quadrature = [&](int mode) {
    const FockVector xa = axpy(e, apply({dim, LadderKind::Create, mode}, test_state),
                               axpy(std::conj(e), apply({dim, LadderKind::Annihilate, mode}, test_state),
                                    FockVector::zeros(dim, 2)));
    return (test_state.data.dot(xa.data)).real() * kInvSqrt2;
  };
  res.rhs = lo_magnitude * (quadrature(1) + sign * quadrature(0));
  res.lo_tail = lo.tail_population();
  return res;
}

double oracle_average_fidelity(Amplitude alpha_tilde, double r, int dim, const BetaGrid& grid,
                               int threads) {
  return average_fidelity_impl(alpha_tilde, r, dim, grid, threads, true);
}

double oracle_average_fidelity_serial(Amplitude alpha_tilde, double r, int dim,
                                      const BetaGrid& grid) {
  return average_fidelity_impl(alpha_tilde, r, dim, grid, 1, false);
}

double oracle_total_probability(Amplitude alpha_tilde, double r, int dim, const BetaGrid& grid,
                                int threads) {
  const FockVector joint = teleport_input(alpha_tilde, r, dim);
  const double half = grid.half_width_sigmas * std::cosh(r);
  const Displacement disp(dim, std::abs(alpha_tilde) + half);
  const int n = grid.points_per_axis;
  return grid_sum(grid, half, threads, true, [&](int iy, double step) {
    double row = 0.0;
    for (int ix = 0; ix < n; ++ix) {
      const Amplitude offset{-half + ix * step, -half + iy * step};
      if (std::abs(offset) > half) continue;
      row += project_bell(joint, alpha_tilde + offset, disp).density;
    }
    return row;
  });
}

double commutator_residual(int dim) {
  const Eigen::MatrixXd a = ladder_matrix(dim, LadderKind::Annihilate);
  const Eigen::MatrixXd ad = ladder_matrix(dim, LadderKind::Create);
  const Eigen::MatrixXd comm = a * ad - ad * a - Eigen::MatrixXd::Identity(dim, dim);
  return comm.topLeftCorner(dim - 1, dim - 1).cwiseAbs().maxCoeff();
}

}  // namespace pixelport::fock

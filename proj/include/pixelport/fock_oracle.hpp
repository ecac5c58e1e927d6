#pragma once

// Brute-force truncated Fock-space model of one pixel channel. Everything here
// is built from ladder matrices and dense contractions only, so that it can
// check the closed forms in cv_teleport independently.

#include <Eigen/Dense>
#include <cstddef>
#include <span>

#include "pixelport/pixel_modes.hpp"

namespace pixelport::fock {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Dense state over photon numbers 0..dim-1 in each of n_modes modes.
/// Mode 0 is the most significant index.
struct FockVector {
  int dim = 0;
  int n_modes = 0;
  CVector data;

  static FockVector zeros(int dim, int n_modes);

  std::size_t stride(int mode) const;
  std::size_t index(std::span<const int> photons) const;
  int photons(std::size_t flat_index, int mode) const {
    return static_cast<int>((flat_index / stride(mode)) % static_cast<std::size_t>(dim));
  }

  double norm() const { return data.norm(); }
  /// Population with any mode in its top ceil(dim/10) levels.
  double tail_population() const;
};

enum class LadderKind { Create, Annihilate };

struct LadderOp {
  int dim = 0;
  LadderKind kind = LadderKind::Annihilate;
  int mode = 0;
};

/// Single-mode matrix: <n+1|a^dag|n> = sqrt(n+1), a = (a^dag)^T.
Eigen::MatrixXd ladder_matrix(int dim, LadderKind kind);

/// Applies a ladder operator to one mode of a multi-mode vector.
FockVector apply(const LadderOp& op, const FockVector& v);

/// Applies a dim x dim single-mode matrix to one mode.
FockVector apply_single_mode(const CMatrix& m, const FockVector& v, int mode);

/// |a> (x) |b>; the modes of `a` come first.
FockVector tensor(const FockVector& a, const FockVector& b);

/// Truncated coherent state e^{-|alpha|^2/2} alpha^n / sqrt(n!), not renormalised.
FockVector coherent_state(Amplitude alpha, int dim);

/// sech(r) sum_n tanh(r)^n |n>|n>, truncated at dim, not renormalised.
FockVector two_mode_squeezed(double r, int dim);

/// ceil(dim / 5): levels excluded from edge-trimmed residuals.
int truncation_margin(int dim);

/// Displacement operators exp(beta a^dag - beta^* a) for one truncation.
///
/// The exponential is taken in a padded working space and the leading
/// dim x dim block is returned, which keeps low-lying matrix elements free of
/// truncation artifacts. The padding is 2*dim, or more when `max_abs_beta`
/// asks for it: displacing |dim> by |beta| reaches photon numbers near
/// (sqrt(dim) + |beta|)^2, and the working space has to hold that. The
/// generator is diagonalised once; each beta then costs a phase rotation and
/// one block product.
class Displacement {
 public:
  explicit Displacement(int dim, double max_abs_beta = 0.0);
  int dim() const { return dim_; }
  int working_dim() const { return static_cast<int>(eigenvalues_.size()); }
  CMatrix matrix(Amplitude beta) const;

  static int padded_dim(int dim, double max_abs_beta);

 private:
  int dim_;
  Eigen::VectorXd eigenvalues_;
  CMatrix top_vectors_;  // first dim rows of the eigenvector matrix
};

CMatrix displacement_matrix(Amplitude beta, int dim);

struct BellProjection {
  double density = 0.0;  // p(beta) = squared norm of the contraction
  FockVector bob_state;  // normalised
  double bob_norm = 0.0;
};

/// Contracts modes A and C of a three-mode (A, B, C) state with the
/// generalised Bell state pi^{-1/2} sum_s D_C(beta)|s>_A|s>_C.
BellProjection project_bell(const FockVector& joint, Amplitude beta, const Displacement& disp);
BellProjection project_bell(const FockVector& joint, Amplitude beta);

/// two_mode_squeezed(r) (x) coherent_state(alpha_tilde), modes (A, B, C).
FockVector teleport_input(Amplitude alpha_tilde, double r, int dim);

/// p(beta) from project_bell on teleport_input(alpha_tilde, r, dim).
double bell_probability_density(Amplitude alpha_tilde, double r, Amplitude beta, int dim);

struct EigenResiduals {
  double annihilation_c = 0.0;   // (a_C - a_A^dag) psi = beta psi
  double annihilation_a = 0.0;   // (a_A - a_C^dag) psi = -beta^* psi
  double q_difference = 0.0;     // (q_C - q_A)/sqrt2 psi = beta_R psi
  double p_sum = 0.0;            // (p_A + p_C)/sqrt2 psi = beta_I psi

  double max() const;
};

/// Relative residuals of the Bell-state eigenvalue relations, with norms
/// restricted to photon numbers below dim - truncation_margin(dim).
EigenResiduals verify_eigen_relations(Amplitude beta, int dim);

/// Which balanced homodyne detector of the Bell measurement.
enum class HomodynePort {
  QuadratureDifference,  // LO mixed with (a_C - a_A)/sqrt2
  QuadratureSum,         // LO mixed with (a_C + a_A)/sqrt2
};

struct PhotocurrentCheck {
  double lhs = 0.0;  // <A_out2^dag A_out2 - A_out1^dag A_out1> on test (x) LO
  double rhs = 0.0;  // |alpha_LO| <x_phi,C -/+ x_phi,A> on the test state
  double lo_tail = 0.0;
};

/// Photon-number difference of one homodyne detector against its quadrature
/// form. `test_state` holds modes (A, C); the LO coherent state
/// |lo_magnitude e^{i phase}> is appended as a third mode.
PhotocurrentCheck photocurrent_check(double lo_magnitude, double phase, HomodynePort port,
                                     const FockVector& test_state);

struct BetaGrid {
  double half_width_sigmas = 5.0;  // disk radius in units of cosh(r)
  int points_per_axis = 61;
};

/// Integral over beta of p(beta) |<alpha|D(beta)|bob(beta)>|^2, by a Riemann
/// sum over the grid points with |beta - alpha_tilde| <= half_width_sigmas cosh r.
/// OpenMP over grid rows.
double oracle_average_fidelity(Amplitude alpha_tilde, double r, int dim, const BetaGrid& grid,
                               int threads = 0);
double oracle_average_fidelity_serial(Amplitude alpha_tilde, double r, int dim,
                                      const BetaGrid& grid);

/// Integral of p(beta) over the same disk; 1 for a complete Bell basis.
double oracle_total_probability(Amplitude alpha_tilde, double r, int dim, const BetaGrid& grid,
                                int threads = 0);

/// max |([a, a^dag] - I)_{nm}| over n, m < dim - 1.
double commutator_residual(int dim);

}  // namespace pixelport::fock

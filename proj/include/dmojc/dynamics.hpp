#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "dmojc/blocks.hpp"

namespace dmojc {

/// Amplitudes over the extended basis order at one time, for the lowest
/// invariant subspace: (c1, c2, c3) on [|-,-',1>, |+,-',0>, |-,+',0>]
/// (a fourth entry appears for higher subspaces).
struct CoefficientSet {
  double t = 0.0;
  Eigen::VectorXcd c;
};

/// Closed-form coefficient functions of the resonant two-isospin model
/// (unit couplings, equal detunings gamma). gamma_tilde = sqrt(gamma^2 + 2).
struct AnalyticKernel {
  double gamma = 0.0;
  double gamma_tilde = std::sqrt(2.0);

  /// f0(t) = sin^2(gamma_tilde t) / gamma_tilde^2.
  double f0(double t) const;
  /// g(t) = (g+gt)/(2gt) cos((gt-g)t) + 1/(gt(g+gt)) cos((gt+g)t); g(0) = 1.
  double g(double t) const;
  /// f_alpha(t) = (1 + sin 2alpha) f0(t).
  double f_alpha(double t, double alpha) const;

  /// Exact complex amplitudes (c1, c2, c3) of the initial state
  /// cos(a)|-,+',0> + sin(a)|+,-',0>; moduli squared reproduce
  /// coefficient_formulas without cancellation near their zeros.
  std::array<std::complex<double>, 3> closed_amplitudes(double t,
                                                        double alpha) const;
};

namespace dynamics {

/// Spectral propagation exp(-iHt) inside one block; preserves the norm.
/// Throws std::invalid_argument on basis mismatch or non-finite t.
LabeledState propagate(const HermitianBlock& block, const LabeledState& initial,
                       double t);

/// Caches one diagonalization for evaluation over a whole time grid.
class BlockPropagator {
 public:
  explicit BlockPropagator(HermitianBlock block);

  const HermitianBlock& block() const { return block_; }
  Eigen::VectorXcd amplitudes_at(const Eigen::VectorXcd& initial,
                                 double t) const;

 private:
  HermitianBlock block_;
  EigenSystem eig_;
};

/// Evolution of cos(a)|-,+'> + sin(a)|+,-'> times the oscillator ground ket
/// inside the lowest invariant subspace of the extended model.
std::vector<CoefficientSet> evolve_extended(const ModelSpec& spec, double alpha,
                                            std::span<const double> t_grid);

/// Kernel of the closed-form solution; callers must be on the resonant
/// normalization (unit effective couplings, equal detunings gamma).
AnalyticKernel analytic_kernel(double gamma);

/// Real coefficient triple (f_a, (1 - f_a - g cos2a)/2, (1 - f_a + g cos2a)/2).
/// These are modulus-level data: the first entry equals |c1|^2 and the pair
/// completes the populations; the triple is not the complex amplitude set.
std::array<double, 3> coefficient_formulas(const AnalyticKernel& kernel,
                                           double alpha, double t);

/// Uniform grid of `steps` points covering [0, t_max].
std::vector<double> time_grid(double t_max, int steps);

} // namespace dynamics
} // namespace dmojc

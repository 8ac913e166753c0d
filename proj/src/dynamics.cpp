#include "dmojc/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace dmojc {

double AnalyticKernel::f0(double t) const {
  const double s = std::sin(gamma_tilde * t);
  return s * s / (gamma_tilde * gamma_tilde);
}

double AnalyticKernel::g(double t) const {
  const double gt = gamma_tilde;
  return (gamma + gt) / (2.0 * gt) * std::cos((gt - gamma) * t) +
         1.0 / (gt * (gamma + gt)) * std::cos((gt + gamma) * t);
}

double AnalyticKernel::f_alpha(double t, double alpha) const {
  return (1.0 + std::sin(2.0 * alpha)) * f0(t);
}

std::array<std::complex<double>, 3> AnalyticKernel::closed_amplitudes(
    double t, double alpha) const {
  using namespace std::complex_literals;
  const double gt = gamma_tilde;
  const double s0 = (std::sin(alpha) + std::cos(alpha)) / std::sqrt(2.0);
  const double a0 = (std::sin(alpha) - std::cos(alpha)) / std::sqrt(2.0);
  const std::complex<double> ph = std::exp(1i * gamma * t);
  const std::complex<double> z =
      ph * (std::cos(gt * t) - 1i * (gamma / gt) * std::sin(gt * t));
  const std::complex<double> c1 =
      s0 * ph * (-1i * std::sqrt(2.0) * std::sin(gt * t) / gt);
  const std::complex<double> c2 = (s0 * z + a0) / std::sqrt(2.0);
  const std::complex<double> c3 = (s0 * z - a0) / std::sqrt(2.0);
  return {c1, c2, c3};
}

namespace dynamics {

namespace {

bool same_basis(const SubspaceBasis& a, const SubspaceBasis& b) {
  return a.invariant_value == b.invariant_value && a.kets == b.kets;
}

} // namespace

BlockPropagator::BlockPropagator(HermitianBlock block)
    : block_(std::move(block)), eig_(blocks::eig_block(block_)) {}

Eigen::VectorXcd BlockPropagator::amplitudes_at(const Eigen::VectorXcd& initial,
                                                double t) const {
  using namespace std::complex_literals;
  const Eigen::VectorXcd projected = eig_.vectors.adjoint() * initial;
  Eigen::VectorXcd phased(projected.size());
  for (int k = 0; k < projected.size(); ++k)
    phased(k) = std::exp(-1i * eig_.values(k) * t) * projected(k);
  return eig_.vectors * phased;
}

LabeledState propagate(const HermitianBlock& block, const LabeledState& initial,
                       double t) {
  if (!std::isfinite(t))
    throw std::invalid_argument("propagate: t must be finite");
  if (!same_basis(block.basis, initial.basis))
    throw std::invalid_argument("propagate: state basis does not match block");
  if (initial.amplitudes.size() != block.size())
    throw std::invalid_argument("propagate: amplitude length mismatch");
  BlockPropagator prop(block);
  return {block.basis, prop.amplitudes_at(initial.amplitudes, t)};
}

std::vector<CoefficientSet> evolve_extended(const ModelSpec& spec, double alpha,
                                            std::span<const double> t_grid) {
  if (!spec.extended)
    throw std::invalid_argument("evolve_extended: spec must be extended");
  BlockPropagator prop(blocks::extended_block(spec, 0));
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(3);
  psi0(1) = std::sin(alpha);
  psi0(2) = std::cos(alpha);

  std::vector<CoefficientSet> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back({t, prop.amplitudes_at(psi0, t)});
  return out;
}

AnalyticKernel analytic_kernel(double gamma) {
  if (!std::isfinite(gamma))
    throw std::invalid_argument("analytic_kernel: gamma must be finite");
  return {gamma, std::sqrt(gamma * gamma + 2.0)};
}

std::array<double, 3> coefficient_formulas(const AnalyticKernel& kernel,
                                           double alpha, double t) {
  const double fa = kernel.f_alpha(t, alpha);
  const double gc = kernel.g(t) * std::cos(2.0 * alpha);
  return {fa, 0.5 * (1.0 - fa - gc), 0.5 * (1.0 - fa + gc)};
}

std::vector<double> time_grid(double t_max, int steps) {
  if (steps < 2) throw std::invalid_argument("time_grid: steps must be >= 2");
  if (!(t_max > 0.0))
    throw std::invalid_argument("time_grid: t_max must be positive");
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i)
    grid[i] = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
  return grid;
}

} // namespace dynamics
} // namespace dmojc

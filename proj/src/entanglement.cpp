#include "dmojc/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmojc {

void ReducedDensity::validate() const {
  const int k = dim();
  if (k != 2 && k != 4)
    throw std::invalid_argument("ReducedDensity: dimension must be 2 or 4");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("ReducedDensity: not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-12 ||
      std::abs(rho.trace().imag()) > 1e-12)
    throw std::invalid_argument("ReducedDensity: trace must be 1");
  if (blocks::eig_hermitian(rho).values.minCoeff() < -1e-12)
    throw std::invalid_argument("ReducedDensity: not positive semidefinite");
}

namespace ent {

namespace {

void require_lowest_subspace(const CoefficientSet& state) {
  if (state.c.size() != 3)
    throw std::invalid_argument(
        "reduction: expected the three-ket lowest invariant subspace");
}

// sy x sy in the (--, +-, -+, ++) ordering: antidiag(-1, 1, 1, -1).
Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(0, 3) = -1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 0) = -1.0;
  return s;
}

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& m) {
  const EigenSystem sys = blocks::eig_hermitian(m);
  const Eigen::VectorXd w = sys.values.cwiseMax(0.0).cwiseSqrt();
  return sys.vectors * w.asDiagonal() * sys.vectors.adjoint();
}

} // namespace

ReducedDensity reduce_to_field(const CoefficientSet& state) {
  require_lowest_subspace(state);
  ReducedDensity out;
  out.rho = Eigen::MatrixXcd::Zero(2, 2);
  out.rho(0, 0) = std::norm(state.c(0)) + std::norm(state.c(2));
  out.rho(1, 1) = std::norm(state.c(1));
  return out;
}

ReducedDensity reduce_to_atoms(const CoefficientSet& state) {
  require_lowest_subspace(state);
  ReducedDensity out;
  out.rho = Eigen::MatrixXcd::Zero(4, 4);
  out.rho(0, 0) = std::norm(state.c(0));
  out.rho(1, 1) = std::norm(state.c(1));
  out.rho(2, 2) = std::norm(state.c(2));
  out.rho(1, 2) = state.c(1) * std::conj(state.c(2));
  out.rho(2, 1) = std::conj(out.rho(1, 2));
  return out;
}

double purity(const ReducedDensity& rho) {
  return (rho.rho * rho.rho).trace().real();
}

double concurrence(const ReducedDensity& rho) {
  if (rho.dim() != 4)
    throw std::invalid_argument("concurrence: expected a two-qubit matrix");
  rho.validate();
  const Eigen::Matrix4cd flip = spin_flip();
  const Eigen::MatrixXcd root = matrix_sqrt_psd(rho.rho);
  const Eigen::MatrixXcd m = root * flip * rho.rho.conjugate() * flip * root;
  const EigenSystem sys = blocks::eig_hermitian(0.5 * (m + m.adjoint()));

  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i)
    lambda[i] = std::sqrt(std::max(0.0, sys.values(i)));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double closed_form_concurrence(const AnalyticKernel& kernel, double alpha,
                               double t) {
  const auto c = kernel.closed_amplitudes(t, alpha);
  return 2.0 * std::abs(c[1]) * std::abs(c[2]);
}

std::pair<double, double> cp_frontier(double purity_value, double alpha) {
  const double arg = 2.0 * purity_value - 1.0;
  if (arg < 0.0)
    throw std::domain_error("cp_frontier: purity must be >= 1/2");
  const double x = std::sqrt(arg);
  const double s2 = 2.0 * std::sin(2.0 * alpha);
  const double c_plus = 0.5 * std::abs(1.0 + x - s2);
  // At alpha = 0 both arguments are nonnegative, so C- = 1 - C+ holds
  // algebraically; evaluating it that way keeps the pair summing to one
  // bit-exactly.
  const double c_minus =
      alpha == 0.0 ? 1.0 - c_plus : 0.5 * std::abs(1.0 - x - s2);
  return {c_plus, c_minus};
}

std::vector<CPPoint> cp_trajectory(const ModelSpec& spec, double alpha,
                                   std::span<const double> t_grid) {
  if (!spec.extended)
    throw std::invalid_argument("cp_trajectory: spec must be extended");
  std::vector<CPPoint> out;
  out.reserve(t_grid.size());
  for (const CoefficientSet& state :
       dynamics::evolve_extended(spec, alpha, t_grid)) {
    const ReducedDensity rho = reduce_to_atoms(state);
    out.push_back({state.t, purity(rho), concurrence(rho)});
  }
  return out;
}

} // namespace ent
} // namespace dmojc

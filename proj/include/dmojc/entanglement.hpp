#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dmojc/dynamics.hpp"

namespace dmojc {

/// Hermitian positive-semidefinite matrix of unit trace (2x2 or 4x4).
struct ReducedDensity {
  Eigen::MatrixXcd rho;

  int dim() const { return static_cast<int>(rho.rows()); }
  /// Throws std::invalid_argument when Hermiticity, positivity or the unit
  /// trace are violated beyond 1e-12.
  void validate() const;
};

/// One point of a concurrence-versus-purity trajectory.
struct CPPoint {
  double t = 0.0;
  double purity = 1.0;
  double concurrence = 0.0;
};

namespace ent {

/// 2x2 reduction of the lowest-subspace state (c1, c2, c3), in the ordering
/// (+', -'): diag(|c1|^2 + |c3|^2, |c2|^2). Cross terms vanish because the
/// retained labels pair with orthogonal remainders.
ReducedDensity reduce_to_field(const CoefficientSet& state);

/// 4x4 two-isospin reduction in the ordering (--, +-, -+, ++): |c1|^2 in the
/// |--> corner, a coherent block over {|+->, |-+>}, and an empty |++> slot.
ReducedDensity reduce_to_atoms(const CoefficientSet& state);

/// Tr(rho^2).
double purity(const ReducedDensity& rho);

/// Wootters concurrence of a two-qubit density matrix:
/// max{0, l1 - l2 - l3 - l4} with l_j the descending square roots of the
/// eigenvalues of rho (sy x sy) rho* (sy x sy). Evaluated on the Hermitian
/// form sqrt(rho) S rho* S sqrt(rho), which has the same spectrum.
double concurrence(const ReducedDensity& rho);

/// Closed-form concurrence sqrt((1 - f_a)^2 - g^2 cos^2 2a), clamped at 0.
/// Evaluated through the factored amplitude form 2|c2||c3|, which is
/// algebraically identical and avoids cancellation near the zeros.
double closed_form_concurrence(const AnalyticKernel& kernel, double alpha,
                               double t);

/// Frontier pair C+-(P; a) = |1 +- sqrt(2P-1) - 2 sin 2a| / 2 of the
/// zero-detuning trajectories. At alpha = 0 the two branches sum to one
/// exactly. Throws std::domain_error for P < 1/2.
std::pair<double, double> cp_frontier(double purity_value, double alpha);

/// Concurrence-purity trajectory of the two-isospin reduction, ordered by t.
std::vector<CPPoint> cp_trajectory(const ModelSpec& spec, double alpha,
                                   std::span<const double> t_grid);

} // namespace ent
} // namespace dmojc

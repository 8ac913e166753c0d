#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "dmojc/qnums.hpp"

namespace dmojc {

/// Small Hermitian matrix (1x1 .. 4x4) together with its ordered basis.
struct HermitianBlock {
  SubspaceBasis basis;
  Eigen::MatrixXcd entries;

  int size() const { return static_cast<int>(entries.rows()); }
};

/// Normalized amplitude vector over the kets of one subspace basis.
struct LabeledState {
  SubspaceBasis basis;
  Eigen::VectorXcd amplitudes;
};

/// Result of diagonalizing a HermitianBlock: eigenvalues ascending, columns
/// of `vectors` orthonormal and paired with the values. The phase convention
/// makes the largest-magnitude component of each vector real and positive.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

/// Parameter identification between an oscillator model and the two-level /
/// single-mode cavity model: equivalent Rabi coupling and detuning.
struct MappingReport {
  Dimensionality dim;
  BranchD3 branch = BranchD3::FiniteDeg;
  double omega_equivalent = 0.0;
  double delta_equivalent = 0.0;
  bool exact = false;
  std::string notes;
};

namespace blocks {

/// Cavity-model block with n excitations on [|+,n-1>, |-,n>]:
/// [[delta, omega sqrt(n)], [omega sqrt(n), -delta]]; 1x1 [-delta] at n = 0.
HermitianBlock jc_block(double omega, double delta, int n_excitations);

/// Single-isospin oscillator block at chain index n:
/// [[mc2, eta f(n)], [eta f(n), -mc2]] on [|+,n-1>, |-,n>], where f is the
/// dimension-specific ladder coefficient; 1x1 [-mc2] at the chain bottom.
HermitianBlock dmo_block(const ModelSpec& spec, int n);

/// Two-isospin block on the basis of basis_extended(spec, invariant_value),
/// with diagonal (-mc2-gamma, gamma-mc2, mc2-gamma, mc2+gamma) and ladder
/// couplings eta/chi * f at the positions fixed by the basis order.
HermitianBlock extended_block(const ModelSpec& spec, int invariant_value);

/// Deterministic cyclic Jacobi diagonalization for Hermitian blocks.
/// Converges when every off-diagonal magnitude drops below 1e-14 * ||H||.
/// Throws std::invalid_argument when the input is non-Hermitian beyond 1e-12.
EigenSystem eig_block(const HermitianBlock& block);

/// Same solver on a bare Hermitian matrix.
EigenSystem eig_hermitian(const Eigen::MatrixXcd& h);

/// Analytic pair (-E, +E) with E = sqrt(mc2^2 + eta^2 mu(n)) for the
/// single-isospin model; mu is the linear chain value at index n.
std::pair<double, double> analytic_energies(const ModelSpec& spec, int n);

/// Eigenstates (phi_plus, phi_minus) of the cavity block with n >= 1
/// excitations, parameterized by the mixing angle
/// theta = arctan sqrt((E - delta) / (E + delta)).
/// Throws std::domain_error when E = 0 (both detuning and coupling vanish).
std::pair<LabeledState, LabeledState> dressed_states(double omega,
                                                     double delta,
                                                     int n_excitations);

/// Mapping of the given model onto the cavity model. Exact for 1+1, 2+1 and
/// the infinitely degenerate family of 3+1; not exact for the finite family.
MappingReport parameter_mapping(const ModelSpec& spec);

} // namespace blocks
} // namespace dmojc

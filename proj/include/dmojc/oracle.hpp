#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dmojc/blocks.hpp"

namespace dmojc {

/// Truncated product space 2 (x) [2] (x) Fock(<= nmax) with a bijective map
/// between labeled kets and flat indices. Flat layout: the oscillator index
/// is the slow axis; within it the isospin pair (iso1, iso2) with Minus = 0,
/// Plus = 1 and iso1 as the high bit (extended model only has iso2).
struct FullSpace {
  ModelSpec spec;
  int nmax = 1;
  int iso_states = 2;
  int dimension = 4;

  int index_of(const BasisKet& ket) const;
  BasisKet ket_of(int index) const;
  /// Eigenvalue of the excitation number at a flat index.
  double invariant_at(int index) const;
};

/// Dense Hermitian realization of the model on the truncated space.
struct FullSystem {
  FullSpace space;
  Eigen::MatrixXcd hamiltonian;
};

/// Differential comparison between block propagation and the dense oracle.
struct BlockVsFullResult {
  double max_state_error = 0.0;     // sup-norm mismatch on the subspace kets
  double max_out_of_subspace = 0.0; // largest amplitude leaked outside
  double max_spectral_error = 0.0;  // interior block spectra vs full spectrum
  double invariant_drift = 0.0;     // max |<I>(t) - <I>(0)|
  double variance_drift = 0.0;      // max |Var I(t) - Var I(0)|
  bool edge_warning = false;
};

namespace oracle {

/// Dense Hamiltonian built from the isospin raising/lowering operators and
/// the chain ladder; Hermitian by construction (conjugate entries mirrored).
/// Couplings out of the top chain state are dropped by the truncation.
FullSystem build_full(const ModelSpec& spec, int nmax);

/// Full eigendecomposition of one dense system, reused across a time grid.
class FullPropagator {
 public:
  explicit FullPropagator(const FullSystem& system);

  const FullSpace& space() const { return space_; }
  const Eigen::VectorXd& eigenvalues() const { return values_; }
  Eigen::VectorXcd state_at(const Eigen::VectorXcd& initial, double t) const;

 private:
  FullSpace space_;
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
};

/// exp(-iHt) psi0 by full eigendecomposition. Sets *edge_warning when psi0
/// populates the top two chain levels (truncation artifacts possible).
Eigen::VectorXcd evolve_full(const FullSystem& system,
                             const Eigen::VectorXcd& psi0, double t,
                             bool* edge_warning = nullptr);

double invariant_expectation(const FullSpace& space,
                             const Eigen::VectorXcd& state);
double invariant_variance(const FullSpace& space,
                          const Eigen::VectorXcd& state);

/// Max drift of <I> along a trajectory.
double check_invariant(const FullSpace& space,
                       std::span<const Eigen::VectorXcd> trajectory);

/// Extended model: evolve cos(a)|-,+',0> + sin(a)|+,-',0> with both the
/// lowest-subspace block and the dense oracle over the grid. A block
/// override (e.g. a deliberately corrupted matrix) replaces the block side.
BlockVsFullResult compare_block_vs_full(
    const ModelSpec& spec, double alpha, std::span<const double> t_grid,
    int nmax, const std::optional<HermitianBlock>& block_override = {});

/// Simple model: same comparison for an initial state inside the subspace
/// with the given number of excitations.
BlockVsFullResult compare_block_vs_full_simple(
    const ModelSpec& spec, int n_excitations,
    const Eigen::VectorXcd& subspace_amplitudes,
    std::span<const double> t_grid, int nmax);

/// Partial traces of a pure full-space state. The two-isospin reduction is
/// returned in the (--, +-, -+, ++) ordering; single-isospin reductions in
/// (-, +) ordering.
Eigen::MatrixXcd reduce_keep_isospins(const FullSpace& space,
                                      const Eigen::VectorXcd& state);
Eigen::MatrixXcd reduce_keep_first_isospin(const FullSpace& space,
                                           const Eigen::VectorXcd& state);
Eigen::MatrixXcd reduce_keep_second_isospin(const FullSpace& space,
                                            const Eigen::VectorXcd& state);

} // namespace oracle
} // namespace dmojc

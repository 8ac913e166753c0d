#include "dmojc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dmojc/dynamics.hpp"

namespace dmojc {

namespace {

int iso_index(Iso iso) { return iso == Iso::Plus ? 1 : 0; }
Iso iso_from_index(int i) { return i == 1 ? Iso::Plus : Iso::Minus; }

} // namespace

int FullSpace::index_of(const BasisKet& ket) const {
  if (ket.osc < 0 || ket.osc > nmax)
    throw std::domain_error("FullSpace: oscillator index out of range");
  if (spec.extended != ket.iso2.has_value())
    throw std::invalid_argument("FullSpace: ket does not match the model");
  int iso = iso_index(ket.iso1);
  if (ket.iso2) iso = 2 * iso + iso_index(*ket.iso2);
  return iso_states * ket.osc + iso;
}

BasisKet FullSpace::ket_of(int index) const {
  if (index < 0 || index >= dimension)
    throw std::domain_error("FullSpace: flat index out of range");
  const int osc = index / iso_states;
  const int iso = index % iso_states;
  BasisKet ket;
  ket.osc = osc;
  if (spec.extended) {
    ket.iso1 = iso_from_index(iso / 2);
    ket.iso2 = iso_from_index(iso % 2);
  } else {
    ket.iso1 = iso_from_index(iso);
  }
  return ket;
}

double FullSpace::invariant_at(int index) const {
  return invariant_of(ket_of(index));
}

namespace oracle {

FullSystem build_full(const ModelSpec& spec, int nmax) {
  spec.validate();
  if (nmax < 1) throw std::invalid_argument("build_full: nmax must be >= 1");

  FullSystem sys;
  sys.space.spec = spec;
  sys.space.nmax = nmax;
  sys.space.iso_states = spec.extended ? 4 : 2;
  sys.space.dimension = sys.space.iso_states * (nmax + 1);

  const int d = sys.space.dimension;
  sys.hamiltonian = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd& h = sys.hamiltonian;

  for (int i = 0; i < d; ++i) {
    const BasisKet ket = sys.space.ket_of(i);
    double diag = spec.mc2 * static_cast<int>(ket.iso1);
    if (ket.iso2) diag += spec.gamma * static_cast<int>(*ket.iso2);
    h(i, i) = diag;
  }

  // sigma_+ A couples |-, n> -> |+, n-1> with amplitude eta f(n); the
  // primed pair acts on the second isospin with amplitude chi f(n).
  for (int n = 1; n <= nmax; ++n) {
    const double f = ladder_coefficient(spec, n);
    if (!spec.extended) {
      const int lower = sys.space.index_of({Iso::Minus, std::nullopt, n});
      const int upper = sys.space.index_of({Iso::Plus, std::nullopt, n - 1});
      h(upper, lower) += spec.eta * f;
      h(lower, upper) += spec.eta * f;
    } else {
      for (int other = 0; other < 2; ++other) {
        const Iso spectator = iso_from_index(other);
        const int lower1 = sys.space.index_of({Iso::Minus, spectator, n});
        const int upper1 = sys.space.index_of({Iso::Plus, spectator, n - 1});
        h(upper1, lower1) += spec.eta * f;
        h(lower1, upper1) += spec.eta * f;

        const int lower2 = sys.space.index_of({spectator, Iso::Minus, n});
        const int upper2 = sys.space.index_of({spectator, Iso::Plus, n - 1});
        h(upper2, lower2) += spec.chi * f;
        h(lower2, upper2) += spec.chi * f;
      }
    }
  }
  return sys;
}

FullPropagator::FullPropagator(const FullSystem& system) : space_(system.space) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(system.hamiltonian);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("FullPropagator: eigendecomposition failed");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::VectorXcd FullPropagator::state_at(const Eigen::VectorXcd& initial,
                                          double t) const {
  using namespace std::complex_literals;
  Eigen::VectorXcd projected = vectors_.adjoint() * initial;
  for (int k = 0; k < projected.size(); ++k)
    projected(k) *= std::exp(-1i * values_(k) * t);
  return vectors_ * projected;
}

namespace {

bool populates_edge(const FullSpace& space, const Eigen::VectorXcd& psi0) {
  for (int i = 0; i < space.dimension; ++i)
    if (space.ket_of(i).osc >= space.nmax - 1 && std::abs(psi0(i)) > 1e-14)
      return true;
  return false;
}

} // namespace

Eigen::VectorXcd evolve_full(const FullSystem& system,
                             const Eigen::VectorXcd& psi0, double t,
                             bool* edge_warning) {
  if (psi0.size() != system.space.dimension)
    throw std::invalid_argument("evolve_full: state dimension mismatch");
  if (edge_warning) *edge_warning = populates_edge(system.space, psi0);
  FullPropagator prop(system);
  return prop.state_at(psi0, t);
}

double invariant_expectation(const FullSpace& space,
                             const Eigen::VectorXcd& state) {
  double value = 0.0;
  for (int i = 0; i < space.dimension; ++i)
    value += std::norm(state(i)) * space.invariant_at(i);
  return value;
}

double invariant_variance(const FullSpace& space,
                          const Eigen::VectorXcd& state) {
  double first = 0.0;
  double second = 0.0;
  for (int i = 0; i < space.dimension; ++i) {
    const double inv = space.invariant_at(i);
    const double p = std::norm(state(i));
    first += p * inv;
    second += p * inv * inv;
  }
  return second - first * first;
}

double check_invariant(const FullSpace& space,
                       std::span<const Eigen::VectorXcd> trajectory) {
  if (trajectory.empty()) return 0.0;
  const double initial = invariant_expectation(space, trajectory.front());
  double drift = 0.0;
  for (const Eigen::VectorXcd& state : trajectory)
    drift = std::max(drift,
                     std::abs(invariant_expectation(space, state) - initial));
  return drift;
}

namespace {

// Monotone nearest-match of one sorted multiset inside a larger sorted one;
// every needle consumes a distinct haystack element so duplicates pair up.
double sorted_match_error(const std::vector<double>& needles,
                          const Eigen::VectorXd& haystack) {
  double worst = 0.0;
  int j = 0;
  const int n = static_cast<int>(haystack.size());
  for (double value : needles) {
    if (j >= n) return std::numeric_limits<double>::infinity();
    while (j + 1 < n &&
           std::abs(haystack(j + 1) - value) < std::abs(haystack(j) - value))
      ++j;
    worst = std::max(worst, std::abs(haystack(j) - value));
    ++j;
  }
  return worst;
}

double interior_spectral_error(const ModelSpec& spec, int nmax,
                               const Eigen::VectorXd& full_values) {
  std::vector<double> block_values;
  if (spec.extended) {
    // Subspace N holds oscillator indices up to N+1; interior means the
    // whole subspace stays at least two levels below the truncation.
    for (int inv = -1; inv + 1 <= nmax - 2; ++inv) {
      const EigenSystem sys =
          blocks::eig_block(blocks::extended_block(spec, inv));
      for (int i = 0; i < sys.values.size(); ++i)
        block_values.push_back(sys.values(i));
    }
  } else {
    for (int n = 0; n <= nmax - 2; ++n) {
      const EigenSystem sys = blocks::eig_block(blocks::dmo_block(spec, n));
      for (int i = 0; i < sys.values.size(); ++i)
        block_values.push_back(sys.values(i));
    }
  }
  std::sort(block_values.begin(), block_values.end());
  return sorted_match_error(block_values, full_values);
}

struct TrajectoryAccumulator {
  double inv0 = 0.0;
  double var0 = 0.0;
  bool first = true;
  double inv_drift = 0.0;
  double var_drift = 0.0;

  void feed(const FullSpace& space, const Eigen::VectorXcd& state) {
    const double inv = invariant_expectation(space, state);
    const double var = invariant_variance(space, state);
    if (first) {
      inv0 = inv;
      var0 = var;
      first = false;
    }
    inv_drift = std::max(inv_drift, std::abs(inv - inv0));
    var_drift = std::max(var_drift, std::abs(var - var0));
  }
};

BlockVsFullResult run_comparison(const ModelSpec& spec,
                                 const HermitianBlock& block,
                                 const Eigen::VectorXcd& block_psi0,
                                 std::span<const double> t_grid, int nmax) {
  const FullSystem system = build_full(spec, nmax);
  const FullPropagator full(system);
  const dynamics::BlockPropagator block_prop(block);

  std::vector<int> subspace_indices;
  subspace_indices.reserve(block.basis.kets.size());
  for (const BasisKet& ket : block.basis.kets)
    subspace_indices.push_back(system.space.index_of(ket));

  Eigen::VectorXcd full_psi0 =
      Eigen::VectorXcd::Zero(system.space.dimension);
  for (std::size_t k = 0; k < subspace_indices.size(); ++k)
    full_psi0(subspace_indices[k]) = block_psi0(static_cast<int>(k));

  BlockVsFullResult result;
  result.edge_warning = populates_edge(system.space, full_psi0);
  TrajectoryAccumulator acc;

  for (double t : t_grid) {
    const Eigen::VectorXcd full_state = full.state_at(full_psi0, t);
    const Eigen::VectorXcd block_state = block_prop.amplitudes_at(block_psi0, t);
    for (std::size_t k = 0; k < subspace_indices.size(); ++k) {
      const double diff = std::abs(full_state(subspace_indices[k]) -
                                   block_state(static_cast<int>(k)));
      result.max_state_error = std::max(result.max_state_error, diff);
    }
    for (int i = 0; i < system.space.dimension; ++i) {
      if (std::find(subspace_indices.begin(), subspace_indices.end(), i) !=
          subspace_indices.end())
        continue;
      result.max_out_of_subspace =
          std::max(result.max_out_of_subspace, std::abs(full_state(i)));
    }
    acc.feed(system.space, full_state);
  }
  result.invariant_drift = acc.inv_drift;
  result.variance_drift = acc.var_drift;
  result.max_spectral_error =
      interior_spectral_error(spec, nmax, full.eigenvalues());
  return result;
}

} // namespace

BlockVsFullResult compare_block_vs_full(
    const ModelSpec& spec, double alpha, std::span<const double> t_grid,
    int nmax, const std::optional<HermitianBlock>& block_override) {
  if (!spec.extended)
    throw std::invalid_argument("compare_block_vs_full: spec must be extended");
  const HermitianBlock block =
      block_override ? *block_override : blocks::extended_block(spec, 0);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(3);
  psi0(1) = std::sin(alpha);
  psi0(2) = std::cos(alpha);
  return run_comparison(spec, block, psi0, t_grid, nmax);
}

BlockVsFullResult compare_block_vs_full_simple(
    const ModelSpec& spec, int n_excitations,
    const Eigen::VectorXcd& subspace_amplitudes,
    std::span<const double> t_grid, int nmax) {
  if (spec.extended)
    throw std::invalid_argument(
        "compare_block_vs_full_simple: spec must not be extended");
  const HermitianBlock block = blocks::dmo_block(spec, n_excitations);
  if (subspace_amplitudes.size() != block.size())
    throw std::invalid_argument(
        "compare_block_vs_full_simple: amplitude length mismatch");
  return run_comparison(spec, block, subspace_amplitudes, t_grid, nmax);
}

Eigen::MatrixXcd reduce_keep_isospins(const FullSpace& space,
                                      const Eigen::VectorXcd& state) {
  if (!space.spec.extended)
    throw std::invalid_argument("reduce_keep_isospins: extended model only");
  // Flat iso pair (2*iso1 + iso2) -> (--, +-, -+, ++) ordering.
  const int reorder[4] = {0, 2, 1, 3};
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  for (int n = 0; n <= space.nmax; ++n)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        rho(reorder[a], reorder[b]) += state(4 * n + a) *
                                       std::conj(state(4 * n + b));
  return rho;
}

Eigen::MatrixXcd reduce_keep_first_isospin(const FullSpace& space,
                                           const Eigen::VectorXcd& state) {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  const int spectators = space.spec.extended ? 2 : 1;
  for (int n = 0; n <= space.nmax; ++n)
    for (int s = 0; s < spectators; ++s)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const int ia = space.spec.extended ? 2 * a + s : a;
          const int ib = space.spec.extended ? 2 * b + s : b;
          rho(a, b) += state(space.iso_states * n + ia) *
                       std::conj(state(space.iso_states * n + ib));
        }
  return rho;
}

Eigen::MatrixXcd reduce_keep_second_isospin(const FullSpace& space,
                                            const Eigen::VectorXcd& state) {
  if (!space.spec.extended)
    throw std::invalid_argument(
        "reduce_keep_second_isospin: extended model only");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  for (int n = 0; n <= space.nmax; ++n)
    for (int s = 0; s < 2; ++s)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          rho(a, b) += state(4 * n + 2 * s + a) *
                       std::conj(state(4 * n + 2 * s + b));
  return rho;
}

} // namespace oracle
} // namespace dmojc

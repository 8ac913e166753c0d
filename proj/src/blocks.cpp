#include "dmojc/blocks.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace dmojc::blocks {

namespace {

using Complex = std::complex<double>;

SubspaceBasis simple_subspace(int n_excitations) {
  SubspaceBasis basis;
  basis.invariant_value = n_excitations - 0.5;
  if (n_excitations >= 1)
    basis.kets.push_back({Iso::Plus, std::nullopt, n_excitations - 1});
  basis.kets.push_back({Iso::Minus, std::nullopt, n_excitations});
  return basis;
}

HermitianBlock two_level_block(SubspaceBasis basis, double diag,
                               double coupling) {
  HermitianBlock block;
  block.basis = std::move(basis);
  if (block.basis.size() == 1) {
    block.entries = Eigen::MatrixXcd::Zero(1, 1);
    block.entries(0, 0) = -diag;
  } else {
    block.entries = Eigen::MatrixXcd::Zero(2, 2);
    block.entries(0, 0) = diag;
    block.entries(1, 1) = -diag;
    block.entries(0, 1) = coupling;
    block.entries(1, 0) = coupling;
  }
  return block;
}

double frobenius(const Eigen::MatrixXcd& m) { return m.norm(); }

} // namespace

HermitianBlock jc_block(double omega, double delta, int n_excitations) {
  if (n_excitations < 0)
    throw std::domain_error("jc_block: n_excitations must be >= 0");
  const double coupling =
      n_excitations >= 1 ? omega * std::sqrt(static_cast<double>(n_excitations))
                         : 0.0;
  return two_level_block(simple_subspace(n_excitations), delta, coupling);
}

HermitianBlock dmo_block(const ModelSpec& spec, int n) {
  spec.validate();
  if (spec.extended)
    throw std::invalid_argument("dmo_block: spec must not be extended");
  if (n < 0) throw std::domain_error("dmo_block: chain index must be >= 0");
  double coupling = 0.0;
  if (n >= 1) {
    switch (spec.dim) {
      case Dimensionality::D1:
        coupling = spec.eta * std::sqrt(static_cast<double>(n));
        break;
      case Dimensionality::D2:
        coupling = (std::sqrt(2.0) * spec.eta) * std::sqrt(static_cast<double>(n));
        break;
      case Dimensionality::D3:
        coupling = spec.eta * ladder_coefficient(spec, n);
        break;
    }
  }
  return two_level_block(basis_simple(spec, n), spec.mc2, coupling);
}

HermitianBlock extended_block(const ModelSpec& spec, int invariant_value) {
  spec.validate();
  if (!spec.extended)
    throw std::invalid_argument("extended_block: spec must be extended");
  if (invariant_value < -1)
    throw std::domain_error("extended_block: invariant_value must be >= -1");

  HermitianBlock block;
  block.basis = basis_extended(spec, invariant_value);
  const int k = block.basis.size();
  block.entries = Eigen::MatrixXcd::Zero(k, k);

  // Position of each of the four canonical kets inside the present basis.
  const int n = invariant_value;
  const double diag[4] = {-spec.mc2 - spec.gamma, spec.gamma - spec.mc2,
                          spec.mc2 - spec.gamma, spec.mc2 + spec.gamma};
  int pos[4] = {-1, -1, -1, -1};
  {
    int next = 0;
    if (n + 1 >= 0) pos[0] = next++;
    if (n >= 0) pos[1] = next++;
    if (n >= 0) pos[2] = next++;
    if (n - 1 >= 0) pos[3] = next++;
  }
  for (int c = 0; c < 4; ++c)
    if (pos[c] >= 0) block.entries(pos[c], pos[c]) = diag[c];

  auto couple = [&](int a, int b, double value) {
    if (pos[a] < 0 || pos[b] < 0) return;
    block.entries(pos[a], pos[b]) = value;
    block.entries(pos[b], pos[a]) = value;
  };
  if (pos[1] >= 0 || pos[2] >= 0) {
    const double f_up = ladder_coefficient(spec, n + 1);
    couple(0, 1, spec.chi * f_up);
    couple(0, 2, spec.eta * f_up);
  }
  if (pos[3] >= 0) {
    const double f_dn = ladder_coefficient(spec, n);
    couple(1, 3, spec.eta * f_dn);
    couple(2, 3, spec.chi * f_dn);
  }
  return block;
}

EigenSystem eig_block(const HermitianBlock& block) {
  return eig_hermitian(block.entries);
}

EigenSystem eig_hermitian(const Eigen::MatrixXcd& input) {
  const int k = static_cast<int>(input.rows());
  if (k < 1 || input.cols() != k)
    throw std::invalid_argument("eig_hermitian: matrix must be square");
  const double scale = std::max(1.0, frobenius(input));
  if ((input - input.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");

  Eigen::MatrixXcd h = 0.5 * (input + input.adjoint());
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(k, k);
  const double norm_h = std::max(frobenius(h), 1e-300);
  const double off_tol = 1e-14 * norm_h;

  auto max_off_diagonal = [&]() {
    double m = 0.0;
    for (int p = 0; p < k; ++p)
      for (int q = p + 1; q < k; ++q) m = std::max(m, std::abs(h(p, q)));
    return m;
  };

  // Cyclic sweeps over the strict upper triangle, fixed order.
  for (int sweep = 0; sweep < 100 && max_off_diagonal() >= off_tol; ++sweep) {
    for (int p = 0; p < k; ++p) {
      for (int q = p + 1; q < k; ++q) {
        const Complex hpq = h(p, q);
        const double apq = std::abs(hpq);
        if (apq < off_tol) continue;
        const Complex phase = hpq / apq;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;

        Eigen::MatrixXcd rot = Eigen::MatrixXcd::Identity(k, k);
        rot(p, p) = c;
        rot(p, q) = s;
        rot(q, p) = -s * std::conj(phase);
        rot(q, q) = c * std::conj(phase);
        h = rot.adjoint() * h * rot;
        v = v * rot;
      }
    }
    h = 0.5 * (h + h.adjoint());
  }
  if (max_off_diagonal() >= off_tol)
    throw std::runtime_error("eig_hermitian: Jacobi iteration did not converge");

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return h(a, a).real() < h(b, b).real();
  });

  EigenSystem sys;
  sys.values.resize(k);
  sys.vectors.resize(k, k);
  for (int i = 0; i < k; ++i) {
    sys.values(i) = h(order[i], order[i]).real();
    sys.vectors.col(i) = v.col(order[i]);
  }

  // Stable Gram-Schmidt in index order settles degenerate clusters.
  for (int i = 0; i < k; ++i) {
    for (int m = 0; m < i; ++m) {
      const Complex overlap = sys.vectors.col(m).dot(sys.vectors.col(i));
      sys.vectors.col(i) -= overlap * sys.vectors.col(m);
    }
    sys.vectors.col(i).normalize();
  }

  // Phase convention: largest-magnitude component real and positive.
  for (int i = 0; i < k; ++i) {
    int arg = 0;
    double best = 0.0;
    for (int r = 0; r < k; ++r) {
      const double a = std::abs(sys.vectors(r, i));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (best > 0.0)
      sys.vectors.col(i) *= std::conj(sys.vectors(arg, i)) / best;
  }
  return sys;
}

std::pair<double, double> analytic_energies(const ModelSpec& spec, int n) {
  spec.validate();
  if (n < 0) throw std::domain_error("analytic_energies: n must be >= 0");
  const double mu_linear = n == 0 ? 0.0 : mu_chain(spec, n);
  const double e = std::sqrt(spec.mc2 * spec.mc2 + spec.eta * spec.eta * mu_linear);
  return {-e, e};
}

std::pair<LabeledState, LabeledState> dressed_states(double omega,
                                                     double delta,
                                                     int n_excitations) {
  if (n_excitations < 1)
    throw std::domain_error("dressed_states: n_excitations must be >= 1");
  const double coupling = omega * std::sqrt(static_cast<double>(n_excitations));
  const double energy = std::hypot(delta, coupling);
  if (energy == 0.0)
    throw std::domain_error("dressed_states: degenerate block (E = 0)");
  const double theta = std::atan2(std::sqrt(std::max(0.0, energy - delta)),
                                  std::sqrt(std::max(0.0, energy + delta)));
  const SubspaceBasis basis = simple_subspace(n_excitations);

  LabeledState plus{basis, Eigen::VectorXcd(2)};
  plus.amplitudes << std::cos(theta), std::sin(theta);
  LabeledState minus{basis, Eigen::VectorXcd(2)};
  minus.amplitudes << -std::sin(theta), std::cos(theta);
  return {std::move(plus), std::move(minus)};
}

MappingReport parameter_mapping(const ModelSpec& spec) {
  spec.validate();
  if (spec.extended)
    throw std::invalid_argument("parameter_mapping: spec must not be extended");
  MappingReport report;
  report.dim = spec.dim;
  report.branch = spec.branch;
  report.delta_equivalent = spec.mc2;
  switch (spec.dim) {
    case Dimensionality::D1:
      report.omega_equivalent = spec.eta;
      report.exact = true;
      break;
    case Dimensionality::D2:
      report.omega_equivalent = std::sqrt(2.0) * spec.eta;
      report.exact = true;
      report.notes = "left-chiral modes are inert spectators; every level is "
                     "infinitely degenerate";
      break;
    case Dimensionality::D3:
      if (spec.branch == BranchD3::InfiniteDeg) {
        report.omega_equivalent = std::sqrt(2.0) * spec.eta;
        report.exact = true;
        report.notes = "family index n plays the excitation number; energies "
                       "are independent of j";
      } else {
        report.omega_equivalent = 0.0;
        report.exact = false;
        report.notes = "no uniform coupling: a single block matches via "
                       "eta*sqrt(2n+2j+2) <-> omega*sqrt(n)";
      }
      break;
  }
  return report;
}

} // namespace dmojc::blocks

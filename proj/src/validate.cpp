#include "dmojc/validate.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "dmojc/dynamics.hpp"
#include "dmojc/entanglement.hpp"
#include "dmojc/oracle.hpp"

namespace dmojc::validate {

namespace {

constexpr double kPi = std::numbers::pi;

const double kGammaGrid[] = {0.0, 0.5, 1.0, 2.0};
const double kAlphaGrid[] = {0.0, kPi / 40.0, kPi / 8.0, kPi / 4.0};

struct Collector {
  std::vector<CheckResult> checks;

  void add(const std::string& name, double max_error, double tolerance) {
    checks.push_back({name, max_error <= tolerance, max_error, tolerance});
  }
};

ModelSpec resonant_spec(double gamma) {
  return ModelSpec::two_isospin(Dimensionality::D1, 1.0, 1.0, gamma, gamma);
}

// Criterion grid: numeric block eigenvalues against the closed-form pair.
void check_spectral_grid(Collector& out) {
  const double etas[] = {0.0, 0.3, 1.0, 2.7};
  const double masses[] = {0.0, 0.5, 1.5, 4.0};
  double worst = 0.0;

  auto feed = [&](const ModelSpec& spec, int n) {
    const auto [e_minus, e_plus] = blocks::analytic_energies(spec, n);
    const EigenSystem sys = blocks::eig_block(blocks::dmo_block(spec, n));
    const double scale = std::max(1.0, std::abs(e_plus));
    if (sys.values.size() == 1) {
      worst = std::max(worst, std::abs(sys.values(0) - e_minus) / scale);
    } else {
      worst = std::max(worst, std::abs(sys.values(0) - e_minus) / scale);
      worst = std::max(worst, std::abs(sys.values(1) - e_plus) / scale);
    }
  };

  for (Dimensionality dim : {Dimensionality::D1, Dimensionality::D2})
    for (double eta : etas)
      for (double mc2 : masses)
        for (int n = 0; n <= 6; ++n) feed(ModelSpec::simple(dim, eta, mc2), n);
  for (double j : {0.5, 1.5, 2.5})
    for (BranchD3 branch : {BranchD3::FiniteDeg, BranchD3::InfiniteDeg})
      for (double eta : {0.3, 1.0})
        for (double mc2 : {0.0, 1.5})
          for (int n = 0; n <= 6; ++n)
            feed(ModelSpec::simple_d3(eta, mc2, j, branch), n);

  out.add("spectral-grid-exactness", worst, 1e-12);
}

// Criterion 2: block matrices equal cavity-model blocks under the parameter
// identification (entrywise for 1+1 and 2+1, spectra for 3+1 infinite).
void check_mapping_identity(Collector& out) {
  double worst_entry = 0.0;
  for (Dimensionality dim : {Dimensionality::D1, Dimensionality::D2})
    for (double eta : {0.0, 0.3, 1.0, 2.7})
      for (double mc2 : {0.0, 0.5, 1.5, 4.0})
        for (int n = 0; n <= 6; ++n) {
          const ModelSpec spec = ModelSpec::simple(dim, eta, mc2);
          const MappingReport map = blocks::parameter_mapping(spec);
          const HermitianBlock dmo = blocks::dmo_block(spec, n);
          const HermitianBlock jc =
              blocks::jc_block(map.omega_equivalent, map.delta_equivalent, n);
          worst_entry = std::max(
              worst_entry, (dmo.entries - jc.entries).cwiseAbs().maxCoeff());
        }
  out.add("jcm-mapping-entrywise", worst_entry, 0.0);

  double worst_spec = 0.0;
  for (double j : {0.5, 1.5, 2.5})
    for (double eta : {0.3, 1.0, 2.7})
      for (double mc2 : {0.0, 0.5, 1.5})
        for (int n = 0; n <= 6; ++n) {
          const ModelSpec spec =
              ModelSpec::simple_d3(eta, mc2, j, BranchD3::InfiniteDeg);
          // Family member n sits at chain index 2n+1 under the infinite
          // anchoring, where mu = 2n.
          const EigenSystem dmo =
              blocks::eig_block(blocks::dmo_block(spec, 2 * n + 1));
          const EigenSystem jc = blocks::eig_block(
              blocks::jc_block(std::sqrt(2.0) * eta, mc2, n));
          const double scale = std::max(1.0, dmo.values.cwiseAbs().maxCoeff());
          if (n == 0) {
            // mu = 0: the chain block decouples into (-mc2, +mc2), the
            // cavity block is the lone 1x1 [-mc2].
            worst_spec = std::max(
                worst_spec, std::abs(dmo.values(0) - jc.values(0)) / scale);
          } else {
            worst_spec = std::max(
                worst_spec,
                (dmo.values - jc.values).cwiseAbs().maxCoeff() / scale);
          }
        }
  out.add("jcm-mapping-d3-spectra", worst_spec, 1e-12);
}

// Criteria 3 and 4: dense-oracle equivalence and conservation laws.
void check_oracle_equivalence(Collector& out, const ValidationConfig& config,
                              ValidationReport& report) {
  const std::vector<double> grid =
      dynamics::time_grid(config.t_max, config.t_steps);
  double state_err = 0.0, leak = 0.0, spectral = 0.0;
  double inv_drift = 0.0, var_drift = 0.0;
  for (double gamma : kGammaGrid)
    for (double alpha : kAlphaGrid) {
      const BlockVsFullResult r = oracle::compare_block_vs_full(
          resonant_spec(gamma), alpha, grid, config.nmax);
      state_err = std::max(state_err, r.max_state_error);
      leak = std::max(leak, r.max_out_of_subspace);
      spectral = std::max(spectral, r.max_spectral_error);
      inv_drift = std::max(inv_drift, r.invariant_drift);
      var_drift = std::max(var_drift, r.variance_drift);
    }
  out.add("extended-block-vs-oracle", state_err, 1e-10);
  out.add("oracle-subspace-confinement", leak, 1e-12);
  out.add("full-spectrum-vs-blocks", spectral, 1e-10);
  out.add("invariant-conservation", std::max(inv_drift, var_drift), 1e-12);
  report.max_state_error = state_err;
  report.max_spectral_error = spectral;
  report.invariant_drift = std::max(inv_drift, var_drift);
}

// Criterion 5: product-state purity at t = 0, the depth of the purity
// minimum, and the gamma-ordering of the first deep minimum.
void check_purity_features(Collector& out, const ValidationConfig& config) {
  const std::vector<double> grid =
      dynamics::time_grid(config.t_max, config.t_steps);

  double initial_err = 0.0;
  double range_err = 0.0;
  for (double gamma : {0.0, 1.0}) {
    const auto states =
        dynamics::evolve_extended(resonant_spec(gamma), 0.0, grid);
    double min_p = 1.0;
    for (const CoefficientSet& s : states)
      min_p = std::min(min_p, ent::purity(ent::reduce_to_field(s)));
    const double p0 = ent::purity(ent::reduce_to_field(states.front()));
    initial_err = std::max(initial_err, std::abs(p0 - 1.0));
    range_err = std::max(range_err, std::max(0.50 - min_p, min_p - 0.52));
  }
  out.add("purity-initial-product", initial_err, 0.0);
  out.add("purity-minimum-range", std::max(0.0, range_err), 1e-12);

  // First local purity minimum at full-entanglement depth (<= 0.52).
  auto first_deep_minimum = [&](double gamma) {
    const auto states =
        dynamics::evolve_extended(resonant_spec(gamma), 0.0, grid);
    std::vector<double> p(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
      p[i] = ent::purity(ent::reduce_to_field(states[i]));
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
      if (p[i] < p[i - 1] && p[i] <= p[i + 1] && p[i] <= 0.52)
        return states[i].t;
    return -1.0;
  };
  double previous = -1.0;
  double violation = 0.0;
  for (double gamma : {0.5, 1.0, 2.0, 4.0}) {
    const double t_min = first_deep_minimum(gamma);
    if (t_min < 0.0) violation = std::max(violation, 1.0);
    if (previous >= 0.0) violation = std::max(violation, previous - t_min);
    previous = t_min;
  }
  out.add("purity-first-minimum-monotonic", std::max(0.0, violation), 0.0);
}

// Criterion 6 (and the closed-vs-Wootters half of criterion 7).
void check_analytic_reconciliation(Collector& out,
                                   const ValidationConfig& config) {
  const std::vector<double> grid =
      dynamics::time_grid(config.t_max, config.t_steps);
  double coeff_err = 0.0, atoms_purity_err = 0.0, field_purity_err = 0.0;
  double conc_err = 0.0;
  for (double gamma : kGammaGrid) {
    const AnalyticKernel kernel = dynamics::analytic_kernel(gamma);
    for (double alpha : kAlphaGrid) {
      const auto states =
          dynamics::evolve_extended(resonant_spec(gamma), alpha, grid);
      for (const CoefficientSet& s : states) {
        const auto formula = dynamics::coefficient_formulas(kernel, alpha, s.t);
        for (int i = 0; i < 3; ++i)
          coeff_err =
              std::max(coeff_err, std::abs(std::norm(s.c(i)) - formula[i]));

        const double fa = formula[0];
        const ReducedDensity atoms = ent::reduce_to_atoms(s);
        atoms_purity_err =
            std::max(atoms_purity_err,
                     std::abs(ent::purity(atoms) - (1.0 - 2.0 * fa + 2.0 * fa * fa)));

        const double gc = kernel.g(s.t) * std::cos(2.0 * alpha);
        field_purity_err = std::max(
            field_purity_err,
            std::abs(ent::purity(ent::reduce_to_field(s)) -
                     (0.5 + 0.5 * (fa + gc) * (fa + gc))));

        conc_err = std::max(
            conc_err, std::abs(ent::concurrence(atoms) -
                               ent::closed_form_concurrence(kernel, alpha, s.t)));
      }
    }
  }
  out.add("analytic-reconciliation-coefficients", coeff_err, 1e-9);
  out.add("analytic-reconciliation-purity", atoms_purity_err, 1e-9);
  out.add("analytic-reconciliation-field-purity", field_purity_err, 1e-9);
  out.add("concurrence-closed-vs-wootters", conc_err, 1e-9);

  double g0_err = 0.0, identity_err = 0.0;
  for (double gamma : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 7.5}) {
    const AnalyticKernel kernel = dynamics::analytic_kernel(gamma);
    g0_err = std::max(g0_err, std::abs(kernel.g(0.0) - 1.0));
    const double gt = kernel.gamma_tilde;
    for (int i = 0; i <= 600; ++i) {
      const double t = 30.0 * i / 600.0;
      const double re_expressed = std::cos(gt * t) * std::cos(gamma * t) +
                                  (gamma / gt) * std::sin(gt * t) *
                                      std::sin(gamma * t);
      identity_err =
          std::max(identity_err, std::abs(kernel.g(t) - re_expressed));
    }
  }
  out.add("kernel-g-normalization", g0_err, 1e-12);
  out.add("kernel-g-identity", identity_err, 1e-12);
}

// Criterion 7, randomized half: bounds and anchor values of the Wootters
// construction on synthetic density matrices. Fixed seed, fixed order.
void check_wootters_properties(Collector& out, const ValidationConfig& config) {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto random_pure = [&]() {
    Eigen::VectorXcd v(4);
    for (int i = 0; i < 4; ++i) v(i) = {gauss(rng), gauss(rng)};
    v.normalize();
    return v;
  };

  double bound_err = 0.0;
  for (int trial = 0; trial < config.random_trials; ++trial) {
    const int mixture = 1 + static_cast<int>(rng() % 4);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    double total = 0.0;
    std::vector<double> weights(mixture);
    for (double& w : weights) {
      w = std::abs(gauss(rng)) + 1e-3;
      total += w;
    }
    for (int k = 0; k < mixture; ++k) {
      const Eigen::VectorXcd psi = random_pure();
      rho += (weights[k] / total) * (psi * psi.adjoint());
    }
    const double c = ent::concurrence({0.5 * (rho + rho.adjoint())});
    bound_err = std::max(bound_err, std::max(-c, c - 1.0));
  }
  out.add("wootters-random-bounds", std::max(0.0, bound_err), 1e-12);

  double anchor_err = 0.0;
  {
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell(1) = 1.0 / std::sqrt(2.0);
    bell(2) = 1.0 / std::sqrt(2.0);
    anchor_err = std::max(
        anchor_err,
        std::abs(ent::concurrence({bell * bell.adjoint()}) - 1.0));

    Eigen::VectorXcd product = Eigen::VectorXcd::Zero(4);
    product(2) = 1.0; // |-+>
    anchor_err =
        std::max(anchor_err, ent::concurrence({product * product.adjoint()}));

    for (int trial = 0; trial < 32; ++trial) {
      Eigen::VectorXcd a(2), b(2);
      for (int i = 0; i < 2; ++i) {
        a(i) = {gauss(rng), gauss(rng)};
        b(i) = {gauss(rng), gauss(rng)};
      }
      a.normalize();
      b.normalize();
      Eigen::VectorXcd psi(4);
      psi << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
      anchor_err =
          std::max(anchor_err, ent::concurrence({psi * psi.adjoint()}));
    }
  }
  out.add("wootters-bell-product", anchor_err, 1e-12);
}

// Criterion 8: trajectories against the zero-detuning frontier curves.
void check_cp_plane(Collector& out, const ValidationConfig& config) {
  const std::vector<double> grid =
      dynamics::time_grid(config.t_max, config.t_steps);

  double branch_dist = 0.0;
  for (double alpha : {0.0, kPi / 40.0, kPi / 4.0}) {
    const auto points = ent::cp_trajectory(resonant_spec(0.0), alpha, grid);
    for (const CPPoint& p : points) {
      const auto [c_plus, c_minus] = ent::cp_frontier(p.purity, alpha);
      branch_dist = std::max(branch_dist,
                             std::min(std::abs(p.concurrence - c_plus),
                                      std::abs(p.concurrence - c_minus)));
    }
  }
  out.add("cp-frontier-distance-gamma0", branch_dist, 1e-6);

  double envelope_err = 0.0;
  {
    const auto points = ent::cp_trajectory(resonant_spec(1.0), 0.0, grid);
    for (const CPPoint& p : points) {
      const auto [c_plus, c_minus] = ent::cp_frontier(p.purity, 0.0);
      envelope_err = std::max(envelope_err, p.concurrence - c_plus);
      envelope_err = std::max(envelope_err, c_minus - p.concurrence);
    }
  }
  out.add("cp-envelope-gamma1", std::max(0.0, envelope_err), 1e-9);

  double sum_err = 0.0;
  for (int i = 0; i < 512; ++i) {
    const double p = 0.5 + 0.5 * static_cast<double>(i) / 511.0;
    const auto [c_plus, c_minus] = ent::cp_frontier(p, 0.0);
    sum_err = std::max(sum_err, std::abs(c_plus + c_minus - 1.0));
  }
  out.add("cp-frontier-sum-identity", sum_err, 0.0);
}

} // namespace

bool ValidationReport::pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ValidationReport run_validation(const ValidationConfig& config) {
  ValidationReport report;
  Collector collector;
  check_spectral_grid(collector);
  check_mapping_identity(collector);
  check_oracle_equivalence(collector, config, report);
  check_purity_features(collector, config);
  check_analytic_reconciliation(collector, config);
  check_wootters_properties(collector, config);
  check_cp_plane(collector, config);
  report.checks = std::move(collector.checks);
  return report;
}

nlohmann::ordered_json report_to_json(const ValidationReport& report,
                                      const ValidationConfig& config) {
  nlohmann::ordered_json j;
  j["config"] = {{"nmax", config.nmax},
                 {"tmax", config.t_max},
                 {"steps", config.t_steps},
                 {"random_trials", config.random_trials}};
  j["rows"] = nlohmann::ordered_json::array();
  auto checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"max_error", c.max_error},
                      {"tolerance", c.tolerance}});
  j["checks"] = std::move(checks);
  j["summary"] = {{"pass", report.pass()},
                  {"max_state_error", report.max_state_error},
                  {"max_spectral_error", report.max_spectral_error},
                  {"invariant_drift", report.invariant_drift}};
  return j;
}

} // namespace dmojc::validate

#include "dmojc/commands.hpp"

#include <cmath>
#include <iostream>

#include "dmojc/dynamics.hpp"
#include "dmojc/entanglement.hpp"
#include "dmojc/validate.hpp"

namespace dmojc::commands {

namespace {

using io::format_g17;
using io::json;
using io::RunConfig;

int usage_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kExitUsage;
}

const char* degeneracy_class(const ModelSpec& spec) {
  switch (spec.dim) {
    case Dimensionality::D1: return "none";
    case Dimensionality::D2: return "infinite (left-chiral spectator)";
    case Dimensionality::D3:
      return spec.branch == BranchD3::InfiniteDeg ? "infinite (j-independent)"
                                                  : "finite";
  }
  return "?";
}

struct SpectrumRow {
  int n = 0;
  double mu_linear = 0.0;
  double analytic_minus = 0.0;
  double analytic_plus = 0.0;
  std::vector<double> numeric;
  double residual = 0.0;
};

std::vector<SpectrumRow> spectrum_rows(const ModelSpec& spec, int max_n) {
  std::vector<SpectrumRow> rows;
  for (int n = 0; n <= max_n; ++n) {
    SpectrumRow row;
    row.n = n;
    HermitianBlock block;
    if (spec.dim == Dimensionality::D3) {
      // Family member n of the selected branch sits at chain index 2n+1.
      row.mu_linear = mu(n, spec.j, spec.branch);
      block = blocks::dmo_block(spec, 2 * n + 1);
      const double e = std::sqrt(spec.mc2 * spec.mc2 +
                                 spec.eta * spec.eta * row.mu_linear);
      row.analytic_minus = -e;
      row.analytic_plus = e;
    } else {
      row.mu_linear = n == 0 ? 0.0 : mu_chain(spec, n);
      block = blocks::dmo_block(spec, n);
      const auto [e_minus, e_plus] = blocks::analytic_energies(spec, n);
      row.analytic_minus = e_minus;
      row.analytic_plus = e_plus;
    }
    const EigenSystem sys = blocks::eig_block(block);
    for (int i = 0; i < sys.values.size(); ++i)
      row.numeric.push_back(sys.values(i));
    if (row.numeric.size() == 1) {
      row.residual = std::abs(row.numeric[0] - row.analytic_minus);
    } else {
      row.residual = std::max(std::abs(row.numeric[0] - row.analytic_minus),
                              std::abs(row.numeric[1] - row.analytic_plus));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace

int cmd_spectrum(const RunConfig& config) {
  ModelSpec spec;
  try {
    spec = config.simple_spec();
  } catch (const std::exception& e) {
    return usage_error(e);
  }
  const std::vector<SpectrumRow> rows = spectrum_rows(spec, config.max_n);
  const std::string klass = degeneracy_class(spec);

  if (config.format == "csv") {
    std::vector<std::vector<std::string>> cells;
    for (const SpectrumRow& r : rows) {
      std::vector<std::string> row{
          "n=" + std::to_string(r.n),     std::string(klass),
          format_g17(r.mu_linear),        format_g17(r.analytic_minus),
          format_g17(r.analytic_plus),    format_g17(r.numeric[0]),
          r.numeric.size() > 1 ? format_g17(r.numeric[1]) : std::string(),
          format_g17(r.residual)};
      cells.push_back(std::move(row));
    }
    io::write_text(config.output,
                   io::to_csv({"label", "class", "mu", "analytic_minus",
                               "analytic_plus", "numeric_minus",
                               "numeric_plus", "residual"},
                              cells));
  } else if (config.format == "json") {
    auto rows_json = json::array();
    for (const SpectrumRow& r : rows) {
      json row;
      row["label"] = "n=" + std::to_string(r.n);
      row["class"] = klass;
      row["mu"] = r.mu_linear;
      row["analytic_minus"] = r.analytic_minus;
      row["analytic_plus"] = r.analytic_plus;
      row["numeric_minus"] = r.numeric[0];
      if (r.numeric.size() > 1)
        row["numeric_plus"] = r.numeric[1];
      else
        row["numeric_plus"] = nullptr;
      row["residual"] = r.residual;
      rows_json.push_back(std::move(row));
    }
    io::write_text(config.output,
                   io::make_envelope(config.to_json(), std::move(rows_json),
                                     json::array())
                           .dump(2) +
                       "\n");
  } else {
    io::Series minus{"E-", {}}, plus{"E+", {}};
    for (const SpectrumRow& r : rows) {
      minus.points.emplace_back(r.n, r.analytic_minus);
      plus.points.emplace_back(r.n, r.analytic_plus);
    }
    io::write_text(config.output,
                   io::svg_line_plot("block spectrum", "n", "energy",
                                     {minus, plus}));
  }
  return kExitOk;
}

namespace {

bool analytic_columns_available(const RunConfig& config) {
  return config.dim == 1 && config.eta == 1.0 && config.chi == 1.0 &&
         config.mc2 == config.gamma;
}

struct EvolveRow {
  double t = 0.0;
  double c_sq[3] = {0, 0, 0};
  double purity_field = 1.0;
  double purity_atoms = 1.0;
  double concurrence = 0.0;
  double formula_c_sq[3] = {0, 0, 0};
  double formula_purity_field = 1.0;
  double formula_purity_atoms = 1.0;
  double formula_concurrence = 0.0;
};

std::vector<EvolveRow> evolve_rows(const ModelSpec& spec,
                                   const RunConfig& config, bool analytic) {
  const std::vector<double> grid =
      dynamics::time_grid(config.t_max, config.t_steps);
  const auto states = dynamics::evolve_extended(spec, config.alpha, grid);
  const AnalyticKernel kernel = dynamics::analytic_kernel(config.gamma);

  std::vector<EvolveRow> rows;
  rows.reserve(states.size());
  for (const CoefficientSet& s : states) {
    EvolveRow row;
    row.t = s.t;
    for (int i = 0; i < 3; ++i) row.c_sq[i] = std::norm(s.c(i));
    const ReducedDensity atoms = ent::reduce_to_atoms(s);
    row.purity_field = ent::purity(ent::reduce_to_field(s));
    row.purity_atoms = ent::purity(atoms);
    row.concurrence = ent::concurrence(atoms);
    if (analytic) {
      const auto formula =
          dynamics::coefficient_formulas(kernel, config.alpha, s.t);
      for (int i = 0; i < 3; ++i) row.formula_c_sq[i] = formula[i];
      const double fa = formula[0];
      const double gc = kernel.g(s.t) * std::cos(2.0 * config.alpha);
      row.formula_purity_field = 0.5 + 0.5 * (fa + gc) * (fa + gc);
      row.formula_purity_atoms = 1.0 - 2.0 * fa + 2.0 * fa * fa;
      row.formula_concurrence =
          ent::closed_form_concurrence(kernel, config.alpha, s.t);
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace

int cmd_evolve(const RunConfig& config) {
  ModelSpec spec;
  try {
    spec = config.extended_spec();
  } catch (const std::exception& e) {
    return usage_error(e);
  }
  const bool analytic = analytic_columns_available(config);
  const char* warning =
      "closed-form columns require the resonant normalization "
      "(dim 1, eta = chi = 1, mc2 = gamma); columns omitted";
  if (!analytic) std::cerr << "warning: " << warning << "\n";
  const std::vector<EvolveRow> rows = evolve_rows(spec, config, analytic);

  if (config.format == "csv") {
    std::vector<std::string> header{"t",
                                    "c1_sq",
                                    "c2_sq",
                                    "c3_sq",
                                    "purity_field",
                                    "purity_atoms",
                                    "concurrence"};
    if (analytic)
      for (const char* name :
           {"c1_sq_formula", "c2_sq_formula", "c3_sq_formula",
            "purity_field_formula", "purity_atoms_formula",
            "concurrence_formula", "resid_c1_sq", "resid_c2_sq",
            "resid_c3_sq", "resid_purity_field", "resid_purity_atoms",
            "resid_concurrence"})
        header.push_back(name);

    std::vector<std::vector<std::string>> cells;
    for (const EvolveRow& r : rows) {
      std::vector<std::string> row{
          format_g17(r.t),           format_g17(r.c_sq[0]),
          format_g17(r.c_sq[1]),     format_g17(r.c_sq[2]),
          format_g17(r.purity_field), format_g17(r.purity_atoms),
          format_g17(r.concurrence)};
      if (analytic) {
        row.push_back(format_g17(r.formula_c_sq[0]));
        row.push_back(format_g17(r.formula_c_sq[1]));
        row.push_back(format_g17(r.formula_c_sq[2]));
        row.push_back(format_g17(r.formula_purity_field));
        row.push_back(format_g17(r.formula_purity_atoms));
        row.push_back(format_g17(r.formula_concurrence));
        row.push_back(format_g17(std::abs(r.c_sq[0] - r.formula_c_sq[0])));
        row.push_back(format_g17(std::abs(r.c_sq[1] - r.formula_c_sq[1])));
        row.push_back(format_g17(std::abs(r.c_sq[2] - r.formula_c_sq[2])));
        row.push_back(
            format_g17(std::abs(r.purity_field - r.formula_purity_field)));
        row.push_back(
            format_g17(std::abs(r.purity_atoms - r.formula_purity_atoms)));
        row.push_back(
            format_g17(std::abs(r.concurrence - r.formula_concurrence)));
      }
      cells.push_back(std::move(row));
    }
    io::write_text(config.output, io::to_csv(header, cells));
  } else if (config.format == "json") {
    auto rows_json = json::array();
    for (const EvolveRow& r : rows) {
      json row;
      row["t"] = r.t;
      row["c1_sq"] = r.c_sq[0];
      row["c2_sq"] = r.c_sq[1];
      row["c3_sq"] = r.c_sq[2];
      row["purity_field"] = r.purity_field;
      row["purity_atoms"] = r.purity_atoms;
      row["concurrence"] = r.concurrence;
      if (analytic) {
        row["c1_sq_formula"] = r.formula_c_sq[0];
        row["c2_sq_formula"] = r.formula_c_sq[1];
        row["c3_sq_formula"] = r.formula_c_sq[2];
        row["purity_field_formula"] = r.formula_purity_field;
        row["purity_atoms_formula"] = r.formula_purity_atoms;
        row["concurrence_formula"] = r.formula_concurrence;
        row["resid_c1_sq"] = std::abs(r.c_sq[0] - r.formula_c_sq[0]);
        row["resid_c2_sq"] = std::abs(r.c_sq[1] - r.formula_c_sq[1]);
        row["resid_c3_sq"] = std::abs(r.c_sq[2] - r.formula_c_sq[2]);
        row["resid_purity_field"] =
            std::abs(r.purity_field - r.formula_purity_field);
        row["resid_purity_atoms"] =
            std::abs(r.purity_atoms - r.formula_purity_atoms);
        row["resid_concurrence"] =
            std::abs(r.concurrence - r.formula_concurrence);
      }
      rows_json.push_back(std::move(row));
    }
    json envelope = io::make_envelope(config.to_json(), std::move(rows_json),
                                      json::array());
    if (!analytic) envelope["warning"] = warning;
    io::write_text(config.output, envelope.dump(2) + "\n");
  } else {
    io::Series pf{"purity_field", {}}, pa{"purity_atoms", {}},
        cc{"concurrence", {}};
    for (const EvolveRow& r : rows) {
      pf.points.emplace_back(r.t, r.purity_field);
      pa.points.emplace_back(r.t, r.purity_atoms);
      cc.points.emplace_back(r.t, r.concurrence);
    }
    io::write_text(config.output, io::svg_line_plot("time evolution", "t",
                                                    "value", {pf, pa, cc}));
  }
  return kExitOk;
}

int cmd_cpplane(const RunConfig& config) {
  ModelSpec spec;
  try {
    spec = config.extended_spec();
  } catch (const std::exception& e) {
    return usage_error(e);
  }
  const std::vector<double> grid =
      dynamics::time_grid(config.t_max, config.t_steps);
  const auto points = ent::cp_trajectory(spec, config.alpha, grid);

  struct FrontierRow {
    double p, c_plus, c_minus;
  };
  std::vector<FrontierRow> frontier;
  frontier.reserve(512);
  for (int i = 0; i < 512; ++i) {
    const double p = 0.5 + 0.5 * static_cast<double>(i) / 511.0;
    const auto [c_plus, c_minus] = ent::cp_frontier(p, config.alpha);
    frontier.push_back({p, c_plus, c_minus});
  }

  if (config.format == "csv") {
    std::vector<std::vector<std::string>> cells;
    for (const CPPoint& p : points) {
      const auto [c_plus, c_minus] = ent::cp_frontier(p.purity, config.alpha);
      cells.push_back({"trajectory", format_g17(p.t), format_g17(p.purity),
                       format_g17(p.concurrence), format_g17(c_plus),
                       format_g17(c_minus)});
    }
    for (const FrontierRow& f : frontier)
      cells.push_back({"frontier", "", format_g17(f.p), "",
                       format_g17(f.c_plus), format_g17(f.c_minus)});
    io::write_text(config.output,
                   io::to_csv({"kind", "t", "purity", "concurrence", "c_plus",
                               "c_minus"},
                              cells));
  } else if (config.format == "json") {
    auto rows_json = json::array();
    for (const CPPoint& p : points) {
      const auto [c_plus, c_minus] = ent::cp_frontier(p.purity, config.alpha);
      rows_json.push_back({{"kind", "trajectory"},
                           {"t", p.t},
                           {"purity", p.purity},
                           {"concurrence", p.concurrence},
                           {"c_plus", c_plus},
                           {"c_minus", c_minus}});
    }
    for (const FrontierRow& f : frontier)
      rows_json.push_back({{"kind", "frontier"},
                           {"t", nullptr},
                           {"purity", f.p},
                           {"concurrence", nullptr},
                           {"c_plus", f.c_plus},
                           {"c_minus", f.c_minus}});
    io::write_text(config.output,
                   io::make_envelope(config.to_json(), std::move(rows_json),
                                     json::array())
                           .dump(2) +
                       "\n");
  } else {
    io::Series traj{"trajectory", {}}, plus{"C+", {}}, minus{"C-", {}};
    for (const CPPoint& p : points)
      traj.points.emplace_back(p.purity, p.concurrence);
    for (const FrontierRow& f : frontier) {
      plus.points.emplace_back(f.p, f.c_plus);
      minus.points.emplace_back(f.p, f.c_minus);
    }
    io::write_text(config.output,
                   io::svg_line_plot("concurrence vs purity", "purity",
                                     "concurrence", {traj, plus, minus}));
  }
  return kExitOk;
}

int cmd_validate(const RunConfig& config) {
  try {
    config.validate();
  } catch (const std::exception& e) {
    return usage_error(e);
  }
  validate::ValidationConfig vconfig;
  vconfig.nmax = config.nmax;
  vconfig.t_max = config.t_max;
  vconfig.t_steps = config.t_steps;
  const validate::ValidationReport report = validate::run_validation(vconfig);

  for (const validate::CheckResult& c : report.checks)
    std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
              << " (max_error=" << format_g17(c.max_error)
              << ", tolerance=" << format_g17(c.tolerance) << ")\n";

  io::write_text(config.output,
                 validate::report_to_json(report, vconfig).dump(2) + "\n");
  return report.pass() ? kExitOk : kExitValidationFailure;
}

int cmd_map(const RunConfig& config) {
  try {
    config.validate();
  } catch (const std::exception& e) {
    return usage_error(e);
  }
  std::vector<MappingReport> reports;
  reports.push_back(blocks::parameter_mapping(
      ModelSpec::simple(Dimensionality::D1, config.eta, config.mc2)));
  reports.push_back(blocks::parameter_mapping(
      ModelSpec::simple(Dimensionality::D2, config.eta, config.mc2)));
  reports.push_back(blocks::parameter_mapping(ModelSpec::simple_d3(
      config.eta, config.mc2, config.j, BranchD3::InfiniteDeg)));
  reports.push_back(blocks::parameter_mapping(ModelSpec::simple_d3(
      config.eta, config.mc2, config.j, BranchD3::FiniteDeg)));

  std::string table;
  table += "dim    branch    omega                  delta                  "
           "exact  notes\n";
  for (const MappingReport& r : reports) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-6s %-9s %-22s %-22s %-6s %s\n",
                  to_string(r.dim),
                  r.dim == Dimensionality::D3 ? to_string(r.branch) : "-",
                  format_g17(r.omega_equivalent).c_str(),
                  format_g17(r.delta_equivalent).c_str(),
                  r.exact ? "yes" : "no", r.notes.c_str());
    table += line;
  }
  table += "two-isospin extension: exact for 1+1 and 2+1; in 3+1 only the "
           "lowest invariant block is representable.\n";
  std::cout << table;

  if (config.output != "-" && !config.output.empty()) {
    if (config.format == "json") {
      auto rows_json = json::array();
      for (const MappingReport& r : reports)
        rows_json.push_back(
            {{"dim", to_string(r.dim)},
             {"branch",
              r.dim == Dimensionality::D3 ? to_string(r.branch) : "-"},
             {"omega", r.omega_equivalent},
             {"delta", r.delta_equivalent},
             {"exact", r.exact},
             {"notes", r.notes}});
      io::write_text(config.output,
                     io::make_envelope(config.to_json(), std::move(rows_json),
                                       json::array())
                             .dump(2) +
                         "\n");
    } else {
      std::vector<std::vector<std::string>> cells;
      for (const MappingReport& r : reports)
        cells.push_back({to_string(r.dim),
                         r.dim == Dimensionality::D3 ? to_string(r.branch)
                                                     : "-",
                         format_g17(r.omega_equivalent),
                         format_g17(r.delta_equivalent),
                         r.exact ? "true" : "false", r.notes});
      io::write_text(config.output,
                     io::to_csv({"dim", "branch", "omega", "delta", "exact",
                                 "notes"},
                                cells));
    }
  }
  return kExitOk;
}

} // namespace dmojc::commands

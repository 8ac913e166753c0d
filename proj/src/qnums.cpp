#include "dmojc/qnums.hpp"

#include <cmath>
#include <stdexcept>

namespace dmojc {

namespace {

bool is_valid_half_integer_j(double j) {
  if (!(j >= 0.5)) return false;
  const double twice = 2.0 * j;
  if (std::nearbyint(twice) != twice) return false;
  return std::llround(twice) % 2 == 1;
}

BranchD3 other(BranchD3 b) {
  return b == BranchD3::FiniteDeg ? BranchD3::InfiniteDeg
                                  : BranchD3::FiniteDeg;
}

} // namespace

ModelSpec ModelSpec::simple(Dimensionality dim, double eta, double mc2) {
  ModelSpec s;
  s.dim = dim;
  s.eta = eta;
  s.mc2 = mc2;
  s.validate();
  return s;
}

ModelSpec ModelSpec::simple_d3(double eta, double mc2, double j,
                               BranchD3 branch) {
  ModelSpec s;
  s.dim = Dimensionality::D3;
  s.eta = eta;
  s.mc2 = mc2;
  s.j = j;
  s.branch = branch;
  s.validate();
  return s;
}

ModelSpec ModelSpec::two_isospin(Dimensionality dim, double eta, double chi,
                                 double mc2, double gamma) {
  ModelSpec s;
  s.dim = dim;
  s.eta = eta;
  s.chi = chi;
  s.mc2 = mc2;
  s.gamma = gamma;
  s.extended = true;
  s.validate();
  return s;
}

ModelSpec ModelSpec::two_isospin_d3(double eta, double chi, double mc2,
                                    double gamma, double j, BranchD3 branch) {
  ModelSpec s = two_isospin(Dimensionality::D3, eta, chi, mc2, gamma);
  s.j = j;
  s.branch = branch;
  s.validate();
  return s;
}

void ModelSpec::validate() const {
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("ModelSpec: eta must be finite and >= 0");
  if (!(chi >= 0.0) || !std::isfinite(chi))
    throw std::invalid_argument("ModelSpec: chi must be finite and >= 0");
  if (!std::isfinite(mc2) || !std::isfinite(gamma))
    throw std::invalid_argument("ModelSpec: detunings must be finite");
  if (!extended && chi != 0.0)
    throw std::invalid_argument(
        "ModelSpec: chi must be 0 for the single-isospin model");
  if (dim == Dimensionality::D3 && !is_valid_half_integer_j(j))
    throw std::invalid_argument(
        "ModelSpec: j must be a half-integer >= 1/2 for the 3+1 model");
}

std::string BasisKet::to_string() const {
  std::string s = "|";
  s += (iso1 == Iso::Plus ? '+' : '-');
  if (iso2) {
    s += ',';
    s += (*iso2 == Iso::Plus ? '+' : '-');
    s += '\'';
  }
  s += ',';
  s += std::to_string(osc);
  s += '>';
  return s;
}

double mu(int n, double j, BranchD3 branch) {
  if (n < 0) throw std::domain_error("mu: n must be >= 0");
  if (!is_valid_half_integer_j(j))
    throw std::domain_error("mu: j must be a half-integer >= 1/2");
  return branch == BranchD3::FiniteDeg ? 2.0 * n + 2.0 * j + 2.0 : 2.0 * n;
}

double mu_chain(const ModelSpec& spec, int osc_upper) {
  if (osc_upper < 1)
    throw std::domain_error("mu_chain: osc_upper must be >= 1");
  switch (spec.dim) {
    case Dimensionality::D1:
      return static_cast<double>(osc_upper);
    case Dimensionality::D2:
      return 2.0 * osc_upper;
    case Dimensionality::D3: {
      // Families alternate with the chain index; spec.branch is the family
      // at odd positions, the member index inside a family is osc_upper/2.
      const BranchD3 fam =
          (osc_upper % 2 == 1) ? spec.branch : other(spec.branch);
      return mu(osc_upper / 2, spec.j, fam);
    }
  }
  throw std::logic_error("mu_chain: unreachable");
}

double ladder_coefficient(const ModelSpec& spec, int osc_upper) {
  if (osc_upper < 1)
    throw std::domain_error("ladder_coefficient: osc_upper must be >= 1");
  return std::sqrt(mu_chain(spec, osc_upper));
}

double invariant_of(const BasisKet& ket) {
  double value = ket.osc + 0.5 * static_cast<int>(ket.iso1);
  if (ket.iso2) value += 0.5 * static_cast<int>(*ket.iso2);
  return value;
}

SubspaceBasis basis_simple(const ModelSpec& spec, int n_excitations) {
  if (spec.extended)
    throw std::invalid_argument("basis_simple: spec must not be extended");
  if (n_excitations < 0)
    throw std::domain_error("basis_simple: n_excitations must be >= 0");
  SubspaceBasis basis;
  basis.invariant_value = n_excitations - 0.5;
  if (n_excitations >= 1)
    basis.kets.push_back({Iso::Plus, std::nullopt, n_excitations - 1});
  basis.kets.push_back({Iso::Minus, std::nullopt, n_excitations});
  return basis;
}

SubspaceBasis basis_extended(const ModelSpec& spec, int invariant_value) {
  if (!spec.extended)
    throw std::invalid_argument("basis_extended: spec must be extended");
  if (invariant_value < -1)
    throw std::domain_error("basis_extended: no kets below invariant -1");
  const int n = invariant_value;
  SubspaceBasis basis;
  basis.invariant_value = n;
  const BasisKet candidates[4] = {
      {Iso::Minus, Iso::Minus, n + 1},
      {Iso::Plus, Iso::Minus, n},
      {Iso::Minus, Iso::Plus, n},
      {Iso::Plus, Iso::Plus, n - 1},
  };
  for (const BasisKet& ket : candidates)
    if (ket.osc >= 0) basis.kets.push_back(ket);
  return basis;
}

const char* to_string(Dimensionality dim) {
  switch (dim) {
    case Dimensionality::D1: return "1+1";
    case Dimensionality::D2: return "2+1";
    case Dimensionality::D3: return "3+1";
  }
  return "?";
}

const char* to_string(BranchD3 branch) {
  return branch == BranchD3::FiniteDeg ? "finite" : "infinite";
}

} // namespace dmojc

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dmojc {

/// Spatial dimensionality of the oscillator model (1+1, 2+1, 3+1).
enum class Dimensionality { D1, D2, D3 };

/// Degeneracy family of a 3+1 level. FiniteDeg labels the states with
/// N = 2n + j + 1/2 (squared ladder element mu = 2n + 2j + 2), InfiniteDeg
/// the states with N = 2n + j - 1/2 (mu = 2n, energies independent of j).
enum class BranchD3 { FiniteDeg, InfiniteDeg };

/// Isospin projection of a two-level subsystem.
enum class Iso : int { Minus = -1, Plus = +1 };

/// Single source of truth for which model is being simulated.
///
/// Units: hbar = 1. eta, chi, mc2 and gamma share one arbitrary energy unit;
/// times are measured in its inverse. mc2 acts as the detuning of the first
/// isospin, gamma as the detuning of the second (field) isospin.
///
/// For D3 the oscillator sector is an abstract one-dimensional chain indexed
/// from the lowest level N_min = j - 1/2; `branch` anchors which degeneracy
/// family sits at odd chain positions (FiniteDeg is the physical anchoring,
/// for which the bottom state is annihilated by the ladder operator).
struct ModelSpec {
  Dimensionality dim = Dimensionality::D1;
  double eta = 1.0;   // coupling of the first isospin to the oscillator
  double chi = 0.0;   // coupling of the second isospin (extended model only)
  double mc2 = 0.0;   // rest energy / first detuning
  double gamma = 0.0; // field splitting / second detuning
  double j = 0.5;     // total angular momentum (D3 only)
  BranchD3 branch = BranchD3::FiniteDeg;
  bool extended = false;

  static ModelSpec simple(Dimensionality dim, double eta, double mc2);
  static ModelSpec simple_d3(double eta, double mc2, double j, BranchD3 branch);
  static ModelSpec two_isospin(Dimensionality dim, double eta, double chi,
                               double mc2, double gamma);
  static ModelSpec two_isospin_d3(double eta, double chi, double mc2,
                                  double gamma, double j, BranchD3 branch);

  /// Throws std::invalid_argument when field combinations are inconsistent.
  void validate() const;
};

/// Labeled basis ket: isospin sign(s) plus oscillator quantum number.
/// `osc` is n (1+1), n_r (2+1) or the chain index above N_min (3+1).
/// iso2 is present exactly for the extended (two-isospin) model.
struct BasisKet {
  Iso iso1 = Iso::Minus;
  std::optional<Iso> iso2;
  int osc = 0;

  bool operator==(const BasisKet&) const = default;
  std::string to_string() const;
};

/// Ordered kets spanning one eigenspace of the excitation number I.
struct SubspaceBasis {
  double invariant_value = 0.0;
  std::vector<BasisKet> kets;

  int size() const { return static_cast<int>(kets.size()); }
};

/// Squared ladder matrix element of the 3+1 chain, stored as the linear
/// value: 2n + 2j + 2 on the FiniteDeg family, 2n on the InfiniteDeg one.
/// The square root is applied exactly once, in ladder_coefficient.
double mu(int n, double j, BranchD3 branch);

/// Matrix element of the ladder operator connecting |osc_upper-1> and
/// |osc_upper>: sqrt(n) for 1+1, sqrt(2 n_r) for 2+1, sqrt(mu(N)) for 3+1
/// with the family alternating as the chain index steps by one.
double ladder_coefficient(const ModelSpec& spec, int osc_upper);

/// Linear mu value along the chain (ladder_coefficient squared, exact).
double mu_chain(const ModelSpec& spec, int osc_upper);

/// Eigenvalue of the excitation number I = A^dag A + (sigma_z + sigma_z')/2.
double invariant_of(const BasisKet& ket);

/// Basis of the simple-model subspace with n excitations:
/// [|+,n-1>, |-,n>] for n >= 1, the lone [|-,0>] for n = 0.
SubspaceBasis basis_simple(const ModelSpec& spec, int n_excitations);

/// Basis of the extended-model subspace with I eigenvalue N:
/// [|-,-',N+1>, |+,-',N>, |-,+',N>, |+,+',N-1>], dropping kets whose
/// oscillator index would be negative. Valid for N >= -1.
SubspaceBasis basis_extended(const ModelSpec& spec, int invariant_value);

const char* to_string(Dimensionality dim);
const char* to_string(BranchD3 branch);

} // namespace dmojc

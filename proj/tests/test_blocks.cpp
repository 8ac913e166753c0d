#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <complex>
#include <random>

#include "dmojc/blocks.hpp"

using namespace dmojc;
using blocks::analytic_energies;
using blocks::dmo_block;
using blocks::dressed_states;
using blocks::eig_block;
using blocks::eig_hermitian;
using blocks::extended_block;
using blocks::jc_block;
using blocks::parameter_mapping;

namespace {

// Closed-form 2x2 oracle used only to cross-check the Jacobi solver.
std::pair<double, double> closed_form_2x2(double a, double d, double b) {
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  return {mean - radius, mean + radius};
}

double residual(const HermitianBlock& block, const EigenSystem& sys) {
  double worst = 0.0;
  for (int i = 0; i < sys.values.size(); ++i)
    worst = std::max(worst, (block.entries * sys.vectors.col(i) -
                             sys.values(i) * sys.vectors.col(i))
                                .norm());
  return worst;
}

} // namespace

TEST_CASE("cavity blocks") {
  const HermitianBlock resonant = jc_block(1.0, 0.0, 1);
  REQUIRE(resonant.size() == 2);
  CHECK(resonant.entries(0, 0) == std::complex<double>(0.0));
  CHECK(resonant.entries(0, 1) == std::complex<double>(1.0));
  CHECK(resonant.entries(1, 0) == std::complex<double>(1.0));
  CHECK(resonant.entries(1, 1) == std::complex<double>(0.0));

  const HermitianBlock lone = jc_block(1.0, 2.0, 0);
  REQUIRE(lone.size() == 1);
  CHECK(lone.entries(0, 0) == std::complex<double>(-2.0));

  const EigenSystem sys = eig_block(jc_block(2.0, 1.0, 4));
  CHECK(sys.values(0) == doctest::Approx(-std::sqrt(17.0)).epsilon(1e-12));
  CHECK(sys.values(1) == doctest::Approx(std::sqrt(17.0)).epsilon(1e-12));
}

TEST_CASE("oscillator blocks and analytic energies") {
  const ModelSpec d1 = ModelSpec::simple(Dimensionality::D1, 1.0, 1.0);
  const HermitianBlock bottom = dmo_block(d1, 0);
  REQUIRE(bottom.size() == 1);
  CHECK(bottom.entries(0, 0) == std::complex<double>(-1.0));

  const ModelSpec strong = ModelSpec::simple(Dimensionality::D1, 3.0, 4.0);
  const EigenSystem five = eig_block(dmo_block(strong, 1));
  CHECK(five.values(0) == doctest::Approx(-5.0).epsilon(1e-14));
  CHECK(five.values(1) == doctest::Approx(5.0).epsilon(1e-14));

  // Infinite family, member n = 2 (mu = 4) sits at chain index 5 under the
  // infinite anchoring and at index 4 under the physical one.
  const ModelSpec inf3 = ModelSpec::simple_d3(1.0, 0.0, 0.5, BranchD3::InfiniteDeg);
  const EigenSystem e_inf = eig_block(dmo_block(inf3, 5));
  CHECK(e_inf.values(0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(e_inf.values(1) == doctest::Approx(2.0).epsilon(1e-14));
  const ModelSpec fin3 = ModelSpec::simple_d3(1.0, 0.0, 0.5, BranchD3::FiniteDeg);
  const EigenSystem e_fin = eig_block(dmo_block(fin3, 4));
  CHECK(e_fin.values(1) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(dmo_block(d1, -1), std::domain_error);

  const auto [m0, p0] = analytic_energies(ModelSpec::simple(Dimensionality::D1, 1.0, 0.0), 4);
  CHECK(p0 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(m0 == doctest::Approx(-2.0).epsilon(1e-15));
  const auto [m1, p1] = analytic_energies(ModelSpec::simple(Dimensionality::D1, 0.0, 3.0), 7);
  CHECK(p1 == 3.0);
  CHECK(m1 == -3.0);
  // Cavity parameterization: delta = 1, omega = 2, two excitations.
  const EigenSystem jc = eig_block(jc_block(2.0, 1.0, 2));
  CHECK(jc.values(1) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("analytic energies match diagonalization over a parameter grid") {
  for (Dimensionality dim : {Dimensionality::D1, Dimensionality::D2})
    for (double eta : {0.0, 0.5, 1.7})
      for (double mc2 : {0.0, 0.8, 3.0}) {
        const ModelSpec spec = ModelSpec::simple(dim, eta, mc2);
        for (int n = 0; n <= 8; ++n) {
          const auto [e_minus, e_plus] = analytic_energies(spec, n);
          const EigenSystem sys = eig_block(dmo_block(spec, n));
          const double scale = std::max(1.0, e_plus);
          CHECK(std::abs(sys.values(0) - e_minus) / scale < 1e-12);
          if (sys.values.size() == 2)
            CHECK(std::abs(sys.values(1) - e_plus) / scale < 1e-12);
        }
      }
}

TEST_CASE("extended blocks") {
  SUBCASE("printed 3x3 at the resonant point") {
    const ModelSpec spec =
        ModelSpec::two_isospin(Dimensionality::D1, 1.0, 1.0, 0.7, 0.7);
    const HermitianBlock block = extended_block(spec, 0);
    REQUIRE(block.size() == 3);
    CHECK(block.entries(0, 0) == std::complex<double>(-1.4));
    CHECK(block.entries(1, 1) == std::complex<double>(0.0));
    CHECK(block.entries(2, 2) == std::complex<double>(0.0));
    CHECK(block.entries(0, 1) == std::complex<double>(1.0));
    CHECK(block.entries(0, 2) == std::complex<double>(1.0));
    CHECK(block.entries(1, 2) == std::complex<double>(0.0));
  }

  SUBCASE("single-ket block at invariant -1") {
    const ModelSpec spec =
        ModelSpec::two_isospin(Dimensionality::D1, 1.3, 0.4, 0.9, 0.2);
    const HermitianBlock block = extended_block(spec, -1);
    REQUIRE(block.size() == 1);
    CHECK(block.entries(0, 0) == std::complex<double>(-0.9 - 0.2));
  }

  SUBCASE("eigenvalues of the resonant 3x3 at gamma = 1") {
    const ModelSpec spec =
        ModelSpec::two_isospin(Dimensionality::D1, 1.0, 1.0, 1.0, 1.0);
    const EigenSystem sys = eig_block(extended_block(spec, 0));
    CHECK(sys.values(0) == doctest::Approx(-2.7320508075688772).epsilon(1e-13));
    CHECK(sys.values(1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(sys.values(2) == doctest::Approx(0.7320508075688772).epsilon(1e-13));
  }

  SUBCASE("full 4x4 couplings at invariant 2") {
    const ModelSpec spec =
        ModelSpec::two_isospin(Dimensionality::D1, 2.0, 3.0, 0.5, 0.25);
    const HermitianBlock block = extended_block(spec, 2);
    REQUIRE(block.size() == 4);
    const double f3 = std::sqrt(3.0), f2 = std::sqrt(2.0);
    CHECK(block.entries(0, 1).real() == doctest::Approx(3.0 * f3));
    CHECK(block.entries(0, 2).real() == doctest::Approx(2.0 * f3));
    CHECK(block.entries(1, 3).real() == doctest::Approx(2.0 * f2));
    CHECK(block.entries(2, 3).real() == doctest::Approx(3.0 * f2));
    CHECK(block.entries(0, 3) == std::complex<double>(0.0));
    CHECK(block.entries(1, 2) == std::complex<double>(0.0));
    CHECK(block.entries(0, 0).real() == doctest::Approx(-0.75));
    CHECK(block.entries(1, 1).real() == doctest::Approx(-0.25));
    CHECK(block.entries(2, 2).real() == doctest::Approx(0.25));
    CHECK(block.entries(3, 3).real() == doctest::Approx(0.75));
  }

  SUBCASE("chi = gamma = 0 reduces to a direct sum of simple blocks") {
    const ModelSpec ext =
        ModelSpec::two_isospin(Dimensionality::D1, 1.4, 0.0, 0.6, 0.0);
    const ModelSpec simple = ModelSpec::simple(Dimensionality::D1, 1.4, 0.6);
    for (int inv = 0; inv <= 4; ++inv) {
      std::vector<double> extended_values;
      const EigenSystem sys = eig_block(extended_block(ext, inv));
      for (int i = 0; i < sys.values.size(); ++i)
        extended_values.push_back(sys.values(i));

      // The decoupled second isospin shifts nothing (gamma = 0): the block
      // splits into the simple subspaces with invariant +-1/2 around inv.
      std::vector<double> expected;
      for (int n : {inv, inv + 1}) {
        const EigenSystem part = eig_block(dmo_block(simple, n));
        for (int i = 0; i < part.values.size(); ++i)
          expected.push_back(part.values(i));
      }
      std::sort(expected.begin(), expected.end());
      REQUIRE(expected.size() == extended_values.size());
      for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(extended_values[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(
      extended_block(
          ModelSpec::two_isospin(Dimensionality::D1, 1.0, 1.0, 0.0, 0.0), -2),
      std::domain_error);
}

TEST_CASE("jacobi eigensolver") {
  SUBCASE("swap matrix") {
    const EigenSystem sys = eig_block(jc_block(1.0, 0.0, 1));
    CHECK(sys.values(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sys.values(1) == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("degenerate identity keeps canonical axes") {
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3, 3);
    const EigenSystem sys = eig_hermitian(id);
    for (int i = 0; i < 3; ++i) {
      CHECK(sys.values(i) == 1.0);
      for (int r = 0; r < 3; ++r)
        CHECK(std::abs(sys.vectors(r, i) -
                       (r == i ? std::complex<double>(1.0)
                               : std::complex<double>(0.0))) < 1e-14);
    }
  }

  SUBCASE("random Hermitian matrices: residuals, orthonormality, phase") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const int k = 2 + static_cast<int>(rng() % 3);
      Eigen::MatrixXcd a(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = {gauss(rng), gauss(rng)};
      HermitianBlock block;
      block.entries = 0.5 * (a + a.adjoint());
      const EigenSystem sys = eig_block(block);

      CHECK(residual(block, sys) <=
            1e-12 * std::max(1.0, block.entries.norm()));
      const Eigen::MatrixXcd gram =
          sys.vectors.adjoint() * sys.vectors -
          Eigen::MatrixXcd::Identity(k, k);
      CHECK(gram.cwiseAbs().maxCoeff() < 1e-12);
      for (int i = 0; i + 1 < k; ++i) CHECK(sys.values(i) <= sys.values(i + 1));
      for (int i = 0; i < k; ++i) {
        int arg = 0;
        double best = 0.0;
        for (int r = 0; r < k; ++r)
          if (std::abs(sys.vectors(r, i)) > best) {
            best = std::abs(sys.vectors(r, i));
            arg = r;
          }
        CHECK(sys.vectors(arg, i).real() > 0.0);
        CHECK(std::abs(sys.vectors(arg, i).imag()) < 1e-13 * best);
      }
    }
  }

  SUBCASE("2x2 closed form agreement") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double a = gauss(rng), d = gauss(rng), b = gauss(rng);
      HermitianBlock block;
      block.entries = Eigen::MatrixXcd(2, 2);
      block.entries << a, b, b, d;
      const auto [lo, hi] = closed_form_2x2(a, d, b);
      const EigenSystem sys = eig_block(block);
      CHECK(sys.values(0) == doctest::Approx(lo).epsilon(1e-12));
      CHECK(sys.values(1) == doctest::Approx(hi).epsilon(1e-12));
    }
  }

  SUBCASE("rejects non-Hermitian input") {
    HermitianBlock block;
    block.entries = Eigen::MatrixXcd(2, 2);
    block.entries << 0.0, 1.0, 2.0, 0.0;
    CHECK_THROWS_AS(eig_block(block), std::invalid_argument);
  }
}

TEST_CASE("dressed states") {
  SUBCASE("resonance gives equal weights") {
    const auto [plus, minus] = dressed_states(1.0, 0.0, 3);
    CHECK(std::abs(plus.amplitudes(0)) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(plus.amplitudes(1)) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    (void)minus;
  }

  SUBCASE("decoupled limit pins the excited ket") {
    const auto [plus, minus] = dressed_states(1e-9, 2.0, 1);
    CHECK(std::abs(plus.amplitudes(0)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(minus.amplitudes(1)) == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("eigenvector identity against the block") {
    for (double omega : {0.3, 1.0, 2.2})
      for (double delta : {-1.5, 0.0, 0.75})
        for (int n : {1, 2, 5}) {
          const HermitianBlock block = jc_block(omega, delta, n);
          const auto [plus, minus] = dressed_states(omega, delta, n);
          const double energy =
              std::hypot(delta, omega * std::sqrt(static_cast<double>(n)));
          CHECK((block.entries * plus.amplitudes - energy * plus.amplitudes)
                    .norm() < 1e-12 * std::max(1.0, energy));
          CHECK((block.entries * minus.amplitudes + energy * minus.amplitudes)
                    .norm() < 1e-12 * std::max(1.0, energy));
          const std::complex<double> overlap =
              plus.amplitudes.dot(minus.amplitudes);
          CHECK(std::abs(overlap) < 1e-14);
          CHECK(std::abs(plus.amplitudes.squaredNorm() - 1.0) < 1e-14);
        }
  }

  CHECK_THROWS_AS(dressed_states(0.0, 0.0, 1), std::domain_error);
  CHECK_THROWS_AS(dressed_states(1.0, 0.0, 0), std::domain_error);
}

TEST_CASE("parameter mapping") {
  const MappingReport d1 =
      parameter_mapping(ModelSpec::simple(Dimensionality::D1, 1.7, 0.4));
  CHECK(d1.exact);
  CHECK(d1.omega_equivalent == 1.7);
  CHECK(d1.delta_equivalent == 0.4);

  const MappingReport d2 =
      parameter_mapping(ModelSpec::simple(Dimensionality::D2, 1.7, 0.4));
  CHECK(d2.exact);
  CHECK(d2.omega_equivalent == std::sqrt(2.0) * 1.7);
  CHECK(d2.notes.find("inert") != std::string::npos);

  const MappingReport d3i = parameter_mapping(
      ModelSpec::simple_d3(1.7, 0.4, 1.5, BranchD3::InfiniteDeg));
  CHECK(d3i.exact);
  CHECK(d3i.omega_equivalent == std::sqrt(2.0) * 1.7);

  const MappingReport d3f = parameter_mapping(
      ModelSpec::simple_d3(1.7, 0.4, 1.5, BranchD3::FiniteDeg));
  CHECK_FALSE(d3f.exact);
}

TEST_CASE("mapping identity is entrywise exact for 1+1 and 2+1") {
  for (Dimensionality dim : {Dimensionality::D1, Dimensionality::D2})
    for (double eta : {0.0, 0.9, 2.3})
      for (double mc2 : {0.0, 1.1})
        for (int n = 0; n <= 6; ++n) {
          const ModelSpec spec = ModelSpec::simple(dim, eta, mc2);
          const MappingReport map = parameter_mapping(spec);
          const HermitianBlock dmo = dmo_block(spec, n);
          const HermitianBlock jc =
              jc_block(map.omega_equivalent, map.delta_equivalent, n);
          CHECK((dmo.entries - jc.entries).cwiseAbs().maxCoeff() == 0.0);
        }
}

TEST_CASE("blocks live inside one invariant eigenspace") {
  const ModelSpec ext =
      ModelSpec::two_isospin(Dimensionality::D1, 1.0, 0.7, 0.3, 0.9);
  for (int inv = -1; inv <= 5; ++inv) {
    const HermitianBlock block = extended_block(ext, inv);
    for (const BasisKet& ket : block.basis.kets)
      CHECK(invariant_of(ket) == block.basis.invariant_value);
  }
}

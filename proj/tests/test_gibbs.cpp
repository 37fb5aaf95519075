#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qcb/entropy.hpp"
#include "qcb/gibbs.hpp"
#include "qcb/scalars.hpp"
#include "qcb/spectrum.hpp"

#include "oracles.hpp"

using namespace qcb;
using Catch::Approx;

TEST_CASE("spectrum families") {
  const HamiltonianSpectrum osc = HamiltonianSpectrum::oscillator(8);
  CHECK(osc.level(0) == 0.0);
  CHECK(osc.level(5) == 5.0);
  CHECK(osc.grounded());
  CHECK(osc.infinite());

  const HamiltonianSpectrum lin = HamiltonianSpectrum::linear(0.5, 8);
  CHECK(lin.level(3) == Approx(1.5));
  CHECK_THROWS_AS(HamiltonianSpectrum::linear(0.0, 8), ValidationError);

  const HamiltonianSpectrum ex = HamiltonianSpectrum::explicit_list({0.0, 0.0, 1.0, 3.0});
  CHECK(ex.ground_multiplicity() == 2);
  CHECK_FALSE(ex.infinite());
  CHECK_THROWS_AS(HamiltonianSpectrum::explicit_list({1.0, 0.5}), ValidationError);
  CHECK_THROWS_AS(HamiltonianSpectrum::explicit_list({-1.0, 0.5}), ValidationError);
}

TEST_CASE("truncated spectra") {
  const HamiltonianSpectrum osc = HamiltonianSpectrum::oscillator(16);
  const TruncatedHamiltonian t1 = truncate_hamiltonian(osc, 1);
  CHECK(t1.H_m.level(0) == Approx(1.0));
  CHECK(t1.H_m.level(3) == Approx(4.0));
  CHECK(t1.H0_m.level(0) == 0.0);
  CHECK(t1.H0_m.level(1) == Approx(1.0));
  // the zero-plus-dropped oscillator at m = 1 is the oscillator again
  for (double e : {0.3, 1.0, 2.5})
    CHECK(F_of_E(t1.H0_m, e) == Approx(F_of_E(osc, e)).margin(1e-10));
  CHECK_THROWS_AS(truncate_hamiltonian(osc, 0), ValidationError);
  CHECK_THROWS_AS(truncate_hamiltonian(HamiltonianSpectrum::explicit_list({0.0, 1.0}), 2),
                  ValidationError);
}

TEST_CASE("solve_beta reproduces the oscillator closed forms") {
  const HamiltonianSpectrum osc = HamiltonianSpectrum::oscillator();
  SECTION("beta, Z, F at E = 1") {
    const GibbsSolution s = solve_beta(osc, 1.0);
    CHECK(s.beta == Approx(kLn2).margin(1e-10));
    CHECK(s.Z == Approx(2.0).margin(1e-9));
    CHECK(s.F == Approx(2.0 * kLn2).margin(1e-8));
    CHECK(s.F == Approx(s.beta * s.E + s.log_Z).margin(1e-10));
    CHECK(s.tail_mass < 1e-12);
  }
  SECTION("beta_N(E) = ln(1 + 1/E) across energies") {
    for (double e : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const GibbsSolution s = solve_beta(osc, e);
      CHECK(s.beta == Approx(std::log1p(1.0 / e)).margin(1e-10));
      CHECK(s.F == Approx(g_function(e)).margin(1e-8));
    }
  }
  SECTION("range validation") {
    CHECK_THROWS_AS(solve_beta(osc, -0.5), RangeError);
    CHECK_THROWS_AS(solve_beta(osc, 0.0), RangeError);
    const HamiltonianSpectrum ex = HamiltonianSpectrum::explicit_list({0.0, 1.0});
    CHECK_THROWS_AS(solve_beta(ex, 0.7), RangeError);  // above the uniform mean 0.5
  }
}

TEST_CASE("F_of_E") {
  const HamiltonianSpectrum osc = HamiltonianSpectrum::oscillator();
  CHECK(F_of_E(osc, 0.0) == 0.0);
  for (double e : {0.5, 1.0, 2.0, 5.0})
    CHECK(F_of_E(osc, e) == Approx(g_function(e)).margin(1e-8));
  // degenerate ground level: F at the bottom is ln(multiplicity)
  const HamiltonianSpectrum deg =
      HamiltonianSpectrum::explicit_list({0.0, 0.0, 1.0, 2.0, 3.0, 4.0});
  CHECK(F_of_E(deg, 0.0) == Approx(kLn2).margin(1e-12));
  // truncated oscillator: F_{H_1}(E) = E h(1/E) for E > 1
  const HamiltonianSpectrum h1 = osc.dropped(1);
  for (double e : {1.3, 2.0, 4.0})
    CHECK(F_of_E(h1, e) == Approx(e * binary_entropy(1.0 / e)).margin(1e-8));
}

TEST_CASE("gibbs_state") {
  const HamiltonianSpectrum osc = HamiltonianSpectrum::oscillator(2048);
  SECTION("geometric weights at E = 1") {
    const DensityMatrix gs = gibbs_state(osc, 1.0, 64);
    CHECK(gs.mat()(0, 0).real() == Approx(0.5).margin(1e-10));
    CHECK(gs.mat()(1, 1).real() == Approx(0.25).margin(1e-10));
    CHECK(gs.mat()(2, 2).real() == Approx(0.125).margin(1e-10));
  }
  SECTION("ground projector at the bottom energy") {
    const DensityMatrix gs = gibbs_state(osc, 0.0, 8);
    CHECK(gs.mat()(0, 0).real() == Approx(1.0));
  }
  SECTION("entropy equals F_of_E") {
    for (double e : {0.5, 1.0, 2.0}) {
      const DensityMatrix gs = gibbs_state(osc, e, 512);
      CHECK(von_neumann_entropy(gs) == Approx(F_of_E(osc, e)).margin(1e-8));
    }
  }
  SECTION("dim too small for the tail") {
    CHECK_THROWS_AS(gibbs_state(osc, 5.0, 4), TruncationError);
  }
}

TEST_CASE("F_composite") {
  const HamiltonianSpectrum osc = HamiltonianSpectrum::oscillator();
  SECTION("scaling identity for identical parts") {
    CHECK(F_composite({osc, osc}, 2.0) == Approx(4.0 * kLn2).margin(1e-8));
    CHECK(F_composite({osc, osc, osc}, 3.0) ==
          Approx(3.0 * g_function(1.0)).margin(1e-8));
  }
  SECTION("single spectrum reduces to F_of_E") {
    CHECK(F_composite({osc}, 1.3) == Approx(F_of_E(osc, 1.3)).margin(1e-12));
  }
  SECTION("symmetric split matches the grid-search oracle") {
    const HamiltonianSpectrum lin = HamiltonianSpectrum::linear(0.5);
    const double opt = F_composite({osc, lin}, 2.0);
    const double grid = oracle::best_split_value(
        [&](double e) { return F_of_E(osc, e); },
        [&](double e) { return F_of_E(lin, e); }, 2.0, 2000);
    CHECK(opt == Approx(grid).margin(1e-5));
    CHECK(opt >= grid - 1e-8);
  }
  SECTION("validation") {
    CHECK_THROWS_AS(F_composite({}, 1.0), ValidationError);
    CHECK_THROWS_AS(F_composite({osc.dropped(1)}, 2.0), ValidationError);
  }
}

TEST_CASE("thermodynamic properties") {
  const HamiltonianSpectrum osc = HamiltonianSpectrum::oscillator();
  SECTION("x F(z/x) nondecreasing in x") {
    for (double z : {0.5, 1.0, 3.0}) {
      double prev = -1.0;
      for (int i = 1; i <= 24; ++i) {
        const double x = i / 24.0;
        const double v = x * F_of_E(osc, z / x);
        CHECK(v >= prev - 1e-9);
        prev = v;
      }
    }
  }
  SECTION("partition sums converge with tiny tails") {
    for (double beta : {0.1, 1.0, 10.0}) {
      const auto s = HamiltonianSpectrum::oscillator(1024).partition_sums(beta);
      CHECK(s.tail_mass < 1e-10);
    }
  }
  SECTION("F(E)/E decreasing on a geometric grid") {
    double prev = 1e300;
    for (double e = 0.25; e <= 64.0; e *= 2.0) {
      const double r = F_of_E(osc, e) / e;
      CHECK(r <= prev + 1e-12);
      prev = r;
    }
  }
  SECTION("concavity midpoint test") {
    for (double a = 0.2; a < 4.0; a += 0.4) {
      const double b = a + 1.7;
      CHECK(F_of_E(osc, 0.5 * (a + b)) >=
            0.5 * (F_of_E(osc, a) + F_of_E(osc, b)) - 1e-9);
    }
  }
  SECTION("F = beta E + ln Z on every solution") {
    for (double e : {0.3, 1.0, 4.0, 20.0}) {
      const GibbsSolution s = solve_beta(osc, e);
      CHECK(s.F == Approx(s.beta * s.E + s.log_Z).margin(1e-10));
    }
  }
}

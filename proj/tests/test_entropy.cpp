#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qcb/entropy.hpp"
#include "qcb/sampling.hpp"
#include "qcb/spectrum.hpp"

#include "oracles.hpp"

using namespace qcb;
using Catch::Approx;

namespace {

DensityMatrix bell_state() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(v);
}

DensityMatrix classically_correlated() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return DensityMatrix::from(m);
}

}  // namespace

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(DensityMatrix::diagonal({0.5, 0.5})) ==
        Approx(kLn2).epsilon(1e-14));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(3);
  v(1) = 1.0;
  CHECK(von_neumann_entropy(DensityMatrix::pure(v)) == Approx(0.0).margin(1e-12));
}

TEST_CASE("homogeneous extension of the entropy") {
  // frozen from the scalar oracle: eta(.35)+eta(.15)-eta(.5)
  const double expected = static_cast<double>(oracle::extended_shannon({0.35, 0.15}));
  CHECK(expected == Approx(0.30543215102744673).epsilon(1e-13));
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.35;
  m(1, 1) = 0.15;
  CHECK(extended_entropy_raw(m) == Approx(expected).epsilon(1e-12));
  CHECK(extended_entropy_raw(Matrix::Zero(2, 2)) == 0.0);
  // unit trace reduces to the plain entropy
  CHECK(extended_entropy(DensityMatrix::diagonal({0.5, 0.5})) ==
        Approx(kLn2).epsilon(1e-13));
}

TEST_CASE("relative entropy") {
  const DensityMatrix rho = DensityMatrix::diagonal({0.75, 0.25});
  const DensityMatrix omega = DensityMatrix::diagonal({0.5, 0.5});
  SECTION("identical states") {
    CHECK(relative_entropy(rho, rho) == Approx(0.0).margin(1e-12));
  }
  SECTION("support violation is a tagged infinity") {
    Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(2);
    v0(0) = 1.0;
    const DensityMatrix pure0 = DensityMatrix::pure(v0);
    const DensityMatrix deg = DensityMatrix::diagonal({0.0, 1.0});
    CHECK(std::isinf(relative_entropy(pure0, deg)));
  }
  SECTION("classical KL oracle") {
    const double expected =
        static_cast<double>(oracle::kl_divergence({0.75, 0.25}, {0.5, 0.5}));
    CHECK(expected == Approx(0.13081203594113696).epsilon(1e-13));
    CHECK(relative_entropy(rho, omega) == Approx(expected).epsilon(1e-12));
  }
  SECTION("finite case matches Tr rho(-ln omega) - S(rho)") {
    CounterRng rng(21);
    for (int t = 0; t < 10; ++t) {
      const DensityMatrix r = random_density(5, 5, rng);
      const DensityMatrix w = random_density(5, 5, rng);
      EigenSystem es = spectral_decompose_raw(w.mat());
      double cross = 0.0;
      for (Eigen::Index j = 0; j < 5; ++j)
        cross -= std::log(es.values(j)) *
                 (es.vectors.col(j).adjoint() * r.mat() * es.vectors.col(j))(0).real();
      CHECK(relative_entropy(r, w) ==
            Approx(cross - von_neumann_entropy(r)).margin(1e-8));
      CHECK(relative_entropy(r, w) >= -1e-12);
    }
  }
}

TEST_CASE("relative entropy identities on positive operators") {
  CounterRng rng(22);
  for (int t = 0; t < 12; ++t) {
    const Matrix a = rng.uniform(0.2, 1.0) * random_density(4, 4, rng).mat();
    const Matrix b = rng.uniform(0.2, 1.0) * random_density(4, 4, rng).mat();
    const double c = rng.uniform(0.1, 2.0);
    // D(cA || cB) = c D(A || B)
    CHECK(relative_entropy_ext(c * a, c * b) ==
          Approx(c * relative_entropy_ext(a, b)).margin(1e-8));
    // D(A || cB) = D(A || B) - Tr A ln c + (c-1) Tr B
    CHECK(relative_entropy_ext(a, c * b) ==
          Approx(relative_entropy_ext(a, b) - a.trace().real() * std::log(c) +
                 (c - 1.0) * b.trace().real())
              .margin(1e-8));
    // D(A || B + W) <= D(A || B) + Tr W
    const Matrix w = rng.uniform(0.05, 0.6) * random_density(4, 2, rng).mat();
    CHECK(relative_entropy_ext(a, b + w) <=
          relative_entropy_ext(a, b) + w.trace().real() + 1e-8);
  }
}

TEST_CASE("conditional entropy") {
  CounterRng rng(23);
  SECTION("product state gives S(rho_A)") {
    const DensityMatrix a = random_density(2, 2, rng);
    const DensityMatrix b = random_density(3, 3, rng);
    const DensityMatrix ab = DensityMatrix::from(kron(a.mat(), b.mat()));
    CHECK(conditional_entropy(ab, 2, 3) ==
          Approx(von_neumann_entropy(a)).margin(1e-10));
  }
  SECTION("Bell state") {
    CHECK(conditional_entropy(bell_state(), 2, 2) == Approx(-kLn2).margin(1e-10));
  }
  SECTION("classically correlated") {
    CHECK(conditional_entropy(classically_correlated(), 2, 2) ==
          Approx(0.0).margin(1e-10));
  }
  SECTION("|S(A|B)| <= S(rho_A) on random states") {
    for (int t = 0; t < 15; ++t) {
      const DensityMatrix r = random_density(6, 1 + static_cast<int>(t % 6), rng);
      const double ce = conditional_entropy(r, 2, 3);
      const double sa =
          von_neumann_entropy(partial_trace(r, 2, 3, Subsystem::A));
      CHECK(std::abs(ce) <= sa + 1e-9);
    }
  }
  SECTION("extension identity S(A|B) = S(rho_A) - D(rho || rho_A x rho_B)") {
    for (int t = 0; t < 10; ++t) {
      const DensityMatrix r = random_density(6, 6, rng);
      const DensityMatrix ra = partial_trace(r, 2, 3, Subsystem::A);
      const DensityMatrix rb = partial_trace(r, 2, 3, Subsystem::B);
      const double lhs = conditional_entropy(r, 2, 3);
      const double rhs =
          von_neumann_entropy(ra) -
          relative_entropy(r, DensityMatrix::from(kron(ra.mat(), rb.mat())));
      CHECK(lhs == Approx(rhs).margin(1e-8));
    }
  }
}

TEST_CASE("mutual information") {
  CounterRng rng(24);
  SECTION("product state") {
    const DensityMatrix a = random_density(2, 2, rng);
    const DensityMatrix b = random_density(2, 2, rng);
    CHECK(mutual_information(DensityMatrix::from(kron(a.mat(), b.mat())), 2, 2) ==
          Approx(0.0).margin(1e-10));
  }
  SECTION("Bell state saturates the factor-2 upper bound") {
    CHECK(mutual_information(bell_state(), 2, 2) == Approx(2.0 * kLn2).margin(1e-10));
  }
  SECTION("classically correlated") {
    CHECK(mutual_information(classically_correlated(), 2, 2) ==
          Approx(kLn2).margin(1e-10));
  }
  SECTION("0 <= I <= 2 min(S_A, S_B) on random states") {
    for (int t = 0; t < 15; ++t) {
      const DensityMatrix r = random_density(6, 1 + static_cast<int>(t % 6), rng);
      const double mi = mutual_information(r, 2, 3);
      const double sa = von_neumann_entropy(partial_trace(r, 2, 3, Subsystem::A));
      const double sb = von_neumann_entropy(partial_trace(r, 2, 3, Subsystem::B));
      CHECK(mi >= -1e-12);
      CHECK(mi <= 2.0 * std::min(sa, sb) + 1e-9);
    }
  }
}

TEST_CASE("energy moments") {
  const HamiltonianSpectrum osc = HamiltonianSpectrum::oscillator(16);
  SECTION("ground state carries no energy") {
    std::vector<double> p(4, 0.0);
    p[0] = 1.0;
    const DensityMatrix ground = DensityMatrix::diagonal(p);
    for (double a : {1.0, 2.0, 4.0})
      CHECK(energy_moment(ground, osc, a) == Approx(0.0).margin(1e-14));
  }
  SECTION("third level gives 2^a") {
    std::vector<double> p(4, 0.0);
    p[2] = 1.0;
    const DensityMatrix third = DensityMatrix::diagonal(p);
    for (double a : {1.0, 2.0, 4.0})
      CHECK(energy_moment(third, osc, a) == Approx(std::pow(2.0, a)).epsilon(1e-13));
  }
  SECTION("Gibbs qubit mean") {
    CHECK(energy_moment(DensityMatrix::diagonal({2.0 / 3.0, 1.0 / 3.0}), osc, 1.0) ==
          Approx(1.0 / 3.0).epsilon(1e-13));
  }
  SECTION("explicit eigenbasis reproduces the rotated diagonal moment") {
    CounterRng rng(26);
    const std::vector<double> p = {0.4, 0.3, 0.2, 0.1};
    const Matrix v = random_unitary(4, rng);
    const DensityMatrix rotated = DensityMatrix::diagonal_in_basis(p, v);
    const DensityMatrix plain = DensityMatrix::diagonal(p);
    for (double a : {1.0, 2.0})
      CHECK(energy_moment(rotated, osc, a, &v) ==
            Approx(energy_moment(plain, osc, a)).margin(1e-12));
  }
  SECTION("validation") {
    const DensityMatrix r = DensityMatrix::diagonal({0.5, 0.5});
    CHECK_THROWS_AS(energy_moment(r, osc, 0.5), ValidationError);
    CHECK_THROWS_AS(
        energy_moment(DensityMatrix::diagonal(std::vector<double>(32, 1.0 / 32)), osc),
        ValidationError);
  }
}

TEST_CASE("concavity defect of the entropy stays within h(p)") {
  CounterRng rng(25);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_density(5, 5, rng);
    const DensityMatrix sigma = random_density(5, 1 + static_cast<int>(t % 5), rng);
    const double p = rng.uniform();
    const DensityMatrix mix =
        DensityMatrix::from(p * rho.mat() + (1.0 - p) * sigma.mat());
    const double defect =
        von_neumann_entropy(mix) -
        (p * von_neumann_entropy(rho) + (1.0 - p) * von_neumann_entropy(sigma));
    CHECK(defect >= -1e-9);
    CHECK(defect <= binary_entropy(p) + 1e-9);
  }
}

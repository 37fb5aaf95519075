#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qcb/entropy.hpp"
#include "qcb/eof.hpp"
#include "qcb/sampling.hpp"

using namespace qcb;
using Catch::Approx;

namespace {

DensityMatrix bell_state() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(v);
}

// Werner-like mixture of the Bell state with white noise
DensityMatrix werner(double lambda) {
  Matrix m = lambda * bell_state().mat() + (1.0 - lambda) * 0.25 * Matrix::Identity(4, 4);
  return DensityMatrix::from(std::move(m));
}

}  // namespace

TEST_CASE("wootters formula") {
  SECTION("Bell state") {
    CHECK(wootters_eof(bell_state()) == Approx(kLn2).margin(1e-12));
  }
  SECTION("product pure state") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(1) = 1.0;  // |0>|1>
    CHECK(wootters_eof(DensityMatrix::pure(v)) == Approx(0.0).margin(1e-12));
  }
  SECTION("maximally mixed two-qubit state is separable") {
    CHECK(wootters_eof(DensityMatrix::diagonal({0.25, 0.25, 0.25, 0.25})) ==
          Approx(0.0).margin(1e-12));
  }
  SECTION("Werner mixtures lose entanglement below the known threshold") {
    CHECK(wootters_eof(werner(0.95)) > 0.1);
    CHECK(wootters_eof(werner(0.2)) == Approx(0.0).margin(1e-12));
  }
  SECTION("dimension check") {
    CHECK_THROWS_AS(wootters_eof(DensityMatrix::diagonal({0.5, 0.5})), ValidationError);
  }
}

TEST_CASE("convex roof on pure states is the marginal entropy") {
  CounterRng rng(61);
  for (int t = 0; t < 5; ++t) {
    const DensityMatrix psi = random_density(4, 1, rng);
    const ConvexRoofResult res = convex_roof_eof(psi, 2, 2, 0, 1, 7);
    const double expected =
        von_neumann_entropy(partial_trace(psi, 2, 2, Subsystem::A));
    CHECK(res.value == Approx(expected).margin(1e-10));
    CHECK(res.ensemble.size() == 1);
  }
}

TEST_CASE("convex roof tracks the exact two-qubit value") {
  CounterRng rng(62);
  for (int t = 0; t < 12; ++t) {
    CounterRng sub = rng.split(static_cast<std::uint64_t>(t));
    const DensityMatrix rho =
        random_density(4, 1 + static_cast<int>(sub.uniform_index(4)), sub);
    const double exact = wootters_eof(rho);
    const ConvexRoofResult res =
        convex_roof_eof(rho, 2, 2, 0, 32, 1000 + static_cast<std::uint64_t>(t));
    CHECK(res.value >= exact - 1e-9);   // any ensemble upper-bounds the roof
    CHECK(res.value <= exact + 5e-3);   // and the optimizer gets close
  }
}

TEST_CASE("ensemble certificates are valid decompositions") {
  CounterRng rng(63);
  const DensityMatrix rho = random_density(4, 3, rng);
  const ConvexRoofResult res = convex_roof_eof(rho, 2, 2, 0, 8, 5);
  const PureEnsemble& ens = res.ensemble;
  Matrix avg = Matrix::Zero(4, 4);
  double wsum = 0.0, avg_entropy = 0.0;
  for (int k = 0; k < ens.size(); ++k) {
    const double w = ens.weights()[static_cast<std::size_t>(k)];
    wsum += w;
    avg += w * ens.vectors().col(k) * ens.vectors().col(k).adjoint();
    avg_entropy +=
        w * von_neumann_entropy(
                partial_trace(DensityMatrix::pure(ens.vectors().col(k)), 2, 2,
                              Subsystem::A));
  }
  CHECK(wsum == Approx(1.0).margin(1e-12));
  CHECK((avg - rho.mat()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(avg_entropy == Approx(res.value).margin(1e-9));
}

TEST_CASE("separable mixtures of product states reach zero through the hint") {
  // build an explicitly separable state and hand its ensemble to the optimizer
  CounterRng rng(64);
  const int K = 4;
  std::vector<double> w = random_simplex(K, rng);
  Matrix vecs(4, K);
  Matrix avg = Matrix::Zero(4, 4);
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXcd a(2), b(2);
    a << Complex(rng.gaussian(), rng.gaussian()), Complex(rng.gaussian(), rng.gaussian());
    b << Complex(rng.gaussian(), rng.gaussian()), Complex(rng.gaussian(), rng.gaussian());
    a.normalize();
    b.normalize();
    Eigen::VectorXcd prod(4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) prod(i * 2 + j) = a(i) * b(j);
    vecs.col(k) = prod;
    avg += w[static_cast<std::size_t>(k)] * prod * prod.adjoint();
  }
  const DensityMatrix rho = DensityMatrix::from(avg);
  const PureEnsemble hint(w, vecs, rho.mat());
  const ConvexRoofResult res = convex_roof_eof(rho, 2, 2, 0, 4, 11, &hint);
  CHECK(res.value == Approx(0.0).margin(1e-7));
  CHECK(wootters_eof(rho) == Approx(0.0).margin(1e-9));
}

TEST_CASE("roof value is convex under mixing via concatenated ensembles") {
  CounterRng rng(65);
  for (int t = 0; t < 4; ++t) {
    CounterRng sub = rng.split(static_cast<std::uint64_t>(t));
    const DensityMatrix rho = random_density(4, 2, sub);
    const DensityMatrix sigma = random_density(4, 2, sub);
    const double p = sub.uniform(0.2, 0.8);
    const ConvexRoofResult ra = convex_roof_eof(rho, 2, 2, 0, 12, 21);
    const ConvexRoofResult rb = convex_roof_eof(sigma, 2, 2, 0, 12, 22);
    const DensityMatrix mix =
        DensityMatrix::from(p * rho.mat() + (1.0 - p) * sigma.mat());
    // concatenate the two certificates into a decomposition of the mixture
    const int ka = ra.ensemble.size(), kb = rb.ensemble.size();
    std::vector<double> w;
    Matrix vecs(4, ka + kb);
    for (int k = 0; k < ka; ++k) {
      w.push_back(p * ra.ensemble.weights()[static_cast<std::size_t>(k)]);
      vecs.col(k) = ra.ensemble.vectors().col(k);
    }
    for (int k = 0; k < kb; ++k) {
      w.push_back((1.0 - p) * rb.ensemble.weights()[static_cast<std::size_t>(k)]);
      vecs.col(ka + k) = rb.ensemble.vectors().col(k);
    }
    const PureEnsemble hint(w, vecs, mix.mat());
    const ConvexRoofResult rm =
        convex_roof_eof(mix, 2, 2, std::max(ka + kb, 4), 4, 23, &hint);
    CHECK(rm.value <= p * ra.value + (1.0 - p) * rb.value + 1e-7);
  }
}

#include <doctest.h>

#include <cmath>

#include "aluthge/hardy.hpp"
#include "aluthge/special_functions.hpp"

using namespace aluthge;
using Eigen::MatrixXcd;

TEST_CASE("weights of the Hardy space") {
  // α = 0: β(j) = √j for j ≥ 1.
  const HardyWeights w0(0.0, 50);
  CHECK(w0.beta(0) == 1.0);
  for (std::size_t j = 1; j <= 50; ++j) CHECK(w0.beta(j) == doctest::Approx(std::sqrt(double(j))).epsilon(1e-13));
  // β(j)·γ(j−1) = 1 and γ(j) = ‖zʲ‖ in A²_α = 1/basis_coeff(j).
  const HardyWeights w(1.0, 30);
  for (std::size_t j = 0; j <= 30; ++j) {
    CHECK(w.gamma(j) == doctest::Approx(1.0 / basis_coeff(j, 1.0)).epsilon(1e-13));
    if (j > 0) CHECK(w.beta(j) * w.gamma(j - 1) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("the embedding is an isometry onto the non-constants") {
  const MatrixXcd V = shift_V(12, 0.5).entries;
  REQUIRE(V.rows() == 13);
  REQUIRE(V.cols() == 12);
  CHECK((V.adjoint() * V - MatrixXcd::Identity(12, 12)).norm() < 1e-15);
  MatrixXcd X = MatrixXcd::Random(12, 12);
  const MatrixXcd E = embed_block(X, 0.5).entries;
  CHECK(E(0, 0) == cplx(1.0));
  CHECK(E.row(0).tail(12).norm() == 0.0);
  CHECK(E.col(0).tail(12).norm() == 0.0);
  CHECK((E.bottomRightCorner(12, 12) - X).norm() == 0.0);
}

TEST_CASE("direct C_sigma matrix against its defining series") {
  // α = 0, a = 1/2: entry (i, j) = β(i)/β(j)·[zⁱ] aʲzʲ(1 − (1−a)z)^{−j}.
  const double a = 0.5;
  const MatrixXcd C = direct_c_sigma(a, 0.0, 8).entries;
  auto beta = [](std::size_t j) { return j == 0 ? 1.0 : std::sqrt(double(j)); };
  auto binom = [](double n, double k) { return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)); };
  for (std::size_t i = 0; i <= 8; ++i)
    for (std::size_t j = 0; j <= 8; ++j) {
      double expect = 0.0;
      if (j == 0) expect = i == 0 ? 1.0 : 0.0;
      else if (i >= j) expect = std::pow(a, double(j)) * binom(double(i - 1), double(j - 1)) * std::pow(1 - a, double(i - j));
      expect *= beta(i) / beta(j);
      CHECK(std::abs(C(i, j) - expect) < 1e-13 * std::max(1.0, expect));
    }
}

TEST_CASE("block construction reproduces C_sigma at n = 0") {
  for (double a : {0.25, 0.5, 0.75})
    for (double alpha : {0.0, 1.0}) {
      const PaperScenario sc{a, alpha, 0};
      const MatrixXcd block = sigma_iterate_block(sc, 64).entries;
      const MatrixXcd direct = direct_c_sigma(a, alpha, 64).entries;
      CHECK(corner_distance(block, direct, 8) < 1e-10);
    }
}

TEST_CASE("limits and column residuals") {
  const PaperScenario base{0.5, 0.0, 0};
  const MatrixXcd P = constants_projection(32, 0.0).entries;
  CHECK((P * P - P).norm() == 0.0);
  CHECK(P.trace() == cplx(1.0));
  const MatrixXcd L = sigma_sot_limit(base, 64).entries;
  CHECK((L * L.adjoint() - L.adjoint() * L).topLeftCorner(8, 8).norm() < 1e-10);
  CHECK(column_residual(L, L, 8) == 0.0);
  MatrixXcd M = MatrixXcd::Zero(4, 4);
  M(1, 2) = 3.0;
  CHECK(column_residual(M, MatrixXcd::Zero(4, 4), 1) == 0.0);
  CHECK(column_residual(M, MatrixXcd::Zero(4, 4), 2) == doctest::Approx(3.0));
}

TEST_CASE("probe of the induced iterates") {
  const SigmaProbe p = sigma_properties_probe({0.5, 0.0, 1}, 64, 64);
  CHECK(p.binormal_symbolic);
  CHECK(p.binormal_commutator_corner < 1e-8);
  CHECK(p.g0_n != p.g0_next);
  CHECK(p.block_norm <= p.norm_bound * (1 + 1e-8));
  CHECK(p.norm_bound == 1.0);
}

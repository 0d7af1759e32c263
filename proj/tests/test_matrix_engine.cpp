#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aluthge/errors.hpp"
#include "aluthge/matrix_engine.hpp"
#include "aluthge/special_functions.hpp"
#include "support.hpp"

using namespace aluthge;
using Eigen::MatrixXcd;

namespace {

double binom(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

// [zⁱ] of g by the trapezoid rule on |z| = r.
std::vector<cplx> taylor_by_contour(const std::function<cplx(cplx)>& g, std::size_t count, double r = 0.5) {
  constexpr int M = 512;
  std::vector<cplx> out(count, 0.0);
  for (int k = 0; k < M; ++k) {
    const double th = 2.0 * std::numbers::pi * k / M;
    const cplx gv = g(std::polar(r, th));
    for (std::size_t i = 0; i < count; ++i) out[i] += gv * std::polar(std::pow(r, -double(i)), -double(i) * th);
  }
  for (auto& c : out) c /= double(M);
  return out;
}

MatrixXcd jordan_blocks(Eigen::Index blocks) {
  MatrixXcd J = MatrixXcd::Zero(2 * blocks, 2 * blocks);
  for (Eigen::Index b = 0; b < blocks; ++b) J(2 * b, 2 * b + 1) = 1.0;
  return J;
}

}  // namespace

TEST_CASE("truncation of C_phi is the binomial matrix") {
  for (double alpha : {-0.5, 0.0, 1.0}) {
    const double a = 0.4;
    const TruncatedOperator T = truncate(c_phi({a, alpha, 0}), 20);
    REQUIRE(T.dim() == 20);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double expect =
            j < i ? 0.0 : basis_coeff(j, alpha) / basis_coeff(i, alpha) * binom(j, i) * std::pow(a, i) * std::pow(1 - a, j - i);
        CHECK(std::abs(T.entries(i, j) - expect) < 1e-13 * std::max(1.0, expect));
      }
  }
}

TEST_CASE("truncation of a general element agrees with contour Taylor coefficients") {
  std::mt19937_64 rng(3);
  for (double alpha : {-0.5, 0.0, 1.0}) {
    const SpaceParams space(alpha);
    for (int trial = 0; trial < 4; ++trial) {
      const WeightedLFT w = testing::random_element(rng, space);
      const std::size_t N = 10;
      const TruncatedOperator T = truncate(w, N);
      for (std::size_t j = 0; j < N; ++j) {
        const auto col = taylor_by_contour(
            [&](cplx z) {
              const SymbolValue v = symbol_eval(w, z);
              return v.weight * std::pow(v.map, double(j));
            },
            N);
        for (std::size_t i = 0; i < N; ++i) {
          const cplx expect = col[i] * basis_coeff(j, alpha) / basis_coeff(i, alpha);
          CHECK(std::abs(T.entries(i, j) - expect) < 1e-9 * std::max(1.0, std::abs(expect)));
        }
      }
    }
  }
}

TEST_CASE("polar factors reconstruct the matrix") {
  const TruncatedOperator A = truncate(c_phi({0.5, 0.0, 0}), 64);
  const PolarFactors pf = polar_decompose(A);
  CHECK((pf.partial_isometry.entries * pf.modulus.entries - A.entries).norm() < 1e-12 * A.entries.norm());
  CHECK((pf.modulus.entries - pf.modulus.entries.adjoint()).norm() < 1e-13);
  // The diagonal decays like a^j, so U is a partial isometry: U*U is a projection of rank pf.rank.
  const MatrixXcd P = pf.partial_isometry.entries.adjoint() * pf.partial_isometry.entries;
  CHECK((P * P - P).norm() < 1e-10);
  CHECK(std::abs(P.trace() - cplx(static_cast<double>(pf.rank))) < 1e-10);
  CHECK(pf.rank < 64);
  const PolarFactors small = polar_decompose(truncate(c_phi({0.5, 0.0, 0}), 16));
  const MatrixXcd U = small.partial_isometry.entries;
  CHECK((U.adjoint() * U - MatrixXcd::Identity(16, 16)).norm() < 1e-9);
  CHECK(small.rank == 16);
  CHECK_THROWS_AS(polar_decompose(A, 0.0), DomainError);
  CHECK_THROWS_AS(polar_decompose(A, 0.1), DomainError);
}

TEST_CASE("numeric Aluthge transform on known matrices") {
  // Normal matrices are fixed; a nilpotent Jordan block goes to zero.
  MatrixXcd D = MatrixXcd::Zero(3, 3);
  D.diagonal() << cplx(2.0, 1.0), -0.5, cplx(0.0, 3.0);
  const TruncatedOperator Td{{SpaceKind::kBergman, 0.0}, D};
  CHECK((aluthge_numeric(Td).entries - D).norm() < 1e-13);
  const TruncatedOperator J{{SpaceKind::kBergman, 0.0}, jordan_blocks(1)};
  CHECK(aluthge_numeric(J).entries.norm() < 1e-13);
}

TEST_CASE("extremal eigenvalues: Lanczos against the dense solver") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (Eigen::Index n : {20, 60, 200}) {
    MatrixXcd X(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) X(i, j) = cplx(nd(rng), nd(rng));
    const MatrixXcd H = 0.5 * (X + X.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
    const SpectralBounds b = hermitian_extremes(H);
    CHECK(b.min == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-11));
    CHECK(b.max == doctest::Approx(es.eigenvalues()(n - 1)).epsilon(1e-11));
  }
}

TEST_CASE("numerical range of known matrices") {
  // Jordan blocks: W is the disk of radius 1/2, for the dense and Lanczos paths.
  for (Eigen::Index blocks : {2, 40}) {
    const NumericalRangeSample s = numerical_range_sample(jordan_blocks(blocks), 64);
    CHECK(s.radius == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(s.min_support == doctest::Approx(0.5).epsilon(1e-10));
  }
  // diag(1, i, −1, −i): the square with support ≥ 1/√2, attained at θ = π/4.
  MatrixXcd D = MatrixXcd::Zero(4, 4);
  D.diagonal() << 1.0, cplx(0, 1), -1.0, cplx(0, -1);
  const NumericalRangeSample s = numerical_range_sample(D, 64);
  CHECK(s.radius == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.min_support == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(zero_in_interior(D, 64));
  CHECK_FALSE(zero_in_interior(MatrixXcd::Identity(4, 4), 64));
  CHECK(numerical_radius(2.0 * D, 64) == doctest::Approx(2.0));
  CHECK_THROWS_AS(numerical_range_sample(D, 8), DomainError);
}

TEST_CASE("norms of truncations stay below the operator norm") {
  const PaperScenario sc{0.5, 0.0, 2};
  const double bound = norm_value(sc);
  double prev = 0.0;
  for (std::size_t N : {16u, 32u, 64u}) {
    const MatrixXcd T = truncate(iterate_symbols(sc), N).entries;
    const double nrm = operator_norm(T);
    CHECK(nrm <= bound * (1 + 1e-12));
    CHECK(nrm >= prev);
    CHECK(numerical_radius(T, 64) <= nrm * (1 + 1e-12));
    prev = nrm;
  }
}

TEST_CASE("hyponormality probe") {
  MatrixXcd D = MatrixXcd::Zero(3, 3);
  D.diagonal() << 1.0, cplx(0.0, 2.0), -0.3;
  CHECK(std::abs(hyponormality_probe(D, 0.5)) < 1e-13);
  // For a single Jordan block, J*J − JJ* = diag(−1, 1).
  CHECK(hyponormality_probe(jordan_blocks(1), 1.0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(hyponormality_probe(D, 0.0), DomainError);
}

TEST_CASE("corner distance") {
  MatrixXcd A = MatrixXcd::Zero(10, 10), B = MatrixXcd::Zero(10, 10);
  B(9, 9) = 5.0;
  B(1, 2) = 3.0;
  B(0, 0) = cplx(0.0, 4.0);
  CHECK(corner_distance(A, B, 3) == doctest::Approx(5.0));
}

TEST_CASE("kernel decay rows") {
  const SotRequest req{{0.5}, {0.0, 1.0}, {0.0, cplx(0.0, 0.5)}, 6, 128};
  const auto rows = sot_decay_curve(req);
  REQUIRE(rows.size() == 2 * 2 * 7);
  CHECK(rows[0].alpha == 0.0);
  CHECK(rows[7].omega == cplx(0.0, 0.5));
  CHECK(rows[14].alpha == 1.0);
  for (const auto& r : rows) {
    CHECK(r.exact_norm_sq == doctest::Approx(r.closed_norm_sq).epsilon(1e-12));
    REQUIRE(r.truncated_norm_sq.has_value());
    CHECK(std::abs(std::sqrt(*r.truncated_norm_sq) - std::sqrt(r.exact_norm_sq)) <= r.truncation_slack + 1e-12);
  }
}

#include "aluthge/matrix_engine.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "aluthge/errors.hpp"
#include "aluthge/special_functions.hpp"

namespace aluthge {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

const char* to_string(SpaceKind kind) { return kind == SpaceKind::kBergman ? "bergman" : "hardy"; }

TruncatedOperator truncate(const WeightedLFT& w, std::size_t N) {
  if (N < 2) throw DomainError("truncate: N must be at least 2");
  const Index n = static_cast<Index>(N);
  const double beta = w.space().exponent();
  const Mobius2 m = w.disk_matrix();
  const cplx p = m.a, q = m.b, r = m.c, s = m.d;

  // f = λ·s^{−β}·(1 + (r/s)z)^{−β}; both factors principal since |r| < dist(s, cut).
  const std::vector<cplx> tail = binomial_series(beta, -r / s, N);
  VectorXcd h(n);
  const cplx lead = w.lambda() * std::exp(-beta * std::log(s));
  for (Index i = 0; i < n; ++i) h(i) = lead * tail[static_cast<std::size_t>(i)];

  const WeightTable table(w.space().alpha(), N - 1);
  VectorXd half_log(n);
  for (Index i = 0; i < n; ++i) half_log(i) = 0.5 * table.log_ratio(static_cast<std::size_t>(i));

  MatrixXcd out(n, n);
  VectorXcd scratch(n);
  for (Index j = 0; j < n; ++j) {
    if (j > 0) {
      // h ← h·(pz+q)/(rz+s), causal in the coefficient index.
      for (Index i = n - 1; i >= 1; --i) scratch(i) = q * h(i) + p * h(i - 1);
      scratch(0) = q * h(0);
      h(0) = scratch(0) / s;
      for (Index i = 1; i < n; ++i) h(i) = (scratch(i) - r * h(i - 1)) / s;
    }
    for (Index i = 0; i < n; ++i) out(i, j) = h(i) * std::exp(half_log(j) - half_log(i));
  }
  return {{SpaceKind::kBergman, w.space().alpha()}, std::move(out)};
}

namespace {

Eigen::BDCSVD<MatrixXcd> checked_svd(const MatrixXcd& A) {
  if (!A.allFinite()) throw SolverError("svd: matrix has non-finite entries");
  Eigen::BDCSVD<MatrixXcd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw SolverError("svd: decomposition failed for " + std::to_string(A.rows()) + "x" +
                      std::to_string(A.cols()) + " matrix with Frobenius norm " +
                      std::to_string(A.norm()));
  }
  return svd;
}

void check_cutoff(double rel_cutoff) {
  if (!(rel_cutoff > 0.0 && rel_cutoff <= 1e-3)) throw DomainError("polar: rel_cutoff must lie in (0, 1e-3]");
}

MatrixXcd hermitian_part(const MatrixXcd& A, double theta) {
  const cplx e = std::polar(1.0, theta);
  return 0.5 * (e * A + std::conj(e) * A.adjoint());
}

SpectralBounds dense_extremes(const MatrixXcd& H) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("eigen: Hermitian solve failed");
  return {es.eigenvalues()(0), es.eigenvalues()(H.rows() - 1)};
}

}  // namespace

PolarFactors polar_decompose(const TruncatedOperator& A, double rel_cutoff) {
  check_cutoff(rel_cutoff);
  const auto svd = checked_svd(A.entries);
  const VectorXd& sigma = svd.singularValues();
  const MatrixXcd& U = svd.matrixU();
  const MatrixXcd& V = svd.matrixV();
  const double cutoff = rel_cutoff * (sigma.size() > 0 ? sigma(0) : 0.0);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;

  MatrixXcd modulus = V.leftCols(sigma.size()) * sigma.asDiagonal() * V.leftCols(sigma.size()).adjoint();
  MatrixXcd iso = U.leftCols(rank) * V.leftCols(rank).adjoint();
  return {{A.space, std::move(modulus)}, {A.space, std::move(iso)}, cutoff, rank};
}

TruncatedOperator aluthge_numeric(const TruncatedOperator& A, double rel_cutoff) {
  check_cutoff(rel_cutoff);
  const auto svd = checked_svd(A.entries);
  const VectorXd& sigma = svd.singularValues();
  const MatrixXcd& U = svd.matrixU();
  const MatrixXcd& V = svd.matrixV();
  const double cutoff = rel_cutoff * (sigma.size() > 0 ? sigma(0) : 0.0);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;

  // R·U_p·R with R = VΣ^{1/2}V* and U_p = U_r V_r*:
  //   V Σ^{1/2} (V*U_r)(V_r*V) Σ^{1/2} V*, where V_r*V = [I_r 0].
  const Index k = sigma.size();
  const VectorXd root = sigma.cwiseSqrt();
  MatrixXcd core = MatrixXcd::Zero(k, k);
  core.leftCols(rank) = V.leftCols(k).adjoint() * U.leftCols(rank);
  core = root.asDiagonal() * core * root.asDiagonal();
  MatrixXcd out = V.leftCols(k) * core * V.leftCols(k).adjoint();
  return {A.space, std::move(out)};
}

double operator_norm(const MatrixXcd& A) {
  if (A.size() == 0) return 0.0;
  Eigen::BDCSVD<MatrixXcd> svd(A);
  if (svd.info() != Eigen::Success) throw SolverError("operator_norm: svd failed");
  return svd.singularValues()(0);
}

namespace {

// Lanczos from `start` with full reorthogonalisation. When `next` is given it
// receives the sum of the two extremal Ritz vectors, a warm start for a nearby
// matrix.
SpectralBounds lanczos_extremes(const MatrixXcd& H, const VectorXcd& start, VectorXcd* next) {
  const Index n = H.rows();
  const Index m_max = std::min<Index>(n, 240);
  const double scale = std::max(H.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
  // Ritz values err by about residual²/gap, so this residual already pins them
  // near rounding level; breakdown uses the tighter threshold.
  const double res_tol = 1e-10 * scale;
  const double tol = 1e-13 * scale;

  MatrixXcd Q(n, m_max);
  VectorXd alpha(m_max), beta(m_max);
  Q.col(0) = start.normalized();

  for (Index j = 0; j < m_max; ++j) {
    VectorXcd w = H * Q.col(j);
    alpha(j) = Q.col(j).dot(w).real();
    for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).adjoint() * w);
    beta(j) = w.norm();

    const bool exhausted = beta(j) <= tol || j + 1 == m_max;
    if (exhausted || (j + 1) % 4 == 0) {
      const Index k = j + 1;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(alpha.head(k), beta.head(k - 1), Eigen::ComputeEigenvectors);
      const auto& y = tri.eigenvectors();
      const double res_min = beta(j) * std::abs(y(k - 1, 0));
      const double res_max = beta(j) * std::abs(y(k - 1, k - 1));
      const SpectralBounds ritz{tri.eigenvalues()(0), tri.eigenvalues()(k - 1)};
      // Early breakdown leaves an invariant subspace that need not hold the extremes.
      if (beta(j) <= tol) return k == n ? ritz : dense_extremes(H);
      if (res_min <= res_tol && res_max <= res_tol) {
        if (next) *next = Q.leftCols(k) * (y.col(0) + y.col(k - 1)).cast<cplx>();
        return ritz;
      }
      if (j + 1 == m_max) return dense_extremes(H);
    }
    Q.col(j + 1) = w / beta(j);
  }
  return dense_extremes(H);
}

VectorXcd default_start(Index n) {
  VectorXcd v(n);
  for (Index i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
  return v;
}

constexpr Index kDenseBelow = 48;

}  // namespace

SpectralBounds hermitian_extremes(const MatrixXcd& H) {
  if (H.rows() <= kDenseBelow) return dense_extremes(H);
  return lanczos_extremes(H, default_start(H.rows()), nullptr);
}

NumericalRangeSample numerical_range_sample(const MatrixXcd& A, int K) {
  if (K < 16) throw DomainError("numerical range: K must be at least 16");
  std::vector<double> support(static_cast<std::size_t>(K), 0.0);
  std::vector<bool> done(support.size(), false);
  const bool dense = A.rows() <= kDenseBelow;
  VectorXcd start = default_start(A.rows());
  for (int k = 0; k < K; ++k) {
    if (done[static_cast<std::size_t>(k)]) continue;
    const double theta = 2.0 * std::numbers::pi * k / K;
    const MatrixXcd H = hermitian_part(A, theta);
    SpectralBounds b;
    if (dense) {
      b = dense_extremes(H);
    } else {
      VectorXcd next;
      b = lanczos_extremes(H, start, &next);
      start = next.size() == A.rows() && next.norm() > 0.0 ? next : default_start(A.rows());
    }
    support[static_cast<std::size_t>(k)] = b.max;
    done[static_cast<std::size_t>(k)] = true;
    // λ_max(Re(e^{i(θ+π)}A)) = −λ_min(Re(e^{iθ}A))
    if (K % 2 == 0) {
      const auto opposite = static_cast<std::size_t>(k + K / 2);
      if (opposite < support.size()) {
        support[opposite] = -b.min;
        done[opposite] = true;
      }
    }
  }
  return {*std::max_element(support.begin(), support.end()),
          *std::min_element(support.begin(), support.end())};
}

double numerical_radius(const MatrixXcd& A, int K) { return numerical_range_sample(A, K).radius; }

bool zero_in_interior(const MatrixXcd& A, int K, double margin) {
  return numerical_range_sample(A, K).min_support > margin;
}

double hyponormality_probe(const MatrixXcd& A, double p) {
  if (!(p > 0.0)) throw DomainError("hyponormality_probe: p must be positive");
  const auto svd = checked_svd(A);
  const VectorXd pw = svd.singularValues().array().pow(2.0 * p).matrix();
  const Index k = pw.size();
  const MatrixXcd V = svd.matrixV().leftCols(k);
  const MatrixXcd U = svd.matrixU().leftCols(k);
  const MatrixXcd diff = V * pw.asDiagonal() * V.adjoint() - U * pw.asDiagonal() * U.adjoint();
  return dense_extremes(0.5 * (diff + diff.adjoint())).min;
}

double corner_distance(const MatrixXcd& A, const MatrixXcd& B, Index k) {
  const Index m = std::min({k, A.rows(), A.cols(), B.rows(), B.cols()});
  return (A.topLeftCorner(m, m) - B.topLeftCorner(m, m)).norm();
}

std::vector<SotRow> sot_decay_curve(const SotRequest& req) {
  std::vector<SotRow> rows;
  for (double a : req.a_values) {
    for (double alpha : req.alpha_values) {
      const SpaceParams space(alpha);
      std::vector<WeightedLFT> kernel_form;
      std::vector<MatrixXcd> truncations;
      for (std::size_t n = 0; n <= req.n_max; ++n) {
        const PaperScenario sc{a, alpha, n};
        kernel_form.push_back(iterate_adjoint_form(sc));
        if (req.N > 0) truncations.push_back(truncate(iterate_symbols(sc), req.N).entries);
      }
      for (const cplx& omega : req.omegas) {
        const double tail_in = req.N > 0 ? kernel_tail_norm_sq(omega, req.N, space) : 0.0;
        const VectorXcd k_omega = req.N > 0 ? kernel_vector(omega, req.N, space).coeffs : VectorXcd();
        for (std::size_t n = 0; n <= req.n_max; ++n) {
          const PaperScenario sc{a, alpha, n};
          const KernelImage img = adjoint_apply_kernel(kernel_form[n], omega);
          SotRow row{a, alpha, omega, n, adjoint_kernel_norm_sq(kernel_form[n], omega),
                     sot_closed_norm_sq(sc, omega), sot_upper_bound(sc, omega), std::nullopt, 0.0};
          if (req.N > 0) {
            row.truncated_norm_sq = (truncations[n] * k_omega).squaredNorm();
            const double tail_out = kernel_tail_norm_sq(img.point, req.N, space);
            row.truncation_slack =
                norm_value(sc) * std::sqrt(tail_in) + std::abs(img.weight) * std::sqrt(tail_out);
          }
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

}  // namespace aluthge

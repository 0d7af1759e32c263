#include "aluthge/hardy.hpp"

#include <algorithm>
#include <cmath>

#include "aluthge/errors.hpp"
#include "aluthge/special_functions.hpp"

namespace aluthge {

using Eigen::Index;
using Eigen::MatrixXcd;

HardyWeights::HardyWeights(double alpha, std::size_t n_max)
    : alpha_(alpha), log_gamma_(n_max + 1), log_beta_(n_max + 1) {
  const WeightTable table(alpha, n_max);
  for (std::size_t j = 0; j <= n_max; ++j) log_gamma_[j] = -0.5 * table.log_ratio(j);
  log_beta_[0] = 0.0;
  for (std::size_t j = 1; j <= n_max; ++j) log_beta_[j] = -log_gamma_[j - 1];
}

double HardyWeights::gamma(std::size_t j) const { return std::exp(log_gamma(j)); }

double HardyWeights::beta(std::size_t j) const { return std::exp(log_beta(j)); }

TruncatedOperator shift_V(std::size_t N, double alpha) {
  if (N < 1) throw DomainError("shift_V: N must be at least 1");
  const Index n = static_cast<Index>(N);
  MatrixXcd v = MatrixXcd::Zero(n + 1, n);
  for (Index j = 0; j < n; ++j) v(j + 1, j) = 1.0;
  return {{SpaceKind::kHardy, alpha}, std::move(v)};
}

TruncatedOperator embed_block(const MatrixXcd& block, double alpha) {
  const Index n = block.rows();
  MatrixXcd out = MatrixXcd::Zero(n + 1, n + 1);
  out(0, 0) = 1.0;
  out.bottomRightCorner(n, n) = block;
  return {{SpaceKind::kHardy, alpha}, std::move(out)};
}

TruncatedOperator direct_c_sigma(double a, double alpha, std::size_t N) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("direct_c_sigma: a must lie in (0, 1)");
  const Index dim = static_cast<Index>(N) + 1;
  const HardyWeights w(alpha, N);
  MatrixXcd out = MatrixXcd::Zero(dim, dim);
  out(0, 0) = 1.0;
  for (Index j = 1; j < dim; ++j) {
    const auto len = static_cast<std::size_t>(dim - j);
    const std::vector<cplx> series = binomial_series(static_cast<double>(j), 1.0 - a, len);
    const double log_aj = static_cast<double>(j) * std::log(a);
    for (Index i = j; i < dim; ++i) {
      const auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
      out(i, j) = series[ii - jj] * std::exp(log_aj + w.log_beta(ii) - w.log_beta(jj));
    }
  }
  return {{SpaceKind::kHardy, alpha}, std::move(out)};
}

TruncatedOperator sigma_iterate_block(const PaperScenario& sc, std::size_t N) {
  return embed_block(sc.a * truncate(adjoint_iterate_symbols(sc), N).entries, sc.alpha);
}

TruncatedOperator sigma_adjoint_block(const PaperScenario& sc, std::size_t N) {
  return embed_block(sc.a * truncate(iterate_symbols(sc), N).entries, sc.alpha);
}

TruncatedOperator sigma_sot_limit(const PaperScenario& sc, std::size_t N) {
  return embed_block(truncate(sot_limit_element(sc), N).entries, sc.alpha);
}

TruncatedOperator constants_projection(std::size_t N, double alpha) {
  return embed_block(MatrixXcd::Zero(static_cast<Index>(N), static_cast<Index>(N)), alpha);
}

double column_residual(const MatrixXcd& A, const MatrixXcd& B, Index j_max) {
  const Index cols = std::min({j_max + 1, A.cols(), B.cols()});
  return (A.leftCols(cols) - B.leftCols(cols)).colwise().norm().maxCoeff();
}

SigmaProbe sigma_properties_probe(const PaperScenario& sc, std::size_t N, int K, double margin) {
  sc.validate();
  const WeightedLFT x = adjoint_iterate_symbols(sc);
  const WeightedLFT gram = compose(adjoint(x), x);
  const WeightedLFT cogram = compose(x, adjoint(x));

  // 1 ⊕ aX is binormal iff X is; the corner commutator is scaled by a⁴.
  const MatrixXcd p = truncate(gram, N).entries;
  const MatrixXcd q = truncate(cogram, N).entries;
  const double a4 = std::pow(sc.a, 4.0);
  const Index k = std::min<Index>(8, static_cast<Index>(N));
  const double commutator = a4 * (p * q - q * p).topLeftCorner(k, k).norm();

  PaperScenario next = sc;
  next.n = sc.n + 1;
  const TruncatedOperator block = sigma_iterate_block(sc, N);
  const NumericalRangeSample range = numerical_range_sample(block.entries, K);
  return {commutator,
          equals(compose(gram, cogram), compose(cogram, gram), 1e-12),
          symbol_eval(x, 0.0).weight.real(),
          symbol_eval(adjoint_iterate_symbols(next), 0.0).weight.real(),
          operator_norm(block.entries),
          std::max(1.0, std::pow(sc.a, -0.5 * sc.alpha)),
          range.min_support,
          range.min_support > margin};
}

}  // namespace aluthge

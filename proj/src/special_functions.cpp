#include "aluthge/special_functions.hpp"

#include <cmath>
#include <string>

#include "aluthge/errors.hpp"

namespace aluthge {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw DomainError("weight exponent alpha must be finite and > -1, got " +
                      std::to_string(alpha));
  }
}

}  // namespace

double log_gamma_ratio(std::size_t n, double alpha) {
  require_alpha(alpha);
  if (n == 0) return 0.0;
  const double x = static_cast<double>(n);
  return std::lgamma(x + alpha + 2.0) - std::lgamma(x + 1.0) - std::lgamma(alpha + 2.0);
}

double basis_coeff(std::size_t n, double alpha) {
  return std::exp(0.5 * log_gamma_ratio(n, alpha));
}

WeightTable::WeightTable(double alpha, std::size_t n_max) : alpha_(alpha), log_ratio_(n_max + 1) {
  require_alpha(alpha);
  log_ratio_[0] = 0.0;
  // Γ(n+α+2)/Γ(n+α+1) = n+α+1 and n!/(n−1)! = n; log1p keeps small ratios accurate.
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double x = static_cast<double>(n);
    log_ratio_[n] = log_ratio_[n - 1] + std::log1p((alpha + 1.0) / x);
  }
}

double WeightTable::basis_coeff(std::size_t n) const { return std::exp(0.5 * log_ratio_.at(n)); }

std::vector<cplx> binomial_series(double exponent, cplx c, std::size_t n_terms) {
  if (!(exponent > 0.0)) {
    throw DomainError("binomial_series: exponent must be positive, got " + std::to_string(exponent));
  }
  if (n_terms == 0) throw DomainError("binomial_series: n_terms must be at least 1");
  std::vector<cplx> out(n_terms);
  out[0] = 1.0;
  for (std::size_t k = 0; k + 1 < n_terms; ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = out[k] * c * ((kk + exponent) / (kk + 1.0));
  }
  return out;
}

}  // namespace aluthge

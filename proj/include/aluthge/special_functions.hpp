#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace aluthge {

using cplx = std::complex<double>;

/// log Γ(n+α+2) − log n! − log Γ(α+2), the squared basis normalisation of
/// A²_α in log space. Exact zero at n = 0.
double log_gamma_ratio(std::size_t n, double alpha);

/// Table of log_gamma_ratio for n = 0..n_max, filled by the additive
/// recurrence  L(n) = L(n−1) + log((n+α+1)/n).
class WeightTable {
 public:
  WeightTable(double alpha, std::size_t n_max);

  double alpha() const { return alpha_; }
  std::size_t n_max() const { return log_ratio_.size() - 1; }

  double log_ratio(std::size_t n) const { return log_ratio_.at(n); }

  /// sqrt(Γ(n+α+2)/(n!Γ(α+2))): the coefficient of zⁿ in eₙ.
  double basis_coeff(std::size_t n) const;

  const std::vector<double>& log_ratios() const { return log_ratio_; }

 private:
  double alpha_;
  std::vector<double> log_ratio_;
};

/// sqrt(Γ(n+α+2)/(n!Γ(α+2))), evaluated through lgamma. Throws DomainError
/// for α ≤ −1.
double basis_coeff(std::size_t n, double alpha);

/// First n_terms Taylor coefficients of (1 − c z)^(−exponent), via
/// coeff(k+1) = coeff(k)·c·(k+exponent)/(k+1). Throws DomainError for
/// exponent ≤ 0 or n_terms == 0.
std::vector<cplx> binomial_series(double exponent, cplx c, std::size_t n_terms);

}  // namespace aluthge

#include "aluthge/bergman_space.hpp"

#include <algorithm>
#include <cmath>

#include "aluthge/errors.hpp"

namespace aluthge {

namespace {

void require_inside(cplx z, const char* what) {
  if (!(std::abs(z) < 1.0)) {
    throw DomainError(std::string(what) + ": point must lie in the open unit disk");
  }
}

}  // namespace

SpaceParams::SpaceParams(double alpha) : alpha_(alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw DomainError("SpaceParams: alpha must be finite and > -1");
  }
}

cplx inner_product(const CoeffVector& f, const CoeffVector& g) {
  if (!(f.space == g.space)) throw MismatchError("inner_product: vectors live on different spaces");
  const Eigen::Index n = std::min(f.coeffs.size(), g.coeffs.size());
  // Eigen's dot conjugates its first argument.
  return g.coeffs.head(n).dot(f.coeffs.head(n));
}

CoeffVector kernel_vector(cplx omega, std::size_t N, const SpaceParams& space) {
  require_inside(omega, "kernel_vector");
  if (N == 0) throw DomainError("kernel_vector: N must be at least 1");
  const WeightTable table(space.alpha(), N - 1);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(N));
  const cplx w = std::conj(omega);
  cplx power = 1.0;
  for (std::size_t n = 0; n < N; ++n) {
    v[static_cast<Eigen::Index>(n)] = power * table.basis_coeff(n);
    power *= w;
  }
  return {space, std::move(v)};
}

double kernel_norm_sq(cplx omega, const SpaceParams& space) {
  require_inside(omega, "kernel_norm_sq");
  const double r2 = std::norm(omega);
  return std::exp(-space.exponent() * std::log1p(-r2));
}

double kernel_tail_norm_sq(cplx omega, std::size_t N, const SpaceParams& space) {
  require_inside(omega, "kernel_tail_norm_sq");
  const double r2 = std::norm(omega);
  if (r2 == 0.0) return N == 0 ? 1.0 : 0.0;
  // When the tail carries a visible share of the mass, total minus head is
  // accurate. Otherwise the subtraction cancels and the tail is summed directly.
  const double total = kernel_norm_sq(omega, space);
  const double log_r2 = std::log(r2);
  double head = 0.0;
  double log_term = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    head += std::exp(log_term);
    const double x = static_cast<double>(n + 1);
    log_term += std::log1p((space.alpha() + 1.0) / x) + log_r2;
  }
  if (total - head > 1e-3 * total) return total - head;
  double tail = 0.0;
  for (std::size_t n = N;; ++n) {
    const double term = std::exp(log_term);
    tail += term;
    if (term < 1e-18 * tail || log_term < -800.0) break;
    const double x = static_cast<double>(n + 1);
    log_term += std::log1p((space.alpha() + 1.0) / x) + log_r2;
  }
  return tail;
}

cplx eval(const CoeffVector& f, cplx z) {
  require_inside(z, "eval");
  if (f.size() == 0) return 0.0;
  const WeightTable table(f.space.alpha(), f.size() - 1);
  cplx sum = 0.0;
  cplx power = 1.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    sum += f.coeffs[static_cast<Eigen::Index>(n)] * table.basis_coeff(n) * power;
    power *= z;
  }
  return sum;
}

}  // namespace aluthge

#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstddef>

#include "aluthge/special_functions.hpp"

namespace aluthge {

/// The weighted Bergman space A²_α(𝔻), α > −1.
class SpaceParams {
 public:
  explicit SpaceParams(double alpha);

  double alpha() const { return alpha_; }
  /// α + 2, the power carried by kernels and by every weight (·)^{α+2}.
  double exponent() const { return alpha_ + 2.0; }

  friend bool operator==(const SpaceParams&, const SpaceParams&) = default;

 private:
  double alpha_;
};

/// Coordinates against the orthonormal basis eₙ(z) = basis_coeff(n)·zⁿ.
struct CoeffVector {
  SpaceParams space;
  Eigen::VectorXcd coeffs;

  std::size_t size() const { return static_cast<std::size_t>(coeffs.size()); }
  double norm_sq() const { return coeffs.squaredNorm(); }
};

/// ⟨f, g⟩ = Σ fₙ·conj(gₙ); the shorter vector is zero-padded.
cplx inner_product(const CoeffVector& f, const CoeffVector& g);

/// Truncation of K_ω to its first N coordinates: conj(ω)ⁿ·basis_coeff(n).
CoeffVector kernel_vector(cplx omega, std::size_t N, const SpaceParams& space);

/// ‖K_ω‖² = (1 − |ω|²)^{−(α+2)}.
double kernel_norm_sq(cplx omega, const SpaceParams& space);

/// Σ_{n ≥ N} |coordinate n of K_ω|², the mass a length-N truncation drops.
double kernel_tail_norm_sq(cplx omega, std::size_t N, const SpaceParams& space);

/// Kernels this close to the circle decay slowly; reports mark them.
inline bool kernel_near_boundary(cplx omega) { return std::abs(omega) > 0.95; }

/// f(z) = Σ coordₙ·eₙ(z) for |z| < 1.
cplx eval(const CoeffVector& f, cplx z);

}  // namespace aluthge

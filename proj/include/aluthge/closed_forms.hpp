#pragma once

// Closed-form members of the weighted LFT family built from (n, a, α) for
// φ(z) = az + (1−a) and its dual σ(z) = az/(1 − (1−a)z). These are the
// references the symbolic iteration and the truncations are checked against.
//
// The stated coefficients contain (1+a)ⁿ, 2ⁿaⁿ and 2ⁿ. Each formula is divided
// through by its dominant power, leaving u = (2a/(1+a))ⁿ for the C_φ orbit and
// v = ((1+a)/2)ⁿ for the C_φ* orbit; both lie in (0, 1] so nothing overflows.

#include <complex>
#include <cstddef>

#include "aluthge/wlft.hpp"

namespace aluthge {

struct PaperScenario {
  double a;
  double alpha;
  std::size_t n = 0;

  /// Throws DomainError unless 0 < a < 1 and α > −1.
  void validate() const;
  SpaceParams space() const { return SpaceParams(alpha); }
};

/// Iterates beyond this are reported as numerically degenerate.
inline constexpr std::size_t kIterateCap = 64;

/// C_φ: (1, [[a, 1−a], [0, 1]]).
WeightedLFT c_phi(const PaperScenario& sc);

struct PolarParts {
  WeightedLFT modulus;  // |C_φ|
  WeightedLFT unitary;  // U in the T·C form
};

/// |C_φ| and U of the polar decomposition C_φ = U|C_φ|; n is ignored.
PolarParts polar_parts(const PaperScenario& sc);

/// C_ρ·T_h with h = ((uz+v)/k)^{α+2}, rewritten as T_{h∘ρ}C_ρ. Requires
/// h∘ρ to have the family shape, i.e. u·p + v·r = 0 for ρ = [[p,q],[r,s]].
WeightedLFT ct_form(const SpaceParams& space, const Mobius2& rho, cplx u, cplx v, cplx k);

/// U written as C_ρT_h with ρ = ((1+a)z+(1−a))/((1−a)z+(1+a)) and
/// h = (((a−1)z+(1+a))/(2√a))^{α+2}.
WeightedLFT unitary_ct_form(const PaperScenario& sc);

/// The unitary C_ρT_h with ρ = ((e^s+1)z+e^s−1)/((e^s−1)z+e^s+1) and
/// h = (((1−e^s)z+e^s+1)/(2e^{s/2}))^{α+2}, s > 0.
WeightedLFT unitary_from_s(const SpaceParams& space, double s);

/// σ_s(z) = e^{−s}z + 1 − e^{−s}; C_{σ_s} is c_phi with a = e^{−s}.
WeightedLFT c_sigma_s(const SpaceParams& space, double s);

/// n-th Aluthge iterate of C_φ, T_f C_ψ.
WeightedLFT iterate_symbols(const PaperScenario& sc);

/// T_F C_Ψ, whose adjoint is the n-th Aluthge iterate of C_φ.
WeightedLFT iterate_adjoint_form(const PaperScenario& sc);

/// n-th Aluthge iterate of C_φ*, T_g C_θ.
WeightedLFT adjoint_iterate_symbols(const PaperScenario& sc);

/// T_G C_Θ, whose adjoint is the n-th Aluthge iterate of C_φ*.
WeightedLFT adjoint_iterate_adjoint_form(const PaperScenario& sc);

/// U′ = T_{(2√a/(−(1−a)z+(1+a)))^{α+2}} C_{((1+a)z−(1−a))/(−(1−a)z+(1+a))}.
WeightedLFT unitary_prime(const PaperScenario& sc);

/// a^{−α/2}·U′, the strong limit of a·(C_φ*)~⁽ⁿ⁾.
WeightedLFT sot_limit_element(const PaperScenario& sc);

/// a^{−(α+2)/2}, the norm of every iterate.
double norm_value(const PaperScenario& sc);

/// f(0) of the n-th iterate: (2^{n+1}aⁿ/((1+a)((1−a)(1+a)^{n−1}+2ⁿaⁿ)))^{α+2}.
double iterate_f0(const PaperScenario& sc);

/// g(0) of the n-th iterate of C_φ*: the same with 2ⁿaⁿ replaced by 2ⁿ.
double adjoint_iterate_g0(const PaperScenario& sc);

/// ‖C̃⁽ⁿ⁾K_ω‖² as the explicit rational expression in t = 2a/(1+a):
/// (tⁿ / ((1−a−atⁿ)|ω|² + (atⁿ+1−a) − 2(1−a)Re ω))^{α+2}.
double sot_closed_norm_sq(const PaperScenario& sc, cplx omega);

/// (−a|ω|² + a + (1−a)(|ω|−1)²/tⁿ)^{−(α+2)}, an upper bound for the above.
double sot_upper_bound(const PaperScenario& sc, cplx omega);

/// True when n exceeds kIterateCap.
inline bool iterate_degenerate(const PaperScenario& sc) { return sc.n > kIterateCap; }

}  // namespace aluthge

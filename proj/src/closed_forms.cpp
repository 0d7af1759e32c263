#include "aluthge/closed_forms.hpp"

#include <algorithm>
#include <cmath>

#include "aluthge/errors.hpp"

namespace aluthge {

namespace {

// Shared shape of all four iterate formulas after dividing by the dominant
// power:  K = 2B,
//   den = −(1−a)(A + den_sign·B)z + (1−a)A + (1+a)B,
//   num = −((1−a)A − (1+a)B)z + (1−a)(A + num_sign·B),
// with f = (K/den)^{α+2} and ψ = num/den. The frame entries are the half-sums
// and half-differences of den and num at z = ±1, expanded by hand so that
// small entries are never formed as differences of O(1) quantities.
WeightedLFT from_pieces(const PaperScenario& sc, double A, double B, double den_sign, double num_sign) {
  const double a = sc.a;
  const double fa = B * ((1.0 + a) + 0.5 * (1.0 - a) * (num_sign - den_sign));
  const double fb = 2.0 * (1.0 - a) * A + 0.5 * (1.0 - a) * (den_sign + num_sign) * B;
  const double fc = -0.5 * (1.0 - a) * (den_sign + num_sign) * B;
  const double fd = B * ((1.0 + a) + 0.5 * (1.0 - a) * (den_sign - num_sign));
  const double lambda = std::pow(2.0 * B, sc.space().exponent());
  return WeightedLFT::from_frame(sc.space(), lambda, {fa, fb, fc, fd});
}

// u = (2a/(1+a))ⁿ
double u_power(const PaperScenario& sc) { return std::pow(2.0 * sc.a / (1.0 + sc.a), double(sc.n)); }

// v = ((1+a)/2)ⁿ
double v_power(const PaperScenario& sc) { return std::pow((1.0 + sc.a) / 2.0, double(sc.n)); }

}  // namespace

void PaperScenario::validate() const {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("scenario: a must lie in (0, 1)");
  if (!(alpha > -1.0)) throw DomainError("scenario: alpha must exceed -1");
}

WeightedLFT c_phi(const PaperScenario& sc) {
  sc.validate();
  // Frame form keeps the structural zero exact; the disk form would leave
  // a + (1−a) − 1 as a rounding residue in the lower-left entry.
  return WeightedLFT::from_frame(sc.space(), 1.0, {1.0, 1.0 - sc.a, 0.0, sc.a});
}

PolarParts polar_parts(const PaperScenario& sc) {
  sc.validate();
  const double a = sc.a;
  const double lambda = std::pow(2.0 * std::sqrt(a), sc.space().exponent());
  WeightedLFT modulus(sc.space(), lambda, {-1.0 + 3.0 * a, 1.0 - a, -(1.0 - a), 1.0 + a});
  WeightedLFT unitary(sc.space(), lambda, {1.0 + a, 1.0 - a, 1.0 - a, 1.0 + a});
  return {modulus, unitary};
}

WeightedLFT ct_form(const SpaceParams& space, const Mobius2& rho, cplx u, cplx v, cplx k) {
  // u·ρ + v = ((up+vr)z + (uq+vs))/(rz+s)
  const cplx lead = u * rho.a + v * rho.c;
  const cplx konst = u * rho.b + v * rho.d;
  const double ref = std::max({std::abs(u * rho.a), std::abs(v * rho.c), std::abs(konst)});
  if (std::abs(lead) > 1e-13 * ref) throw DomainError("ct_form: weight does not reduce to family shape");
  const double beta = space.exponent();
  const cplx ratio = konst / k;
  const cplx lambda = std::exp(beta * std::log(ratio));
  WeightedLFT w(space, lambda, rho);
  // The principal power of (ratio/(rz+s)) must split into the two principal powers.
  const cplx d0 = rho.d;
  const double gap = std::arg(ratio) - std::arg(d0) - std::arg(ratio / d0);
  if (std::abs(gap) > 1e-9) throw BranchError("ct_form: weight crosses the branch cut");
  return w;
}

WeightedLFT unitary_ct_form(const PaperScenario& sc) {
  sc.validate();
  const double a = sc.a;
  return ct_form(sc.space(), {1.0 + a, 1.0 - a, 1.0 - a, 1.0 + a}, a - 1.0, 1.0 + a, 2.0 * std::sqrt(a));
}

WeightedLFT unitary_from_s(const SpaceParams& space, double s) {
  if (!(s > 0.0)) throw DomainError("unitary_from_s: s must be positive");
  const double es = std::exp(s);
  return ct_form(space, {es + 1.0, es - 1.0, es - 1.0, es + 1.0}, 1.0 - es, es + 1.0,
                 2.0 * std::exp(0.5 * s));
}

WeightedLFT c_sigma_s(const SpaceParams& space, double s) {
  if (!(s > 0.0)) throw DomainError("c_sigma_s: s must be positive");
  return WeightedLFT::from_frame(space, 1.0, {1.0, -std::expm1(-s), 0.0, std::exp(-s)});
}

WeightedLFT iterate_symbols(const PaperScenario& sc) {
  sc.validate();
  return from_pieces(sc, 1.0, u_power(sc), -1.0, +1.0);
}

WeightedLFT iterate_adjoint_form(const PaperScenario& sc) {
  sc.validate();
  return from_pieces(sc, 1.0, u_power(sc), +1.0, -1.0);
}

WeightedLFT adjoint_iterate_symbols(const PaperScenario& sc) {
  sc.validate();
  return from_pieces(sc, v_power(sc), 1.0, +1.0, -1.0);
}

WeightedLFT adjoint_iterate_adjoint_form(const PaperScenario& sc) {
  sc.validate();
  return from_pieces(sc, v_power(sc), 1.0, -1.0, +1.0);
}

WeightedLFT unitary_prime(const PaperScenario& sc) {
  sc.validate();
  const double a = sc.a;
  const double lambda = std::pow(2.0 * std::sqrt(a), sc.space().exponent());
  return WeightedLFT(sc.space(), lambda, {1.0 + a, -(1.0 - a), -(1.0 - a), 1.0 + a});
}

WeightedLFT sot_limit_element(const PaperScenario& sc) {
  return scale(unitary_prime(sc), std::pow(sc.a, -0.5 * sc.alpha));
}

double norm_value(const PaperScenario& sc) {
  sc.validate();
  return std::pow(sc.a, -0.5 * sc.space().exponent());
}

double iterate_f0(const PaperScenario& sc) {
  sc.validate();
  const double a = sc.a, u = u_power(sc);
  // Numerator and denominator divided by (1+a)ⁿ.
  return std::pow(2.0 * u / ((1.0 - a) + (1.0 + a) * u), sc.space().exponent());
}

double adjoint_iterate_g0(const PaperScenario& sc) {
  sc.validate();
  const double a = sc.a, v = v_power(sc);
  // Divided by 2ⁿ.
  return std::pow(2.0 / ((1.0 - a) * v + (1.0 + a)), sc.space().exponent());
}

double sot_closed_norm_sq(const PaperScenario& sc, cplx omega) {
  sc.validate();
  const double a = sc.a;
  const double tn = std::pow(2.0 * a / (1.0 + a), double(sc.n));
  const double den =
      (1.0 - a - a * tn) * std::norm(omega) + (a * tn + 1.0 - a) - 2.0 * (1.0 - a) * omega.real();
  return std::pow(tn / den, sc.space().exponent());
}

double sot_upper_bound(const PaperScenario& sc, cplx omega) {
  sc.validate();
  const double a = sc.a;
  const double tn = std::pow(2.0 * a / (1.0 + a), double(sc.n));
  const double m = std::abs(omega);
  const double den = -a * m * m + a + (1.0 - a) * (m - 1.0) * (m - 1.0) / tn;
  return std::pow(den, -sc.space().exponent());
}

}  // namespace aluthge

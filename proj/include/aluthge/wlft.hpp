#pragma once

// Exact algebra of weighted linear-fractional composition operators
//
//     W = T_f C_ψ,   ψ(z) = (pz+q)/(rz+s),   f(z) = λ/(rz+s)^{α+2}
//
// on A²_α. The family is closed under products and Hilbert-space adjoints, so
// moduli, polar factors and Aluthge transforms of its members can be computed
// without truncation whenever T*T is recognised as a scalar multiple of the
// semigroup A_t = T_{f_t}C_{φ_t}.
//
// Storage. The Möbius matrix is kept conjugated into the half-plane frame
// w = (1+z)/(1−z). Every operator in the C_φ orbit fixes z = 1, which becomes
// w = ∞, so those matrices are upper triangular there and the semigroup is
// the pure translation w ↦ w + 2t. Products of upper triangular matrices keep
// the structural zero exactly; the disk-coordinate matrices of high iterates
// are nearly rank one and products of them cancel catastrophically.
//
// Gauge. (λ, M) and (λ·k^{α+2}, k·M) denote the same operator for k > 0. The
// canonical representative has |det M| = 1. Complex rescaling is never used,
// so the principal branch of (rz+s)^{α+2} stays unambiguous.

#include <complex>
#include <optional>

#include "aluthge/bergman_space.hpp"

namespace aluthge {

/// 2×2 complex matrix [[a, b], [c, d]], read as z ↦ (az+b)/(cz+d).
struct Mobius2 {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  cplx det() const { return a * d - b * c; }
  cplx apply(cplx z) const { return (a * z + b) / (c * z + d); }
  Mobius2 scaled(double k) const { return {a * k, b * k, c * k, d * k}; }
  Mobius2 adjugate() const { return {d, -b, -c, a}; }
  double max_abs() const;
  bool is_real() const;

  friend Mobius2 operator*(const Mobius2& x, const Mobius2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
};

/// Disk matrix [[p,q],[r,s]] → half-plane frame C·M·C⁻¹, C = [[1,1],[−1,1]].
Mobius2 to_frame(const Mobius2& disk);
/// Inverse of to_frame.
Mobius2 to_disk(const Mobius2& frame);

enum class SelfMapStatus {
  kInterior,         // ψ(𝔻̄) ⊂ 𝔻
  kTouchesBoundary,  // |ψ| = 1 at isolated boundary points
  kBoundaryArc,      // |ψ| = 1 on the whole sampled circle (automorphisms)
  kNotSelfMap,
};

const char* to_string(SelfMapStatus status);

namespace detail {
/// Unvalidated element used for intermediate products (for instance |T|⁻¹,
/// which is unbounded and whose weight is not zero-free on 𝔻̄).
struct FormalLFT {
  SpaceParams space;
  cplx lambda;
  Mobius2 frame;
};
FormalLFT canonical(FormalLFT x);
}  // namespace detail

class WeightedLFT {
 public:
  /// From disk coordinates. Throws DomainError when det M = 0, λ = 0, or the
  /// denominator rz+s meets (−∞, 0] on the closed disk.
  WeightedLFT(SpaceParams space, cplx lambda, const Mobius2& disk);

  static WeightedLFT from_frame(SpaceParams space, cplx lambda, const Mobius2& frame);
  static WeightedLFT from_formal(const detail::FormalLFT& formal);
  static WeightedLFT identity(SpaceParams space);

  const SpaceParams& space() const { return space_; }
  cplx lambda() const { return lambda_; }
  const Mobius2& frame_matrix() const { return frame_; }
  /// Canonical [[p,q],[r,s]].
  Mobius2 disk_matrix() const { return to_disk(frame_); }

  /// Denominator rz+s evaluated without forming r and s when z = ±1.
  cplx denominator(cplx z) const;
  /// f(z), principal branch.
  cplx weight(cplx z) const;
  /// ψ(z).
  cplx map(cplx z) const;

  SelfMapStatus self_map_status(int samples = 720) const;

  detail::FormalLFT formal() const { return {space_, lambda_, frame_}; }

 private:
  WeightedLFT(const detail::FormalLFT& canonical_formal);

  SpaceParams space_;
  cplx lambda_;
  Mobius2 frame_;
};

/// c·A_t with A_t = T_{f_t}C_{φ_t}; disk matrix I + t·[[−1,1],[−1,1]].
struct SemigroupElement {
  double scalar = 1.0;
  double t = 0.0;
};

WeightedLFT to_element(const SemigroupElement& e, const SpaceParams& space);

/// Operator product W1·W2 = T_{f1·(f2∘ψ1)} C_{ψ2∘ψ1}; matrix M2·M1.
/// Throws MismatchError on differing α and BranchError when the weights'
/// arguments wrap past ±π.
WeightedLFT compose(const WeightedLFT& w1, const WeightedLFT& w2);

/// Hilbert-space adjoint: (conj λ, [[p̄, −r̄], [−q̄, s̄]]).
WeightedLFT adjoint(const WeightedLFT& w);

/// Multiplies the operator by k ≠ 0.
WeightedLFT scale(const WeightedLFT& w, cplx k);

/// Recognises W = c·A_t. Returns nullopt when the matrix is not of that shape
/// and throws DomainError when it is but λ is not a positive real.
std::optional<SemigroupElement> recognize_semigroup(const WeightedLFT& w, double tol = 1e-10);

/// (c·A_t)^p = c^p·A_{pt}; requires p·t > −1/2 so the result stays bounded.
SemigroupElement semigroup_power(const SemigroupElement& e, double p);

struct SymbolicPolar {
  SemigroupElement gram;  // T*T = c·A_t
  WeightedLFT modulus;    // |T| = c^{1/2}·A_{t/2}
  WeightedLFT unitary;    // U = T·|T|⁻¹
};

/// Polar decomposition inside the family. Throws NotInPolarFamily unless T*T
/// is recognised as c·A_t with t ≥ 0 and T·|T|⁻¹ is again a valid element.
SymbolicPolar polar_symbolic(const WeightedLFT& w);

/// |T|^{1/2}·U·|T|^{1/2}, computed entirely within the family.
WeightedLFT aluthge_step(const WeightedLFT& w);

/// Entrywise agreement of canonical forms. Each difference is measured
/// against max(1, largest entry), so the test is scale aware for iterates
/// whose canonical matrices grow geometrically.
bool equals(const WeightedLFT& w1, const WeightedLFT& w2, double tol = 1e-12);

/// Largest scaled entrywise difference used by equals().
double distance(const WeightedLFT& w1, const WeightedLFT& w2);

struct SymbolValue {
  cplx weight;  // f(z)
  cplx map;     // ψ(z)
};

/// (f(z), ψ(z)) for |z| ≤ 1. Throws DomainError for |z| > 1.
SymbolValue symbol_eval(const WeightedLFT& w, cplx z);

struct KernelImage {
  cplx weight;  // conj f(ω)
  cplx point;   // ψ(ω)
  double gap;   // 1 − |ψ(ω)|², formed without cancellation as ψ(ω) → 𝕋
};

/// W*K_ω = conj(f(ω))·K_{ψ(ω)}. Throws DomainError unless |ω| < 1 and |ψ(ω)| < 1.
KernelImage adjoint_apply_kernel(const WeightedLFT& w, cplx omega);

/// ‖W*K_ω‖² = |f(ω)|²·(1 − |ψ(ω)|²)^{−(α+2)}.
double adjoint_kernel_norm_sq(const WeightedLFT& w, cplx omega);

bool is_unitary(const WeightedLFT& w, double tol = 1e-12);

}  // namespace aluthge

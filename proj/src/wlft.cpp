#include "aluthge/wlft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aluthge/errors.hpp"

namespace aluthge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool finite(const Mobius2& m) { return finite(m.a) && finite(m.b) && finite(m.c) && finite(m.d); }

// rz+s and pz+q written through the frame entries; exact at z = ±1.
cplx frame_den(const Mobius2& f, cplx z) {
  return 0.5 * ((f.a + f.c) * (1.0 + z) + (f.b + f.d) * (1.0 - z));
}

cplx frame_num(const Mobius2& f, cplx z) {
  return 0.5 * ((f.a - f.c) * (1.0 + z) + (f.b - f.d) * (1.0 - z));
}

// Distance from s to the closed ray (−∞, 0].
double dist_to_cut(cplx s) { return s.real() >= 0.0 ? std::abs(s) : std::abs(s.imag()); }

// rz+s is zero-free and off the cut on the closed disk.
bool denominator_cut_free(const Mobius2& frame) {
  if (frame.is_real()) {
    // The image of 𝔻̄ is the real segment [s−|r|, s+|r|]; its endpoints are D(±1).
    return (frame.a + frame.c).real() > 0.0 && (frame.b + frame.d).real() > 0.0;
  }
  const cplx r = 0.5 * ((frame.a + frame.c) - (frame.b + frame.d));
  const cplx s = 0.5 * ((frame.a + frame.c) + (frame.b + frame.d));
  return dist_to_cut(s) > std::abs(r);
}

void validate(const detail::FormalLFT& x) {
  if (!finite(x.lambda) || !finite(x.frame)) throw DomainError("weighted LFT: non-finite entries");
  if (x.lambda == cplx(0.0)) throw DomainError("weighted LFT: zero scalar");
  if (x.frame.det() == cplx(0.0)) throw DomainError("weighted LFT: singular Möbius matrix");
  if (!denominator_cut_free(x.frame))
    throw DomainError("weighted LFT: denominator meets (-inf, 0] on the closed disk");
}

detail::FormalLFT formal_product(const detail::FormalLFT& w1, const detail::FormalLFT& w2) {
  if (!(w1.space == w2.space)) throw MismatchError("compose: differing alpha");
  return detail::canonical({w1.space, w1.lambda * w2.lambda, w2.frame * w1.frame});
}

// Number of turns by which arg d1 + arg(d2∘ψ1) exceeds arg d12. Non-zero
// means the product of principal powers is not the principal power of the
// product, and λ must absorb e^{−2πikβ}.
int branch_turns(const WeightedLFT& w1, const WeightedLFT& w2, const Mobius2& product_frame) {
  constexpr int kSamples = 16;
  std::optional<int> turns;
  for (int k = 0; k <= kSamples; ++k) {
    const cplx z = k == kSamples ? cplx(0.0) : std::polar(1.0, kTwoPi * k / kSamples);
    const cplx d1 = w1.denominator(z);
    const cplx psi1 = frame_num(w1.frame_matrix(), z) / d1;
    if (std::abs(psi1) > 1.0 + 1e-9) continue;
    const cplx d2 = w2.denominator(psi1);
    const cplx d12 = frame_den(product_frame, z);
    const double diff = std::arg(d1) + std::arg(d2) - std::arg(d12);
    const int k_here = static_cast<int>(std::lround(diff / kTwoPi));
    // The residual is rounding only; it grows with the conditioning of the
    // frames, so the test merely requires the turn count to be unambiguous.
    if (std::abs(diff - kTwoPi * k_here) > kTwoPi / 16)
      throw BranchError("compose: weight arguments do not combine");
    if (turns && *turns != k_here) throw BranchError("compose: branch turn count varies over the disk");
    turns = k_here;
  }
  return turns.value_or(0);
}

}  // namespace

double Mobius2::max_abs() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

bool Mobius2::is_real() const {
  return a.imag() == 0.0 && b.imag() == 0.0 && c.imag() == 0.0 && d.imag() == 0.0;
}

Mobius2 to_frame(const Mobius2& m) {
  const cplx pr = m.a + m.c, qs = m.b + m.d, rp = m.c - m.a, sq = m.d - m.b;
  return {0.5 * (pr + qs), 0.5 * (qs - pr), 0.5 * (rp + sq), 0.5 * (sq - rp)};
}

Mobius2 to_disk(const Mobius2& f) {
  const cplx ac = f.a - f.c, bd = f.b - f.d, apc = f.a + f.c, bpd = f.b + f.d;
  return {0.5 * (ac - bd), 0.5 * (ac + bd), 0.5 * (apc - bpd), 0.5 * (apc + bpd)};
}

const char* to_string(SelfMapStatus status) {
  switch (status) {
    case SelfMapStatus::kInterior: return "interior";
    case SelfMapStatus::kTouchesBoundary: return "touches_boundary";
    case SelfMapStatus::kBoundaryArc: return "boundary_arc";
    case SelfMapStatus::kNotSelfMap: return "not_self_map";
  }
  return "unknown";
}

namespace detail {

FormalLFT canonical(FormalLFT x) {
  const double det_abs = std::abs(x.frame.det());
  if (!(det_abs > 0.0) || !std::isfinite(det_abs))
    throw DomainError("weighted LFT: determinant is zero or not finite");
  const double k = 1.0 / std::sqrt(det_abs);
  x.frame = x.frame.scaled(k);
  x.lambda *= std::pow(k, x.space.exponent());
  return x;
}

}  // namespace detail

WeightedLFT::WeightedLFT(const detail::FormalLFT& canonical_formal)
    : space_(canonical_formal.space), lambda_(canonical_formal.lambda), frame_(canonical_formal.frame) {
  validate(canonical_formal);
}

WeightedLFT::WeightedLFT(SpaceParams space, cplx lambda, const Mobius2& disk)
    : WeightedLFT(from_frame(space, lambda, to_frame(disk))) {}

WeightedLFT WeightedLFT::from_frame(SpaceParams space, cplx lambda, const Mobius2& frame) {
  return from_formal({space, lambda, frame});
}

WeightedLFT WeightedLFT::from_formal(const detail::FormalLFT& formal) {
  if (!finite(formal.frame)) throw DomainError("weighted LFT: non-finite entries");
  return WeightedLFT(detail::canonical(formal));
}

WeightedLFT WeightedLFT::identity(SpaceParams space) { return from_frame(space, 1.0, Mobius2{}); }

cplx WeightedLFT::denominator(cplx z) const { return frame_den(frame_, z); }

cplx WeightedLFT::weight(cplx z) const {
  return lambda_ * std::exp(-space_.exponent() * std::log(denominator(z)));
}

cplx WeightedLFT::map(cplx z) const { return frame_num(frame_, z) / denominator(z); }

SelfMapStatus WeightedLFT::self_map_status(int samples) const {
  constexpr double kEdge = 1e-9;
  int on_circle = 0;
  for (int k = 0; k < samples; ++k) {
    const double m = std::abs(map(std::polar(1.0, kTwoPi * k / samples)));
    if (m > 1.0 + kEdge) return SelfMapStatus::kNotSelfMap;
    if (m > 1.0 - kEdge) ++on_circle;
  }
  if (on_circle == samples) return SelfMapStatus::kBoundaryArc;
  return on_circle > 0 ? SelfMapStatus::kTouchesBoundary : SelfMapStatus::kInterior;
}

WeightedLFT to_element(const SemigroupElement& e, const SpaceParams& space) {
  if (!(e.scalar > 0.0)) throw DomainError("semigroup element: scalar must be positive");
  return WeightedLFT::from_frame(space, e.scalar, {1.0, 2.0 * e.t, 0.0, 1.0});
}

WeightedLFT compose(const WeightedLFT& w1, const WeightedLFT& w2) {
  detail::FormalLFT product = formal_product(w1.formal(), w2.formal());
  const double beta = w1.space().exponent();
  if (beta != std::round(beta)) {
    const int turns = branch_turns(w1, w2, product.frame);
    if (turns != 0) product.lambda *= std::polar(1.0, kTwoPi * turns * beta);
  }
  return WeightedLFT::from_formal(product);
}

WeightedLFT adjoint(const WeightedLFT& w) {
  const Mobius2& f = w.frame_matrix();
  return WeightedLFT::from_frame(w.space(), std::conj(w.lambda()),
                                 {std::conj(f.d), std::conj(f.b), std::conj(f.c), std::conj(f.a)});
}

WeightedLFT scale(const WeightedLFT& w, cplx k) {
  return WeightedLFT::from_frame(w.space(), w.lambda() * k, w.frame_matrix());
}

std::optional<SemigroupElement> recognize_semigroup(const WeightedLFT& w, double tol) {
  const Mobius2& f = w.frame_matrix();
  const double scale_ref = std::max(1.0, std::abs(f.b));
  const double off = std::max({std::abs(f.a - 1.0), std::abs(f.d - 1.0), std::abs(f.c),
                               std::abs(f.b.imag())});
  if (off > tol * scale_ref) return std::nullopt;
  const cplx lam = w.lambda();
  if (!(lam.real() > 0.0) || std::abs(lam.imag()) > tol * std::abs(lam))
    throw DomainError("recognize_semigroup: scalar is not a positive real");
  return SemigroupElement{lam.real(), 0.5 * f.b.real()};
}

SemigroupElement semigroup_power(const SemigroupElement& e, double p) {
  if (!(e.scalar > 0.0)) throw DomainError("semigroup_power: scalar must be positive");
  if (!(p * e.t > -0.5)) throw DomainError("semigroup_power: p*t must exceed -1/2");
  return {std::pow(e.scalar, p), p * e.t};
}

SymbolicPolar polar_symbolic(const WeightedLFT& w) {
  std::optional<SemigroupElement> gram;
  try {
    gram = recognize_semigroup(compose(adjoint(w), w));
  } catch (const DomainError& e) {
    throw NotInPolarFamily(std::string("polar: ") + e.what());
  }
  if (!gram || gram->t < 0.0) throw NotInPolarFamily("polar: T*T is not c*A_t with t >= 0");
  const SpaceParams& space = w.space();
  WeightedLFT modulus = to_element(semigroup_power(*gram, 0.5), space);
  // |T|⁻¹ is unbounded, so U = T·|T|⁻¹ is formed without validating the inverse.
  const detail::FormalLFT inverse{space, 1.0 / std::sqrt(gram->scalar), {1.0, -gram->t, 0.0, 1.0}};
  const detail::FormalLFT u_formal = formal_product(w.formal(), inverse);
  std::optional<WeightedLFT> unitary;
  try {
    unitary = WeightedLFT::from_formal(u_formal);
  } catch (const DomainError& e) {
    throw NotInPolarFamily(std::string("polar: T|T|^-1 is not a family element: ") + e.what());
  }
  if (!equals(compose(*unitary, modulus), w, 1e-10))
    throw NotInPolarFamily("polar: U|T| does not reproduce T");
  return {*gram, modulus, *unitary};
}

WeightedLFT aluthge_step(const WeightedLFT& w) {
  const SymbolicPolar polar = polar_symbolic(w);
  const WeightedLFT root = to_element(semigroup_power(polar.gram, 0.25), w.space());
  return compose(compose(root, polar.unitary), root);
}

double distance(const WeightedLFT& w1, const WeightedLFT& w2) {
  if (!(w1.space() == w2.space())) return INFINITY;
  const Mobius2 m1 = w1.disk_matrix(), m2 = w2.disk_matrix();
  const double ref_m = std::max({1.0, m1.max_abs(), m2.max_abs()});
  const double dm = std::max({std::abs(m1.a - m2.a), std::abs(m1.b - m2.b), std::abs(m1.c - m2.c),
                              std::abs(m1.d - m2.d)});
  const double ref_l = std::max({1.0, std::abs(w1.lambda()), std::abs(w2.lambda())});
  return std::max(dm / ref_m, std::abs(w1.lambda() - w2.lambda()) / ref_l);
}

bool equals(const WeightedLFT& w1, const WeightedLFT& w2, double tol) {
  return distance(w1, w2) <= tol;
}

SymbolValue symbol_eval(const WeightedLFT& w, cplx z) {
  if (!(std::abs(z) <= 1.0 + 1e-12)) throw DomainError("symbol_eval: |z| > 1");
  const cplx d = w.denominator(z);
  if (d == cplx(0.0)) throw DomainError("symbol_eval: singular denominator");
  return {w.weight(z), frame_num(w.frame_matrix(), z) / d};
}

KernelImage adjoint_apply_kernel(const WeightedLFT& w, cplx omega) {
  if (!(std::abs(omega) < 1.0)) throw DomainError("adjoint_apply_kernel: |omega| >= 1");
  const SymbolValue v = symbol_eval(w, omega);
  if (!(std::abs(v.map) < 1.0)) throw DomainError("adjoint_apply_kernel: |psi(omega)| >= 1");
  // |D|² − |N|² = Re((D−N)·conj(D+N)) with D−N = c'(1+z) + d'(1−z) and
  // D+N = a'(1+z) + b'(1−z) in the frame.
  const Mobius2& f = w.frame_matrix();
  const cplx plus = 1.0 + omega, minus = 1.0 - omega;
  const cplx diff = f.c * plus + f.d * minus;
  const cplx sum = f.a * plus + f.b * minus;
  const double gap = (diff * std::conj(sum)).real() / std::norm(w.denominator(omega));
  if (!(gap > 0.0)) throw DomainError("adjoint_apply_kernel: |psi(omega)| >= 1");
  return {std::conj(v.weight), v.map, gap};
}

double adjoint_kernel_norm_sq(const WeightedLFT& w, cplx omega) {
  const KernelImage k = adjoint_apply_kernel(w, omega);
  return std::norm(k.weight) * std::exp(-w.space().exponent() * std::log(k.gap));
}

bool is_unitary(const WeightedLFT& w, double tol) {
  const WeightedLFT id = WeightedLFT::identity(w.space());
  return equals(compose(adjoint(w), w), id, tol) && equals(compose(w, adjoint(w)), id, tol);
}

}  // namespace aluthge

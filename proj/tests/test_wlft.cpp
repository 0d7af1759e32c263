#include <doctest.h>

#include <cmath>
#include <random>

#include "aluthge/closed_forms.hpp"
#include "aluthge/errors.hpp"
#include "aluthge/matrix_engine.hpp"
#include "aluthge/wlft.hpp"
#include "support.hpp"

using namespace aluthge;
using testing::probe_points;
using testing::random_element;
using testing::rel_err;

namespace {

// Plain 2×2 product, independent of Mobius2::operator*.
Mobius2 mul(const Mobius2& x, const Mobius2& y) {
  Mobius2 r;
  const cplx X[2][2] = {{x.a, x.b}, {x.c, x.d}};
  const cplx Y[2][2] = {{y.a, y.b}, {y.c, y.d}};
  cplx R[2][2] = {};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) R[i][j] += X[i][k] * Y[k][j];
  return {R[0][0], R[0][1], R[1][0], R[1][1]};
}

}  // namespace

TEST_CASE("frame conjugation round trip") {
  const Mobius2 m{cplx(0.3, 0.1), -0.7, cplx(0.2, -0.5), 1.9};
  const Mobius2 back = to_disk(to_frame(m));
  CHECK(std::abs(back.a - m.a) < 1e-15);
  CHECK(std::abs(back.b - m.b) < 1e-15);
  CHECK(std::abs(back.c - m.c) < 1e-15);
  CHECK(std::abs(back.d - m.d) < 1e-15);
  // C·M·C⁻¹ with C = [[1,1],[−1,1]], C⁻¹ = ½[[1,−1],[1,1]]
  const Mobius2 direct = mul(mul(Mobius2{1.0, 1.0, -1.0, 1.0}, m), Mobius2{0.5, -0.5, 0.5, 0.5});
  const Mobius2 f = to_frame(m);
  CHECK(std::abs(f.a - direct.a) < 1e-15);
  CHECK(std::abs(f.b - direct.b) < 1e-15);
  CHECK(std::abs(f.c - direct.c) < 1e-15);
  CHECK(std::abs(f.d - direct.d) < 1e-15);
}

TEST_CASE("constructor canonicalises and validates") {
  const SpaceParams space(0.0);
  const WeightedLFT w(space, 1.0, Mobius2{0.5, 0.5, 0.0, 1.0});
  CHECK(std::abs(std::abs(w.disk_matrix().det()) - 1.0) < 1e-15);
  // Same operator after rescaling by k: λ·k^{α+2}.
  const WeightedLFT w3(space, 9.0, Mobius2{1.5, 1.5, 0.0, 3.0});
  CHECK(equals(w, w3));
  CHECK_THROWS_AS(WeightedLFT(space, 0.0, Mobius2{1.0, 0.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(WeightedLFT(space, 1.0, Mobius2{1.0, 2.0, 0.5, 1.0}), DomainError);
  // rz + s vanishes at z = −1.
  CHECK_THROWS_AS(WeightedLFT(space, 1.0, Mobius2{1.0, 0.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("symbol evaluation of C_phi and its stated adjoint") {
  const PaperScenario sc{0.4, 0.5, 0};
  const WeightedLFT w = c_phi(sc);
  for (cplx z : probe_points()) {
    const SymbolValue v = symbol_eval(w, z);
    CHECK(std::abs(v.weight - 1.0) < 1e-15);
    CHECK(std::abs(v.map - (0.4 * z + 0.6)) < 1e-15);
    const SymbolValue d = symbol_eval(adjoint(w), z);
    const cplx den = -0.6 * z + 1.0;
    CHECK(rel_err(d.weight, std::pow(den, -2.5)) < 1e-14);
    CHECK(std::abs(d.map - 0.4 * z / den) < 1e-15);
  }
  CHECK_THROWS_AS(symbol_eval(w, 1.1), DomainError);
}

TEST_CASE("compose agrees with pointwise products and composition") {
  std::mt19937_64 rng(7);
  for (double alpha : {-0.5, 0.0, 0.7, 1.0}) {
    const SpaceParams space(alpha);
    for (int trial = 0; trial < 40; ++trial) {
      const WeightedLFT w1 = random_element(rng, space);
      const WeightedLFT w2 = random_element(rng, space);
      const WeightedLFT w12 = compose(w1, w2);
      for (cplx z : probe_points()) {
        const SymbolValue v1 = symbol_eval(w1, z);
        const SymbolValue v2 = symbol_eval(w2, v1.map);
        const SymbolValue v12 = symbol_eval(w12, z);
        CHECK(rel_err(v12.map, v2.map) < 1e-11);
        CHECK(rel_err(v12.weight, v1.weight * v2.weight) < 1e-10);
      }
    }
  }
}

TEST_CASE("family properties on random elements") {
  std::mt19937_64 rng(20240601);
  for (double alpha : {-0.5, 0.0, 1.0}) {
    const SpaceParams space(alpha);
    for (int trial = 0; trial < 60; ++trial) {
      const WeightedLFT x = random_element(rng, space);
      const WeightedLFT y = random_element(rng, space);
      const WeightedLFT z = random_element(rng, space);
      CHECK(distance(compose(compose(x, y), z), compose(x, compose(y, z))) < 1e-10);
      CHECK(distance(adjoint(adjoint(x)), x) < 1e-14);
      CHECK(distance(adjoint(compose(x, y)), compose(adjoint(y), adjoint(x))) < 1e-10);
      CHECK(distance(compose(WeightedLFT::identity(space), x), x) < 1e-14);
    }
  }
}

TEST_CASE("adjoint matches the conjugate transpose of compressions") {
  std::mt19937_64 rng(11);
  for (double alpha : {-0.5, 0.0, 1.0}) {
    const SpaceParams space(alpha);
    for (int trial = 0; trial < 10; ++trial) {
      const WeightedLFT w = random_element(rng, space);
      const Eigen::MatrixXcd lhs = truncate(adjoint(w), 24).entries;
      const Eigen::MatrixXcd rhs = truncate(w, 24).entries.adjoint();
      CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm()));
    }
  }
}

TEST_CASE("adjoint of C_phi is the stated weighted composition") {
  for (double a : {0.25, 0.5, 0.75})
    for (double alpha : {-0.5, 0.0, 1.0}) {
      const SpaceParams space(alpha);
      const WeightedLFT stated(space, 1.0, Mobius2{a, 0.0, -(1.0 - a), 1.0});
      CHECK(distance(adjoint(c_phi({a, alpha, 0})), stated) < 1e-15);
    }
}

TEST_CASE("semigroup law and powers") {
  for (double alpha : {-0.5, 0.0, 1.0}) {
    const SpaceParams space(alpha);
    for (double t : {0.0, 0.2, 1.0, 3.0})
      for (double s : {0.1, 0.7, 2.0}) {
        const WeightedLFT prod = compose(to_element({1.0, t}, space), to_element({1.0, s}, space));
        CHECK(distance(prod, to_element({1.0, t + s}, space)) <= 1e-14);
        const auto rec = recognize_semigroup(prod);
        REQUIRE(rec.has_value());
        CHECK(rec->t == doctest::Approx(t + s).epsilon(1e-14));
        CHECK(rec->scalar == doctest::Approx(1.0).epsilon(1e-14));
      }
    // A_t·A_{−t} = I even though A_{−t} is not a self-map.
    const WeightedLFT back = to_element(semigroup_power({1.0, 0.4}, -1.0), space);
    CHECK(back.self_map_status() == SelfMapStatus::kNotSelfMap);
    CHECK(distance(compose(to_element({1.0, 0.4}, space), back), WeightedLFT::identity(space)) < 1e-15);
  }
  CHECK_THROWS_AS(semigroup_power({1.0, 1.0}, -0.6), DomainError);
}

TEST_CASE("powers of the gram operator of C_sigma_s") {
  // C_{σ_s}* C_{σ_s} = e^{s(α+2)}·A_t with t = e^s − 1, and its p-th power is
  // e^{ps(α+2)}·A_{pt}.
  for (double alpha : {-0.5, 0.0, 1.0}) {
    const SpaceParams space(alpha);
    const double beta = space.exponent();
    for (double s : {0.3, 1.0, 2.0}) {
      const WeightedLFT cs = c_sigma_s(space, s);
      const WeightedLFT gram = compose(adjoint(cs), cs);
      const auto g = recognize_semigroup(gram);
      REQUIRE(g.has_value());
      const double t = std::expm1(s);
      CHECK(g->scalar == doctest::Approx(std::exp(s * beta)).epsilon(1e-13));
      CHECK(g->t == doctest::Approx(t).epsilon(1e-13));
      for (double p : {0.5, 1.0, 2.0, 3.0}) {
        const SemigroupElement pw = semigroup_power(*g, p);
        CHECK(pw.scalar == doctest::Approx(std::exp(p * s * beta)).epsilon(1e-13));
        CHECK(pw.t == doctest::Approx(p * t).epsilon(1e-13));
      }
      // Integer powers by repeated products, and the square root squared.
      WeightedLFT cube = gram;
      for (int k = 1; k < 3; ++k) cube = compose(cube, gram);
      CHECK(distance(cube, to_element(semigroup_power(*g, 3.0), space)) < 1e-12 * std::exp(3 * s * beta));
      const WeightedLFT root = to_element(semigroup_power(*g, 0.5), space);
      CHECK(distance(compose(root, root), gram) < 1e-12 * std::exp(s * beta));
    }
  }
}

TEST_CASE("recognize rejects non-members") {
  const SpaceParams space(0.0);
  CHECK_FALSE(recognize_semigroup(c_phi({0.5, 0.0, 0})).has_value());
  CHECK_THROWS_AS(recognize_semigroup(scale(to_element({1.0, 0.5}, space), -1.0)), DomainError);
}

TEST_CASE("symbolic polar decomposition") {
  for (double a : {0.25, 0.5, 0.75})
    for (double alpha : {-0.5, 0.0, 1.0}) {
      const WeightedLFT w = c_phi({a, alpha, 0});
      const SymbolicPolar p = polar_symbolic(w);
      CHECK(distance(compose(p.unitary, p.modulus), w) < 1e-13);
      CHECK(is_unitary(p.unitary));
      CHECK(distance(adjoint(p.modulus), p.modulus) < 1e-14);
      CHECK(distance(compose(p.modulus, p.modulus), compose(adjoint(w), w)) < 1e-12);
    }
  const SpaceParams space(0.0);
  const WeightedLFT rot = testing::rotation(space, 0.7);
  CHECK_THROWS_AS(polar_symbolic(compose(c_phi({0.5, 0.0, 0}), rot)), NotInPolarFamily);
}

TEST_CASE("Aluthge step fixes quasinormal members") {
  for (double alpha : {-0.5, 1.0}) {
    const SpaceParams space(alpha);
    const WeightedLFT q = to_element({2.0, 0.5}, space);
    CHECK(distance(aluthge_step(q), q) < 1e-14);
    const WeightedLFT u = unitary_from_s(space, 0.8);
    CHECK(distance(aluthge_step(u), u) < 1e-13);
  }
}

TEST_CASE("mismatched spaces and branch bookkeeping") {
  CHECK_THROWS_AS(compose(c_phi({0.5, 0.0, 0}), c_phi({0.5, 1.0, 0})), MismatchError);
  // Rotations with non-integer exponent: the products' weights stay principal.
  const SpaceParams space(-0.5);
  WeightedLFT w = c_phi({0.3, -0.5, 0});
  for (int k = 0; k < 8; ++k) w = compose(w, compose(testing::rotation(space, 2.9), adjoint(c_phi({0.6, -0.5, 0}))));
  for (cplx z : probe_points()) {
    const SymbolValue v = symbol_eval(w, z);
    CHECK(std::isfinite(std::abs(v.weight)));
  }
}

TEST_CASE("kernel images and their norms") {
  const PaperScenario sc{0.5, 0.0, 3};
  const WeightedLFT w = iterate_adjoint_form(sc);
  for (cplx omega : {cplx(0.0), cplx(0.3), cplx(0.0, 0.5)}) {
    const KernelImage k = adjoint_apply_kernel(w, omega);
    const SymbolValue v = symbol_eval(w, omega);
    CHECK(std::abs(k.weight - std::conj(v.weight)) < 1e-15);
    CHECK(std::abs(k.point - v.map) < 1e-15);
    CHECK(k.gap == doctest::Approx(1.0 - std::norm(v.map)).epsilon(1e-12));
    CHECK(adjoint_kernel_norm_sq(w, omega) ==
          doctest::Approx(std::norm(v.weight) * kernel_norm_sq(v.map, w.space())).epsilon(1e-12));
  }
  CHECK_THROWS_AS(adjoint_apply_kernel(w, 1.0), DomainError);
}

TEST_CASE("self-map classification") {
  const SpaceParams space(0.0);
  CHECK(c_phi({0.5, 0.0, 0}).self_map_status() == SelfMapStatus::kTouchesBoundary);
  CHECK(testing::rotation(space, 0.3).self_map_status() == SelfMapStatus::kBoundaryArc);
  CHECK(WeightedLFT(space, 1.0, Mobius2{0.5, 0.1, 0.0, 1.0}).self_map_status() == SelfMapStatus::kInterior);
  CHECK(to_element({1.0, -0.2}, space).self_map_status() == SelfMapStatus::kNotSelfMap);
}

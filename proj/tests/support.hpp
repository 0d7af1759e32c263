#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "aluthge/closed_forms.hpp"
#include "aluthge/wlft.hpp"

namespace testing {

using aluthge::cplx;

inline aluthge::WeightedLFT rotation(const aluthge::SpaceParams& space, double theta) {
  return aluthge::WeightedLFT(space, 1.0, aluthge::Mobius2{std::polar(1.0, theta), 0.0, 0.0, 1.0});
}

// Random member of the family: a product of one to three generators drawn from
// C_φ, A_t, the s-unitaries, rotations and their adjoints.
inline aluthge::WeightedLFT random_element(std::mt19937_64& rng, const aluthge::SpaceParams& space) {
  using namespace aluthge;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto generator = [&]() -> WeightedLFT {
    const int kind = static_cast<int>(unit(rng) * 5.0);
    WeightedLFT g = WeightedLFT::identity(space);
    switch (kind) {
      case 0: g = c_phi({0.1 + 0.8 * unit(rng), space.alpha(), 0}); break;
      case 1: g = to_element({0.5 + unit(rng), 2.0 * unit(rng)}, space); break;
      case 2: g = unitary_from_s(space, 0.1 + 2.0 * unit(rng)); break;
      case 3: g = rotation(space, 6.0 * unit(rng) - 3.0); break;
      default: g = c_sigma_s(space, 0.1 + 2.0 * unit(rng)); break;
    }
    return unit(rng) < 0.5 ? adjoint(g) : g;
  };
  const int factors = 1 + static_cast<int>(unit(rng) * 3.0);
  WeightedLFT w = generator();
  for (int i = 1; i < factors; ++i) w = compose(w, generator());
  return w;
}

// Points inside the disk used for pointwise checks.
inline std::vector<cplx> probe_points() {
  return {0.0, 0.3, -0.45, cplx(0.2, 0.5), cplx(-0.6, -0.3), cplx(0.0, -0.8), cplx(0.7, 0.1)};
}

inline double rel_err(cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace testing

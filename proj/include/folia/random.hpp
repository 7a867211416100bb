#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "folia/fields.hpp"
#include "folia/grid.hpp"

namespace folia {

/// Seeded band-limited trigonometric test data. Coefficients depend only on
/// (seed, bandlimit, component), never on the resolution, so coarse and fine
/// samplings of the same spec agree at shared nodes.
struct RandomSpec {
  std::uint64_t seed = 0;
  int bandlimit = 3;
  double amplitude = 1.0;
  bool zero_mean = true;
};

namespace detail {

struct TrigMode {
  int k0, k1;
  double a, b;  // cos / sin coefficients
};

/// Half-lattice of modes: (k0,k1) with k0 > 0, or k0 == 0 and k1 > 0, plus the
/// constant mode when zero_mean is off. Coefficient draw order is fixed.
inline std::vector<TrigMode> draw_modes(const RandomSpec& spec, int component) {
  std::mt19937_64 rng(spec.seed * 0x9E3779B97F4A7C15ull + 0x517CC1B727220A95ull * (component + 1));
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<TrigMode> modes;
  if (!spec.zero_mean) {
    TrigMode m{0, 0, 0.0, 0.0};
    m.a = spec.amplitude * uni(rng);
    modes.push_back(m);
  }
  for (int k0 = 0; k0 <= spec.bandlimit; ++k0)
    for (int k1 = -spec.bandlimit; k1 <= spec.bandlimit; ++k1) {
      if (k0 == 0 && k1 <= 0) continue;
      const double decay = 1.0 / (1.0 + k0 * k0 + k1 * k1);
      TrigMode m{k0, k1, 0.0, 0.0};
      m.a = spec.amplitude * decay * uni(rng);
      m.b = spec.amplitude * decay * uni(rng);
      modes.push_back(m);
    }
  return modes;
}

inline void sample_component(const BaseChart& c, const RandomSpec& spec, int component,
                             int comps, std::vector<double>& out) {
  if (2 * spec.bandlimit >= c.dims[0] || (c.q == 2 && 2 * spec.bandlimit >= c.dims[1]))
    throw std::invalid_argument("random field: bandlimit must be < resolution / 2");
  const auto modes = draw_modes(spec, component);
  const int n = c.nodes();
  for (int i = 0; i < n; ++i) {
    double x[2] = {0.0, 0.0};
    c.coords(i, x);
    double s = 0.0;
    for (const auto& m : modes) {
      const double ph = m.k0 * x[0] + m.k1 * x[1];
      s += m.a * std::cos(ph) + m.b * std::sin(ph);
    }
    out[static_cast<size_t>(i) * comps + component] = s;
  }
}

}  // namespace detail

inline BasicScalarField random_scalar(const BaseChart& c, const RandomSpec& spec) {
  BasicScalarField f = BasicScalarField::zeros(c);
  detail::sample_component(c, spec, 0, 1, f.v);
  return f;
}

inline NormalField random_normal(const BaseChart& c, const RandomSpec& spec) {
  NormalField f = NormalField::zeros(c);
  for (int a = 0; a < c.q; ++a) detail::sample_component(c, spec, a, c.q, f.v);
  return f;
}

inline PullbackSection random_section(const BaseChart& c, const FoliatedMapField& phi,
                                      const RandomSpec& spec) {
  PullbackSection s = PullbackSection::zeros(c, phi);
  for (int k = 0; k < phi.qp; ++k) detail::sample_component(c, spec, k, phi.qp, s.v);
  return s;
}

}  // namespace folia

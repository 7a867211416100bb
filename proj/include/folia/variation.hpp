#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "folia/fields.hpp"
#include "folia/grid.hpp"

namespace folia {

struct ChartDomainError : std::runtime_error {
  int node;
  double radius;
  ChartDomainError(int node_, double radius_)
      : std::runtime_error("map value left the target chart domain at node " +
                           std::to_string(node_) + ", |u| = " + std::to_string(radius_)),
        node(node_), radius(radius_) {}
};

/// One- or two-parameter family phi_{t,s} = phi + t V + s W in target chart
/// coordinates. The straight-line rule makes the variation field exact and
/// gives the acceleration nabla_V V = Gamma'(V,V) in closed form.
struct VariationPath {
  FoliatedMapField base;
  PullbackSection first;
  std::optional<PullbackSection> second;

  static VariationPath make(const FoliatedMapField& phi, const PullbackSection& v) {
    return {phi, v, std::nullopt};
  }
  static VariationPath make(const FoliatedMapField& phi, const PullbackSection& v,
                            const PullbackSection& w) {
    return {phi, v, w};
  }
};

/// Nodewise chart-linear evaluation; throws ChartDomainError if any node
/// leaves the admissible chart region.
inline FoliatedMapField eval_path(const BaseChart& c, const VariationPath& p, double t,
                                  double s = 0.0) {
  FoliatedMapField out = p.base;
  const int n = c.nodes(), qp = out.qp;
  if (t != 0.0)
    for (int i = 0; i < n * qp; ++i) out.v[i] += t * p.first.v[i];
  if (s != 0.0) {
    if (!p.second) throw std::invalid_argument("eval_path: path has no second variation field");
    for (int i = 0; i < n * qp; ++i) out.v[i] += s * p.second->v[i];
  }
  for (int i = 0; i < n; ++i) {
    double u[2];
    out.value(c, i, u);
    if (!out.target->in_domain(u))
      throw ChartDomainError(i, std::sqrt(u[0] * u[0] + u[1] * u[1]));
  }
  return out;
}

/// Acceleration of the straight-line path: (nabla_V V)^k = Gamma'^k_{ij}(phi) V^i V^j.
inline PullbackSection path_acceleration(const BaseChart& c, const FoliatedMapField& phi,
                                         const PullbackSection& V) {
  PullbackSection out = PullbackSection::zeros(c, phi);
  const int n = c.nodes();
  for (int i = 0; i < n; ++i) {
    double u[2];
    phi.value(c, i, u);
    phi.target->christoffel_apply(u, &V.v[static_cast<size_t>(i) * 2], &V.v[static_cast<size_t>(i) * 2],
                                  &out.v[static_cast<size_t>(i) * 2]);
  }
  return out;
}

}  // namespace folia

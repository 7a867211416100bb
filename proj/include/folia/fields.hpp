#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "folia/grid.hpp"
#include "folia/target.hpp"

namespace folia {

/// Basic function sampled at the chart nodes.
struct BasicScalarField {
  std::vector<double> v;  // [node]

  static BasicScalarField zeros(const BaseChart& c) { return {std::vector<double>(c.nodes(), 0.0)}; }
  static BasicScalarField constant(const BaseChart& c, double value) {
    return {std::vector<double>(c.nodes(), value)};
  }
};

/// Section of the normal bundle Q in chart frame, q components per node.
struct NormalField {
  int q = 2;
  std::vector<double> v;  // [node*q + a]

  static NormalField zeros(const BaseChart& c) {
    return {c.q, std::vector<double>(static_cast<size_t>(c.nodes()) * c.q, 0.0)};
  }
};

/// Foliated map represented by its induced base map into a target chart.
///
/// Values split into a linear winding part and a periodic remainder:
///   u^k(x) = winding[k][a] x^a + psi^k(x),
/// so derivatives never cross the chart seam. Non-periodic targets require
/// zero winding.
struct FoliatedMapField {
  const TargetGeometry* target = nullptr;
  int qp = 2;
  std::array<std::array<double, 2>, 2> winding{{{0.0, 0.0}, {0.0, 0.0}}};
  std::vector<double> v;  // periodic part, [node*qp + k]

  static FoliatedMapField zeros(const BaseChart& c, const TargetGeometry& t) {
    FoliatedMapField f;
    f.target = &t;
    f.qp = t.dim();
    f.v.assign(static_cast<size_t>(c.nodes()) * f.qp, 0.0);
    return f;
  }

  bool has_winding() const {
    for (const auto& row : winding)
      for (double w : row)
        if (w != 0.0) return true;
    return false;
  }

  void value(const BaseChart& c, int node, double* u) const {
    double x[2] = {0.0, 0.0};
    c.coords(node, x);
    for (int k = 0; k < qp; ++k) {
      double s = v[static_cast<size_t>(node) * qp + k];
      for (int a = 0; a < c.q; ++a) s += winding[k][a] * x[a];
      u[k] = s;
    }
  }

  /// Index of the first node outside the target chart domain, or -1.
  int domain_violation(const BaseChart& c) const {
    for (int i = 0; i < c.nodes(); ++i) {
      double u[2];
      value(c, i, u);
      if (!target->in_domain(u)) return i;
    }
    return -1;
  }
};

/// Section of the pullback bundle phi^{-1}Q' along a base map.
struct PullbackSection {
  const FoliatedMapField* base = nullptr;
  int qp = 2;
  std::vector<double> v;  // [node*qp + k]

  static PullbackSection zeros(const BaseChart& c, const FoliatedMapField& phi) {
    PullbackSection s;
    s.base = &phi;
    s.qp = phi.qp;
    s.v.assign(static_cast<size_t>(c.nodes()) * s.qp, 0.0);
    return s;
  }
};

/// Element of Q* (x) phi^{-1}Q': one target vector per source direction.
struct PullbackOneForm {
  const FoliatedMapField* base = nullptr;
  int q = 2, qp = 2;
  std::vector<double> v;  // [node*q*qp + a*qp + k] = Phi^k_a

  static PullbackOneForm zeros(const BaseChart& c, const FoliatedMapField& phi) {
    PullbackOneForm f;
    f.base = &phi;
    f.q = c.q;
    f.qp = phi.qp;
    f.v.assign(static_cast<size_t>(c.nodes()) * f.q * f.qp, 0.0);
    return f;
  }

  double& at(int node, int a, int k) { return v[(static_cast<size_t>(node) * q + a) * qp + k]; }
  double at(int node, int a, int k) const { return v[(static_cast<size_t>(node) * q + a) * qp + k]; }
};

/// Degree-2 bundle-valued basic form (stored dense antisymmetric).
struct PullbackTwoForm {
  const FoliatedMapField* base = nullptr;
  int q = 2, qp = 2;
  std::vector<double> v;  // [node*q*q*qp + (a*q+b)*qp + k] = Psi^k_{ab}

  static PullbackTwoForm zeros(const BaseChart& c, const FoliatedMapField& phi) {
    PullbackTwoForm f;
    f.base = &phi;
    f.q = c.q;
    f.qp = phi.qp;
    f.v.assign(static_cast<size_t>(c.nodes()) * f.q * f.q * f.qp, 0.0);
    return f;
  }

  double& at(int node, int a, int b, int k) {
    return v[(static_cast<size_t>(node) * q * q + static_cast<size_t>(a) * q + b) * qp + k];
  }
  double at(int node, int a, int b, int k) const {
    return v[(static_cast<size_t>(node) * q * q + static_cast<size_t>(a) * q + b) * qp + k];
  }
};

/// Symmetric 2-covariant normal tensor field (e.g. the stress-energy tensor).
struct CotensorField {
  int q = 2;
  std::vector<double> v;  // [node*q*q + a*q + b]
};

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace folia

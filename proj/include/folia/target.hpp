#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace folia {

/// Analytic chart geometry of the target's normal bundle (dimension 2).
///
/// Catalog: a flat periodic chart, the stereographic sphere chart of constant
/// curvature C > 0 (single chart, the point antipodal to the origin deleted)
/// and the hyperbolic disk of constant curvature C < 0 on |u| < 1. All three
/// are conformal, g' = mu(u)^2 * delta, so the curvature tensor is
/// R'(X,Y)Z = K(u) (<Y,Z> X - <X,Z> Y) with K evaluated from the conformal
/// factor; nabla R' vanishes on the catalog since K is constant.
class TargetGeometry {
 public:
  enum class Kind { FlatTorus, SphereStereo, HyperbolicDisk };

  static TargetGeometry flat_torus() { return TargetGeometry(Kind::FlatTorus, 0.0, 10.0); }

  static TargetGeometry sphere_stereo(double curvature, double chart_radius = 10.0) {
    if (!(curvature > 0.0))
      throw std::invalid_argument("sphere-stereo requires curvature C > 0");
    return TargetGeometry(Kind::SphereStereo, curvature, chart_radius);
  }

  static TargetGeometry hyperbolic_disk(double curvature) {
    if (!(curvature < 0.0))
      throw std::invalid_argument("hyperbolic-disk requires curvature C < 0");
    return TargetGeometry(Kind::HyperbolicDisk, curvature, 1.0);
  }

  Kind kind() const { return kind_; }
  int dim() const { return 2; }
  double domain_radius() const { return rmax_; }

  /// True on the flat periodic chart, where map values may carry winding.
  bool periodic_chart() const { return kind_ == Kind::FlatTorus; }

  bool in_domain(const double* u) const {
    const double r2 = u[0] * u[0] + u[1] * u[1];
    if (kind_ == Kind::HyperbolicDisk) return r2 < 1.0;
    if (kind_ == Kind::SphereStereo) return r2 <= rmax_ * rmax_;
    return true;
  }

  /// Conformal factor mu(u).
  double conf(const double* u) const {
    const double r2 = u[0] * u[0] + u[1] * u[1];
    switch (kind_) {
      case Kind::FlatTorus: return 1.0;
      case Kind::SphereStereo: return 2.0 / (std::sqrt(curv_) * (1.0 + r2));
      case Kind::HyperbolicDisk: return 2.0 / (std::sqrt(-curv_) * (1.0 - r2));
    }
    return 1.0;
  }

  /// Euclidean gradient of log mu.
  void dlog_conf(const double* u, double* out) const {
    const double r2 = u[0] * u[0] + u[1] * u[1];
    switch (kind_) {
      case Kind::FlatTorus:
        out[0] = out[1] = 0.0;
        break;
      case Kind::SphereStereo:
        out[0] = -2.0 * u[0] / (1.0 + r2);
        out[1] = -2.0 * u[1] / (1.0 + r2);
        break;
      case Kind::HyperbolicDisk:
        out[0] = 2.0 * u[0] / (1.0 - r2);
        out[1] = 2.0 * u[1] / (1.0 - r2);
        break;
    }
  }

  void metric(const double* u, double g[2][2]) const {
    const double m2 = conf(u) * conf(u);
    g[0][0] = m2; g[0][1] = 0.0; g[1][0] = 0.0; g[1][1] = m2;
  }

  void metric_inv(const double* u, double gi[2][2]) const {
    const double m2 = conf(u) * conf(u);
    gi[0][0] = 1.0 / m2; gi[0][1] = 0.0; gi[1][0] = 0.0; gi[1][1] = 1.0 / m2;
  }

  double inner(const double* u, const double* X, const double* Y) const {
    const double m2 = conf(u) * conf(u);
    return m2 * (X[0] * Y[0] + X[1] * Y[1]);
  }

  /// Christoffel symbols of the conformal metric, G[k][i][j] = Gamma'^k_{ij}.
  void christoffel(const double* u, double G[2][2][2]) const {
    double L[2];
    dlog_conf(u, L);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          G[k][i][j] = (k == i ? L[j] : 0.0) + (k == j ? L[i] : 0.0) - (i == j ? L[k] : 0.0);
  }

  /// Gamma'(X,Y)^k contracted form.
  void christoffel_apply(const double* u, const double* X, const double* Y, double* out) const {
    double L[2];
    dlog_conf(u, L);
    const double lx = L[0] * X[0] + L[1] * X[1];
    const double ly = L[0] * Y[0] + L[1] * Y[1];
    const double xy = X[0] * Y[0] + X[1] * Y[1];
    out[0] = X[0] * ly + Y[0] * lx - xy * L[0];
    out[1] = X[1] * ly + Y[1] * lx - xy * L[1];
  }

  /// Sectional curvature at u, evaluated through the conformal-factor
  /// Laplacian (agrees with the constant to roundoff on the catalog).
  double gauss(const double* u) const {
    const double r2 = u[0] * u[0] + u[1] * u[1];
    const double m = conf(u);
    switch (kind_) {
      case Kind::FlatTorus: return 0.0;
      case Kind::SphereStereo: {
        const double lap_logmu = -4.0 / ((1.0 + r2) * (1.0 + r2));
        return -lap_logmu / (m * m);
      }
      case Kind::HyperbolicDisk: {
        const double lap_logmu = 4.0 / ((1.0 - r2) * (1.0 - r2));
        return -lap_logmu / (m * m);
      }
    }
    return 0.0;
  }

  std::optional<double> constant_curvature() const { return curv_; }

  /// Euclidean gradient of the sectional curvature; identically zero on the
  /// constant-curvature catalog. Kept as the evaluation hook for nabla R'.
  void grad_gauss(const double* /*u*/, double* out) const { out[0] = out[1] = 0.0; }

  /// R'(X,Y)Z at chart point u.
  void riemann(const double* u, const double* X, const double* Y, const double* Z,
               double* out) const {
    const double K = gauss(u);
    const double yz = inner(u, Y, Z), xz = inner(u, X, Z);
    out[0] = K * (yz * X[0] - xz * Y[0]);
    out[1] = K * (yz * X[1] - xz * Y[1]);
  }

  /// (nabla_W R')(X,Y)Z at u; the catalog has parallel curvature so this is
  /// (W . grad K)(<Y,Z>X - <X,Z>Y) with grad K = 0.
  void nabla_riemann(const double* u, const double* W, const double* X, const double* Y,
                     const double* Z, double* out) const {
    double gk[2];
    grad_gauss(u, gk);
    const double wk = W[0] * gk[0] + W[1] * gk[1];
    const double yz = inner(u, Y, Z), xz = inner(u, X, Z);
    out[0] = wk * (yz * X[0] - xz * Y[0]);
    out[1] = wk * (yz * X[1] - xz * Y[1]);
  }

  std::string name() const {
    switch (kind_) {
      case Kind::FlatTorus: return "flat-torus";
      case Kind::SphereStereo: return "sphere-stereo";
      case Kind::HyperbolicDisk: return "hyperbolic-disk";
    }
    return "?";
  }

 private:
  TargetGeometry(Kind k, double c, double rmax) : kind_(k), curv_(c), rmax_(rmax) {}

  Kind kind_;
  double curv_;
  double rmax_;
};

/// Catalog lookup by string id.
inline TargetGeometry build_target(const std::string& name, double curvature = 0.0) {
  if (name == "flat-torus") return TargetGeometry::flat_torus();
  if (name == "sphere-stereo") return TargetGeometry::sphere_stereo(curvature == 0.0 ? 1.0 : curvature);
  if (name == "hyperbolic-disk") return TargetGeometry::hyperbolic_disk(curvature == 0.0 ? -1.0 : curvature);
  throw std::invalid_argument("unknown target catalog id: " + name);
}

}  // namespace folia

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "folia/fields.hpp"
#include "folia/grid.hpp"

namespace folia {

/// Holonomy-invariant transversal metric sampled per node.
struct MetricField {
  int q = 2;
  std::vector<double> g;         // [node*q*q + a*q + b]
  std::vector<double> g_inv;     // same layout
  std::vector<double> sqrt_det;  // [node]
};

/// Transverse Levi-Civita connection coefficients, gamma^a_{bc}.
struct ConnectionField {
  int q = 2;
  std::vector<double> gamma;  // [node*q^3 + (a*q+b)*q + c]
};

/// Transversal curvature data: full tensor, Ricci operator, and the
/// sectional curvature of the coordinate plane (q == 2).
struct CurvatureField {
  int q = 2;
  std::vector<double> riemann;  // [node*q^4 + ((a*q+b)*q+c)*q + d] = R^a_{bcd}
  std::vector<double> ricci;    // [node*q*q + a*q + b] = rho^a_b (operator)
  std::vector<double> gauss;    // [node], q == 2 only
};

/// Leaf volume and mean curvature form; analytic catalog data.
struct LeafData {
  std::vector<double> vol_l;        // [node]
  std::vector<double> kappa;        // [node*q + a], the 1-form kappa_B
  std::vector<double> kappa_sharp;  // [node*q + a], raised with g_inv
};

/// Discretized transversal geometry of a model foliation.
struct ModelFoliation {
  BaseChart chart;
  MetricField metric;
  ConnectionField conn;
  CurvatureField curv;
  LeafData leaf;
  std::string name;
  double eps = 0.0;

  int q() const { return chart.q; }
  int nodes() const { return chart.nodes(); }

  double g(int node, int a, int b) const {
    return metric.g[(static_cast<size_t>(node) * q() + a) * q() + b];
  }
  double ginv(int node, int a, int b) const {
    return metric.g_inv[(static_cast<size_t>(node) * q() + a) * q() + b];
  }
  double gamma(int node, int a, int b, int c) const {
    const int qq = q();
    return conn.gamma[((static_cast<size_t>(node) * qq + a) * qq + b) * qq + c];
  }
  double riem(int node, int a, int b, int c, int d) const {
    const int qq = q();
    return curv.riemann[(((static_cast<size_t>(node) * qq + a) * qq + b) * qq + c) * qq + d];
  }
};

/// gamma^a_{bc} = 1/2 g^{ad} (d_b g_dc + d_c g_bd - d_d g_bc), central differences.
inline ConnectionField christoffel(const MetricField& metric, const BaseChart& chart) {
  const int q = chart.q, n = chart.nodes();
  std::vector<std::vector<double>> dg(q);
  for (int a = 0; a < q; ++a) dg[a] = diff(chart, metric.g, q * q, a);

  ConnectionField out;
  out.q = q;
  out.gamma.assign(static_cast<size_t>(n) * q * q * q, 0.0);
  auto dgat = [&](int ax, int i, int a, int b) { return dg[ax][(static_cast<size_t>(i) * q + a) * q + b]; };
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c) {
          double s = 0.0;
          for (int d = 0; d < q; ++d)
            s += 0.5 * metric.g_inv[(static_cast<size_t>(i) * q + a) * q + d] *
                 (dgat(b, i, d, c) + dgat(c, i, b, d) - dgat(d, i, b, c));
          out.gamma[((static_cast<size_t>(i) * q + a) * q + b) * q + c] = s;
        }
  return out;
}

/// R^a_{bcd} = d_c gamma^a_{db} - d_d gamma^a_{cb} + gamma^a_{ce} gamma^e_{db}
///           - gamma^a_{de} gamma^e_{cb}; Ricci and sectional by contraction.
inline CurvatureField curvature(const ConnectionField& conn, const BaseChart& chart,
                                const MetricField& metric) {
  const int q = chart.q, n = chart.nodes();
  std::vector<std::vector<double>> dG(q);
  for (int a = 0; a < q; ++a) dG[a] = diff(chart, conn.gamma, q * q * q, a);
  auto G = [&](int i, int a, int b, int c) {
    return conn.gamma[((static_cast<size_t>(i) * q + a) * q + b) * q + c];
  };
  auto dGat = [&](int ax, int i, int a, int b, int c) {
    return dG[ax][((static_cast<size_t>(i) * q + a) * q + b) * q + c];
  };

  CurvatureField out;
  out.q = q;
  out.riemann.assign(static_cast<size_t>(n) * q * q * q * q, 0.0);
  out.ricci.assign(static_cast<size_t>(n) * q * q, 0.0);
  if (q == 2) out.gauss.assign(n, 0.0);

  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c)
          for (int d = 0; d < q; ++d) {
            double val = dGat(c, i, a, d, b) - dGat(d, i, a, c, b);
            for (int e = 0; e < q; ++e)
              val += G(i, a, c, e) * G(i, e, d, b) - G(i, a, d, e) * G(i, e, c, b);
            out.riemann[(((static_cast<size_t>(i) * q + a) * q + b) * q + c) * q + d] = val;
          }
    // Ricci operator: rho^a_b = g^{cd} R^a_{dbc}  (Ric(X) = sum_a R(X,E_a)E_a)
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        double s = 0.0;
        for (int c = 0; c < q; ++c)
          for (int d = 0; d < q; ++d)
            s += metric.g_inv[(static_cast<size_t>(i) * q + c) * q + d] *
                 out.riemann[(((static_cast<size_t>(i) * q + a) * q + d) * q + b) * q + c];
        out.ricci[(static_cast<size_t>(i) * q + a) * q + b] = s;
      }
    if (q == 2) {
      // K = <R(e1,e2)e2, e1> / det g
      double r1212 = 0.0;
      for (int a = 0; a < q; ++a)
        r1212 += metric.g[(static_cast<size_t>(i) * q + a) * q + 0] *
                 out.riemann[(((static_cast<size_t>(i) * q + a) * q + 1) * q + 0) * q + 1];
      const double det = metric.g[static_cast<size_t>(i) * 4 + 0] * metric.g[static_cast<size_t>(i) * 4 + 3] -
                         metric.g[static_cast<size_t>(i) * 4 + 1] * metric.g[static_cast<size_t>(i) * 4 + 2];
      out.gauss[i] = r1212 / det;
    }
  }
  return out;
}

/// One row of a validation report.
struct ModelCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool hard = false;
  bool pass = true;
  std::string detail;
};

struct ModelDiagnostics {
  std::vector<ModelCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  bool hard_failure() const {
    for (const auto& c : checks)
      if (c.hard && !c.pass) return true;
    return false;
  }
};

/// Validates all type invariants; hard failures (SPD, positivity) name the node.
inline ModelDiagnostics validate_model(const ModelFoliation& m) {
  const int q = m.q(), n = m.nodes();
  ModelDiagnostics diag;
  auto add = [&](const std::string& name, double res, double tol, bool hard,
                 const std::string& detail = "") {
    diag.checks.push_back({name, res, tol, hard, res <= tol, detail});
  };

  // SPD metric, consistent inverse, positive volume factor.
  double worst_eig = std::numeric_limits<double>::max();
  int worst_node = -1;
  double inv_res = 0.0, sdet_min = std::numeric_limits<double>::max();
  for (int i = 0; i < n; ++i) {
    double tr = 0.0, det = 0.0;
    if (q == 2) {
      const double* g = &m.metric.g[static_cast<size_t>(i) * 4];
      tr = g[0] + g[3];
      det = g[0] * g[3] - g[1] * g[2];
      const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
      const double emin = tr / 2.0 - disc;
      if (emin < worst_eig) { worst_eig = emin; worst_node = i; }
    } else {
      const double g = m.metric.g[i];
      if (g < worst_eig) { worst_eig = g; worst_node = i; }
    }
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        double s = 0.0;
        for (int c = 0; c < q; ++c) s += m.ginv(i, a, c) * m.g(i, c, b);
        inv_res = std::max(inv_res, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    sdet_min = std::min(sdet_min, m.metric.sqrt_det[i]);
  }
  add("metric-spd", worst_eig > 0.0 ? 0.0 : 1.0, 0.5, true,
      worst_eig > 0.0 ? "" : "non-SPD metric at node " + std::to_string(worst_node));
  add("metric-inverse", inv_res, 1e-12, true);
  add("sqrt-det-positive", sdet_min > 0.0 ? 0.0 : 1.0, 0.5, true);

  // Torsion-free connection (symmetric lower indices); exact by construction.
  double tors = 0.0;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c)
          tors = std::max(tors, std::abs(m.gamma(i, a, b, c) - m.gamma(i, a, c, b)));
  add("connection-torsion-free", tors, 1e-13, false);

  // Metric compatibility: nabla_c g_ab with the same stencils is algebraically
  // zero for Christoffels assembled from D(g); checked at roundoff.
  {
    std::vector<std::vector<double>> dg(q);
    for (int a = 0; a < q; ++a) dg[a] = diff(m.chart, m.metric.g, q * q, a);
    double res = 0.0;
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < q; ++c)
        for (int a = 0; a < q; ++a)
          for (int b = 0; b < q; ++b) {
            double s = dg[c][(static_cast<size_t>(i) * q + a) * q + b];
            for (int d = 0; d < q; ++d)
              s -= m.gamma(i, d, c, a) * m.g(i, d, b) + m.gamma(i, d, c, b) * m.g(i, a, d);
            res = std::max(res, std::abs(s));
          }
    add("connection-metric-compatible", res, 1e-11, false);
  }

  const double h = m.chart.spacing[0];
  const double disc_tol = (m.chart.fd_order == 2) ? h * h : h * h * h * h * 20.0;

  // Curvature antisymmetry (algebraic) and first Bianchi (discretization).
  double antisym = 0.0, bianchi = 0.0;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c)
          for (int d = 0; d < q; ++d) {
            antisym = std::max(antisym, std::abs(m.riem(i, a, b, c, d) + m.riem(i, a, b, d, c)));
            bianchi = std::max(bianchi, std::abs(m.riem(i, a, b, c, d) + m.riem(i, a, c, d, b) +
                                                 m.riem(i, a, d, b, c)));
          }
  add("riemann-antisymmetry", antisym, 1e-13, false);
  add("riemann-first-bianchi", bianchi, std::max(1e-12, 2.0 * disc_tol), false);

  // Ricci equals the trace contraction of the stored tensor (algebraic).
  double ric_res = 0.0;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        double s = 0.0;
        for (int c = 0; c < q; ++c)
          for (int d = 0; d < q; ++d) s += m.ginv(i, c, d) * m.riem(i, a, d, b, c);
        ric_res = std::max(ric_res, std::abs(s - m.curv.ricci[(static_cast<size_t>(i) * q + a) * q + b]));
      }
  add("ricci-contraction", ric_res, 1e-12, false);

  // Leaf data: positivity, the volume/mean-curvature relation, closedness.
  double wmin = std::numeric_limits<double>::max();
  for (int i = 0; i < n; ++i) wmin = std::min(wmin, m.leaf.vol_l[i]);
  add("vol-l-positive", wmin > 0.0 ? 0.0 : 1.0, 0.5, true);

  {
    std::vector<std::vector<double>> dw(q);
    for (int a = 0; a < q; ++a) dw[a] = diff(m.chart, m.leaf.vol_l, 1, a);
    double res = 0.0;
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < q; ++a)
        res = std::max(res, std::abs(dw[a][i] + m.leaf.vol_l[i] * m.leaf.kappa[static_cast<size_t>(i) * q + a]));
    add("leaf-volume-relation", res, std::max(1e-12, disc_tol), false);
  }
  if (q == 2) {
    const auto d0k = diff(m.chart, m.leaf.kappa, q, 0);
    const auto d1k = diff(m.chart, m.leaf.kappa, q, 1);
    double res = 0.0;
    for (int i = 0; i < n; ++i)
      res = std::max(res, std::abs(d0k[static_cast<size_t>(i) * q + 1] - d1k[static_cast<size_t>(i) * q + 0]));
    add("kappa-closed", res, std::max(1e-12, disc_tol), false);
  }
  return diag;
}

namespace detail {

inline MetricField metric_from(const BaseChart& chart,
                               const std::function<void(const double*, double*)>& gfun) {
  const int q = chart.q, n = chart.nodes();
  MetricField mf;
  mf.q = q;
  mf.g.assign(static_cast<size_t>(n) * q * q, 0.0);
  mf.g_inv.assign(static_cast<size_t>(n) * q * q, 0.0);
  mf.sqrt_det.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x[2] = {0, 0};
    chart.coords(i, x);
    double g[4] = {0, 0, 0, 0};
    gfun(x, g);
    if (q == 1) {
      mf.g[i] = g[0];
      mf.g_inv[i] = 1.0 / g[0];
      mf.sqrt_det[i] = std::sqrt(g[0]);
    } else {
      const double det = g[0] * g[3] - g[1] * g[2];
      mf.g[static_cast<size_t>(i) * 4 + 0] = g[0];
      mf.g[static_cast<size_t>(i) * 4 + 1] = g[1];
      mf.g[static_cast<size_t>(i) * 4 + 2] = g[2];
      mf.g[static_cast<size_t>(i) * 4 + 3] = g[3];
      mf.g_inv[static_cast<size_t>(i) * 4 + 0] = g[3] / det;
      mf.g_inv[static_cast<size_t>(i) * 4 + 1] = -g[1] / det;
      mf.g_inv[static_cast<size_t>(i) * 4 + 2] = -g[2] / det;
      mf.g_inv[static_cast<size_t>(i) * 4 + 3] = g[0] / det;
      mf.sqrt_det[i] = std::sqrt(det);
    }
  }
  return mf;
}

}  // namespace detail

/// Source-model catalog. Parameters: eps with |eps| < 1 (warped leaf volume or
/// conformal amplitude), resolution = nodes per axis.
inline ModelFoliation build_model(const std::string& name, double eps, int resolution,
                                  int fd_order = 2) {
  if (resolution < 8) throw std::invalid_argument("build_model: resolution too small (min 8)");
  if (!(std::abs(eps) < 1.0)) throw std::invalid_argument("build_model: |eps| must be < 1");

  ModelFoliation m;
  m.chart = BaseChart::make(2, resolution, fd_order);
  m.name = name;
  m.eps = eps;
  const int n = m.chart.nodes(), q = m.chart.q;

  m.leaf.vol_l.assign(n, 1.0);
  m.leaf.kappa.assign(static_cast<size_t>(n) * q, 0.0);
  m.leaf.kappa_sharp.assign(static_cast<size_t>(n) * q, 0.0);

  if (name == "product-flat-torus") {
    m.metric = detail::metric_from(m.chart, [](const double*, double* g) {
      g[0] = 1.0; g[1] = 0.0; g[2] = 0.0; g[3] = 1.0;
    });
  } else if (name == "warped-torus") {
    m.metric = detail::metric_from(m.chart, [](const double*, double* g) {
      g[0] = 1.0; g[1] = 0.0; g[2] = 0.0; g[3] = 1.0;
    });
    // vol_L = 1 + eps cos(x1); kappa = -d log vol_L (analytic)
    for (int i = 0; i < n; ++i) {
      double x[2];
      m.chart.coords(i, x);
      const double w = 1.0 + eps * std::cos(x[0]);
      m.leaf.vol_l[i] = w;
      m.leaf.kappa[static_cast<size_t>(i) * q + 0] = eps * std::sin(x[0]) / w;
      m.leaf.kappa_sharp[static_cast<size_t>(i) * q + 0] = eps * std::sin(x[0]) / w;
    }
  } else if (name == "conformal-torus") {
    m.metric = detail::metric_from(m.chart, [eps](const double* x, double* g) {
      const double lam = 1.0 + eps * std::cos(x[0]) * std::cos(x[1]);
      g[0] = lam * lam; g[1] = 0.0; g[2] = 0.0; g[3] = lam * lam;
    });
  } else {
    throw std::invalid_argument("unknown model catalog id: " + name);
  }

  m.conn = christoffel(m.metric, m.chart);
  m.curv = curvature(m.conn, m.chart, m.metric);

  const auto diag = validate_model(m);
  for (const auto& c : diag.checks)
    if (c.hard && !c.pass)
      throw std::runtime_error("build_model: hard invariant failed: " + c.name +
                               (c.detail.empty() ? "" : " (" + c.detail + ")"));
  return m;
}

}  // namespace folia

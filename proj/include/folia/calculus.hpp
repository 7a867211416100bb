#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "folia/fields.hpp"
#include "folia/grid.hpp"
#include "folia/measure.hpp"
#include "folia/model.hpp"

namespace folia {

// ---------------------------------------------------------------------------
// map data
// ---------------------------------------------------------------------------

/// Target chart values per node, [node*qp + k].
inline std::vector<double> map_values(const BaseChart& c, const FoliatedMapField& phi) {
  std::vector<double> u(static_cast<size_t>(c.nodes()) * phi.qp);
  for (int i = 0; i < c.nodes(); ++i) phi.value(c, i, &u[static_cast<size_t>(i) * phi.qp]);
  return u;
}

/// Transversal differential d_T phi, (d_T phi)^k_a = winding^k_a + D_a psi^k.
inline PullbackOneForm d_T(const FoliatedMapField& phi, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  PullbackOneForm P = PullbackOneForm::zeros(c, phi);
  for (int a = 0; a < c.q; ++a) {
    const auto d = diff(c, phi.v, phi.qp, a);
    for (int i = 0; i < c.nodes(); ++i)
      for (int k = 0; k < phi.qp; ++k) P.at(i, a, k) = phi.winding[k][a] + d[static_cast<size_t>(i) * phi.qp + k];
  }
  return P;
}

// ---------------------------------------------------------------------------
// normal bundle calculus
// ---------------------------------------------------------------------------

/// (nabla_b Y)^a = D_b Y^a + gamma^a_{bc} Y^c, layout [node*q*q + b*q + a].
inline std::vector<double> covariant_derivative(const NormalField& Y, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, n = c.nodes();
  std::vector<std::vector<double>> dY(q);
  for (int b = 0; b < q; ++b) dY[b] = diff(c, Y.v, q, b);
  std::vector<double> T(static_cast<size_t>(n) * q * q, 0.0);
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < q; ++b)
      for (int a = 0; a < q; ++a) {
        double s = dY[b][static_cast<size_t>(i) * q + a];
        for (int cc = 0; cc < q; ++cc) s += m.gamma(i, a, b, cc) * Y.v[static_cast<size_t>(i) * q + cc];
        T[(static_cast<size_t>(i) * q + b) * q + a] = s;
      }
  return T;
}

/// -g^{ab} (nabla^2_{a,b} Y), the connection Laplacian without any kappa term.
inline NormalField connection_laplacian(const NormalField& Y, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, n = c.nodes();
  const auto T = covariant_derivative(Y, m);  // T[i][b][a] = (nabla_b Y)^a
  std::vector<std::vector<double>> dT(q);
  for (int a = 0; a < q; ++a) dT[a] = diff(c, T, q * q, a);
  NormalField out = NormalField::zeros(c);
  for (int i = 0; i < n; ++i)
    for (int e = 0; e < q; ++e) {
      double s = 0.0;
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          // (nabla_a T)_{b}{}^{e}
          double t = dT[a][(static_cast<size_t>(i) * q + b) * q + e];
          for (int d = 0; d < q; ++d) {
            t -= m.gamma(i, d, a, b) * T[(static_cast<size_t>(i) * q + d) * q + e];
            t += m.gamma(i, e, a, d) * T[(static_cast<size_t>(i) * q + b) * q + d];
          }
          s += -m.ginv(i, a, b) * t;
        }
      out.v[static_cast<size_t>(i) * q + e] = s;
    }
  return out;
}

/// nabla_{kappa#} Y.
inline NormalField kappa_derivative(const NormalField& Y, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, n = c.nodes();
  const auto T = covariant_derivative(Y, m);
  NormalField out = NormalField::zeros(c);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < q; ++a) {
      double s = 0.0;
      for (int b = 0; b < q; ++b)
        s += m.leaf.kappa_sharp[static_cast<size_t>(i) * q + b] * T[(static_cast<size_t>(i) * q + b) * q + a];
      out.v[static_cast<size_t>(i) * q + a] = s;
    }
  return out;
}

/// Rough Laplacian nabla_tr^* nabla_tr = -sum_a nabla^2_{E_a,E_a} + nabla_{kappa#},
/// the adjoint of nabla_tr in the full measure.
inline NormalField rough_laplacian(const NormalField& Y, const ModelFoliation& m) {
  NormalField out = connection_laplacian(Y, m);
  const NormalField k = kappa_derivative(Y, m);
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += k.v[i];
  return out;
}

/// div_nabla Y = (nabla_a Y)^a.
inline BasicScalarField divergence(const NormalField& Y, const ModelFoliation& m) {
  const auto T = covariant_derivative(Y, m);
  const int q = m.q(), n = m.nodes();
  BasicScalarField f = BasicScalarField::zeros(m.chart);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int a = 0; a < q; ++a) s += T[(static_cast<size_t>(i) * q + a) * q + a];
    f.v[i] = s;
  }
  return f;
}

/// Transversal divergence theorem residual:
/// | int div_nabla Y dmu_M  -  int g_Q(Y, kappa#) dmu_M |  (full measure).
inline double check_divergence_theorem(const NormalField& Y, const ModelFoliation& m) {
  const auto full = make_measure(m, MeasureMode::Full);
  const auto div = divergence(Y, m);
  const int q = m.q(), n = m.nodes();
  std::vector<double> rhs(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int a = 0; a < q; ++a) s += Y.v[static_cast<size_t>(i) * q + a] * m.leaf.kappa[static_cast<size_t>(i) * q + a];
    rhs[i] = s;
  }
  return std::abs(integrate(div, full) - integrate_nodewise(rhs, full));
}

/// (A_Y s)^a = -s^b (nabla_b Y)^a.
inline NormalField a_y_operator(const NormalField& Y, const NormalField& s, const ModelFoliation& m) {
  const auto T = covariant_derivative(Y, m);
  const int q = m.q(), n = m.nodes();
  NormalField out = NormalField::zeros(m.chart);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < q; ++a) {
      double v = 0.0;
      for (int b = 0; b < q; ++b) v -= s.v[static_cast<size_t>(i) * q + b] * T[(static_cast<size_t>(i) * q + b) * q + a];
      out.v[static_cast<size_t>(i) * q + a] = v;
    }
  return out;
}

/// Basic Laplacian on functions in divergence form with the full weight
/// rho = sqrt(det g) vol_L:
///   Delta_B f = -(1/rho) D_a (rho g^{ab} D_b f).
/// This is the exact discrete transpose pair with d_B, so self-adjointness in
/// the full measure holds to roundoff, and the kappa_B term is built in.
inline BasicScalarField basic_laplacian(const BasicScalarField& f, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, n = c.nodes();
  std::vector<std::vector<double>> df(q);
  for (int a = 0; a < q; ++a) df[a] = diff(c, f.v, 1, a);
  std::vector<double> flux(static_cast<size_t>(n) * q, 0.0);
  for (int i = 0; i < n; ++i) {
    const double rho = m.metric.sqrt_det[i] * m.leaf.vol_l[i];
    for (int a = 0; a < q; ++a) {
      double s = 0.0;
      for (int b = 0; b < q; ++b) s += m.ginv(i, a, b) * df[b][i];
      flux[static_cast<size_t>(i) * q + a] = rho * s;
    }
  }
  BasicScalarField out = BasicScalarField::zeros(c);
  for (int a = 0; a < q; ++a) {
    const auto dflux = diff(c, flux, q, a);
    for (int i = 0; i < n; ++i) out.v[i] -= dflux[static_cast<size_t>(i) * q + a];
  }
  for (int i = 0; i < n; ++i) out.v[i] /= m.metric.sqrt_det[i] * m.leaf.vol_l[i];
  return out;
}

/// kappa#(f) = g^{ab} kappa_a D_b f.
inline BasicScalarField kappa_sharp_derivative(const BasicScalarField& f, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, n = c.nodes();
  std::vector<std::vector<double>> df(q);
  for (int a = 0; a < q; ++a) df[a] = diff(c, f.v, 1, a);
  BasicScalarField out = BasicScalarField::zeros(c);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int a = 0; a < q; ++a) s += m.leaf.kappa_sharp[static_cast<size_t>(i) * q + a] * df[a][i];
    out.v[i] = s;
  }
  return out;
}

// ---------------------------------------------------------------------------
// pullback bundle calculus
// ---------------------------------------------------------------------------

/// (nabla^phi_a V)^k = D_a V^k + Gamma'^k_{ij}(phi) D_a phi^i V^j.
inline PullbackOneForm pullback_derivative(const PullbackSection& V, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const FoliatedMapField& phi = *V.base;
  const int q = c.q, qp = V.qp, n = c.nodes();
  const auto u = map_values(c, phi);
  const auto P = d_T(phi, m);
  std::vector<std::vector<double>> dV(q);
  for (int a = 0; a < q; ++a) dV[a] = diff(c, V.v, qp, a);
  PullbackOneForm out = PullbackOneForm::zeros(c, phi);
  for (int i = 0; i < n; ++i) {
    double G[2][2][2];
    phi.target->christoffel(&u[static_cast<size_t>(i) * qp], G);
    for (int a = 0; a < q; ++a)
      for (int k = 0; k < qp; ++k) {
        double s = dV[a][static_cast<size_t>(i) * qp + k];
        for (int ii = 0; ii < qp; ++ii)
          for (int j = 0; j < qp; ++j) s += G[k][ii][j] * P.at(i, a, ii) * V.v[static_cast<size_t>(i) * qp + j];
        out.at(i, a, k) = s;
      }
  }
  return out;
}

/// Full tensor covariant derivative of a bundle-valued 1-form:
/// (tln_a Phi)^k_b = D_a Phi^k_b - gamma^c_{ab} Phi^k_c + Gamma'^k_{ij} D_a phi^i Phi^j_b,
/// layout [node*q*q*qp + (a*q+b)*qp + k].
inline std::vector<double> oneform_derivative(const PullbackOneForm& Phi, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const FoliatedMapField& phi = *Phi.base;
  const int q = c.q, qp = Phi.qp, n = c.nodes();
  const auto u = map_values(c, phi);
  const auto P = d_T(phi, m);
  std::vector<std::vector<double>> dPhi(q);
  for (int a = 0; a < q; ++a) dPhi[a] = diff(c, Phi.v, q * qp, a);
  std::vector<double> T(static_cast<size_t>(n) * q * q * qp, 0.0);
  for (int i = 0; i < n; ++i) {
    double G[2][2][2];
    phi.target->christoffel(&u[static_cast<size_t>(i) * qp], G);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int k = 0; k < qp; ++k) {
          double s = dPhi[a][(static_cast<size_t>(i) * q + b) * qp + k];
          for (int cc = 0; cc < q; ++cc) s -= m.gamma(i, cc, a, b) * Phi.at(i, cc, k);
          for (int ii = 0; ii < qp; ++ii)
            for (int j = 0; j < qp; ++j) s += G[k][ii][j] * P.at(i, a, ii) * Phi.at(i, b, j);
          T[((static_cast<size_t>(i) * q + a) * q + b) * qp + k] = s;
        }
  }
  return T;
}

/// -g^{ab} nabla^2_{a,b} V on a pullback section (no kappa term).
inline PullbackSection connection_laplacian(const PullbackSection& V, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, qp = V.qp, n = c.nodes();
  const auto G1 = pullback_derivative(V, m);
  const auto T = oneform_derivative(G1, m);  // (tln_a G1)^k_b
  PullbackSection out = PullbackSection::zeros(c, *V.base);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < qp; ++k) {
      double s = 0.0;
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          s += -m.ginv(i, a, b) * T[((static_cast<size_t>(i) * q + a) * q + b) * qp + k];
      out.v[static_cast<size_t>(i) * qp + k] = s;
    }
  return out;
}

/// nabla^phi_{kappa#} V.
inline PullbackSection kappa_derivative(const PullbackSection& V, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, qp = V.qp, n = c.nodes();
  const auto G1 = pullback_derivative(V, m);
  PullbackSection out = PullbackSection::zeros(c, *V.base);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < qp; ++k) {
      double s = 0.0;
      for (int a = 0; a < q; ++a) s += m.leaf.kappa_sharp[static_cast<size_t>(i) * q + a] * G1.at(i, a, k);
      out.v[static_cast<size_t>(i) * qp + k] = s;
    }
  return out;
}

inline PullbackSection rough_laplacian(const PullbackSection& V, const ModelFoliation& m) {
  PullbackSection out = connection_laplacian(V, m);
  const PullbackSection k = kappa_derivative(V, m);
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += k.v[i];
  return out;
}

// ---------------------------------------------------------------------------
// bundle-valued exterior calculus, degrees 0..2
// ---------------------------------------------------------------------------

/// d_nabla on degree-0 sections coincides with the pullback derivative.
inline PullbackOneForm d_nabla(const PullbackSection& V, const ModelFoliation& m) {
  return pullback_derivative(V, m);
}

/// d_nabla on degree-1 forms: (d Phi)^k_{ab} = (tln_a Phi)^k_b - (tln_b Phi)^k_a.
inline PullbackTwoForm d_nabla(const PullbackOneForm& Phi, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, qp = Phi.qp, n = c.nodes();
  const auto T = oneform_derivative(Phi, m);
  PullbackTwoForm out = PullbackTwoForm::zeros(c, *Phi.base);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int k = 0; k < qp; ++k)
          out.at(i, a, b, k) = T[((static_cast<size_t>(i) * q + a) * q + b) * qp + k] -
                               T[((static_cast<size_t>(i) * q + b) * q + a) * qp + k];
  return out;
}

/// delta-tilde = delta_nabla - i(kappa#): the pure covariant divergence
/// (delta~ Phi)^k = -g^{ab} (tln_a Phi)^k_b. Shares its realization with the
/// tension field, so delta~ d_T phi = -tau_b(phi) holds to roundoff.
inline PullbackSection delta_tilde(const PullbackOneForm& Phi, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, qp = Phi.qp, n = c.nodes();
  const auto T = oneform_derivative(Phi, m);
  PullbackSection out = PullbackSection::zeros(c, *Phi.base);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < qp; ++k) {
      double s = 0.0;
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          s += -m.ginv(i, a, b) * T[((static_cast<size_t>(i) * q + a) * q + b) * qp + k];
      out.v[static_cast<size_t>(i) * qp + k] = s;
    }
  return out;
}

/// Full-measure adjoint of d_nabla on degree-1: delta_nabla = delta~ + i(kappa#).
inline PullbackSection delta_nabla(const PullbackOneForm& Phi, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, qp = Phi.qp, n = c.nodes();
  PullbackSection out = delta_tilde(Phi, m);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < qp; ++k) {
      double s = 0.0;
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) s += m.ginv(i, a, b) * m.leaf.kappa[static_cast<size_t>(i) * q + a] * Phi.at(i, b, k);
      out.v[static_cast<size_t>(i) * qp + k] += s;
    }
  return out;
}

/// delta_nabla on degree-2 forms:
/// (delta Psi)^k_b = -g^{ac} (tln_a Psi)^k_{cb} + kappa#^a Psi^k_{ab}.
inline PullbackOneForm delta_nabla(const PullbackTwoForm& Psi, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const FoliatedMapField& phi = *Psi.base;
  const int q = c.q, qp = Psi.qp, n = c.nodes();
  const auto u = map_values(c, phi);
  const auto P = d_T(phi, m);
  std::vector<std::vector<double>> dPsi(q);
  for (int a = 0; a < q; ++a) dPsi[a] = diff(c, Psi.v, q * q * qp, a);
  PullbackOneForm out = PullbackOneForm::zeros(c, phi);
  for (int i = 0; i < n; ++i) {
    double G[2][2][2];
    phi.target->christoffel(&u[static_cast<size_t>(i) * qp], G);
    for (int b = 0; b < q; ++b)
      for (int k = 0; k < qp; ++k) {
        double s = 0.0;
        for (int a = 0; a < q; ++a) {
          for (int cc = 0; cc < q; ++cc) {
            // (tln_a Psi)^k_{cb}
            double t = dPsi[a][(static_cast<size_t>(i) * q * q + static_cast<size_t>(cc) * q + b) * qp + k];
            for (int d = 0; d < q; ++d) {
              t -= m.gamma(i, d, a, cc) * Psi.at(i, d, b, k);
              t -= m.gamma(i, d, a, b) * Psi.at(i, cc, d, k);
            }
            for (int ii = 0; ii < qp; ++ii)
              for (int j = 0; j < qp; ++j) t += G[k][ii][j] * P.at(i, a, ii) * Psi.at(i, cc, b, j);
            s += -m.ginv(i, a, cc) * t;
          }
          s += m.leaf.kappa_sharp[static_cast<size_t>(i) * q + a] * Psi.at(i, a, b, k);
        }
        out.at(i, b, k) = s;
      }
  }
  return out;
}

/// Hodge-type Laplacian d_nabla delta_nabla + delta_nabla d_nabla on degree 1.
inline PullbackOneForm hodge_laplacian(const PullbackOneForm& Phi, const ModelFoliation& m) {
  const PullbackSection dv = delta_nabla(Phi, m);
  PullbackOneForm out = pullback_derivative(dv, m);
  const PullbackOneForm dd = delta_nabla(d_nabla(Phi, m), m);
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += dd.v[i];
  return out;
}

/// Rough Laplacian on degree-1 forms (full-measure adjoint pair with tln).
inline PullbackOneForm rough_laplacian(const PullbackOneForm& Phi, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const FoliatedMapField& phi = *Phi.base;
  const int q = c.q, qp = Phi.qp, n = c.nodes();
  const auto u = map_values(c, phi);
  const auto P = d_T(phi, m);
  const auto T = oneform_derivative(Phi, m);  // [i][a][b][k]
  std::vector<std::vector<double>> dT(q);
  for (int a = 0; a < q; ++a) dT[a] = diff(c, T, q * q * qp, a);
  PullbackOneForm out = PullbackOneForm::zeros(c, phi);
  for (int i = 0; i < n; ++i) {
    double G[2][2][2];
    phi.target->christoffel(&u[static_cast<size_t>(i) * qp], G);
    for (int e = 0; e < q; ++e)
      for (int k = 0; k < qp; ++k) {
        double s = 0.0;
        for (int a = 0; a < q; ++a)
          for (int b = 0; b < q; ++b) {
            // (tln_a T)_{b,e}^k with two source lower indices (b, e)
            double t = dT[a][((static_cast<size_t>(i) * q + b) * q + e) * qp + k];
            for (int d = 0; d < q; ++d) {
              t -= m.gamma(i, d, a, b) * T[((static_cast<size_t>(i) * q + d) * q + e) * qp + k];
              t -= m.gamma(i, d, a, e) * T[((static_cast<size_t>(i) * q + b) * q + d) * qp + k];
            }
            for (int ii = 0; ii < qp; ++ii)
              for (int j = 0; j < qp; ++j)
                t += G[k][ii][j] * P.at(i, a, ii) * T[((static_cast<size_t>(i) * q + b) * q + e) * qp + j];
            s += -m.ginv(i, a, b) * t;
          }
        // + nabla_{kappa#}
        for (int b = 0; b < q; ++b)
          s += m.leaf.kappa_sharp[static_cast<size_t>(i) * q + b] * T[((static_cast<size_t>(i) * q + b) * q + e) * qp + k];
        out.at(i, e, k) = s;
      }
  }
  return out;
}

/// A_{kappa#} on degree-1 forms: (A Phi)^k_a = Phi^k_b (nabla_a kappa#)^b.
inline PullbackOneForm a_kappa_oneform(const PullbackOneForm& Phi, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, qp = Phi.qp, n = c.nodes();
  NormalField ks{q, m.leaf.kappa_sharp};
  const auto dk = covariant_derivative(ks, m);  // dk[i][a][b] = (nabla_a kappa#)^b
  PullbackOneForm out = PullbackOneForm::zeros(c, *Phi.base);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < q; ++a)
      for (int k = 0; k < qp; ++k) {
        double s = 0.0;
        for (int b = 0; b < q; ++b) s += Phi.at(i, b, k) * dk[(static_cast<size_t>(i) * q + a) * q + b];
        out.at(i, a, k) = s;
      }
  return out;
}

/// Curvature term of the Weitzenbock identity on degree-1 forms:
/// F(Phi)^k_a = g^{bc} [ (R'(d phi_c, d phi_a) Phi_b)^k - Phi^k_d R^d_{bca} ].
inline PullbackOneForm weitzenbock_curvature(const PullbackOneForm& Phi, const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const FoliatedMapField& phi = *Phi.base;
  const int q = c.q, qp = Phi.qp, n = c.nodes();
  const auto u = map_values(c, phi);
  const auto P = d_T(phi, m);
  PullbackOneForm out = PullbackOneForm::zeros(c, phi);
  for (int i = 0; i < n; ++i) {
    const double* ui = &u[static_cast<size_t>(i) * qp];
    for (int a = 0; a < q; ++a) {
      double acc[2] = {0.0, 0.0};
      for (int b = 0; b < q; ++b)
        for (int cc = 0; cc < q; ++cc) {
          const double w = m.ginv(i, b, cc);
          if (w == 0.0) continue;
          double X[2] = {P.at(i, cc, 0), P.at(i, cc, 1)};
          double Y[2] = {P.at(i, a, 0), P.at(i, a, 1)};
          double Z[2] = {Phi.at(i, b, 0), Phi.at(i, b, 1)};
          double R[2];
          phi.target->riemann(ui, X, Y, Z, R);
          for (int k = 0; k < qp; ++k) acc[k] += w * R[k];
          for (int k = 0; k < qp; ++k)
            for (int d = 0; d < q; ++d) acc[k] -= w * Phi.at(i, d, k) * m.riem(i, d, b, cc, a);
        }
      for (int k = 0; k < qp; ++k) out.at(i, a, k) = acc[k];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// pointwise inner products
// ---------------------------------------------------------------------------

inline BasicScalarField inner_product(const NormalField& A, const NormalField& B,
                                      const ModelFoliation& m) {
  const int q = m.q(), n = m.nodes();
  if (A.v.size() != B.v.size()) throw std::invalid_argument("inner_product: shape mismatch");
  BasicScalarField f = BasicScalarField::zeros(m.chart);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) s += m.g(i, a, b) * A.v[static_cast<size_t>(i) * q + a] * B.v[static_cast<size_t>(i) * q + b];
    f.v[i] = s;
  }
  return f;
}

inline BasicScalarField inner_product(const PullbackSection& A, const PullbackSection& B,
                                      const ModelFoliation& m) {
  if (A.v.size() != B.v.size() || A.base != B.base)
    throw std::invalid_argument("inner_product: shape or base-map mismatch");
  const BaseChart& c = m.chart;
  const int qp = A.qp, n = c.nodes();
  const auto u = map_values(c, *A.base);
  BasicScalarField f = BasicScalarField::zeros(c);
  for (int i = 0; i < n; ++i) {
    const double mu = A.base->target->conf(&u[static_cast<size_t>(i) * qp]);
    double s = 0.0;
    for (int k = 0; k < qp; ++k) s += A.v[static_cast<size_t>(i) * qp + k] * B.v[static_cast<size_t>(i) * qp + k];
    f.v[i] = mu * mu * s;
  }
  return f;
}

inline BasicScalarField inner_product(const PullbackOneForm& A, const PullbackOneForm& B,
                                      const ModelFoliation& m) {
  if (A.v.size() != B.v.size() || A.base != B.base)
    throw std::invalid_argument("inner_product: shape or base-map mismatch");
  const BaseChart& c = m.chart;
  const int q = c.q, qp = A.qp, n = c.nodes();
  const auto u = map_values(c, *A.base);
  BasicScalarField f = BasicScalarField::zeros(c);
  for (int i = 0; i < n; ++i) {
    const double mu = A.base->target->conf(&u[static_cast<size_t>(i) * qp]);
    double s = 0.0;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        const double w = m.ginv(i, a, b);
        if (w == 0.0) continue;
        for (int k = 0; k < qp; ++k) s += w * A.at(i, a, k) * B.at(i, b, k);
      }
    f.v[i] = mu * mu * s;
  }
  return f;
}

/// Norm of the full covariant derivative |tln Phi|^2 per node.
inline BasicScalarField oneform_derivative_norm2(const PullbackOneForm& Phi,
                                                 const ModelFoliation& m) {
  const BaseChart& c = m.chart;
  const int q = c.q, qp = Phi.qp, n = c.nodes();
  const auto T = oneform_derivative(Phi, m);
  const auto u = map_values(c, *Phi.base);
  BasicScalarField f = BasicScalarField::zeros(c);
  for (int i = 0; i < n; ++i) {
    const double mu = Phi.base->target->conf(&u[static_cast<size_t>(i) * qp]);
    double s = 0.0;
    for (int a = 0; a < q; ++a)
      for (int a2 = 0; a2 < q; ++a2)
        for (int b = 0; b < q; ++b)
          for (int b2 = 0; b2 < q; ++b2) {
            const double w = m.ginv(i, a, a2) * m.ginv(i, b, b2);
            if (w == 0.0) continue;
            for (int k = 0; k < qp; ++k)
              s += w * T[((static_cast<size_t>(i) * q + a) * q + b) * qp + k] *
                   T[((static_cast<size_t>(i) * q + a2) * q + b2) * qp + k];
          }
    f.v[i] = mu * mu * s;
  }
  return f;
}

/// Both sides of the generalized Weitzenbock identity on a degree-1 form:
///   1/2 Delta_B |Phi|^2  vs  <Delta Phi, Phi> - |tln Phi|^2
///                            - <A_{kappa#} Phi, Phi> - <F(Phi), Phi>.
struct WeitzenbockReport {
  double residual = 0.0;       // max-norm over nodes
  double lhs_norm = 0.0;
  double rhs_norm = 0.0;
};

inline WeitzenbockReport weitzenbock_check(const PullbackOneForm& Phi, const ModelFoliation& m) {
  const int n = m.nodes();
  const BasicScalarField phi2 = inner_product(Phi, Phi, m);
  const BasicScalarField lap_phi2 = basic_laplacian(phi2, m);
  const PullbackOneForm lap = hodge_laplacian(Phi, m);
  const BasicScalarField ip_lap = inner_product(lap, Phi, m);
  const BasicScalarField grad2 = oneform_derivative_norm2(Phi, m);
  const PullbackOneForm ak = a_kappa_oneform(Phi, m);
  const BasicScalarField ip_ak = inner_product(ak, Phi, m);
  const PullbackOneForm fc = weitzenbock_curvature(Phi, m);
  const BasicScalarField ip_fc = inner_product(fc, Phi, m);

  WeitzenbockReport rep;
  for (int i = 0; i < n; ++i) {
    const double lhs = 0.5 * lap_phi2.v[i];
    const double rhs = ip_lap.v[i] - grad2.v[i] - ip_ak.v[i] - ip_fc.v[i];
    rep.residual = std::max(rep.residual, std::abs(lhs - rhs));
    rep.lhs_norm = std::max(rep.lhs_norm, std::abs(lhs));
    rep.rhs_norm = std::max(rep.rhs_norm, std::abs(rhs));
  }
  return rep;
}

}  // namespace folia

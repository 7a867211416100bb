#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace folia {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Periodic structured chart carrying the transversal coordinates.
///
/// Every axis is periodic with period 2*pi (closed source, no boundaries),
/// so spacing[a] * dims[a] == 2*pi per axis. Codimension q is 1 or 2;
/// derivatives are central differences of order fd_order (2 or 4).
struct BaseChart {
  int q = 2;
  std::array<int, 2> dims{8, 1};
  std::array<double, 2> spacing{0.0, 0.0};
  int fd_order = 2;

  static BaseChart make(int q, int resolution, int fd_order = 2) {
    if (q < 1 || q > 2) throw std::invalid_argument("BaseChart: q must be 1 or 2");
    if (resolution < 8) throw std::invalid_argument("BaseChart: every axis needs >= 8 nodes");
    if (fd_order != 2 && fd_order != 4)
      throw std::invalid_argument("BaseChart: fd_order must be 2 or 4");
    BaseChart c;
    c.q = q;
    c.dims = {resolution, q == 2 ? resolution : 1};
    c.spacing = {two_pi / c.dims[0], q == 2 ? two_pi / c.dims[1] : 0.0};
    c.fd_order = fd_order;
    return c;
  }

  int nodes() const { return dims[0] * dims[1]; }

  int index(int i0, int i1 = 0) const { return i0 * dims[1] + i1; }

  void coords(int node, double* x) const {
    x[0] = (node / dims[1]) * spacing[0];
    if (q == 2) x[1] = (node % dims[1]) * spacing[1];
  }

  double coord(int node, int axis) const {
    return axis == 0 ? (node / dims[1]) * spacing[0] : (node % dims[1]) * spacing[1];
  }

  /// Node reached by stepping `offset` cells along `axis` with periodic wrap.
  int shifted(int node, int axis, int offset) const {
    int i0 = node / dims[1];
    int i1 = node % dims[1];
    if (axis == 0) {
      i0 = (i0 + offset) % dims[0];
      if (i0 < 0) i0 += dims[0];
    } else {
      i1 = (i1 + offset) % dims[1];
      if (i1 < 0) i1 += dims[1];
    }
    return i0 * dims[1] + i1;
  }

  double cell() const { return q == 2 ? spacing[0] * spacing[1] : spacing[0]; }
};

/// Central difference along `axis` of a `comps`-component nodal array.
/// Order 2: (f_{+1} - f_{-1}) / 2h.  Order 4: (8(f_{+1}-f_{-1}) - (f_{+2}-f_{-2})) / 12h.
inline void diff(const BaseChart& c, const std::vector<double>& f, int comps, int axis,
                 std::vector<double>& out) {
  if (axis < 0 || axis >= c.q) throw std::invalid_argument("diff: axis out of range");
  const int n = c.nodes();
  if (static_cast<int>(f.size()) != n * comps)
    throw std::invalid_argument("diff: field size does not match chart");
  out.assign(f.size(), 0.0);
  const double h = c.spacing[axis];
  if (c.fd_order == 2) {
    const double w1 = 1.0 / (2.0 * h);
    for (int i = 0; i < n; ++i) {
      const int ip = c.shifted(i, axis, +1), im = c.shifted(i, axis, -1);
      for (int k = 0; k < comps; ++k)
        out[i * comps + k] = w1 * (f[ip * comps + k] - f[im * comps + k]);
    }
  } else {
    const double w1 = 8.0 / (12.0 * h), w2 = 1.0 / (12.0 * h);
    for (int i = 0; i < n; ++i) {
      const int ip = c.shifted(i, axis, +1), im = c.shifted(i, axis, -1);
      const int ip2 = c.shifted(i, axis, +2), im2 = c.shifted(i, axis, -2);
      for (int k = 0; k < comps; ++k)
        out[i * comps + k] = w1 * (f[ip * comps + k] - f[im * comps + k]) -
                             w2 * (f[ip2 * comps + k] - f[im2 * comps + k]);
    }
  }
}

inline std::vector<double> diff(const BaseChart& c, const std::vector<double>& f, int comps,
                                int axis) {
  std::vector<double> out;
  diff(c, f, comps, axis, out);
  return out;
}

}  // namespace folia

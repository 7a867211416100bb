#pragma once

#include <stdexcept>
#include <vector>

#include "folia/fields.hpp"
#include "folia/model.hpp"

namespace folia {

enum class MeasureMode { Transversal, Full };

/// Quadrature weights for the two measures of the reduction: the transversal
/// one (sqrt(det g) * cell, i.e. (1/vol_L) mu_M) and the full one (times
/// vol_L, i.e. mu_M). Trapezoid weights are exact on periodic grids.
struct WeightedMeasure {
  MeasureMode mode = MeasureMode::Transversal;
  std::vector<double> weight;  // per node, includes the cell volume
};

inline WeightedMeasure make_measure(const ModelFoliation& m, MeasureMode mode) {
  WeightedMeasure wm;
  wm.mode = mode;
  const int n = m.nodes();
  wm.weight.resize(n);
  const double cell = m.chart.cell();
  for (int i = 0; i < n; ++i) {
    double w = m.metric.sqrt_det[i] * cell;
    if (mode == MeasureMode::Full) w *= m.leaf.vol_l[i];
    wm.weight[i] = w;
  }
  return wm;
}

/// Fixed-order compensated sum; bit-identical across runs.
inline double integrate(const BasicScalarField& f, const WeightedMeasure& wm) {
  if (f.v.size() != wm.weight.size())
    throw std::invalid_argument("integrate: field and measure sizes differ");
  double sum = 0.0, comp = 0.0;
  for (size_t i = 0; i < f.v.size(); ++i) {
    const double term = f.v[i] * wm.weight[i] - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

inline double integrate_nodewise(const std::vector<double>& values, const WeightedMeasure& wm) {
  BasicScalarField f{values};
  return integrate(f, wm);
}

}  // namespace folia

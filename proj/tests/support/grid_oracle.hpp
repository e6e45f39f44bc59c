#pragma once

#include "thaumakit/sdp.hpp"

#include <cmath>
#include <limits>

namespace thaumakit::testing {

inline bool grid_feasible(const ConeProgram& p, const RVector& x) {
  const RVector s = p.h - p.G * x;
  for (int i = 0; i < p.dims.nonneg; ++i)
    if (s(i) < 0) return false;
  for (std::size_t k = 0; k < p.dims.psd.size(); ++k) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(psd_block(p.dims, s, static_cast<int>(k)), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < 0) return false;
  }
  return true;
}

/// Brute-force minimum of a two-variable inequality-form program over the box
/// [-radius, radius]^2 by repeated grid refinement around the incumbent.
inline double grid_minimum(const ConeProgram& p, double radius = 3.0, int points = 201, int zooms = 12) {
  double best = std::numeric_limits<double>::infinity();
  double cx = 0.0, cy = 0.0, half = radius;
  for (int z = 0; z <= zooms; ++z) {
    const double step = 2.0 * half / (points - 1);
    double bx = cx, by = cy;
    for (int i = 0; i < points; ++i)
      for (int j = 0; j < points; ++j) {
        RVector x(2);
        x << cx - half + i * step, cy - half + j * step;
        if (!grid_feasible(p, x)) continue;
        const double v = p.c.dot(x);
        if (v < best) {
          best = v;
          bx = x(0);
          by = x(1);
        }
      }
    cx = bx;
    cy = by;
    half *= 0.3;
  }
  return best + p.objective_offset;
}

}  // namespace thaumakit::testing

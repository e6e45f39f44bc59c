#pragma once

// Cutting-plane evaluation of max over sigma in W of beta(sigma), where
// beta(sigma) = min{tr M sigma : 0 <= M <= I, tr M rho >= 1 - eps}.
// Alternates between the hypothesis test for the current sigma and a master
// program over W that keeps every test found so far as a cut.

#include "thaumakit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace thaumakit::testing {

struct KelleyResult {
  double lower = 0.0;  // bits, from the best master bound
  double upper = 0.0;  // bits, from the best evaluated sigma
  int rounds = 0;
};

inline KelleyResult kelley_min_dh(const PhaseSpace& ps, const HermitianOperator& rho, double eps,
                                  double tol_bits = 1e-5, int max_rounds = 400) {
  const int n = ps.num_points();
  const int d = ps.dim();
  std::vector<RVector> cuts;  // Wigner coefficients d * W_M of each test
  HermitianOperator sigma = HermitianOperator::identity(d) * (1.0 / d);
  double best_beta = 0.0;
  double master = 1.0;
  KelleyResult out;
  for (int k = 0; k < max_rounds; ++k) {
    const MeasureResult test = dh_epsilon(rho, sigma, eps);
    const HermitianOperator& m = *test.primal_witness;
    best_beta = std::max(best_beta, m.inner(sigma));
    cuts.push_back(d * ps.wigner_rep(m).values);

    ProgramBuilder b("cutting-plane master over W");
    const int w0 = b.add_variables(n);
    const int c0 = b.add_variables(n);
    const int t = b.add_variables(1);
    b.add_objective(t, -1.0);
    std::vector<Term> budget;
    for (int u = 0; u < n; ++u) {
      b.add_less_equal({{w0 + u, 1.0}, {c0 + u, -1.0}}, 0.0);
      b.add_less_equal({{w0 + u, -1.0}, {c0 + u, -1.0}}, 0.0);
      budget.push_back({c0 + u, 1.0});
    }
    b.add_less_equal(budget, 1.0);
    for (const RVector& cut : cuts) {
      std::vector<Term> row{{t, 1.0}};
      for (int u = 0; u < n; ++u) row.push_back({w0 + u, -cut(u)});
      b.add_less_equal(row, 0.0);
    }
    std::vector<std::pair<int, HermitianOperator>> lmi;
    for (int u = 0; u < n; ++u) lmi.emplace_back(w0 + u, ps.point_operator(u));
    b.add_lmi(HermitianOperator::zero(d), lmi);
    const ConeSolution sol = solve(b.build());
    if (!sol.optimal()) break;
    master = -sol.primal_value;
    sigma = ps.reconstruct(RVector(sol.x.segment(w0, n)));
    out.rounds = k + 1;
    if (best_beta > 0 && std::log2(master / best_beta) <= tol_bits) break;
  }
  out.lower = -std::log2(master);
  out.upper = best_beta > 0 ? -std::log2(best_beta) : INFINITY;
  return out;
}

}  // namespace thaumakit::testing

#pragma once

// Magic monotones of qudit states. All values are in bits.

#include "thaumakit/phase_space.hpp"
#include "thaumakit/sdp.hpp"

#include <optional>
#include <string>

namespace thaumakit {

struct MeasureResult {
  double value = 0.0;
  std::optional<HermitianOperator> primal_witness;
  std::optional<HermitianOperator> dual_witness;
  // Values implied by each side of the optimization (bits).
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  // Mixing weight of I/d applied to a rank-deficient input (relative entropy thauma only).
  double perturbation = 0.0;
  bool converged = true;
};

struct MeasureOptions {
  SolverOptions solver = default_solver();
  /// Required agreement (bits) between the primal and dual programs.
  double agreement = 1e-6;

  static SolverOptions default_solver();
};

/// log2 of the Wigner trace norm.
double mana(const PhaseSpace& ps, const HermitianOperator& rho);

/// Primal: -log2 max{tr P sigma : sigma >= 0, ||sigma||_{W,1} <= 1}, P the
/// support projector of rho (witness sigma). Dual: -log2 min{||Q||_{W,inf} :
/// Q >= P} (witness Q).
MeasureResult theta_min(const PhaseSpace& ps, const HermitianOperator& rho, const MeasureOptions& opts = {});

/// Primal: log2 max{tr rho G : G >= 0, ||G||_{W,inf} <= 1} (witness G).
/// Dual: log2 min{||V||_{W,1} : V >= rho} (witness V).
MeasureResult theta_max(const PhaseSpace& ps, const HermitianOperator& rho, const MeasureOptions& opts = {});

/// The alternative max-thauma dual log2 min{tr V : V >= rho, ||V||_{W,1} <= 1}.
/// Reported for comparison only: it is infeasible whenever rho lies outside W.
struct BoundedDualResult {
  SolveStatus status = SolveStatus::NumericalTrouble;
  double value = 0.0;
};
BoundedDualResult theta_max_bounded_dual(const PhaseSpace& ps, const HermitianOperator& rho,
                                         const MeasureOptions& opts = {});

struct ThetaOptions {
  double tol = 1e-4;
  int max_frank_wolfe = 200;
  int warm_frank_wolfe = 10;
  double support_floor = 1e-9;
  MeasureOptions measure;
};

/// min over sigma in W of D(rho||sigma). The result carries the minimizer as
/// primal witness and a Frank-Wolfe duality gap bounding the suboptimality.
MeasureResult theta(const PhaseSpace& ps, const HermitianOperator& rho, const ThetaOptions& opts = {});

/// D(rho||sigma) in bits; +infinity when supp rho is not inside supp sigma.
double relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma);
/// tr rho (log2 rho - log2 sigma)^2 - D(rho||sigma)^2; +infinity on support violation.
double relative_entropy_variance(const HermitianOperator& rho, const HermitianOperator& sigma);
/// log2 min{lambda : rho <= lambda sigma}; +infinity on support violation.
double max_relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma);

/// -log2 min{tr M sigma : 0 <= M <= I, tr M rho >= 1 - eps}; the test M is the
/// primal witness. Returns +infinity when the minimum vanishes.
MeasureResult dh_epsilon(const HermitianOperator& rho, const HermitianOperator& sigma, double eps,
                         const MeasureOptions& opts = {});

/// min over sigma in W of D_H^eps(rho||sigma), evaluated as
/// -log2 min{||Q||_{W,inf} : Q >= M, 0 <= M <= I, tr M rho >= 1 - eps}.
/// Primal witness M, dual witness Q.
MeasureResult min_dh_over_w(const PhaseSpace& ps, const HermitianOperator& rho, double eps,
                            const MeasureOptions& opts = {});

/// Throws DomainError unless rho is a unit-trace PSD operator of the space's dimension.
void require_state(const PhaseSpace& ps, const HermitianOperator& rho, const char* what);

}  // namespace thaumakit

#pragma once

// Distillation bounds built from the magic monotones. Infinite results use
// IEEE +infinity; serializers print it as "inf".

#include "thaumakit/measures.hpp"

#include <string>
#include <vector>

namespace thaumakit {

enum class Target { Hplus, T };

struct TargetState {
  Target target = Target::Hplus;
  std::string name;
  /// log2(3 - sqrt 3) for Hplus, log2(1 + 2 sin(pi/18)) for T.
  double denominator = 0.0;
};

TargetState target_state(Target t);
/// Accepts "Hplus" or "T"; throws DomainError otherwise.
TargetState target_state(const std::string& name);

/// Standard normal quantile (AS241, PPND16). Requires 0 < p < 1.
double inverse_normal_cdf(double p);

/// min over W of D_H^eps(rho||sigma), divided by the target denominator.
double one_shot_bound(const PhaseSpace& ps, const HermitianOperator& rho, double eps, const TargetState& target,
                      const MeasureOptions& opts = {});
/// Reciprocal of one_shot_bound; +inf when that bound vanishes.
double overhead_bound(const PhaseSpace& ps, const HermitianOperator& rho, double eps, const TargetState& target,
                      const MeasureOptions& opts = {});
/// theta(rho) / denominator.
double asymptotic_bound(const PhaseSpace& ps, const HermitianOperator& rho, const TargetState& target,
                        const ThetaOptions& opts = {});

struct SecondOrderBound {
  double value = 0.0;
  double theta = 0.0;
  double variance = 0.0;  // V(rho||sigma) at the theta minimizer
  double quantile = 0.0;  // inverse normal cdf at eps
  std::string note = "asymptotic, up to O(log n)";
};

/// (n theta + sqrt(n V) Phi^-1(eps)) / denominator, with sigma the minimizer found by theta().
SecondOrderBound second_order_bound(const PhaseSpace& ps, const HermitianOperator& rho, int n, double eps,
                                    const TargetState& target, const ThetaOptions& opts = {});

/// M(xi) / M(rho); +inf when M(rho) vanishes.
double efficiency_bound_mana(const PhaseSpace& ps, const HermitianOperator& rho, const HermitianOperator& xi);
/// theta_max(xi) / theta_max(rho); +inf when theta_max(rho) vanishes.
double efficiency_bound_thauma(const PhaseSpace& ps, const HermitianOperator& rho, const HermitianOperator& xi,
                               const MeasureOptions& opts = {});

struct InterconversionBound {
  double theta_min_rho = 0.0, theta_max_rho = 0.0;
  double theta_min_xi = 0.0, theta_max_xi = 0.0;
  double lower = 0.0;  // theta_min(rho) / theta_max(xi)
  double upper = 0.0;  // theta_max(rho) / theta_min(xi), the reported rate bound
  bool exact = false;  // both brackets collapse within 1e-6
  bool below_one = false;

  const char* label() const { return exact ? "exact" : "interval"; }
};

InterconversionBound interconversion_bound(const PhaseSpace& ps, const HermitianOperator& rho,
                                           const HermitianOperator& xi, const MeasureOptions& opts = {});

struct SweepRow {
  double p1 = 0.0;
  double p2 = 0.0;
  double n_mana = 0.0;
  double n_thauma_max = 0.0;
};

/// p1 = 0, 0.01, ..., 0.90.
std::vector<double> default_p1_grid();

/// (1 - p1 - p2) H+ + p1 H- + p2 Hi.
HermitianOperator figure1_input(double p1, double p2);

/// Efficiency bounds towards H+ for each grid point, in grid order. ps must be the qutrit space.
std::vector<SweepRow> figure1_sweep(const PhaseSpace& ps, double p2, const std::vector<double>& p1_grid, const MeasureOptions& opts = {});

}  // namespace thaumakit

#include "thaumakit/bounds.hpp"

#include "thaumakit/error.hpp"
#include "thaumakit/stabilizer.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace thaumakit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Values at or below these count as zero when they appear in a denominator.
constexpr double kManaZero = 1e-12;
constexpr double kSdpZero = 1e-9;

double poly(const double (&c)[8], double x) {
  double v = c[7];
  for (int i = 6; i >= 0; --i) v = v * x + c[i];
  return v;
}

double ratio(double num, double den, double zero) { return den <= zero ? kInf : num / den; }

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("eps must lie in [0, 1)");
}

}  // namespace

TargetState target_state(Target t) {
  TargetState s;
  s.target = t;
  if (t == Target::Hplus) {
    s.name = "Hplus";
    s.denominator = std::log2(3.0 - std::numbers::sqrt3);
  } else {
    s.name = "T";
    s.denominator = std::log2(1.0 + 2.0 * std::sin(std::numbers::pi / 18.0));
  }
  return s;
}

TargetState target_state(const std::string& name) {
  if (name == "Hplus") return target_state(Target::Hplus);
  if (name == "T") return target_state(Target::T);
  throw DomainError("unknown target '" + name + "' (expected Hplus or T)");
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("inverse_normal_cdf: p must lie in (0, 1)");
  static constexpr double a[8] = {3.3871328727963666080e0,  1.3314166789178437745e+2, 1.9715909503065514427e+3,
                                  1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                  3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[8] = {1.0,
                                  4.2313330701600911252e+1,
                                  6.8718700749205790830e+2,
                                  5.3941960214247511077e+3,
                                  2.1213794301586595867e+4,
                                  3.9307895800092710610e+4,
                                  2.8729085735721942674e+4,
                                  5.2264952788528545610e+3};
  static constexpr double c[8] = {1.42343711074968357734e0,  4.63033784615654529590e0,  5.76949722146069140550e0,
                                  3.64784832476320460504e0,  1.27045825245236838258e0,  2.41780725177450611770e-1,
                                  2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[8] = {1.0,
                                  2.05319162663775882187e0,
                                  1.67638483018380384940e0,
                                  6.89767334985100004550e-1,
                                  1.48103976427480074590e-1,
                                  1.51986665636164571966e-2,
                                  5.47593808499534494600e-4,
                                  1.05075007164441684324e-9};
  static constexpr double e[8] = {6.65790464350110377720e0,  5.46378491116411436990e0,  1.78482653991729133580e0,
                                  2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                  2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[8] = {1.0,
                                  5.99832206555887937690e-1,
                                  1.36929880922735805310e-1,
                                  1.48753612908506148525e-2,
                                  7.86869131145613259100e-4,
                                  1.84631831751005468180e-5,
                                  1.42151175831644588870e-7,
                                  2.04426310338993978564e-15};
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * poly(a, r) / poly(b, r);
  }
  double r = std::sqrt(-std::log(q < 0 ? p : 1.0 - p));
  double v;
  if (r <= 5.0) {
    r -= 1.6;
    v = poly(c, r) / poly(d, r);
  } else {
    r -= 5.0;
    v = poly(e, r) / poly(f, r);
  }
  return q < 0 ? -v : v;
}

double one_shot_bound(const PhaseSpace& ps, const HermitianOperator& rho, double eps, const TargetState& target,
                      const MeasureOptions& opts) {
  check_eps(eps);
  return min_dh_over_w(ps, rho, eps, opts).value / target.denominator;
}

double overhead_bound(const PhaseSpace& ps, const HermitianOperator& rho, double eps, const TargetState& target,
                      const MeasureOptions& opts) {
  return ratio(1.0, one_shot_bound(ps, rho, eps, target, opts), kSdpZero);
}

double asymptotic_bound(const PhaseSpace& ps, const HermitianOperator& rho, const TargetState& target,
                        const ThetaOptions& opts) {
  return theta(ps, rho, opts).value / target.denominator;
}

SecondOrderBound second_order_bound(const PhaseSpace& ps, const HermitianOperator& rho, int n, double eps,
                                    const TargetState& target, const ThetaOptions& opts) {
  if (n < 1) throw DomainError("second_order_bound: n must be at least 1");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("second_order_bound: eps must lie in (0, 1)");
  const MeasureResult th = theta(ps, rho, opts);
  SecondOrderBound out;
  out.theta = th.value;
  out.variance = relative_entropy_variance(rho, *th.primal_witness);
  out.quantile = eps == 0.5 ? 0.0 : inverse_normal_cdf(eps);
  const double spread = out.quantile == 0.0 ? 0.0 : std::sqrt(n * out.variance) * out.quantile;
  out.value = (n * out.theta + spread) / target.denominator;
  return out;
}

double efficiency_bound_mana(const PhaseSpace& ps, const HermitianOperator& rho, const HermitianOperator& xi) {
  return ratio(mana(ps, xi), mana(ps, rho), kManaZero);
}

double efficiency_bound_thauma(const PhaseSpace& ps, const HermitianOperator& rho, const HermitianOperator& xi,
                               const MeasureOptions& opts) {
  return ratio(theta_max(ps, xi, opts).value, theta_max(ps, rho, opts).value, kSdpZero);
}

InterconversionBound interconversion_bound(const PhaseSpace& ps, const HermitianOperator& rho,
                                           const HermitianOperator& xi, const MeasureOptions& opts) {
  InterconversionBound out;
  out.theta_min_rho = theta_min(ps, rho, opts).value;
  out.theta_max_rho = theta_max(ps, rho, opts).value;
  out.theta_min_xi = theta_min(ps, xi, opts).value;
  out.theta_max_xi = theta_max(ps, xi, opts).value;
  out.upper = ratio(out.theta_max_rho, out.theta_min_xi, kSdpZero);
  out.lower = ratio(out.theta_min_rho, out.theta_max_xi, kSdpZero);
  out.exact = std::abs(out.theta_max_rho - out.theta_min_rho) <= 1e-6 &&
              std::abs(out.theta_max_xi - out.theta_min_xi) <= 1e-6 && std::isfinite(out.upper);
  out.below_one = out.upper < 1.0;
  return out;
}

std::vector<double> default_p1_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 90; ++k) g.push_back(k / 100.0);
  return g;
}

HermitianOperator figure1_input(double p1, double p2) {
  if (!(p1 >= 0.0 && p2 >= 0.0 && p1 + p2 <= 1.0 + 1e-12)) {
    throw DomainError("figure1 mixture weights must satisfy p1, p2 >= 0 and p1 + p2 <= 1");
  }
  return (1.0 - p1 - p2) * named_state("Hplus").density + p1 * named_state("Hminus").density +
         p2 * named_state("Hi").density;
}

std::vector<SweepRow> figure1_sweep(const PhaseSpace& ps, double p2, const std::vector<double>& p1_grid,
                                    const MeasureOptions& opts) {
  if (ps.spec() != DimensionSpec({3})) throw DomainError("figure1_sweep requires the qutrit space (3)");
  if (!(p2 >= 0.0 && p2 <= 1.0)) throw DomainError("p2 must lie in [0, 1]");
  const HermitianOperator target = named_state("Hplus").density;
  const double target_mana = mana(ps, target);
  const double target_theta = theta_max(ps, target, opts).value;
  std::vector<SweepRow> rows;
  rows.reserve(p1_grid.size());
  for (double p1 : p1_grid) {
    const HermitianOperator rho = figure1_input(p1, p2);
    SweepRow row;
    row.p1 = p1;
    row.p2 = p2;
    row.n_mana = ratio(target_mana, mana(ps, rho), kManaZero);
    row.n_thauma_max = ratio(target_theta, theta_max(ps, rho, opts).value, kSdpZero);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace thaumakit

#include "thaumakit/measures.hpp"

#include "thaumakit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace thaumakit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;

std::vector<std::pair<int, HermitianOperator>> point_terms(const PhaseSpace& ps, int first) {
  std::vector<std::pair<int, HermitianOperator>> terms;
  terms.reserve(static_cast<std::size_t>(ps.num_points()));
  for (int u = 0; u < ps.num_points(); ++u) terms.emplace_back(first + u, ps.point_operator(u));
  return terms;
}

std::vector<std::pair<int, HermitianOperator>> basis_terms(const std::vector<HermitianOperator>& basis, int first,
                                                           double sign = 1.0) {
  std::vector<std::pair<int, HermitianOperator>> terms;
  terms.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) terms.emplace_back(first + static_cast<int>(k), sign * basis[k]);
  return terms;
}

// |x_u| <= c_u for every point, optionally with sum c <= 1.
void add_abs_split(ProgramBuilder& b, int x0, int c0, int n, bool unit_budget) {
  std::vector<Term> budget;
  for (int u = 0; u < n; ++u) {
    b.add_less_equal({{x0 + u, 1.0}, {c0 + u, -1.0}}, 0.0);
    b.add_less_equal({{x0 + u, -1.0}, {c0 + u, -1.0}}, 0.0);
    budget.push_back({c0 + u, 1.0});
  }
  if (unit_budget) b.add_less_equal(budget, 1.0);
}

ConeSolution solve_or_throw(const ProgramBuilder& b, const SolverOptions& opts, const char* what) {
  const ConeSolution sol = solve(b.build(), opts);
  if (!sol.optimal()) {
    throw SolverError(std::string(what) + ": solver ended with status " + to_string(sol.status));
  }
  return sol;
}

void check_agreement(double a, double b, double tol, const char* what) {
  if (!(std::abs(a - b) <= tol)) {
    throw SolverError(std::string(what) + ": primal and dual programs disagree by " + std::to_string(std::abs(a - b)) +
                      " bits");
  }
}

double safe_neg_log2(double x) { return x > 0 ? -std::log2(x) : kInf; }

}  // namespace

SolverOptions MeasureOptions::default_solver() {
  SolverOptions o;
  o.target_gap = 1e-11;
  o.target_feasibility = 1e-11;
  o.accept_gap = 1e-8;
  o.accept_feasibility = 1e-8;
  return o;
}

void require_state(const PhaseSpace& ps, const HermitianOperator& rho, const char* what) {
  if (rho.dim() != ps.dim()) {
    throw DomainError(std::string(what) + ": state dimension " + std::to_string(rho.dim()) +
                      " does not match phase space " + ps.spec().to_string());
  }
  if (std::abs(rho.trace() - 1.0) > 1e-9) {
    throw DomainError(std::string(what) + ": state trace is " + std::to_string(rho.trace()) + ", expected 1");
  }
  if (min_eigenvalue(rho) < -1e-9) throw DomainError(std::string(what) + ": state is not positive semidefinite");
}

double mana(const PhaseSpace& ps, const HermitianOperator& rho) {
  require_state(ps, rho, "mana");
  return std::log2(ps.wigner_trace_norm(rho));
}

MeasureResult theta_min(const PhaseSpace& ps, const HermitianOperator& rho, const MeasureOptions& opts) {
  require_state(ps, rho, "theta_min");
  const int n = ps.num_points();
  const int d = ps.dim();
  const HermitianOperator proj = support_projector(rho, 1e-9);
  const RVector wp = ps.wigner_rep(proj).values;

  MeasureResult r;
  {
    ProgramBuilder b("min-thauma primal: max tr P sigma over W");
    const int w0 = b.add_variables(n);
    const int c0 = b.add_variables(n);
    for (int u = 0; u < n; ++u) b.add_objective(w0 + u, -d * wp(u));
    add_abs_split(b, w0, c0, n, true);
    b.add_lmi(HermitianOperator::zero(d), point_terms(ps, w0));
    const auto sol = solve_or_throw(b, opts.solver, "theta_min primal");
    r.primal_value = safe_neg_log2(-sol.primal_value);
    r.primal_witness = ps.reconstruct(RVector(sol.x.segment(w0, n)));
    r.iterations += sol.iterations;
  }
  {
    ProgramBuilder b("min-thauma dual: min ||Q||_{W,inf} over Q >= P");
    const int q0 = b.add_variables(n);
    const int t = b.add_variables(1);
    b.add_objective(t, 1.0);
    for (int u = 0; u < n; ++u) {
      b.add_less_equal({{q0 + u, double(d)}, {t, -1.0}}, 0.0);
      b.add_less_equal({{q0 + u, -double(d)}, {t, -1.0}}, 0.0);
    }
    b.add_lmi(-1.0 * proj, point_terms(ps, q0));
    const auto sol = solve_or_throw(b, opts.solver, "theta_min dual");
    r.dual_value = safe_neg_log2(sol.primal_value);
    r.dual_witness = ps.reconstruct(RVector(sol.x.segment(q0, n)));
    r.iterations += sol.iterations;
  }
  r.gap = std::abs(r.primal_value - r.dual_value);
  check_agreement(r.primal_value, r.dual_value, opts.agreement, "theta_min");
  r.value = 0.5 * (r.primal_value + r.dual_value);
  return r;
}

MeasureResult theta_max(const PhaseSpace& ps, const HermitianOperator& rho, const MeasureOptions& opts) {
  require_state(ps, rho, "theta_max");
  const int n = ps.num_points();
  const int d = ps.dim();
  const RVector wr = ps.wigner_rep(rho).values;

  MeasureResult r;
  {
    ProgramBuilder b("max-thauma primal: max tr rho G, G >= 0, ||G||_{W,inf} <= 1");
    const int g0 = b.add_variables(n);
    for (int u = 0; u < n; ++u) {
      b.add_objective(g0 + u, -d * wr(u));
      b.add_less_equal({{g0 + u, double(d)}}, 1.0);
      b.add_less_equal({{g0 + u, -double(d)}}, 1.0);
    }
    b.add_lmi(HermitianOperator::zero(d), point_terms(ps, g0));
    const auto sol = solve_or_throw(b, opts.solver, "theta_max primal");
    r.primal_value = std::log2(-sol.primal_value);
    r.primal_witness = ps.reconstruct(RVector(sol.x.segment(g0, n)));
    r.iterations += sol.iterations;
  }
  {
    ProgramBuilder b("max-thauma dual: min ||V||_{W,1} over V >= rho");
    const int v0 = b.add_variables(n);
    const int c0 = b.add_variables(n);
    for (int u = 0; u < n; ++u) b.add_objective(c0 + u, 1.0);
    add_abs_split(b, v0, c0, n, false);
    b.add_lmi(-1.0 * rho, point_terms(ps, v0));
    const auto sol = solve_or_throw(b, opts.solver, "theta_max dual");
    r.dual_value = std::log2(sol.primal_value);
    r.dual_witness = ps.reconstruct(RVector(sol.x.segment(v0, n)));
    r.iterations += sol.iterations;
  }
  r.gap = std::abs(r.primal_value - r.dual_value);
  check_agreement(r.primal_value, r.dual_value, opts.agreement, "theta_max");
  r.value = 0.5 * (r.primal_value + r.dual_value);
  return r;
}

BoundedDualResult theta_max_bounded_dual(const PhaseSpace& ps, const HermitianOperator& rho,
                                         const MeasureOptions& opts) {
  require_state(ps, rho, "theta_max_bounded_dual");
  const int n = ps.num_points();
  ProgramBuilder b("max-thauma bounded dual: min tr V, V >= rho, ||V||_{W,1} <= 1");
  const int v0 = b.add_variables(n);
  const int c0 = b.add_variables(n);
  for (int u = 0; u < n; ++u) b.add_objective(v0 + u, 1.0);
  add_abs_split(b, v0, c0, n, true);
  b.add_lmi(-1.0 * rho, point_terms(ps, v0));
  const auto sol = solve(b.build(), opts.solver);
  BoundedDualResult out;
  out.status = sol.status;
  out.value = sol.optimal() ? std::log2(sol.primal_value) : kInf;
  return out;
}

// ---------------------------------------------------------------------------
// Relative entropies

namespace {

struct Eig {
  RVector v;
  CMatrix u;
};

Eig eig_of(const HermitianOperator& h) {
  const Spectrum s = eigh(h);
  return {s.values, s.vectors};
}

// Components of rho outside the numerical support of sigma.
bool support_violated(const HermitianOperator& rho, const Eig& se, double rel_cut) {
  const double top = std::max(se.v.cwiseAbs().maxCoeff(), 1e-300);
  const CMatrix rt = se.u.adjoint() * rho.matrix() * se.u;
  for (Eigen::Index j = 0; j < se.v.size(); ++j) {
    if (se.v(j) <= rel_cut * top && rt(j, j).real() > 1e-12) return true;
  }
  return false;
}

// log2 on the spectrum, zero on the kernel.
CMatrix log2_op(const Eig& e, double rel_cut) {
  const double top = std::max(e.v.cwiseAbs().maxCoeff(), 1e-300);
  RVector l(e.v.size());
  for (Eigen::Index i = 0; i < e.v.size(); ++i) l(i) = e.v(i) > rel_cut * top ? std::log2(e.v(i)) : 0.0;
  return e.u * l.asDiagonal() * e.u.adjoint();
}

constexpr double kKernelCut = 1e-14;

void check_pair(const HermitianOperator& rho, const HermitianOperator& sigma, const char* what) {
  if (rho.dim() != sigma.dim()) throw DomainError(std::string(what) + ": dimension mismatch");
}

}  // namespace

double relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma) {
  check_pair(rho, sigma, "relative_entropy");
  const Eig se = eig_of(sigma);
  if (support_violated(rho, se, kKernelCut)) return kInf;
  const Eig re = eig_of(rho);
  double ent = 0.0;
  for (Eigen::Index i = 0; i < re.v.size(); ++i) {
    if (re.v(i) > 0) ent += re.v(i) * std::log2(re.v(i));
  }
  return ent - rho.inner(log2_op(se, kKernelCut));
}

double relative_entropy_variance(const HermitianOperator& rho, const HermitianOperator& sigma) {
  check_pair(rho, sigma, "relative_entropy_variance");
  const Eig se = eig_of(sigma);
  if (support_violated(rho, se, kKernelCut)) return kInf;
  const Eig re = eig_of(rho);
  const CMatrix diff = log2_op(re, kKernelCut) - log2_op(se, kKernelCut);
  const double mean = rho.inner(diff);
  const double second = rho.inner(CMatrix(diff * diff));
  return std::max(0.0, second - mean * mean);
}

double max_relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma) {
  check_pair(rho, sigma, "max_relative_entropy");
  const Eig se = eig_of(sigma);
  const double top = std::max(se.v.cwiseAbs().maxCoeff(), 1e-300);
  // Generalized inverse square root on the support of sigma.
  RVector isq(se.v.size());
  bool singular = false;
  for (Eigen::Index i = 0; i < se.v.size(); ++i) {
    const bool in = se.v(i) > 1e-12 * top;
    singular |= !in;
    isq(i) = in ? 1.0 / std::sqrt(se.v(i)) : 0.0;
  }
  if (singular) {
    const CMatrix rt = se.u.adjoint() * rho.matrix() * se.u;
    for (Eigen::Index i = 0; i < se.v.size(); ++i) {
      if (isq(i) == 0.0 && rt(i, i).real() > 1e-12) return kInf;
    }
  }
  const CMatrix s = se.u * isq.asDiagonal() * se.u.adjoint();
  const CMatrix ratio = s * rho.matrix() * s;
  return std::log2(max_eigenvalue(HermitianOperator(CMatrix(0.5 * (ratio + ratio.adjoint())))));
}

// ---------------------------------------------------------------------------
// Hypothesis testing

MeasureResult dh_epsilon(const HermitianOperator& rho, const HermitianOperator& sigma, double eps,
                         const MeasureOptions& opts) {
  check_pair(rho, sigma, "dh_epsilon");
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("dh_epsilon: eps must lie in [0, 1)");
  if (std::abs(rho.trace() - 1.0) > 1e-9 || min_eigenvalue(rho) < -1e-9) {
    throw DomainError("dh_epsilon: rho is not a state");
  }
  if (min_eigenvalue(sigma) < -1e-9) throw DomainError("dh_epsilon: sigma is not positive semidefinite");
  MeasureResult r;
  if (eps == 0.0) {
    // M must act as the identity on supp rho, and the kernel block is best left at zero.
    const HermitianOperator p = support_projector(rho, 1e-9);
    const double t = p.inner(sigma);
    r.value = r.primal_value = r.dual_value = t > 1e-12 ? -std::log2(t) : kInf;
    r.primal_witness = p;
    return r;
  }
  const int d = rho.dim();
  const auto basis = hermitian_basis(d);
  ProgramBuilder b("hypothesis testing: min tr M sigma, 0 <= M <= I, tr M rho >= 1 - eps");
  const int m0 = b.add_variables(static_cast<int>(basis.size()));
  std::vector<Term> acc;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    b.add_objective(m0 + static_cast<int>(k), basis[k].inner(sigma));
    acc.push_back({m0 + static_cast<int>(k), basis[k].inner(rho)});
  }
  b.add_greater_equal(acc, 1.0 - eps);
  b.add_lmi(HermitianOperator::zero(d), basis_terms(basis, m0));
  b.add_lmi(HermitianOperator::identity(d), basis_terms(basis, m0, -1.0));
  const auto sol = solve_or_throw(b, opts.solver, "dh_epsilon");
  CMatrix m = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < basis.size(); ++k) m += sol.x(m0 + static_cast<int>(k)) * basis[k].matrix();
  r.primal_witness = HermitianOperator(m);
  r.primal_value = sol.primal_value > 1e-10 ? -std::log2(sol.primal_value) : kInf;
  r.dual_value = sol.dual_value > 1e-10 ? -std::log2(sol.dual_value) : kInf;
  r.value = r.primal_value;
  r.gap = sol.gap;
  r.iterations = sol.iterations;
  return r;
}

MeasureResult min_dh_over_w(const PhaseSpace& ps, const HermitianOperator& rho, double eps,
                            const MeasureOptions& opts) {
  require_state(ps, rho, "min_dh_over_w");
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("min_dh_over_w: eps must lie in [0, 1)");
  if (eps == 0.0) {
    // The test M is then forced to the support projector, which is the min-thauma program.
    MeasureResult r = theta_min(ps, rho, opts);
    r.primal_witness = support_projector(rho, 1e-9);
    return r;
  }
  const int d = ps.dim();
  const int n = ps.num_points();
  const auto basis = hermitian_basis(d);
  ProgramBuilder b("W-minimized hypothesis testing: min ||Q||_{W,inf}, Q >= M, 0 <= M <= I, tr M rho >= 1 - eps");
  const int m0 = b.add_variables(static_cast<int>(basis.size()));
  const int q0 = b.add_variables(n);
  const int t = b.add_variables(1);
  b.add_objective(t, 1.0);
  std::vector<Term> acc;
  for (std::size_t k = 0; k < basis.size(); ++k) acc.push_back({m0 + static_cast<int>(k), basis[k].inner(rho)});
  b.add_greater_equal(acc, 1.0 - eps);
  for (int u = 0; u < n; ++u) {
    b.add_less_equal({{q0 + u, double(d)}, {t, -1.0}}, 0.0);
    b.add_less_equal({{q0 + u, -double(d)}, {t, -1.0}}, 0.0);
  }
  b.add_lmi(HermitianOperator::zero(d), basis_terms(basis, m0));
  b.add_lmi(HermitianOperator::identity(d), basis_terms(basis, m0, -1.0));
  auto qm = point_terms(ps, q0);
  const auto mneg = basis_terms(basis, m0, -1.0);
  qm.insert(qm.end(), mneg.begin(), mneg.end());
  b.add_lmi(HermitianOperator::zero(d), qm);
  const auto sol = solve_or_throw(b, opts.solver, "min_dh_over_w");

  MeasureResult r;
  CMatrix m = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < basis.size(); ++k) m += sol.x(m0 + static_cast<int>(k)) * basis[k].matrix();
  r.primal_witness = HermitianOperator(m);
  r.dual_witness = ps.reconstruct(RVector(sol.x.segment(q0, n)));
  r.primal_value = safe_neg_log2(sol.primal_value);
  r.dual_value = safe_neg_log2(sol.dual_value);
  r.value = r.primal_value;
  r.gap = std::abs(r.primal_value - r.dual_value);
  r.iterations = sol.iterations;
  return r;
}

// ---------------------------------------------------------------------------
// Relative entropy thauma

namespace {

// First divided difference of the natural logarithm.
double log_dd1(double a, double b) {
  if (a == b) return 1.0 / a;
  return std::log1p((b - a) / a) / (b - a);
}

// Second divided difference of the natural logarithm.
double log_dd2(double x, double y, double z) {
  double v[3] = {x, y, z};
  std::sort(v, v + 3);
  if (v[2] - v[0] > 1e-6 * v[2]) return (log_dd1(v[0], v[1]) - log_dd1(v[1], v[2])) / (v[0] - v[2]);
  const double m = (v[0] + v[1] + v[2]) / 3.0;
  return -1.0 / (2.0 * m * m);
}

// f(sigma) = -tr rho log2 sigma and its derivatives in Wigner coordinates.
class EntropyObjective {
 public:
  EntropyObjective(const PhaseSpace& ps, const HermitianOperator& rho) : ps_(ps), rho_(rho) {}

  // Returns false when sigma is not positive definite.
  bool set_point(const HermitianOperator& sigma) {
    const Spectrum s = eigh(sigma);
    lam_ = s.values;
    u_ = s.vectors;
    if (!(lam_(0) > 0) || !lam_.allFinite()) return false;
    rt_ = u_.adjoint() * rho_.matrix() * u_;
    return true;
  }

  double value() const {
    double v = 0.0;
    for (Eigen::Index i = 0; i < lam_.size(); ++i) v -= rt_(i, i).real() * std::log(lam_(i));
    return v / kLn2;
  }

  // Gradient as an operator G, so that df = tr[G dsigma].
  HermitianOperator gradient_operator() const {
    const Eigen::Index d = lam_.size();
    CMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) g(i, j) = -log_dd1(lam_(i), lam_(j)) * rt_(i, j) / kLn2;
    const CMatrix full = u_ * g * u_.adjoint();
    return HermitianOperator(CMatrix(0.5 * (full + full.adjoint())));
  }

  // Gradient and Hessian of t*f - log det sigma with respect to Wigner coordinates.
  void barrier_derivatives(double t, RVector& grad, RMatrix& hess) const {
    const int n = ps_.num_points();
    const Eigen::Index d = lam_.size();
    std::vector<CMatrix> at(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) at[static_cast<std::size_t>(u)] = u_.adjoint() * ps_.point_operator(u).matrix() * u_;
    const HermitianOperator g = gradient_operator();

    std::vector<double> l2(static_cast<std::size_t>(d * d * d));
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) l2[static_cast<std::size_t>((i * d + j) * d + k)] = log_dd2(lam_(i), lam_(j), lam_(k));

    grad.resize(n);
    hess.resize(n, n);
    for (int u = 0; u < n; ++u) {
      const CMatrix& au = at[static_cast<std::size_t>(u)];
      double inv_tr = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) inv_tr += au(i, i).real() / lam_(i);
      grad(u) = t * g.inner(ps_.point_operator(u)) - inv_tr;
    }
    for (int u = 0; u < n; ++u) {
      const CMatrix& au = at[static_cast<std::size_t>(u)];
      for (int v = u; v < n; ++v) {
        const CMatrix& av = at[static_cast<std::size_t>(v)];
        Complex acc = 0.0;
        Complex logdet = 0.0;
        for (Eigen::Index i = 0; i < d; ++i)
          for (Eigen::Index k = 0; k < d; ++k) {
            const Complex r = rt_(k, i);
            for (Eigen::Index j = 0; j < d; ++j) {
              const double w = l2[static_cast<std::size_t>((i * d + j) * d + k)];
              acc += w * (au(i, j) * av(j, k) + av(i, j) * au(j, k)) * r;
            }
          }
        for (Eigen::Index i = 0; i < d; ++i)
          for (Eigen::Index j = 0; j < d; ++j) logdet += au(i, j) * av(j, i) / (lam_(i) * lam_(j));
        const double h = -t * acc.real() / kLn2 + logdet.real();
        hess(u, v) = h;
        hess(v, u) = h;
      }
    }
  }

  double log_det() const { return lam_.array().log().sum(); }

 private:
  const PhaseSpace& ps_;
  const HermitianOperator& rho_;
  RVector lam_;
  CMatrix u_;
  CMatrix rt_;
};

struct LinearMinimizer {
  HermitianOperator point;
  double value;
  int iterations;
};

// argmin over sigma in W of tr[G sigma].
LinearMinimizer minimize_over_w(const PhaseSpace& ps, const HermitianOperator& g, const SolverOptions& opts) {
  const int n = ps.num_points();
  const int d = ps.dim();
  const RVector wg = ps.wigner_rep(g).values;
  const double scale = std::max(wg.cwiseAbs().maxCoeff(), 1e-300);
  ProgramBuilder b("linear minimization over W");
  const int w0 = b.add_variables(n);
  const int c0 = b.add_variables(n);
  for (int u = 0; u < n; ++u) b.add_objective(w0 + u, d * wg(u) / scale);
  add_abs_split(b, w0, c0, n, true);
  b.add_lmi(HermitianOperator::zero(d), point_terms(ps, w0));
  const auto sol = solve_or_throw(b, opts, "theta linear minimization");
  return {ps.reconstruct(RVector(sol.x.segment(w0, n))), sol.primal_value * scale, sol.iterations};
}

// Exact line search of f on sigma + gamma (s - sigma), gamma in [0, 1].
double line_search(EntropyObjective& f, const HermitianOperator& sigma, const HermitianOperator& s) {
  const HermitianOperator dir = s - sigma;
  auto slope = [&](double gamma) {
    if (!f.set_point(sigma + gamma * dir)) return kInf;
    return f.gradient_operator().inner(dir);
  };
  const double s1 = slope(1.0);
  if (s1 <= 0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

struct BarrierState {
  RVector w, c;
};

bool barrier_feasible(const PhaseSpace& ps, const BarrierState& x, EntropyObjective& f) {
  if (((x.c - x.w).array() <= 0).any() || ((x.c + x.w).array() <= 0).any()) return false;
  if (!(1.0 - x.c.sum() > 0)) return false;
  return f.set_point(ps.reconstruct(x.w));
}

// t f - log det sigma - sum log(c - w) - sum log(c + w) - log(1 - sum c); assumes f is at x.
double barrier_value(const BarrierState& x, double t, const EntropyObjective& f) {
  return t * f.value() - f.log_det() - (x.c - x.w).array().log().sum() - (x.c + x.w).array().log().sum() -
         std::log(1.0 - x.c.sum());
}

// Path following on the log barrier of W; returns Newton iterations used.
int barrier_minimize(const PhaseSpace& ps, EntropyObjective& f, BarrierState& x, double t, double target_gap,
                     int max_newton) {
  const int n = ps.num_points();
  const double nu = ps.dim() + 2.0 * n + 1.0;
  int used = 0;
  while (true) {
    for (int inner = 0; inner < 100 && used < max_newton; ++inner, ++used) {
      if (!barrier_feasible(ps, x, f)) throw SolverError("theta: barrier iterate left the feasible region");
      RVector gw;
      RMatrix hw;
      f.barrier_derivatives(t, gw, hw);
      const RVector a = x.c - x.w;
      const RVector b = x.c + x.w;
      const double s = 1.0 - x.c.sum();
      RVector grad(2 * n);
      RMatrix hess = RMatrix::Zero(2 * n, 2 * n);
      grad.head(n) = gw.array() + a.array().inverse() - b.array().inverse();
      grad.tail(n) = -a.array().inverse() - b.array().inverse() + 1.0 / s;
      hess.topLeftCorner(n, n) = hw;
      const RVector ia2 = a.array().square().inverse();
      const RVector ib2 = b.array().square().inverse();
      for (int u = 0; u < n; ++u) {
        hess(u, u) += ia2(u) + ib2(u);
        hess(n + u, n + u) += ia2(u) + ib2(u);
        hess(u, n + u) += -ia2(u) + ib2(u);
        hess(n + u, u) += -ia2(u) + ib2(u);
      }
      hess.bottomRightCorner(n, n).array() += 1.0 / (s * s);
      Eigen::LDLT<RMatrix> ldlt(hess);
      const RVector step = -ldlt.solve(grad);
      const double dec2 = -grad.dot(step);
      if (!std::isfinite(dec2)) throw SolverError("theta: Newton system is singular");
      if (dec2 / 2.0 <= 1e-12) break;
      const double base = barrier_value(x, t, f);
      double alpha = 1.0;
      BarrierState trial;
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        trial.w = x.w + alpha * step.head(n);
        trial.c = x.c + alpha * step.tail(n);
        if (!barrier_feasible(ps, trial, f)) continue;
        if (barrier_value(trial, t, f) <= base - 0.25 * alpha * dec2) {
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
      x = trial;
    }
    if (nu / t <= target_gap || used >= max_newton) break;
    t *= 8.0;
  }
  if (!barrier_feasible(ps, x, f)) throw SolverError("theta: barrier iterate left the feasible region");
  return used;
}

}  // namespace

MeasureResult theta(const PhaseSpace& ps, const HermitianOperator& rho, const ThetaOptions& opts) {
  require_state(ps, rho, "theta");
  if (!(opts.tol > 0)) throw DomainError("theta: tolerance must be positive");
  const int d = ps.dim();
  const int n = ps.num_points();
  MeasureResult r;

  // rho itself in W: the minimum is attained at sigma = rho.
  if (ps.wigner_trace_norm(rho) <= 1.0 + 1e-12) {
    r.primal_witness = rho;
    r.value = r.primal_value = r.dual_value = 0.0;
    return r;
  }

  HermitianOperator target = rho;
  const double top = max_eigenvalue(rho);
  if (min_eigenvalue(rho) <= 1e-9 * top) {
    r.perturbation = opts.support_floor;
    target = (1.0 - opts.support_floor) * rho + (opts.support_floor / d) * HermitianOperator::identity(d);
  }
  EntropyObjective f(ps, target);
  const SolverOptions& sopts = opts.measure.solver;

  HermitianOperator sigma = HermitianOperator::identity(d) * (1.0 / d);
  double gap = kInf;
  int fw_iter = 0;

  // Frank-Wolfe step from sigma; returns the duality gap at sigma before stepping.
  auto fw_step = [&](bool move) {
    if (!f.set_point(sigma)) throw SolverError("theta: iterate is singular");
    const HermitianOperator g = f.gradient_operator();
    const LinearMinimizer lm = minimize_over_w(ps, g, sopts);
    const double gp = g.inner(sigma) - g.inner(lm.point);
    r.iterations += 1;
    if (move && gp > opts.tol) {
      const double gamma = line_search(f, sigma, lm.point);
      sigma = sigma + gamma * (lm.point - sigma);
    }
    return gp;
  };

  for (; fw_iter < opts.warm_frank_wolfe; ++fw_iter) {
    gap = fw_step(true);
    if (gap <= opts.tol) break;
  }

  if (gap > opts.tol) {
    const double eta = 1e-3;
    const HermitianOperator start =
        (1.0 - eta) * ((1.0 - eta) * sigma + (eta / d) * HermitianOperator::identity(d));
    BarrierState x;
    x.w = ps.wigner_rep(start).values;
    x.c = x.w.cwiseAbs().array() + eta / (2.0 * n);
    const double nu = d + 2.0 * n + 1.0;
    const double t0 = nu / std::max(std::min(gap, 1.0), opts.tol);
    r.iterations += barrier_minimize(ps, f, x, t0, 1e-2 * opts.tol, 400);
    sigma = ps.reconstruct(x.w);
    gap = fw_step(false);
    for (; gap > opts.tol && fw_iter < opts.max_frank_wolfe; ++fw_iter) gap = fw_step(true);
  }

  r.converged = gap <= opts.tol;
  r.gap = gap;
  r.primal_witness = sigma;
  r.value = relative_entropy(rho, sigma);
  r.primal_value = r.value;
  r.dual_value = r.value - gap;
  return r;
}

}  // namespace thaumakit

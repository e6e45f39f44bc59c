#include "thaumakit/sdp.hpp"

#include "thaumakit/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace thaumakit {

int ConeDims::rows() const {
  int r = nonneg;
  for (int n : psd) r += n * n;
  return r;
}

int ConeDims::degree() const {
  int r = nonneg;
  for (int n : psd) r += n;
  return r;
}

void ConeProgram::validate() const {
  const Eigen::Index n = c.size();
  const Eigen::Index m = dims.rows();
  if (dims.nonneg < 0) throw DomainError("cone program: negative orthant size");
  for (int k : dims.psd) {
    if (k <= 0) throw DomainError("cone program: PSD block of non-positive order");
  }
  if (G.rows() != m || G.cols() != n || h.size() != m) {
    throw DomainError("cone program: G/h dimensions do not match the cone");
  }
  if (A.cols() != n || A.rows() != b.size()) throw DomainError("cone program: A/b dimensions inconsistent");
  if (!c.allFinite() || !G.allFinite() || !h.allFinite() || !A.allFinite() || !b.allFinite()) {
    throw DomainError("cone program: data contains non-finite entries");
  }
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::NumericalTrouble: return "numerical_trouble";
  }
  return "unknown";
}

RMatrix embed_hermitian(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  RMatrix e(2 * n, 2 * n);
  e.topLeftCorner(n, n) = h.real();
  e.bottomRightCorner(n, n) = h.real();
  e.topRightCorner(n, n) = -h.imag();
  e.bottomLeftCorner(n, n) = h.imag();
  return e;
}

RMatrix embed_hermitian(const HermitianOperator& h) { return embed_hermitian(h.matrix()); }

HermitianOperator unembed_dual(const RMatrix& z) {
  if (z.rows() != z.cols() || z.rows() % 2 != 0) throw DomainError("unembed_dual: expected an even square matrix");
  const Eigen::Index n = z.rows() / 2;
  const RMatrix zs = 0.5 * (z + z.transpose());
  const RMatrix re = zs.topLeftCorner(n, n) + zs.bottomRightCorner(n, n);
  const RMatrix im = zs.bottomLeftCorner(n, n) - zs.topRightCorner(n, n);
  CMatrix y(n, n);
  y.real() = re;
  y.imag() = im;
  return HermitianOperator(y);
}

RMatrix psd_block(const ConeDims& dims, const RVector& v, int k) {
  int off = dims.nonneg;
  for (int j = 0; j < k; ++j) off += dims.psd[static_cast<std::size_t>(j)] * dims.psd[static_cast<std::size_t>(j)];
  const int n = dims.psd[static_cast<std::size_t>(k)];
  RMatrix m = v.segment(off, n * n).reshaped(n, n);
  return 0.5 * (m + m.transpose());
}

RVector nonneg_part(const ConeDims& dims, const RVector& v) { return v.head(dims.nonneg); }

namespace {

struct Layout {
  int l = 0;
  std::vector<int> n;
  std::vector<int> off;
  int rows = 0;
  int degree = 0;

  explicit Layout(const ConeDims& d) : l(d.nonneg), n(d.psd) {
    int o = l;
    for (int k : n) {
      off.push_back(o);
      o += k * k;
    }
    rows = o;
    degree = d.degree();
  }

  auto block(RVector& v, std::size_t k) const { return v.segment(off[k], n[k] * n[k]).reshaped(n[k], n[k]); }
  auto block(const RVector& v, std::size_t k) const {
    return v.segment(off[k], n[k] * n[k]).reshaped(n[k], n[k]);
  }
};

RMatrix sym(const RMatrix& m) { return 0.5 * (m + m.transpose()); }

RVector identity_element(const Layout& lay) {
  RVector e = RVector::Zero(lay.rows);
  e.head(lay.l).setOnes();
  for (std::size_t k = 0; k < lay.n.size(); ++k) {
    for (int i = 0; i < lay.n[k]; ++i) e(lay.off[k] + i * lay.n[k] + i) = 1.0;
  }
  return e;
}

// Nesterov-Todd scaling W with W z = W^{-T} s = lambda.
struct Scaling {
  RVector d;  // nonnegative part
  RVector lam_nn;
  std::vector<RMatrix> R, Rinv;
  std::vector<RVector> lam;

  bool compute(const Layout& lay, const RVector& s, const RVector& z) {
    const RVector sn = s.head(lay.l);
    const RVector zn = z.head(lay.l);
    if ((sn.array() <= 0).any() || (zn.array() <= 0).any()) return false;
    d = (sn.array() / zn.array()).sqrt();
    lam_nn = (sn.array() * zn.array()).sqrt();
    R.clear();
    Rinv.clear();
    lam.clear();
    for (std::size_t k = 0; k < lay.n.size(); ++k) {
      const RMatrix S = sym(lay.block(s, k));
      const RMatrix Z = sym(lay.block(z, k));
      Eigen::LLT<RMatrix> c1(S), c2(Z);
      if (c1.info() != Eigen::Success || c2.info() != Eigen::Success) return false;
      const RMatrix L1 = c1.matrixL();
      const RMatrix L2 = c2.matrixL();
      Eigen::JacobiSVD<RMatrix> svd(L2.transpose() * L1, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const RVector sv = svd.singularValues();
      if ((sv.array() <= 0).any() || !sv.allFinite()) return false;
      const RVector isq = sv.array().rsqrt();
      R.push_back(L1 * svd.matrixV() * isq.asDiagonal());
      Rinv.push_back(isq.asDiagonal() * svd.matrixU().transpose() * L2.transpose());
      lam.push_back(sv);
    }
    return true;
  }

  RVector lambda(const Layout& lay) const {
    RVector v = RVector::Zero(lay.rows);
    v.head(lay.l) = lam_nn;
    for (std::size_t k = 0; k < lay.n.size(); ++k) {
      for (int i = 0; i < lay.n[k]; ++i) v(lay.off[k] + i * lay.n[k] + i) = lam[k](i);
    }
    return v;
  }

  enum class Op { W, WT, WinvT, Winv };

  RVector apply(const Layout& lay, Op op, const RVector& v) const {
    RVector out(lay.rows);
    switch (op) {
      case Op::W:
      case Op::WT: out.head(lay.l) = d.array() * v.head(lay.l).array(); break;
      case Op::WinvT:
      case Op::Winv: out.head(lay.l) = v.head(lay.l).array() / d.array(); break;
    }
    for (std::size_t k = 0; k < lay.n.size(); ++k) {
      const RMatrix m = lay.block(v, k);
      RMatrix r;
      switch (op) {
        case Op::W: r = R[k].transpose() * m * R[k]; break;
        case Op::WT: r = R[k] * m * R[k].transpose(); break;
        case Op::WinvT: r = Rinv[k] * m * Rinv[k].transpose(); break;
        case Op::Winv: r = Rinv[k].transpose() * m * Rinv[k]; break;
      }
      lay.block(out, k) = r;
    }
    return out;
  }

  // Solves lambda o u = r.
  RVector lambda_inv_prod(const Layout& lay, const RVector& r) const {
    RVector u(lay.rows);
    u.head(lay.l) = r.head(lay.l).array() / lam_nn.array();
    for (std::size_t k = 0; k < lay.n.size(); ++k) {
      const int n = lay.n[k];
      const RMatrix m = lay.block(r, k);
      RMatrix o(n, n);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) o(i, j) = 2.0 * m(i, j) / (lam[k](i) + lam[k](j));
      }
      lay.block(u, k) = o;
    }
    return u;
  }

  // Largest alpha with lambda + alpha * delta in the cone (infinity if unbounded).
  double max_step(const Layout& lay, const RVector& delta) const {
    double a = std::numeric_limits<double>::infinity();
    for (int i = 0; i < lay.l; ++i) {
      if (delta(i) < 0) a = std::min(a, -lam_nn(i) / delta(i));
    }
    for (std::size_t k = 0; k < lay.n.size(); ++k) {
      const RVector isq = lam[k].array().rsqrt();
      const RMatrix m = isq.asDiagonal() * sym(lay.block(delta, k)) * isq.asDiagonal();
      Eigen::SelfAdjointEigenSolver<RMatrix> es(m, Eigen::EigenvaluesOnly);
      const double mn = es.eigenvalues()(0);
      if (mn < 0) a = std::min(a, -1.0 / mn);
    }
    return a;
  }
};

RVector jordan(const Layout& lay, const RVector& a, const RVector& b) {
  RVector out(lay.rows);
  out.head(lay.l) = a.head(lay.l).array() * b.head(lay.l).array();
  for (std::size_t k = 0; k < lay.n.size(); ++k) {
    const RMatrix x = lay.block(a, k);
    const RMatrix y = lay.block(b, k);
    lay.block(out, k) = 0.5 * (x * y + y * x);
  }
  return out;
}

class KktSolver {
 public:
  KktSolver(const ConeProgram& p, const Layout& lay, const Scaling& sc, int refinement)
      : p_(p), lay_(lay), sc_(sc), refinement_(refinement) {}

  bool factor() {
    const Eigen::Index n = p_.G.cols();
    const Eigen::Index m = p_.A.rows();
    gs_.resize(p_.G.rows(), n);
    for (Eigen::Index j = 0; j < n; ++j) gs_.col(j) = sc_.apply(lay_, Scaling::Op::WinvT, p_.G.col(j));
    if (m == 0) {
      // Factor the scaled G directly; H = R^T R without squaring the condition number.
      if (!gs_.allFinite()) return false;
      qr_.compute(gs_);
      r_ = qr_.matrixQR().topRows(n).triangularView<Eigen::Upper>();
      const double top = std::max(1e-300, r_.diagonal().cwiseAbs().maxCoeff());
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!(std::abs(r_(j, j)) > 1e-15 * top)) r_(j, j) = (r_(j, j) < 0 ? -1e-15 : 1e-15) * top;
      }
      use_lu_ = false;
    } else {
      const RMatrix h = gs_.transpose() * gs_;
      RMatrix kk = RMatrix::Zero(n + m, n + m);
      kk.topLeftCorner(n, n) = h;
      kk.topRightCorner(n, m) = p_.A.transpose();
      kk.bottomLeftCorner(m, n) = p_.A;
      lu_.compute(kk);
      use_lu_ = true;
    }
    return true;
  }

  void solve(const RVector& bx, const RVector& by, const RVector& bz, RVector& ux, RVector& uy, RVector& uz) const {
    base_solve(bx, by, bz, ux, uy, uz);
    for (int it = 0; it < refinement_; ++it) {
      RVector rx, ry, rz;
      residual(bx, by, bz, ux, uy, uz, rx, ry, rz);
      RVector cx, cy, cz;
      base_solve(rx, ry, rz, cx, cy, cz);
      ux += cx;
      uy += cy;
      uz += cz;
    }
  }

 private:
  void base_solve(const RVector& bx, const RVector& by, const RVector& bz, RVector& ux, RVector& uy,
                  RVector& uz) const {
    const RVector t = sc_.apply(lay_, Scaling::Op::WinvT, bz);
    const RVector rhs = bx + gs_.transpose() * t;
    if (!use_lu_) {
      const RVector half = r_.transpose().triangularView<Eigen::Lower>().solve(rhs);
      ux = r_.triangularView<Eigen::Upper>().solve(half);
      uy = RVector::Zero(0);
    } else {
      const Eigen::Index n = rhs.size();
      RVector full(n + by.size());
      full << rhs, by;
      const RVector sol = lu_.solve(full);
      ux = sol.head(n);
      uy = sol.tail(by.size());
    }
    uz = sc_.apply(lay_, Scaling::Op::Winv, RVector(gs_ * ux - t));
  }

  void residual(const RVector& bx, const RVector& by, const RVector& bz, const RVector& ux, const RVector& uy,
                const RVector& uz, RVector& rx, RVector& ry, RVector& rz) const {
    rx = bx - p_.G.transpose() * uz;
    if (p_.A.rows() > 0) rx -= p_.A.transpose() * uy;
    ry = by - p_.A * ux;
    const RVector wz = sc_.apply(lay_, Scaling::Op::W, uz);
    rz = bz - (p_.G * ux - sc_.apply(lay_, Scaling::Op::WT, wz));
  }

  const ConeProgram& p_;
  const Layout& lay_;
  const Scaling& sc_;
  int refinement_;
  RMatrix gs_;
  Eigen::HouseholderQR<RMatrix> qr_;
  RMatrix r_;
  Eigen::PartialPivLU<RMatrix> lu_;
  bool use_lu_ = false;
};

struct Iterate {
  RVector x, y, s, z;
  double tau = 1.0, kappa = 1.0;
};

struct Metrics {
  double pcost = 0, dcost = 0, pres = 0, dres = 0, relgap = 0;
  double score(const SolverOptions& o) const {
    return std::max({pres / o.accept_feasibility, dres / o.accept_feasibility, relgap / o.accept_gap});
  }
};

}  // namespace

ConeSolution solve(const ConeProgram& p, const SolverOptions& opts) {
  p.validate();
  const Layout lay(p.dims);
  const Eigen::Index n = p.c.size();
  const Eigen::Index m = p.A.rows();
  const double nu = lay.degree + 1.0;

  Iterate it;
  it.x = RVector::Zero(n);
  it.y = RVector::Zero(m);
  it.s = identity_element(lay);
  it.z = it.s;
  const RVector e = it.s;

  const double resx0 = std::max(1.0, p.c.norm());
  const double resy0 = std::max(1.0, p.b.norm());
  const double resz0 = std::max(1.0, p.h.norm());

  ConeSolution out;
  Iterate best = it;
  Metrics best_m;
  double best_score = std::numeric_limits<double>::infinity();
  int stagnant = 0;
  int iter = 0;

  auto finish_optimal = [&](const Iterate& w, const Metrics& mt, SolveStatus st) {
    out.status = st;
    out.x = w.x / w.tau;
    out.y = w.y / w.tau;
    out.s = w.s / w.tau;
    out.z = w.z / w.tau;
    out.primal_value = mt.pcost + p.objective_offset;
    out.dual_value = mt.dcost + p.objective_offset;
    out.gap = std::abs(out.primal_value - out.dual_value) / (1.0 + std::abs(out.primal_value));
    out.primal_residual = mt.pres;
    out.dual_residual = mt.dres;
    out.iterations = iter;
    return out;
  };

  Scaling sc;
  RVector dsa, dza;
  double dtau_a = 0, dkappa_a = 0;

  for (iter = 0; iter <= opts.max_iterations; ++iter) {
    const RVector aty = m > 0 ? RVector(p.A.transpose() * it.y) : RVector::Zero(n);
    const RVector gtz = p.G.transpose() * it.z;
    const RVector rx = aty + gtz + p.c * it.tau;
    const RVector ax = p.A * it.x;
    const RVector ry = ax - p.b * it.tau;
    const RVector gx = p.G * it.x;
    const RVector rz = gx + it.s - p.h * it.tau;
    const double cx = p.c.dot(it.x);
    const double by = p.b.dot(it.y);
    const double hz = p.h.dot(it.z);
    const double rt = cx + by + hz + it.kappa;
    const double sz = it.s.dot(it.z);
    const double mu = (sz + it.tau * it.kappa) / nu;

    Metrics mt;
    mt.pcost = cx / it.tau;
    mt.dcost = -(by + hz) / it.tau;
    mt.pres = std::max(ry.norm() / resy0, rz.norm() / resz0) / it.tau;
    mt.dres = rx.norm() / resx0 / it.tau;
    const double denom = 1.0 + std::abs(mt.pcost);
    mt.relgap = std::max(std::abs(mt.pcost - mt.dcost), sz / (it.tau * it.tau)) / denom;

    if (!std::isfinite(mu) || !std::isfinite(mt.pcost) || !std::isfinite(mt.dcost)) break;

    if (mt.pres <= opts.target_feasibility && mt.dres <= opts.target_feasibility && mt.relgap <= opts.target_gap) {
      return finish_optimal(it, mt, SolveStatus::Optimal);
    }
    const double sc_score = mt.score(opts);
    stagnant = sc_score < 0.5 * best_score ? 0 : stagnant + 1;
    if (sc_score < best_score) {
      best_score = sc_score;
      best = it;
      best_m = mt;
    }
    // Already acceptable and no longer improving towards the target.
    if (best_score <= 1.0 && stagnant >= 6) break;

    // Infeasibility certificates.
    if (-(hz + by) > 0) {
      const double q = -(hz + by);
      if ((aty + gtz).norm() / resx0 / q <= opts.target_feasibility) {
        out.status = SolveStatus::Infeasible;
        out.y = it.y / q;
        out.z = it.z / q;
        out.x = RVector::Zero(n);
        out.s = RVector::Zero(lay.rows);
        out.iterations = iter;
        out.primal_value = std::numeric_limits<double>::infinity();
        out.dual_value = std::numeric_limits<double>::infinity();
        return out;
      }
    }
    if (-cx > 0) {
      const double q = -cx;
      if (std::max(ax.norm() / resy0, (gx + it.s).norm() / resz0) / q <= opts.target_feasibility) {
        out.status = SolveStatus::Unbounded;
        out.x = it.x / q;
        out.s = it.s / q;
        out.y = RVector::Zero(m);
        out.z = RVector::Zero(lay.rows);
        out.iterations = iter;
        out.primal_value = -std::numeric_limits<double>::infinity();
        out.dual_value = -std::numeric_limits<double>::infinity();
        return out;
      }
    }
    if (iter == opts.max_iterations) break;

    if (!sc.compute(lay, it.s, it.z)) break;
    KktSolver kkt(p, lay, sc, opts.refinement_steps);
    if (!kkt.factor()) break;

    RVector v1x, v1y, v1z;
    kkt.solve(-p.c, p.b, p.h, v1x, v1y, v1z);
    const double cbh1 = p.c.dot(v1x) + p.b.dot(v1y) + p.h.dot(v1z);
    const RVector lam = sc.lambda(lay);
    const RVector lamsq = jordan(lay, lam, lam);

    double sigma = 0.0;
    double step = 0.0;
    RVector dx, dy, dz, dst, dzt;
    double dtau = 0, dkappa = 0;
    bool ok = true;
    for (int pass = 0; pass < 2 && ok; ++pass) {
      RVector rs;
      double rk;
      double eta;
      if (pass == 0) {
        rs = -lamsq;
        rk = -it.tau * it.kappa;
        eta = 1.0;
      } else {
        rs = -lamsq + sigma * mu * e - jordan(lay, dsa, dza);
        rk = -it.tau * it.kappa + sigma * mu - dtau_a * dkappa_a;
        eta = 1.0 - sigma;
      }
      const RVector u = sc.lambda_inv_prod(lay, rs);
      const RVector r1 = -eta * rx;
      const RVector r2 = -eta * ry;
      const RVector r3 = -eta * rz - sc.apply(lay, Scaling::Op::WT, u);
      const double r4 = -eta * rt - rk / it.tau;
      RVector v2x, v2y, v2z;
      kkt.solve(r1, r2, r3, v2x, v2y, v2z);
      const double cbh2 = p.c.dot(v2x) + p.b.dot(v2y) + p.h.dot(v2z);
      const double den = cbh1 - it.kappa / it.tau;
      if (!(std::abs(den) > 0)) {
        ok = false;
        break;
      }
      dtau = (r4 - cbh2) / den;
      dx = v2x + dtau * v1x;
      dy = v2y + dtau * v1y;
      dz = v2z + dtau * v1z;
      dzt = sc.apply(lay, Scaling::Op::W, dz);
      dst = u - dzt;
      dkappa = (rk - it.kappa * dtau) / it.tau;
      if (!dx.allFinite() || !dz.allFinite() || !std::isfinite(dtau)) {
        ok = false;
        break;
      }
      double amax = std::min(sc.max_step(lay, dst), sc.max_step(lay, dzt));
      if (dtau < 0) amax = std::min(amax, -it.tau / dtau);
      if (dkappa < 0) amax = std::min(amax, -it.kappa / dkappa);
      if (pass == 0) {
        const double a = std::min(1.0, amax);
        const RVector sa = lam + a * dst;
        const RVector za = lam + a * dzt;
        const double mu_aff = (sa.dot(za) + (it.tau + a * dtau) * (it.kappa + a * dkappa)) / nu;
        sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
        dsa = dst;
        dza = dzt;
        dtau_a = dtau;
        dkappa_a = dkappa;
      } else {
        step = std::min(1.0, opts.step_fraction * amax);
      }
    }
    if (!ok || !(step > 1e-12)) break;

    it.x += step * dx;
    it.y += step * dy;
    it.z += step * dz;
    it.s += step * sc.apply(lay, Scaling::Op::WT, dst);
    it.tau += step * dtau;
    it.kappa += step * dkappa;
    // Keep PSD blocks exactly symmetric.
    for (std::size_t k = 0; k < lay.n.size(); ++k) {
      lay.block(it.s, k) = sym(lay.block(it.s, k));
      lay.block(it.z, k) = sym(lay.block(it.z, k));
    }
  }

  const SolveStatus st = best_score <= 1.0 ? SolveStatus::Optimal : SolveStatus::NumericalTrouble;
  return finish_optimal(best, best_m, st);
}

// ---------------------------------------------------------------------------

ProgramBuilder::ProgramBuilder(std::string description) : description_(std::move(description)) {}

int ProgramBuilder::add_variables(int count) {
  if (count < 0) throw DomainError("ProgramBuilder: negative variable count");
  const int first = nvars_;
  nvars_ += count;
  objective_.resize(static_cast<std::size_t>(nvars_), 0.0);
  return first;
}

void ProgramBuilder::check_terms(const std::vector<Term>& terms) const {
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= nvars_) throw DomainError("ProgramBuilder: variable index out of range");
  }
}

void ProgramBuilder::add_objective(int var, double coef) {
  if (var < 0 || var >= nvars_) throw DomainError("ProgramBuilder: variable index out of range");
  objective_[static_cast<std::size_t>(var)] += coef;
}

int ProgramBuilder::add_less_equal(const std::vector<Term>& terms, double rhs) {
  check_terms(terms);
  le_rows_.push_back({terms, rhs});
  return static_cast<int>(le_rows_.size()) - 1;
}

int ProgramBuilder::add_greater_equal(const std::vector<Term>& terms, double rhs) {
  std::vector<Term> neg = terms;
  for (auto& t : neg) t.coef = -t.coef;
  return add_less_equal(neg, -rhs);
}

int ProgramBuilder::add_equality(const std::vector<Term>& terms, double rhs) {
  check_terms(terms);
  eq_rows_.push_back({terms, rhs});
  return static_cast<int>(eq_rows_.size()) - 1;
}

int ProgramBuilder::add_lmi(const RMatrix& constant, const std::vector<std::pair<int, RMatrix>>& terms) {
  if (constant.rows() != constant.cols() || constant.rows() == 0) throw DomainError("ProgramBuilder: LMI must be square");
  for (const auto& [v, f] : terms) {
    if (v < 0 || v >= nvars_) throw DomainError("ProgramBuilder: variable index out of range");
    if (f.rows() != constant.rows() || f.cols() != constant.cols()) {
      throw DomainError("ProgramBuilder: LMI coefficient size mismatch");
    }
  }
  lmis_.push_back({sym(constant), {}});
  lmis_.back().terms.reserve(terms.size());
  for (const auto& [v, f] : terms) lmis_.back().terms.emplace_back(v, sym(f));
  return static_cast<int>(lmis_.size()) - 1;
}

int ProgramBuilder::add_lmi(const HermitianOperator& constant,
                            const std::vector<std::pair<int, HermitianOperator>>& terms) {
  std::vector<std::pair<int, RMatrix>> real;
  real.reserve(terms.size());
  for (const auto& [v, f] : terms) {
    if (f.dim() != constant.dim()) throw DomainError("ProgramBuilder: LMI coefficient size mismatch");
    real.emplace_back(v, embed_hermitian(f));
  }
  return add_lmi(embed_hermitian(constant), real);
}

ConeProgram ProgramBuilder::build() const {
  ConeProgram p;
  p.description = description_;
  p.objective_offset = offset_;
  p.c = Eigen::Map<const RVector>(objective_.data(), nvars_);
  p.dims.nonneg = static_cast<int>(le_rows_.size());
  for (const auto& l : lmis_) p.dims.psd.push_back(static_cast<int>(l.constant.rows()));
  const int rows = p.dims.rows();
  p.G = RMatrix::Zero(rows, nvars_);
  p.h = RVector::Zero(rows);
  for (std::size_t i = 0; i < le_rows_.size(); ++i) {
    for (const auto& t : le_rows_[i].terms) p.G(static_cast<Eigen::Index>(i), t.var) += t.coef;
    p.h(static_cast<Eigen::Index>(i)) = le_rows_[i].rhs;
  }
  int off = p.dims.nonneg;
  for (const auto& l : lmis_) {
    const int nn = static_cast<int>(l.constant.rows()) * static_cast<int>(l.constant.rows());
    p.h.segment(off, nn) = l.constant.reshaped();
    for (const auto& [v, f] : l.terms) p.G.col(v).segment(off, nn) -= f.reshaped();
    off += nn;
  }
  p.A = RMatrix::Zero(static_cast<Eigen::Index>(eq_rows_.size()), nvars_);
  p.b = RVector::Zero(static_cast<Eigen::Index>(eq_rows_.size()));
  for (std::size_t i = 0; i < eq_rows_.size(); ++i) {
    for (const auto& t : eq_rows_[i].terms) p.A(static_cast<Eigen::Index>(i), t.var) += t.coef;
    p.b(static_cast<Eigen::Index>(i)) = eq_rows_[i].rhs;
  }
  return p;
}

void ProgramBuilder::dump(std::ostream& os) const {
  os << "program: " << (description_.empty() ? "(unnamed)" : description_) << '\n';
  os << "variables: " << nvars_ << '\n';
  os << "minimize:";
  for (int i = 0; i < nvars_; ++i) {
    if (objective_[static_cast<std::size_t>(i)] != 0.0) os << ' ' << objective_[static_cast<std::size_t>(i)] << "*x" << i;
  }
  if (offset_ != 0.0) os << " + " << offset_;
  os << '\n';
  auto terms_out = [&os](const std::vector<Term>& ts) {
    for (const auto& t : ts) os << ' ' << (t.coef >= 0 ? "+" : "") << t.coef << "*x" << t.var;
  };
  for (std::size_t i = 0; i < le_rows_.size(); ++i) {
    os << "row " << i << ':';
    terms_out(le_rows_[i].terms);
    os << " <= " << le_rows_[i].rhs << '\n';
  }
  for (std::size_t i = 0; i < eq_rows_.size(); ++i) {
    os << "eq " << i << ':';
    terms_out(eq_rows_[i].terms);
    os << " == " << eq_rows_[i].rhs << '\n';
  }
  for (std::size_t i = 0; i < lmis_.size(); ++i) {
    os << "lmi " << i << ": order " << lmis_[i].constant.rows() << ", " << lmis_[i].terms.size() << " terms\n";
    os << "  F0 =\n" << lmis_[i].constant << '\n';
  }
}

void dump(const ConeProgram& p, std::ostream& os) {
  os << "program: " << (p.description.empty() ? "(unnamed)" : p.description) << '\n';
  os << "variables: " << p.c.size() << ", equalities: " << p.A.rows() << ", nonneg rows: " << p.dims.nonneg
     << ", psd blocks:";
  for (int k : p.dims.psd) os << ' ' << k;
  os << "\nc = " << p.c.transpose() << '\n';
  os << "h = " << p.h.transpose() << '\n';
  if (p.b.size() > 0) os << "b = " << p.b.transpose() << '\n';
  os << "G =\n" << p.G << '\n';
  if (p.A.rows() > 0) os << "A =\n" << p.A << '\n';
}

}  // namespace thaumakit

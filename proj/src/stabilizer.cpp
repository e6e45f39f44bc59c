#include "thaumakit/stabilizer.hpp"

#include "thaumakit/error.hpp"
#include "thaumakit/sdp.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <numbers>
#include <set>

namespace thaumakit {

PureState::PureState(CVector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() == 0) throw DomainError("pure state: empty amplitude vector");
  if (std::abs(amp_.norm() - 1.0) > 1e-10) {
    throw DomainError("pure state: amplitudes are not normalized (norm " + std::to_string(amp_.norm()) + ")");
  }
}

PureState PureState::normalized(const CVector& v) {
  const double n = v.norm();
  if (!(n > 0)) throw DomainError("pure state: zero vector");
  return PureState(v / n);
}

PureState PureState::canonical() const {
  for (Eigen::Index i = 0; i < amp_.size(); ++i) {
    if (std::abs(amp_(i)) > 1e-6) {
      const Complex phase = std::conj(amp_(i)) / std::abs(amp_(i));
      CVector v = amp_ * phase;
      v(i) = std::abs(amp_(i));
      return PureState(v);
    }
  }
  return *this;
}

namespace {

Complex omega_pow(long long k, int d) {
  const long long r = ((k % d) + d) % d;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

CMatrix embed_factor(const std::vector<int>& factors, std::size_t pos, const CMatrix& local, std::size_t width) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < factors.size();) {
    if (k == pos) {
      out = kron(out, local);
      k += width;
    } else {
      out = kron(out, CMatrix::Identity(factors[k], factors[k]));
      ++k;
    }
  }
  return out;
}

void check_envelope(const DimensionSpec& spec) {
  const int d = spec.total_dim();
  if (d != 3 && d != 9) {
    throw UnsupportedDimension("stabilizer enumeration supports total dimension 3 or 9, got " + spec.to_string());
  }
}

}  // namespace

CMatrix fourier_gate(int d) {
  CMatrix h(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) h(j, k) = omega_pow(static_cast<long long>(j) * k, d) / std::sqrt(double(d));
  return h;
}

CMatrix phase_gate(int d) {
  CMatrix s = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) s(j, j) = omega_pow(static_cast<long long>(j) * (j - 1) / 2, d);
  return s;
}

CMatrix shift_gate(int d) {
  CMatrix x = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
  return x;
}

CMatrix sum_gate(int d) {
  CMatrix u = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) u(i * d + (i + j) % d, i * d + j) = 1.0;
  return u;
}

std::vector<GeneralOperator> clifford_generators(const DimensionSpec& spec) {
  const auto& f = spec.factors();
  std::vector<GeneralOperator> gens;
  for (std::size_t k = 0; k < f.size(); ++k) {
    gens.push_back(embed_factor(f, k, fourier_gate(f[k]), 1));
    gens.push_back(embed_factor(f, k, phase_gate(f[k]), 1));
    gens.push_back(embed_factor(f, k, shift_gate(f[k]), 1));
  }
  for (std::size_t k = 0; k + 1 < f.size(); ++k) {
    if (f[k] != f[k + 1]) continue;
    gens.push_back(embed_factor(f, k, sum_gate(f[k]), 2));
  }
  return gens;
}

StabilizerSet enumerate_pure_stabilizer_states(const PhaseSpace& ps) {
  check_envelope(ps.spec());
  const int d = ps.dim();
  const auto gens = clifford_generators(ps.spec());

  auto key = [](const PureState& s) {
    std::vector<long long> k;
    k.reserve(static_cast<std::size_t>(2 * s.dim()));
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
      k.push_back(std::llround(s.amplitudes()(i).real() * 1e8));
      k.push_back(std::llround(s.amplitudes()(i).imag() * 1e8));
    }
    return k;
  };

  CVector zero = CVector::Zero(d);
  zero(0) = 1.0;
  StabilizerSet set{ps.spec(), {}};
  std::set<std::vector<long long>> seen;
  std::deque<PureState> queue;
  const PureState start = PureState(zero).canonical();
  seen.insert(key(start));
  queue.push_back(start);
  while (!queue.empty()) {
    const PureState cur = queue.front();
    queue.pop_front();
    set.states.push_back(cur);
    for (const auto& g : gens) {
      const PureState next = PureState::normalized(g * cur.amplitudes()).canonical();
      if (seen.insert(key(next)).second) queue.push_back(next);
    }
  }
  return set;
}

const StabilizerSet& stabilizer_states(const DimensionSpec& spec) {
  static std::mutex mu;
  static std::map<std::vector<int>, StabilizerSet> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(spec.factors());
  if (it == cache.end()) {
    it = cache.emplace(spec.factors(), enumerate_pure_stabilizer_states(PhaseSpace(spec))).first;
  }
  return it->second;
}

double stabilizer_fidelity(const PhaseSpace& ps, const PureState& psi) {
  if (psi.dim() != ps.dim()) throw DomainError("stabilizer_fidelity: dimension mismatch");
  const auto& set = stabilizer_states(ps.spec());
  double best = 0.0;
  for (const auto& s : set.states) best = std::max(best, std::norm(s.amplitudes().dot(psi.amplitudes())));
  return best;
}

HullMembership in_stab_hull(const PhaseSpace& ps, const HermitianOperator& rho, double tol) {
  if (rho.dim() != ps.dim()) throw DomainError("in_stab_hull: dimension mismatch");
  const auto& set = stabilizer_states(ps.spec());
  const int n = static_cast<int>(set.states.size());
  const auto basis = hermitian_basis(ps.dim());
  const int m = static_cast<int>(basis.size());

  RMatrix coords(m, n);
  for (int j = 0; j < n; ++j) {
    const CMatrix s = set.states[static_cast<std::size_t>(j)].density().matrix();
    for (int k = 0; k < m; ++k) coords(k, j) = basis[static_cast<std::size_t>(k)].inner(s);
  }
  RVector target(m);
  for (int k = 0; k < m; ++k) target(k) = basis[static_cast<std::size_t>(k)].inner(rho);

  HullMembership out;
  {
    ProgramBuilder b("stabilizer hull membership");
    const int p0 = b.add_variables(n);
    const int t = b.add_variables(1);
    b.add_objective(t, 1.0);
    std::vector<Term> all;
    for (int j = 0; j < n; ++j) {
      b.add_greater_equal({{p0 + j, 1.0}}, 0.0);
      all.push_back({p0 + j, 1.0});
    }
    b.add_equality(all, 1.0);
    for (int k = 0; k < m; ++k) {
      std::vector<Term> row;
      for (int j = 0; j < n; ++j) {
        if (coords(k, j) != 0.0) row.push_back({p0 + j, coords(k, j)});
      }
      std::vector<Term> up = row, lo = row;
      up.push_back({t, -1.0});
      lo.push_back({t, 1.0});
      b.add_less_equal(up, target(k));
      b.add_greater_equal(lo, target(k));
    }
    const auto sol = solve(b.build());
    if (!sol.optimal()) {
      throw SolverError(std::string("in_stab_hull: mixture program ended with status ") + to_string(sol.status));
    }
    out.weights = sol.x.head(n).cwiseMax(0.0);
    CMatrix mix = CMatrix::Zero(ps.dim(), ps.dim());
    for (int j = 0; j < n; ++j) mix += out.weights(j) * set.states[static_cast<std::size_t>(j)].density().matrix();
    out.residual = max_abs_diff(mix, rho.matrix());
    out.member = out.residual <= tol;
  }
  if (out.member) return out;

  ProgramBuilder b("stabilizer hull separating witness");
  const int w0 = b.add_variables(m);
  for (int k = 0; k < m; ++k) {
    b.add_objective(w0 + k, target(k));
    b.add_less_equal({{w0 + k, 1.0}}, 1.0);
    b.add_greater_equal({{w0 + k, 1.0}}, -1.0);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Term> row;
    for (int k = 0; k < m; ++k) {
      if (coords(k, j) != 0.0) row.push_back({w0 + k, coords(k, j)});
    }
    b.add_greater_equal(row, 0.0);
  }
  const auto sol = solve(b.build());
  if (!sol.optimal()) {
    throw SolverError(std::string("in_stab_hull: witness program ended with status ") + to_string(sol.status));
  }
  CMatrix w = CMatrix::Zero(ps.dim(), ps.dim());
  for (int k = 0; k < m; ++k) w += sol.x(w0 + k) * basis[static_cast<std::size_t>(k)].matrix();
  out.witness = HermitianOperator(w);
  out.separation = out.witness->inner(rho);
  return out;
}

bool in_w_plus(const PhaseSpace& ps, const HermitianOperator& rho) {
  if (rho.dim() != ps.dim()) throw DomainError("in_w_plus: dimension mismatch");
  if (!is_unit_trace_psd(rho, 1e-9)) return false;
  return ps.wigner_rep(rho).values.minCoeff() >= -1e-9;
}

bool in_w(const PhaseSpace& ps, const HermitianOperator& sigma) {
  if (sigma.dim() != ps.dim()) throw DomainError("in_w: dimension mismatch");
  if (min_eigenvalue(sigma) < -1e-9) return false;
  return ps.wigner_trace_norm(sigma) <= 1.0 + 1e-9;
}

namespace {

CVector vec3(Complex a, Complex b, Complex c) {
  CVector v(3);
  v << a, b, c;
  return v;
}

HermitianOperator tau_t_matrix() {
  using std::numbers::pi;
  const double den = 6.0 * std::cos(2.0 * pi / 9.0);
  const Complex r1 = std::polar(1.0, pi / 9.0) / den;
  const Complex r2 = std::polar(1.0, 5.0 * pi / 9.0) / den;
  CMatrix t(3, 3);
  t << 1.0 / 3.0, r1, r2,  //
      std::conj(r1), 1.0 / 3.0, r1,  //
      std::conj(r2), std::conj(r1), 1.0 / 3.0;
  return HermitianOperator(t);
}

}  // namespace

std::vector<std::string> named_state_names() {
  return {"Strange", "Norrell", "Hplus", "Hminus", "Hi", "T", "phi", "u0", "u1", "u2", "v0", "v1", "tau_T"};
}

NamedState named_state(const std::string& name) {
  using std::numbers::pi;
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  const Complex w = std::polar(1.0, 2.0 * pi / 3.0);
  std::optional<CVector> v;
  if (name == "Strange" || name == "Hi") {
    v = vec3(0.0, 1.0 / s2, -1.0 / s2);
  } else if (name == "Norrell") {
    v = vec3(-1.0 / s6, 2.0 / s6, -1.0 / s6);
  } else if (name == "Hplus") {
    const double n = std::sqrt(2.0 * (3.0 + s3));
    v = vec3((1.0 + s3) / n, 1.0 / n, 1.0 / n);
  } else if (name == "Hminus") {
    const double n = std::sqrt(2.0 * (3.0 - s3));
    v = vec3((1.0 - s3) / n, 1.0 / n, 1.0 / n);
  } else if (name == "T") {
    const Complex xi = std::polar(1.0, 2.0 * pi / 9.0);
    v = vec3(xi / s3, 1.0 / s3, std::conj(xi) / s3);
  } else if (name == "phi") {
    v = vec3(std::polar(1.0 / s3, -2.0 * pi / 9.0), std::polar(1.0 / s3, 8.0 * pi / 9.0), 1.0 / s3);
  } else if (name == "u0") {
    v = vec3(0.0, 1.0, 0.0);
  } else if (name == "u1") {
    v = vec3(1.0 / s3, w / s3, 1.0 / s3);
  } else if (name == "u2") {
    v = vec3(1.0 / s3, w * w / s3, 1.0 / s3);
  } else if (name == "v0") {
    v = vec3(1.0, 0.0, 0.0);
  } else if (name == "v1") {
    v = vec3(1.0 / s3, 1.0 / s3, 1.0 / s3);
  } else if (name == "tau_T") {
    return {name, std::nullopt, tau_t_matrix()};
  } else {
    std::string known;
    for (const auto& n : named_state_names()) known += (known.empty() ? "" : ", ") + n;
    throw DomainError("unknown state name '" + name + "' (known: " + known + ")");
  }
  PureState p = PureState::normalized(*v);
  HermitianOperator rho = p.density();
  return {name, std::move(p), std::move(rho)};
}

}  // namespace thaumakit

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include "support/kelley_oracle.hpp"
#include "support/random_states.hpp"
#include "thaumakit/bounds.hpp"
#include "thaumakit/error.hpp"
#include "thaumakit/measures.hpp"
#include "thaumakit/stabilizer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace thaumakit;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit;  // seconds, <= 0 for none
  std::function<Outcome()> body;
};

const PhaseSpace& qutrit() {
  static const PhaseSpace ps(DimensionSpec({3}));
  return ps;
}

const PhaseSpace& two_qutrits() {
  static const PhaseSpace ps(DimensionSpec({3, 3}));
  return ps;
}

HermitianOperator state(const char* name) { return named_state(name).density; }

const double kStrange = std::log2(5.0 / 3.0);
const double kNorrell = std::log2(1.5);
const double kHplus = std::log2(3.0 - std::sqrt(3.0));
const double kT = std::log2(1.0 + 2.0 * std::sin(pi / 18.0));

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Mixed ranks so that states with and without magic both appear.
std::vector<HermitianOperator> random_qutrits(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<HermitianOperator> out;
  for (int k = 0; k < count; ++k) out.push_back(testing::random_density(3, rng, 1 + k % 2));
  return out;
}

Outcome golden() {
  struct Row {
    const char* name;
    double value;
  };
  double worst_sdp = 0.0, worst_theta = 0.0;
  for (const Row& r : {Row{"Strange", kStrange}, Row{"Norrell", kNorrell}, Row{"Hplus", kHplus}, Row{"T", kT}}) {
    const auto rho = state(r.name);
    worst_sdp = std::max(worst_sdp, std::abs(theta_min(qutrit(), rho).value - r.value));
    worst_sdp = std::max(worst_sdp, std::abs(theta_max(qutrit(), rho).value - r.value));
    worst_theta = std::max(worst_theta, std::abs(theta(qutrit(), rho).value - r.value));
  }
  return {worst_sdp < 1e-6 && worst_theta < 1e-4,
          fmt("max |theta_min/max - closed form| = %.2e (< 1e-6), max |theta - closed form| = %.2e (< 1e-4)",
              worst_sdp, worst_theta)};
}

Outcome mana_values() {
  const double s = std::abs(mana(qutrit(), state("Strange")) - kStrange);
  const double n = std::abs(mana(qutrit(), state("Norrell")) - kStrange);
  double stab = 0.0;
  const auto& set = stabilizer_states(DimensionSpec({3})).states;
  for (const auto& st : set) stab = std::max(stab, std::abs(mana(qutrit(), st.density())));
  return {s < 1e-10 && n < 1e-10 && stab < 1e-10 && set.size() == 12,
          fmt("|M(S) - log2(5/3)| = %.1e, |M(N) - log2(5/3)| = %.1e, max M over 12 stabilizer states = %.1e", s, n,
              stab)};
}

Outcome phase_point_identities() {
  double worst = 0.0;
  std::mt19937_64 rng(5);
  for (const auto* ps : {&qutrit(), &two_qutrits()}) {
    const int d = ps->dim();
    CMatrix sum = CMatrix::Zero(d, d);
    for (int u = 0; u < ps->num_points(); ++u) {
      const CMatrix& a = ps->point_operator(u).matrix();
      worst = std::max(worst, max_abs_diff(a, a.adjoint()));
      worst = std::max(worst, std::abs(a.trace() - Complex(1.0)));
      sum += a;
      for (int v = 0; v < ps->num_points(); ++v) {
        const Complex t = (a * ps->point_operator(v).matrix()).trace();
        worst = std::max(worst, std::abs(t - Complex(u == v ? d : 0)));
      }
    }
    worst = std::max(worst, max_abs_diff(sum / d, CMatrix::Identity(d, d)));
    for (int rep = 0; rep < 5; ++rep) {
      const auto v = testing::random_hermitian(d, rng);
      const auto y = testing::random_hermitian(d, rng);
      worst = std::max(worst, max_abs_diff(ps->reconstruct(ps->wigner_rep(v)).matrix(), v.matrix()));
      worst = std::max(worst, std::abs(v.inner(y) - d * ps->wigner_rep(v).values.dot(ps->wigner_rep(y).values)));
    }
  }
  return {worst < 1e-10, fmt("largest deviation over dimensions (3), (3,3) = %.2e (< 1e-10)", worst)};
}

Outcome additivity() {
  std::mt19937_64 rng(17);
  double worst_min = 0.0, worst_max = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto a = testing::random_density(3, rng, 1 + k % 2);
    const auto b = testing::random_density(3, rng, 1 + (k / 2) % 2);
    const auto ab = kron(a, b);
    worst_min = std::max(worst_min, std::abs(theta_min(two_qutrits(), ab).value - theta_min(qutrit(), a).value -
                                             theta_min(qutrit(), b).value));
    worst_max = std::max(worst_max, std::abs(theta_max(two_qutrits(), ab).value - theta_max(qutrit(), a).value -
                                             theta_max(qutrit(), b).value));
  }
  return {worst_min < 1e-5 && worst_max < 1e-5,
          fmt("20 pairs: max defect theta_min %.2e, theta_max %.2e (< 1e-5)", worst_min, worst_max)};
}

Outcome ordering() {
  const double tol = 1e-4;
  double worst = -INFINITY;
  int magic = 0;
  for (const auto& rho : random_qutrits(50, 23)) {
    const double lo = theta_min(qutrit(), rho).value;
    const double hi = theta_max(qutrit(), rho).value;
    const double mid = theta(qutrit(), rho).value;
    const double m = mana(qutrit(), rho);
    worst = std::max({worst, lo - mid, mid - hi, hi - m});
    magic += hi > 1e-6;
  }
  return {worst <= 1e-6 + tol,
          fmt("50 states (%g with magic): largest violation %.2e (<= 1e-6 + tol, tol = 1e-4)", magic, worst)};
}

Outcome strong_duality() {
  std::vector<HermitianOperator> states = random_qutrits(50, 23);
  for (const char* n : {"Strange", "Norrell", "Hplus", "T"}) states.push_back(state(n));
  double worst = 0.0;
  for (const auto& rho : states) {
    const auto lo = theta_min(qutrit(), rho);
    const auto hi = theta_max(qutrit(), rho);
    worst = std::max({worst, std::abs(lo.primal_value - lo.dual_value), std::abs(hi.primal_value - hi.dual_value)});
  }
  return {worst < 1e-6, fmt("54 states: max primal/dual difference %.2e bits (< 1e-6)", worst)};
}

Outcome witnesses() {
  const auto r = theta_min(qutrit(), state("Strange"));
  const double qn = qutrit().wigner_spectral_norm(*r.dual_witness);
  const auto tau = state("tau_T");
  const double tau_min = min_eigenvalue(tau);
  const double tau_w = qutrit().wigner_rep(tau).values.minCoeff();
  const double dmax = max_relative_entropy(state("T"), tau);
  const auto ev = eigh((1.0 + 2.0 * std::sin(pi / 18.0)) * tau - state("T")).values;
  const bool pass = std::abs(qn - 0.6) < 1e-6 && tau_min >= -1e-12 && tau_w >= -1e-12 && dmax <= kT + 1e-8 && ev(0) >= -1e-9;
  std::ostringstream os;
  os << fmt("||Q||_W,inf = %.9f; tau_T min eig %.2e, min Wigner %.2e; ", qn, tau_min, tau_w)
     << fmt("D_max(T||tau_T) - log2(1+2sin(pi/18)) = %.2e; min eig %.2e, nonzero eig %.6f", dmax - kT, ev(0), ev(2));
  return {pass, os.str()};
}

Outcome interconversion() {
  const auto b = interconversion_bound(qutrit(), state("Norrell"), state("Strange"));
  const double expect = kNorrell / kStrange;
  const double mana_diff = std::abs(mana(qutrit(), state("Norrell")) - mana(qutrit(), state("Strange")));
  return {std::abs(b.upper - expect) < 1e-9 && b.upper < 1.0 && b.below_one && mana_diff < 1e-10,
          fmt("bound %.12f vs log2(3/2)/log2(5/3) (diff %.1e), |M(N) - M(S)| = %.1e", b.upper, b.upper - expect,
              mana_diff) +
              " [" + b.label() + "]"};
}

Outcome figure1() {
  const auto rows = figure1_sweep(qutrit(), 0.1, default_p1_grid());
  double min_margin = INFINITY, max_margin = -INFINITY;
  for (const auto& r : rows) {
    min_margin = std::min(min_margin, r.n_thauma_max - r.n_mana);
    max_margin = std::max(max_margin, r.n_thauma_max - r.n_mana);
  }
  return {rows.size() == 91 && min_margin >= 0 && max_margin > 1e-3,
          fmt("%g rows; n_thauma_max - n_mana ranges over [%.4f, %.4f]", double(rows.size()), min_margin, max_margin)};
}

Outcome min_dh() {
  std::mt19937_64 rng(29);
  double worst = 0.0, worst_zero = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto rho = testing::random_density(3, rng, 1 + k % 3);
    for (double eps : {0.0, 0.05, 0.1}) {
      const double fast = min_dh_over_w(qutrit(), rho, eps).value;
      const auto oracle = testing::kelley_min_dh(qutrit(), rho, eps);
      worst = std::max(worst, std::abs(fast - 0.5 * (oracle.lower + oracle.upper)));
      if (eps == 0.0) worst_zero = std::max(worst_zero, std::abs(fast - theta_min(qutrit(), rho).value));
    }
  }
  return {worst < 1e-4 && worst_zero < 1e-6,
          fmt("max |SDP - cutting-plane oracle| = %.2e bits (< 1e-4); eps=0 vs theta_min %.2e (< 1e-6)", worst,
              worst_zero)};
}

Outcome monotonicity() {
  std::vector<HermitianOperator> states = random_qutrits(5, 31);
  for (const char* n : {"Strange", "Norrell", "Hplus", "T"}) states.push_back(state(n));
  double drift = 0.0;
  const auto gens = clifford_generators(DimensionSpec({3}));
  for (const auto& rho : states) {
    const double base = theta_max(qutrit(), rho).value;
    for (const auto& u : gens) drift = std::max(drift, std::abs(theta_max(qutrit(), rho.conjugated(u)).value - base));
  }
  double anc = 0.0;
  const auto& stab = stabilizer_states(DimensionSpec({3})).states;
  for (const char* n : {"Strange", "T"}) {
    const double base = theta_max(qutrit(), state(n)).value;
    for (const auto& s : stab) anc = std::max(anc, std::abs(theta_max(two_qutrits(), kron(state(n), s.density())).value - base));
  }
  return {drift <= 1e-7 && anc <= 1e-5,
          fmt("Clifford generator drift %.2e (<= 1e-7); stabilizer ancilla drift %.2e (<= 1e-5)", drift, anc)};
}

Outcome second_order() {
  const auto target = target_state(Target::Hplus);
  const int n = 100;
  bool pass = true;
  double variance = 0.0;
  // A mixed magic state has a positive variance, so the bound must strictly increase there.
  const HermitianOperator mixed = 0.8 * state("T") + 0.2 * state("Strange");
  const std::vector<HermitianOperator> states = {mixed, state("T"), state("Norrell")};
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& rho = states[k];
    const auto half = second_order_bound(qutrit(), rho, n, 0.5, target);
    pass &= half.value == n * half.theta / target.denominator;
    double prev = -INFINITY;
    const bool strict = k == 0;
    for (double eps : {0.01, 0.1, 0.5, 0.9}) {
      const auto b = second_order_bound(qutrit(), rho, n, eps, target);
      pass &= strict ? b.value > prev : b.value >= prev;
      prev = b.value;
    }
    if (strict) variance = half.variance;
  }
  return {pass && variance > 0,
          fmt("eps=1/2 equals n*theta/denominator exactly; increasing over {0.01,0.1,0.5,0.9} (variance %.3e)",
              variance)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"golden values of Strange, Norrell, H+, T", 10.0, golden},
      {"mana values", 0, mana_values},
      {"phase point identities", 0, phase_point_identities},
      {"additivity of min- and max-thauma", 120.0, additivity},
      {"ordering theta_min <= theta <= theta_max <= mana", 0, ordering},
      {"strong duality of min- and max-thauma programs", 0, strong_duality},
      {"witness operators", 0, witnesses},
      {"maximal-mana inequivalence of Norrell and Strange", 0, interconversion},
      {"figure 1 sweep", 300.0, figure1},
      {"W-minimized hypothesis testing", 0, min_dh},
      {"monotonicity spot checks", 0, monotonicity},
      {"second-order bound", 0, second_order},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += fmt("; exceeded %.0f s", c.time_limit);
    }
    failures += !o.pass;
    std::printf("%s  %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}

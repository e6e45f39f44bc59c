#pragma once

#include "thaumakit/phase_space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace thaumakit {

/// Unit vector in C^dim. Amplitudes are stored as given; `canonical` fixes the
/// global phase so that the first non-negligible amplitude is real positive.
class PureState {
 public:
  /// Throws DomainError if |v| differs from 1 by more than 1e-10.
  explicit PureState(CVector amplitudes);
  static PureState normalized(const CVector& v);

  int dim() const { return static_cast<int>(amp_.size()); }
  const CVector& amplitudes() const { return amp_; }
  PureState canonical() const;
  HermitianOperator density() const { return HermitianOperator::outer(amp_); }

 private:
  CVector amp_;
};

struct StabilizerSet {
  DimensionSpec spec;
  std::vector<PureState> states;
};

/// Quantum Fourier transform (1/sqrt d) sum omega^{jk} |j><k|.
CMatrix fourier_gate(int d);
/// diag(omega^{j(j-1)/2}); for d = 3 this is diag(1, 1, omega).
CMatrix phase_gate(int d);
CMatrix shift_gate(int d);
/// |i><i| (x) |i+j><j| on C^d (x) C^d.
CMatrix sum_gate(int d);

/// H, S, X on each factor followed by SUM on each adjacent pair, all acting
/// on the full space.
std::vector<GeneralOperator> clifford_generators(const DimensionSpec& spec);

/// Orbit of |0...0> under the generators. Supported for total dimension 3 and 9.
StabilizerSet enumerate_pure_stabilizer_states(const PhaseSpace& ps);
/// Enumerated once per DimensionSpec and reused.
const StabilizerSet& stabilizer_states(const DimensionSpec& spec);

double stabilizer_fidelity(const PhaseSpace& ps, const PureState& psi);

struct HullMembership {
  bool member = false;
  /// Mixing weights over `stabilizer_states(spec).states` when member.
  RVector weights;
  /// Largest entrywise deviation of the best mixture from rho.
  double residual = 0.0;
  /// When not a member: Hermitian W with tr[W s] >= 0 on every pure
  /// stabilizer state s and tr[W rho] = `separation` < 0.
  std::optional<HermitianOperator> witness;
  double separation = 0.0;
};

HullMembership in_stab_hull(const PhaseSpace& ps, const HermitianOperator& rho, double tol = 1e-7);

/// Unit-trace PSD state with min_u W(u) >= -1e-9.
bool in_w_plus(const PhaseSpace& ps, const HermitianOperator& rho);
/// PSD with Wigner trace norm at most 1 (both within 1e-9).
bool in_w(const PhaseSpace& ps, const HermitianOperator& sigma);

struct NamedState {
  std::string name;
  std::optional<PureState> pure;
  HermitianOperator density;
};

/// Qutrit states by name: Strange, Norrell, Hplus, Hminus, Hi, T, phi, u0,
/// u1, u2, v0, v1, tau_T. Throws DomainError for unknown names.
NamedState named_state(const std::string& name);
std::vector<std::string> named_state_names();

}  // namespace thaumakit

#pragma once

#include "thaumakit/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace thaumakit {

/// Ordered odd-prime factorization of a qudit Hilbert space dimension.
class DimensionSpec {
 public:
  /// Throws DomainError naming the first factor that is not an odd prime.
  explicit DimensionSpec(std::vector<int> factors);

  /// Prime factorization of `dim` in ascending order; throws for even or unit dimension.
  static DimensionSpec from_dimension(int dim);

  const std::vector<int>& factors() const { return factors_; }
  int total_dim() const { return total_dim_; }
  int num_points() const { return total_dim_ * total_dim_; }
  std::string to_string() const;

  bool operator==(const DimensionSpec& o) const { return factors_ == o.factors_; }

 private:
  std::vector<int> factors_;
  int total_dim_ = 1;
};

bool is_odd_prime(int p);

/// (a1, a2) per factor.
using PhasePoint = std::vector<std::pair<int, int>>;

class PhaseSpace;

struct WignerRep {
  DimensionSpec spec;
  RVector values;  // lexicographic point order

  double sum() const { return values.sum(); }
};

/// Heisenberg-Weyl displacements T_u and phase-point operators A_u, cached at
/// construction. Points are ordered lexicographically over the per-factor
/// (a1, a2) tuples, first factor most significant.
class PhaseSpace {
 public:
  explicit PhaseSpace(DimensionSpec spec);

  const DimensionSpec& spec() const { return spec_; }
  int dim() const { return spec_.total_dim(); }
  int num_points() const { return spec_.num_points(); }

  const HermitianOperator& point_operator(int index) const { return points_[static_cast<std::size_t>(index)]; }
  const GeneralOperator& weyl(int index) const { return weyl_[static_cast<std::size_t>(index)]; }

  int index_of(const PhasePoint& u) const;
  PhasePoint point_at(int index) const;

  WignerRep wigner_rep(const HermitianOperator& v) const;
  WignerRep wigner_rep(const CMatrix& v) const;
  HermitianOperator reconstruct(const WignerRep& w) const;
  HermitianOperator reconstruct(const RVector& w) const;

  double wigner_trace_norm(const HermitianOperator& v) const;
  double wigner_spectral_norm(const HermitianOperator& v) const;

 private:
  void check_dim(int d, const char* what) const;

  DimensionSpec spec_;
  std::vector<GeneralOperator> weyl_;
  std::vector<HermitianOperator> points_;
  // Column u holds vec(A_u), so W_V = Re(vecs^H vec V) / d.
  CMatrix vecs_;
};

PhaseSpace build_phase_space(const DimensionSpec& spec);

}  // namespace thaumakit

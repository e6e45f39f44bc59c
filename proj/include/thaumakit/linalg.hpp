#pragma once

// Dense complex linear algebra shared by every module: the Hermitian operator
// carrier type, tensor products, spectral helpers and matrix functions.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace thaumakit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// General (not necessarily Hermitian) operator, e.g. a Heisenberg-Weyl
// displacement or a Clifford unitary.
using GeneralOperator = CMatrix;

/// Dense Hermitian matrix. Construction symmetrizes the input and rejects it
/// when the largest entry of A - A^dagger exceeds `kAsymmetryTolerance`.
class HermitianOperator {
 public:
  static constexpr double kAsymmetryTolerance = 1e-9;

  HermitianOperator() = default;
  explicit HermitianOperator(const CMatrix& entries);

  static HermitianOperator zero(int dim);
  static HermitianOperator identity(int dim);
  static HermitianOperator from_real(const RMatrix& entries);
  /// |v><v| for an arbitrary (not necessarily normalized) vector.
  static HermitianOperator outer(const CVector& v);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  /// tr[this * other], real because both factors are Hermitian.
  double inner(const HermitianOperator& other) const;
  double inner(const CMatrix& other) const;

  HermitianOperator& operator+=(const HermitianOperator& o);
  HermitianOperator& operator-=(const HermitianOperator& o);
  HermitianOperator& operator*=(double a);

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }
  friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }

  /// U * this * U^dagger.
  HermitianOperator conjugated(const CMatrix& u) const;

 private:
  struct Trusted {};
  HermitianOperator(CMatrix m, Trusted) : m_(std::move(m)) {}

  CMatrix m_;
};

struct Spectrum {
  RVector values;   // ascending
  CMatrix vectors;  // columns are eigenvectors
};

Spectrum eigh(const HermitianOperator& h);
double min_eigenvalue(const HermitianOperator& h);
double max_eigenvalue(const HermitianOperator& h);

/// Maximum absolute entrywise difference.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);
HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator kron_power(const HermitianOperator& a, int copies);

/// Projector onto the span of eigenvectors whose eigenvalue exceeds
/// `relative_cutoff` times the largest eigenvalue.
HermitianOperator support_projector(const HermitianOperator& h, double relative_cutoff = 1e-9);

/// Orthonormal basis (as columns) of the complement of the `support_projector` range.
CMatrix kernel_basis(const HermitianOperator& h, double relative_cutoff = 1e-9);

/// Real-valued function applied to the spectrum.
template <typename F>
HermitianOperator apply_spectral(const HermitianOperator& h, F&& f) {
  const Spectrum sp = eigh(h);
  RVector fv(sp.values.size());
  for (Eigen::Index i = 0; i < sp.values.size(); ++i) fv(i) = f(sp.values(i));
  return HermitianOperator(sp.vectors * fv.asDiagonal() * sp.vectors.adjoint());
}

/// Orthonormal (trace inner product) basis of the d x d Hermitian matrices:
/// diagonal units first, then for each i<j the symmetric and antisymmetric
/// off-diagonal pair.
std::vector<HermitianOperator> hermitian_basis(int dim);

/// Unit trace and positive semidefinite within `tol`.
bool is_unit_trace_psd(const HermitianOperator& rho, double tol = 1e-9);

}  // namespace thaumakit

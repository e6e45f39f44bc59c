#include "thaumakit/linalg.hpp"

#include "thaumakit/error.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <string>

namespace thaumakit {

HermitianOperator::HermitianOperator(const CMatrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw DomainError("HermitianOperator: expected a non-empty square matrix, got " +
                      std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()));
  }
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= kAsymmetryTolerance)) {
    throw DomainError("HermitianOperator: matrix is not Hermitian (asymmetry " +
                      std::to_string(asym) + ")");
  }
  m_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(CMatrix::Zero(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(CMatrix::Identity(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::from_real(const RMatrix& entries) {
  return HermitianOperator(CMatrix(entries.cast<Complex>()));
}

HermitianOperator HermitianOperator::outer(const CVector& v) {
  CMatrix m = v * v.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return HermitianOperator(std::move(m), Trusted{});
}

double HermitianOperator::inner(const HermitianOperator& other) const { return inner(other.m_); }

double HermitianOperator::inner(const CMatrix& other) const {
  // tr[A B] = sum_ij A_ij B_ji
  return (m_.transpose().cwiseProduct(other)).sum().real();
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& o) {
  if (o.dim() != dim()) throw DomainError("HermitianOperator: dimension mismatch in +");
  m_ += o.m_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& o) {
  if (o.dim() != dim()) throw DomainError("HermitianOperator: dimension mismatch in -");
  m_ -= o.m_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double a) {
  m_ *= a;
  return *this;
}

HermitianOperator HermitianOperator::conjugated(const CMatrix& u) const {
  CMatrix m = u * m_ * u.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return HermitianOperator(std::move(m), Trusted{});
}

Spectrum eigh(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a - b).cwiseAbs().maxCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

HermitianOperator kron_power(const HermitianOperator& a, int copies) {
  if (copies < 1) throw DomainError("kron_power: copies must be >= 1");
  HermitianOperator out = a;
  for (int k = 1; k < copies; ++k) out = kron(out, a);
  return out;
}

HermitianOperator support_projector(const HermitianOperator& h, double relative_cutoff) {
  const Spectrum sp = eigh(h);
  const double top = std::max(sp.values.cwiseAbs().maxCoeff(), 0.0);
  CMatrix p = CMatrix::Zero(h.dim(), h.dim());
  for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
    if (sp.values(i) > relative_cutoff * top) p += sp.vectors.col(i) * sp.vectors.col(i).adjoint();
  }
  return HermitianOperator(p);
}

CMatrix kernel_basis(const HermitianOperator& h, double relative_cutoff) {
  const Spectrum sp = eigh(h);
  const double top = sp.values.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
    if (!(sp.values(i) > relative_cutoff * top)) cols.push_back(i);
  }
  CMatrix k(h.dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) k.col(static_cast<Eigen::Index>(j)) = sp.vectors.col(cols[j]);
  return k;
}

std::vector<HermitianOperator> hermitian_basis(int dim) {
  std::vector<HermitianOperator> basis;
  basis.reserve(static_cast<std::size_t>(dim) * dim);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    CMatrix m = CMatrix::Zero(dim, dim);
    m(i, i) = 1.0;
    basis.emplace_back(m);
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      CMatrix sym = CMatrix::Zero(dim, dim);
      sym(i, j) = r;
      sym(j, i) = r;
      basis.emplace_back(sym);
      CMatrix asym = CMatrix::Zero(dim, dim);
      asym(i, j) = Complex(0.0, r);
      asym(j, i) = Complex(0.0, -r);
      basis.emplace_back(asym);
    }
  }
  return basis;
}

bool is_unit_trace_psd(const HermitianOperator& rho, double tol) {
  return std::abs(rho.trace() - 1.0) <= tol && min_eigenvalue(rho) >= -tol;
}

}  // namespace thaumakit

#include "thaumakit/phase_space.hpp"

#include "thaumakit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace thaumakit {

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int k = 3; k * k <= p; k += 2) {
    if (p % k == 0) return false;
  }
  return true;
}

DimensionSpec::DimensionSpec(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw DomainError("dimension spec: factor list is empty");
  long long total = 1;
  for (int p : factors_) {
    if (!is_odd_prime(p)) {
      throw DomainError("dimension spec: factor " + std::to_string(p) + " is not an odd prime");
    }
    total *= p;
    if (total > 1'000'000) throw DomainError("dimension spec: total dimension too large");
  }
  total_dim_ = static_cast<int>(total);
}

DimensionSpec DimensionSpec::from_dimension(int dim) {
  if (dim < 3) throw DomainError("dimension " + std::to_string(dim) + " has no odd-prime factorization");
  std::vector<int> factors;
  int rest = dim;
  for (int p = 2; p * p <= rest; ++p) {
    while (rest % p == 0) {
      factors.push_back(p);
      rest /= p;
    }
  }
  if (rest > 1) factors.push_back(rest);
  for (int p : factors) {
    if (p == 2) throw DomainError("dimension " + std::to_string(dim) + " is even; only odd dimensions are supported");
  }
  return DimensionSpec(std::move(factors));
}

std::string DimensionSpec::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "," : "") << factors_[i];
  os << ')';
  return os.str();
}

namespace {

// exp(2 pi i m / d) with m reduced mod d first.
Complex root_of_unity(long long m, int d) {
  const long long r = ((m % d) + d) % d;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

struct PrimeFactorOps {
  std::vector<GeneralOperator> weyl;
  std::vector<CMatrix> points;
};

PrimeFactorOps build_prime(int d) {
  CMatrix z = CMatrix::Zero(d, d);
  CMatrix x = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    z(j, j) = root_of_unity(j, d);
    x((j + 1) % d, j) = 1.0;
  }
  // tau = omega^((d+1)/2)
  const long long tau_exp = (d + 1) / 2;

  PrimeFactorOps ops;
  ops.weyl.reserve(static_cast<std::size_t>(d) * d);
  CMatrix za = CMatrix::Identity(d, d);
  for (int a1 = 0; a1 < d; ++a1) {
    CMatrix zx = za;
    for (int a2 = 0; a2 < d; ++a2) {
      ops.weyl.push_back(root_of_unity(-tau_exp * a1 * a2, d) * zx);
      zx = (zx * x).eval();
    }
    za = (za * z).eval();
  }
  CMatrix a0 = CMatrix::Zero(d, d);
  for (const auto& t : ops.weyl) a0 += t;
  a0 /= static_cast<double>(d);

  ops.points.reserve(ops.weyl.size());
  for (const auto& t : ops.weyl) ops.points.push_back(t * a0 * t.adjoint());
  return ops;
}

}  // namespace

PhaseSpace::PhaseSpace(DimensionSpec spec) : spec_(std::move(spec)) {
  std::vector<GeneralOperator> weyl{CMatrix::Identity(1, 1)};
  std::vector<CMatrix> points{CMatrix::Identity(1, 1)};
  for (int p : spec_.factors()) {
    const PrimeFactorOps ops = build_prime(p);
    std::vector<GeneralOperator> nw;
    std::vector<CMatrix> np;
    nw.reserve(weyl.size() * ops.weyl.size());
    np.reserve(points.size() * ops.points.size());
    for (std::size_t i = 0; i < weyl.size(); ++i) {
      for (std::size_t j = 0; j < ops.weyl.size(); ++j) {
        nw.push_back(kron(weyl[i], ops.weyl[j]));
        np.push_back(kron(points[i], ops.points[j]));
      }
    }
    weyl = std::move(nw);
    points = std::move(np);
  }
  weyl_ = std::move(weyl);
  const int d = dim();
  points_.reserve(points.size());
  vecs_.resize(static_cast<Eigen::Index>(d) * d, num_points());
  for (std::size_t k = 0; k < points.size(); ++k) {
    points_.emplace_back(points[k]);
    vecs_.col(static_cast<Eigen::Index>(k)) = points_.back().matrix().reshaped();
  }
}

PhaseSpace build_phase_space(const DimensionSpec& spec) { return PhaseSpace(spec); }

int PhaseSpace::index_of(const PhasePoint& u) const {
  const auto& f = spec_.factors();
  if (u.size() != f.size()) throw DomainError("phase point: wrong number of factor coordinates");
  int idx = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const int p = f[k];
    if (u[k].first < 0 || u[k].first >= p || u[k].second < 0 || u[k].second >= p) {
      throw DomainError("phase point: coordinate out of range for factor " + std::to_string(p));
    }
    idx = idx * p * p + u[k].first * p + u[k].second;
  }
  return idx;
}

PhasePoint PhaseSpace::point_at(int index) const {
  const auto& f = spec_.factors();
  PhasePoint u(f.size());
  for (std::size_t k = f.size(); k-- > 0;) {
    const int p = f[k];
    const int local = index % (p * p);
    index /= p * p;
    u[k] = {local / p, local % p};
  }
  return u;
}

void PhaseSpace::check_dim(int d, const char* what) const {
  if (d != dim()) {
    throw DomainError(std::string(what) + ": operator dimension " + std::to_string(d) +
                      " does not match phase space " + spec_.to_string());
  }
}

WignerRep PhaseSpace::wigner_rep(const CMatrix& v) const {
  if (v.rows() != v.cols()) throw DomainError("wigner_rep: operator is not square");
  check_dim(static_cast<int>(v.rows()), "wigner_rep");
  const CVector raw = vecs_.adjoint() * v.reshaped();
  const double scale = 1.0 / dim();
  const double bound = std::max(1.0, v.cwiseAbs().maxCoeff());
  if (raw.imag().cwiseAbs().maxCoeff() * scale > 1e-10 * bound) {
    throw DomainError("wigner_rep: operator is not Hermitian");
  }
  return {spec_, raw.real() * scale};
}

WignerRep PhaseSpace::wigner_rep(const HermitianOperator& v) const { return wigner_rep(v.matrix()); }

HermitianOperator PhaseSpace::reconstruct(const RVector& w) const {
  if (w.size() != num_points()) {
    throw DomainError("reconstruct: expected " + std::to_string(num_points()) + " Wigner values, got " +
                      std::to_string(w.size()));
  }
  const CVector flat = vecs_ * w.cast<Complex>();
  return HermitianOperator(CMatrix(flat.reshaped(dim(), dim())));
}

HermitianOperator PhaseSpace::reconstruct(const WignerRep& w) const {
  if (!(w.spec == spec_)) throw DomainError("reconstruct: Wigner representation belongs to another phase space");
  return reconstruct(w.values);
}

double PhaseSpace::wigner_trace_norm(const HermitianOperator& v) const {
  return wigner_rep(v).values.cwiseAbs().sum();
}

double PhaseSpace::wigner_spectral_norm(const HermitianOperator& v) const {
  return dim() * wigner_rep(v).values.cwiseAbs().maxCoeff();
}

}  // namespace thaumakit

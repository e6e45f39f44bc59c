#include "doctest.h"

#include "support/random_states.hpp"
#include "thaumakit/error.hpp"
#include "thaumakit/linalg.hpp"

#include <cmath>

using namespace thaumakit;

TEST_CASE("hermitian operator rejects asymmetric input") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianOperator{m}, DomainError);
  CHECK_THROWS_AS(HermitianOperator{CMatrix::Zero(2, 3)}, DomainError);
}

TEST_CASE("hermitian operator symmetrizes tiny asymmetry") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = 1e-11;
  const HermitianOperator h(m);
  CHECK(h(0, 1) == h(1, 0));
}

TEST_CASE("trace inner product matches explicit product") {
  std::mt19937_64 rng(3);
  const auto a = testing::random_hermitian(4, rng);
  const auto b = testing::random_hermitian(4, rng);
  CHECK(a.inner(b) == doctest::Approx((a.matrix() * b.matrix()).trace().real()).epsilon(1e-12));
}

TEST_CASE("kron power dimension and trace") {
  const auto rho = HermitianOperator::identity(3) * (1.0 / 3.0);
  const auto r2 = kron_power(rho, 2);
  CHECK(r2.dim() == 9);
  CHECK(r2.trace() == doctest::Approx(1.0));
}

TEST_CASE("support projector and kernel basis are complementary") {
  std::mt19937_64 rng(5);
  const auto rho = testing::random_density(5, rng, 2);
  const auto p = support_projector(rho);
  const CMatrix k = kernel_basis(rho);
  CHECK(p.trace() == doctest::Approx(2.0));
  CHECK(k.cols() == 3);
  const CMatrix sum = p.matrix() + k * k.adjoint();
  CHECK(max_abs_diff(sum, CMatrix::Identity(5, 5)) < 1e-10);
}

TEST_CASE("hermitian basis is orthonormal") {
  const auto basis = hermitian_basis(3);
  REQUIRE(basis.size() == 9);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      CHECK(basis[i].inner(basis[j]) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("spectral function reproduces the square") {
  std::mt19937_64 rng(7);
  const auto h = testing::random_hermitian(4, rng);
  const auto sq = apply_spectral(h, [](double x) { return x * x; });
  CHECK(max_abs_diff(sq.matrix(), h.matrix() * h.matrix()) < 1e-10);
}

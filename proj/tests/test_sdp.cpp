#include "doctest.h"

#include "support/grid_oracle.hpp"
#include "support/random_states.hpp"
#include "thaumakit/error.hpp"
#include "thaumakit/sdp.hpp"

#include <cmath>
#include <sstream>

using namespace thaumakit;

namespace {

RMatrix m2(double a, double b, double c, double d) {
  RMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Two-variable toy programs with known optima.
std::vector<std::pair<ConeProgram, double>> toy_corpus() {
  std::vector<std::pair<ConeProgram, double>> out;
  {
    ProgramBuilder b("disk");
    b.add_variables(2);
    b.add_objective(0, 1.0);
    b.add_objective(1, 1.0);
    b.add_lmi(m2(1, 0, 0, 1), {{0, m2(1, 0, 0, -1)}, {1, m2(0, 1, 1, 0)}});
    out.emplace_back(b.build(), -std::sqrt(2.0));
  }
  {
    ProgramBuilder b("hyperbola");
    b.add_variables(2);
    b.add_objective(0, 1.0);
    b.add_objective(1, 1.0);
    b.add_lmi(m2(0, 1, 1, 0), {{0, m2(1, 0, 0, 0)}, {1, m2(0, 0, 0, 1)}});
    out.emplace_back(b.build(), 2.0);
  }
  {
    ProgramBuilder b("lp plus lmi");
    b.add_variables(2);
    b.add_objective(0, 2.0);
    b.add_objective(1, 1.0);
    b.add_greater_equal({{0, 1.0}}, 0.0);
    b.add_greater_equal({{1, 1.0}}, 0.0);
    b.add_greater_equal({{0, 1.0}, {1, 1.0}}, 1.0);
    b.add_lmi(m2(1, 0, 0, 1), {{1, m2(0, 1, 1, 0)}});
    out.emplace_back(b.build(), 1.0);
  }
  {
    ProgramBuilder b("three by three");
    b.add_variables(2);
    b.add_objective(0, 1.0);
    b.add_objective(1, 0.5);
    RMatrix f0 = RMatrix::Identity(3, 3);
    RMatrix f1 = RMatrix::Zero(3, 3), f2 = RMatrix::Zero(3, 3);
    f1(0, 1) = f1(1, 0) = 1.0;
    f2(0, 2) = f2(2, 0) = 1.0;
    b.add_lmi(f0, {{0, f1}, {1, f2}});
    out.emplace_back(b.build(), -std::sqrt(1.25));
  }
  return out;
}

}  // namespace

TEST_CASE("embedding of hermitian matrices") {
  CHECK(embed_hermitian(CMatrix::Identity(3, 3)).isApprox(RMatrix::Identity(6, 6)));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(embed_hermitian(d));
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(2) == doctest::Approx(1.0));
  CHECK(es.eigenvalues()(3) == doctest::Approx(1.0));

  std::mt19937_64 rng(19);
  const CVector t = testing::random_unit_vector(3, rng);
  Eigen::SelfAdjointEigenSolver<RMatrix> et(embed_hermitian(HermitianOperator::outer(t)));
  int rank = 0;
  for (int i = 0; i < 6; ++i) rank += et.eigenvalues()(i) > 1e-10;
  CHECK(rank == 2);
  CHECK(et.eigenvalues()(0) > -1e-12);
}

TEST_CASE("dual unembedding preserves the trace pairing") {
  std::mt19937_64 rng(23);
  const auto h = testing::random_hermitian(3, rng);
  const CMatrix g = testing::ginibre(6, 6, rng);
  const RMatrix z = (g.real() * g.real().transpose());
  const auto y = unembed_dual(z);
  CHECK((embed_hermitian(h) * z).trace() == doctest::Approx(h.inner(y)).epsilon(1e-12));
  CHECK(min_eigenvalue(y) > -1e-12);
}

TEST_CASE("trivial programs") {
  {
    ProgramBuilder b("min tr X, X >= I");
    b.add_variables(3);
    b.add_objective(0, 1.0);
    b.add_objective(2, 1.0);
    b.add_lmi(m2(-1, 0, 0, -1), {{0, m2(1, 0, 0, 0)}, {1, m2(0, 1, 1, 0)}, {2, m2(0, 0, 0, 1)}});
    const auto sol = solve(b.build());
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.primal_value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(sol.gap <= 1e-8);
  }
  {
    ProgramBuilder b("min x, x >= 5");
    b.add_variables(1);
    b.add_objective(0, 1.0);
    b.add_greater_equal({{0, 1.0}}, 5.0);
    const auto sol = solve(b.build());
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.primal_value == doctest::Approx(5.0).epsilon(1e-8));
    CHECK(sol.x(0) == doctest::Approx(5.0).epsilon(1e-7));
  }
}

TEST_CASE("equality constraints") {
  ProgramBuilder b("eq");
  b.add_variables(2);
  b.add_objective(0, 1.0);
  b.add_objective(1, 1.0);
  b.add_equality({{0, 1.0}, {1, -1.0}}, 1.0);
  b.add_greater_equal({{1, 1.0}}, 0.0);
  const auto sol = solve(b.build());
  REQUIRE(sol.optimal());
  CHECK(sol.primal_value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("infeasible and unbounded programs are classified") {
  {
    ProgramBuilder b("contradictory bounds");
    b.add_variables(1);
    b.add_objective(0, 1.0);
    b.add_greater_equal({{0, 1.0}}, 1.0);
    b.add_less_equal({{0, 1.0}}, 0.0);
    CHECK(solve(b.build()).status == SolveStatus::Infeasible);
  }
  {
    ProgramBuilder b("indefinite lmi");
    b.add_variables(1);
    b.add_objective(0, 1.0);
    b.add_lmi(m2(0, 1, 1, 0), {{0, m2(1, 0, 0, -1)}});
    CHECK(solve(b.build()).status == SolveStatus::Infeasible);
  }
  {
    ProgramBuilder b("unbounded");
    b.add_variables(1);
    b.add_objective(0, 1.0);
    b.add_less_equal({{0, 1.0}}, 0.0);
    CHECK(solve(b.build()).status == SolveStatus::Unbounded);
  }
}

TEST_CASE("agreement with grid search on toy programs") {
  for (const auto& [p, known] : toy_corpus()) {
    CAPTURE(p.description);
    const auto sol = solve(p);
    REQUIRE(sol.optimal());
    const double grid = testing::grid_minimum(p);
    CHECK(std::abs(sol.primal_value - grid) < 1e-4);
    CHECK(sol.primal_value == doctest::Approx(known).epsilon(1e-7));
    // weak duality
    CHECK(sol.primal_value >= sol.dual_value - 1e-8);
  }
}

TEST_CASE("status does not depend on objective scale") {
  for (auto [p, known] : toy_corpus()) {
    const auto base = solve(p);
    p.c *= 1e3;
    const auto scaled = solve(p);
    CHECK(base.status == scaled.status);
    CHECK(scaled.primal_value == doctest::Approx(1e3 * known).epsilon(1e-7));
  }
  ProgramBuilder b("contradictory bounds");
  b.add_variables(1);
  b.add_objective(0, 1e3);
  b.add_greater_equal({{0, 1.0}}, 1.0);
  b.add_less_equal({{0, 1.0}}, 0.0);
  CHECK(solve(b.build()).status == SolveStatus::Infeasible);
}

TEST_CASE("hermitian lmi gives the largest eigenvalue") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 5; ++rep) {
    const auto h = testing::random_hermitian(4, rng);
    ProgramBuilder b("lambda max");
    const int t = b.add_variables(1);
    b.add_objective(t, 1.0);
    b.add_lmi(-1.0 * h, {{t, HermitianOperator::identity(4)}});
    const auto sol = solve(b.build());
    REQUIRE(sol.optimal());
    CHECK(sol.primal_value == doctest::Approx(max_eigenvalue(h)).epsilon(1e-8));
    // the dual block is a density matrix supported on the top eigenvector
    const auto y = unembed_dual(psd_block(b.build().dims, sol.z, 0));
    CHECK(y.trace() == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("solve is deterministic") {
  const auto corpus = toy_corpus();
  const auto a = solve(corpus[3].first);
  const auto b = solve(corpus[3].first);
  CHECK(a.iterations == b.iterations);
  CHECK(a.x == b.x);
}

TEST_CASE("builder validation and dump") {
  ProgramBuilder b("named");
  b.add_variables(2);
  CHECK_THROWS_AS(b.add_objective(2, 1.0), DomainError);
  CHECK_THROWS_AS(b.add_less_equal({{5, 1.0}}, 0.0), DomainError);
  b.add_less_equal({{0, 1.0}}, 1.0);
  b.add_lmi(m2(1, 0, 0, 1), {{1, m2(0, 1, 1, 0)}});
  std::ostringstream os;
  b.dump(os);
  CHECK(os.str().find("named") != std::string::npos);
  CHECK(os.str().find("lmi 0") != std::string::npos);
  std::ostringstream os2;
  dump(b.build(), os2);
  CHECK(os2.str().find("psd blocks: 2") != std::string::npos);
  ConeProgram bad = b.build();
  bad.h.resize(1);
  CHECK_THROWS_AS(solve(bad), DomainError);
}

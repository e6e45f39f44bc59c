#pragma once

// Dense primal-dual interior-point solver for linear cone programs over
// products of nonnegative orthants and real symmetric PSD cones.
//
//   minimize    c^T x
//   subject to  G x + s = h,  A x = b,  s in K
//
// with dual
//
//   maximize    -h^T z - b^T y
//   subject to  G^T z + A^T y + c = 0,  z in K.
//
// K = R_+^l x S_+^{n_1} x ... ; a PSD block of order n occupies n*n
// consecutive entries of s, z and the rows of G, h (column-major, full
// storage).

#include "thaumakit/linalg.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace thaumakit {

struct ConeDims {
  int nonneg = 0;
  std::vector<int> psd;

  int rows() const;
  /// Barrier degree: l + sum n_k.
  int degree() const;
};

struct ConeProgram {
  RVector c;
  RMatrix G;
  RVector h;
  RMatrix A;
  RVector b;
  ConeDims dims;
  double objective_offset = 0.0;
  std::string description;

  int num_variables() const { return static_cast<int>(c.size()); }
  /// Throws DomainError when block sizes disagree or data is not finite.
  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalTrouble };

const char* to_string(SolveStatus s);

struct SolverOptions {
  // Tolerances the solver tries to reach before stopping.
  double target_gap = 1e-8;
  double target_feasibility = 1e-8;
  // Looser tolerances at which a stalled run still counts as Optimal.
  double accept_gap = 1e-8;
  double accept_feasibility = 1e-8;
  int max_iterations = 200;
  double step_fraction = 0.98;
  int refinement_steps = 2;
};

struct ConeSolution {
  SolveStatus status = SolveStatus::NumericalTrouble;
  double primal_value = 0.0;  // c^T x + offset
  double dual_value = 0.0;    // -h^T z - b^T y + offset
  RVector x, s, y, z;
  double gap = 0.0;  // |primal - dual| / (1 + |primal|)
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;

  bool optimal() const { return status == SolveStatus::Optimal; }
};

ConeSolution solve(const ConeProgram& p, const SolverOptions& opts = {});

/// [[Re H, -Im H], [Im H, Re H]].
RMatrix embed_hermitian(const HermitianOperator& h);
RMatrix embed_hermitian(const CMatrix& h);

/// Hermitian Y with tr[embed(H) Z] = tr[H Y] for every Hermitian H.
HermitianOperator unembed_dual(const RMatrix& z);

/// Symmetric n x n block k of a cone-sized vector (s or z).
RMatrix psd_block(const ConeDims& dims, const RVector& v, int k);
/// Nonnegative part of a cone-sized vector.
RVector nonneg_part(const ConeDims& dims, const RVector& v);

struct Term {
  int var;
  double coef;
};

/// Assembles a ConeProgram from scalar variables, linear rows and linear
/// matrix inequalities. Every constraint call appends a new cone block (or
/// row); `build` orders nonnegative rows ahead of PSD blocks.
class ProgramBuilder {
 public:
  explicit ProgramBuilder(std::string description = {});

  /// Returns the index of the first new variable.
  int add_variables(int count);
  int num_variables() const { return nvars_; }

  void add_objective(int var, double coef);
  void add_objective_constant(double v) { offset_ += v; }

  /// sum coef * x <= rhs. Returns the row index among nonnegative rows.
  int add_less_equal(const std::vector<Term>& terms, double rhs);
  int add_greater_equal(const std::vector<Term>& terms, double rhs);
  int add_equality(const std::vector<Term>& terms, double rhs);

  /// F0 + sum_k x_k F_k >= 0 (PSD), F symmetric. Returns the PSD block index.
  int add_lmi(const RMatrix& constant, const std::vector<std::pair<int, RMatrix>>& terms);
  /// Hermitian LMI, compiled through `embed_hermitian`.
  int add_lmi(const HermitianOperator& constant, const std::vector<std::pair<int, HermitianOperator>>& terms);

  ConeProgram build() const;

  /// Human-readable listing of blocks and constraints.
  void dump(std::ostream& os) const;

 private:
  struct Row {
    std::vector<Term> terms;
    double rhs;
  };
  struct Lmi {
    RMatrix constant;
    std::vector<std::pair<int, RMatrix>> terms;
  };
  void check_terms(const std::vector<Term>& terms) const;

  std::string description_;
  int nvars_ = 0;
  std::vector<double> objective_;
  double offset_ = 0.0;
  std::vector<Row> le_rows_;
  std::vector<Row> eq_rows_;
  std::vector<Lmi> lmis_;
};

void dump(const ConeProgram& p, std::ostream& os);

}  // namespace thaumakit

// Copyright 2026 The pim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIM_SDP_HPP
#define PIM_SDP_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pim/channel.hpp"
#include "pim/matrix.hpp"

/// Semidefinite programs over complex Hermitian matrices.
///
/// A problem is assembled from variables (Hermitian PSD or free matrices,
/// free or non-negative scalars), affine equality constraints, affine PSD
/// constraints and a linear objective. Scalars are 1x1 matrices throughout.
/// Every constraint and objective is a sum of LinearTerms, each of which maps
/// one variable to a Hermitian matrix.
///
/// solve() runs a primal-dual interior-point method (Mehrotra
/// predictor-corrector, HKM search direction) on the real coordinates of the
/// Hermitian blocks. A Hermitian n x n matrix H has the n^2 orthonormal
/// coordinates
///
///   H[a,a],  sqrt(2) Re H[a,b],  sqrt(2) Im H[a,b]      (a < b)
///
/// so that coordinate dot products equal tr[H G].
namespace pim::sdp {

enum class Sense { minimize, maximize };
enum class VarKind { psd_matrix, free_matrix, free_scalar, nonneg_scalar };
enum class Status { optimal, infeasible, numerical_failure };

std::string to_string(Status s);

struct VarId {
  std::size_t index = 0;
};

struct ConstraintId {
  std::size_t index = 0;
};

struct LinearTerm {
  enum class Op {
    identity,             // c X
    partial_trace_second, // c tr_B X, X on A (x) B
    kron_identity_right,  // c X (x) I_B
    times_identity,       // c s I_n, s a scalar variable
    trace,                // c tr X
    inner_product,        // c tr[C X]
  };

  VarId var;
  Op op = Op::identity;
  double coefficient = 1.0;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  CMatrix matrix; // C for inner_product

  static LinearTerm of(VarId v, double c = 1.0);
  static LinearTerm partial_trace(VarId v, std::size_t dim_a, std::size_t dim_b,
                                  double c = 1.0);
  static LinearTerm kron_identity(VarId v, std::size_t dim_b, double c = 1.0);
  static LinearTerm scalar_identity(VarId v, std::size_t n, double c = 1.0);
  static LinearTerm trace_of(VarId v, double c = 1.0);
  static LinearTerm inner(VarId v, CMatrix c_matrix, double c = 1.0);

  // Output dimension for an input of dimension n; throws DimensionError.
  std::size_t output_dim(std::size_t n) const;
  CMatrix apply(const CMatrix &x) const;
};

using Expr = std::vector<LinearTerm>;

struct Variable {
  std::string name;
  VarKind kind;
  std::size_t dim;
};

struct Constraint {
  enum class Kind { equality, psd };
  std::string name;
  Kind kind;
  Expr terms;
  CMatrix constant; // equality: right-hand side; psd: added to the terms
};

class SdpProblem {
public:
  VarId psd_matrix(std::string name, std::size_t n);
  VarId free_matrix(std::string name, std::size_t n);
  VarId free_scalar(std::string name);
  VarId nonneg_scalar(std::string name);

  // terms == rhs
  ConstraintId add_equality(std::string name, Expr terms, CMatrix rhs);
  // terms + constant >= 0
  ConstraintId add_psd_constraint(std::string name, Expr terms,
                                  CMatrix constant);

  // Terms must evaluate to 1x1 matrices.
  void set_objective(Sense sense, Expr terms, double constant = 0.0);

  const std::vector<Variable> &variables() const { return variables_; }
  const std::vector<Constraint> &constraints() const { return constraints_; }
  Sense sense() const { return sense_; }
  const Expr &objective_terms() const { return objective_; }
  double objective_constant() const { return objective_constant_; }

  // Hermitian dimension of the constraint value.
  std::size_t constraint_dim(ConstraintId c) const;

  CMatrix evaluate(const Expr &terms, const std::vector<CMatrix> &values,
                   std::size_t dim) const;
  double objective_value(const std::vector<CMatrix> &values) const;
  // equality: terms - rhs; psd: terms + constant
  CMatrix constraint_value(ConstraintId c,
                           const std::vector<CMatrix> &values) const;

private:
  VarId add_variable(std::string name, VarKind kind, std::size_t n);
  std::size_t check_expr(const Expr &terms) const;

  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Sense sense_ = Sense::minimize;
  Expr objective_;
  double objective_constant_ = 0.0;
};

struct SolveOptions {
  double tol = 1e-8;
  int max_iterations = 200;
  // Optional primal starting values, one per variable. Used when every
  // resulting cone block is positive definite; ignored otherwise.
  std::optional<std::vector<CMatrix>> warm_start;
};

/// Solver output. Values are in the problem's own sense. dual_vars holds one
/// Hermitian multiplier Y_i per constraint, normalised so that
///
///   dual_value = sum_i tr[Y_i b_i] + objective constant,
///
/// where b_i is the right-hand side of an equality and -constant of a PSD
/// constraint. For a minimisation the Y_i of PSD constraints are PSD; for a
/// maximisation they are negative semidefinite.
struct SdpSolution {
  Status status = Status::numerical_failure;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0; // |primal - dual| / max(1, |primal|)
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  std::vector<CMatrix> primal_vars;
  std::vector<CMatrix> dual_vars;
};

SdpSolution solve(const SdpProblem &p, const SolveOptions &opts = {});

// Real coordinates of a Hermitian matrix (see namespace comment). For a
// non-Hermitian input these are the coordinates of its Hermitian part.
RVector hvec(const CMatrix &m);
CMatrix hmat(const RVector &v, std::size_t n);

// Program builders. Each requires an HPTP map (DomainError otherwise) and
// records the handles needed to read certificates back.

/// min p1 + p2  s.t.  J1 - J2 = J,  tr_B J1 = p1 I,  tr_B J2 = p2 I,
///                    J1, J2 >= 0.
struct PrimalNuProgram {
  SdpProblem problem;
  VarId j1, j2, p1, p2;
  ConstraintId difference, marginal1, marginal2;
};
PrimalNuProgram build_primal_nu(const LinearMap &map);

/// max tr[M J]  s.t.  M + N (x) I >= 0,  -M + K (x) I >= 0,  tr N = tr K = 1.
struct DualNuProgram {
  SdpProblem problem;
  VarId m, n, k;
  ConstraintId plus, minus, trace_n, trace_k;
};
DualNuProgram build_dual_nu(const LinearMap &map);

/// As build_primal_nu with the marginal equalities relaxed to
/// tr_B J_i <= p_i I.
struct CptnNuProgram {
  SdpProblem problem;
  VarId j1, j2, p1, p2;
};
CptnNuProgram build_cptn_nu(const LinearMap &map);

/// min s  s.t.  Jt - J >= 0,  tr_B Jt = (1 + s) I,  Jt >= 0,  s >= 0.
struct RobustnessPrimalProgram {
  SdpProblem problem;
  VarId jt, s;
};
RobustnessPrimalProgram build_robustness_primal(const LinearMap &map);

/// max tr[M J] - 1  s.t.  N (x) I - M >= 0,  M >= 0,  tr N = 1.
struct RobustnessDualProgram {
  SdpProblem problem;
  VarId m, n;
};
RobustnessDualProgram build_robustness_dual(const LinearMap &map);

/// The robustness program before eliminating the mixing channels, written
/// with P = s J_T and Q = (1 + s) J_K so that it stays linear:
///   min s  s.t.  J + P = Q,  tr_B P = s I,  tr_B Q = (1 + s) I,
///                P, Q >= 0,  s >= 0.
struct RobustnessFullProgram {
  SdpProblem problem;
  VarId p, q, s;
};
RobustnessFullProgram build_robustness_full(const LinearMap &map);

} // namespace pim::sdp

#endif

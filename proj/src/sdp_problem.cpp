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

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "pim/error.hpp"
#include "pim/sdp.hpp"

namespace pim::sdp {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

} // namespace

std::string to_string(Status s) {
  switch (s) {
  case Status::optimal:
    return "optimal";
  case Status::infeasible:
    return "infeasible";
  case Status::numerical_failure:
    return "numerical_failure";
  }
  return "unknown";
}

RVector hvec(const CMatrix &m) {
  if (m.rows() != m.cols())
    throw DimensionError("hvec: matrix is not square");
  const Index n = m.rows();
  RVector v(n * n);
  Index k = 0;
  for (Index a = 0; a < n; ++a)
    v(k++) = m(a, a).real();
  const double r = std::numbers::sqrt2 / 2.0;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      v(k++) = r * (m(a, b).real() + m(b, a).real());
      v(k++) = r * (m(a, b).imag() - m(b, a).imag());
    }
  return v;
}

CMatrix hmat(const RVector &v, std::size_t n) {
  const Index nn = idx(n);
  if (v.size() != nn * nn)
    throw DimensionError("hmat: coordinate vector has wrong length");
  CMatrix m(nn, nn);
  Index k = 0;
  for (Index a = 0; a < nn; ++a)
    m(a, a) = v(k++);
  const double r = std::numbers::sqrt2 / 2.0;
  for (Index a = 0; a < nn; ++a)
    for (Index b = a + 1; b < nn; ++b) {
      const double re = r * v(k++);
      const double im = r * v(k++);
      m(a, b) = Complex(re, im);
      m(b, a) = Complex(re, -im);
    }
  return m;
}

LinearTerm LinearTerm::of(VarId v, double c) {
  LinearTerm t;
  t.var = v;
  t.coefficient = c;
  return t;
}

LinearTerm LinearTerm::partial_trace(VarId v, std::size_t dim_a,
                                     std::size_t dim_b, double c) {
  LinearTerm t = of(v, c);
  t.op = Op::partial_trace_second;
  t.dim_a = dim_a;
  t.dim_b = dim_b;
  return t;
}

LinearTerm LinearTerm::kron_identity(VarId v, std::size_t dim_b, double c) {
  LinearTerm t = of(v, c);
  t.op = Op::kron_identity_right;
  t.dim_b = dim_b;
  return t;
}

LinearTerm LinearTerm::scalar_identity(VarId v, std::size_t n, double c) {
  LinearTerm t = of(v, c);
  t.op = Op::times_identity;
  t.dim_a = n;
  return t;
}

LinearTerm LinearTerm::trace_of(VarId v, double c) {
  LinearTerm t = of(v, c);
  t.op = Op::trace;
  return t;
}

LinearTerm LinearTerm::inner(VarId v, CMatrix c_matrix, double c) {
  LinearTerm t = of(v, c);
  t.op = Op::inner_product;
  t.matrix = std::move(c_matrix);
  return t;
}

std::size_t LinearTerm::output_dim(std::size_t n) const {
  switch (op) {
  case Op::identity:
    return n;
  case Op::partial_trace_second:
    if (dim_a * dim_b != n)
      throw DimensionError("partial trace term: " + std::to_string(dim_a) +
                           "x" + std::to_string(dim_b) +
                           " does not match variable dimension " +
                           std::to_string(n));
    return dim_a;
  case Op::kron_identity_right:
    return n * dim_b;
  case Op::times_identity:
    if (n != 1)
      throw DimensionError("identity-multiple term needs a scalar variable");
    return dim_a;
  case Op::trace:
    return 1;
  case Op::inner_product:
    if (matrix.rows() != idx(n) || matrix.cols() != idx(n))
      throw DimensionError("inner product term: matrix dimension mismatch");
    if (!is_hermitian(matrix))
      throw DomainError("inner product term: matrix is not Hermitian");
    return 1;
  }
  return n;
}

CMatrix LinearTerm::apply(const CMatrix &x) const {
  switch (op) {
  case Op::identity:
    return coefficient * x;
  case Op::partial_trace_second:
    return coefficient * pim::partial_trace(x, dim_a, dim_b, Subsystem::first);
  case Op::kron_identity_right:
    return coefficient * tensor_product(x, identity(dim_b));
  case Op::times_identity:
    return coefficient * x(0, 0).real() * identity(dim_a);
  case Op::trace: {
    CMatrix out(1, 1);
    out(0, 0) = coefficient * x.trace().real();
    return out;
  }
  case Op::inner_product: {
    CMatrix out(1, 1);
    out(0, 0) = coefficient * (matrix.cwiseProduct(x.transpose())).sum().real();
    return out;
  }
  }
  return x;
}

VarId SdpProblem::add_variable(std::string name, VarKind kind, std::size_t n) {
  if (n == 0)
    throw DimensionError("variable '" + name + "' has dimension 0");
  variables_.push_back(Variable{std::move(name), kind, n});
  return VarId{variables_.size() - 1};
}

VarId SdpProblem::psd_matrix(std::string name, std::size_t n) {
  return add_variable(std::move(name), VarKind::psd_matrix, n);
}

VarId SdpProblem::free_matrix(std::string name, std::size_t n) {
  return add_variable(std::move(name), VarKind::free_matrix, n);
}

VarId SdpProblem::free_scalar(std::string name) {
  return add_variable(std::move(name), VarKind::free_scalar, 1);
}

VarId SdpProblem::nonneg_scalar(std::string name) {
  return add_variable(std::move(name), VarKind::nonneg_scalar, 1);
}

std::size_t SdpProblem::check_expr(const Expr &terms) const {
  if (terms.empty())
    throw DimensionError("empty linear expression");
  std::size_t dim = 0;
  for (const LinearTerm &t : terms) {
    if (t.var.index >= variables_.size())
      throw DimensionError("linear term refers to an unknown variable");
    const std::size_t d = t.output_dim(variables_[t.var.index].dim);
    if (dim != 0 && d != dim)
      throw DimensionError("linear expression mixes output dimensions " +
                           std::to_string(dim) + " and " + std::to_string(d));
    dim = d;
  }
  return dim;
}

ConstraintId SdpProblem::add_equality(std::string name, Expr terms,
                                      CMatrix rhs) {
  const std::size_t dim = check_expr(terms);
  if (rhs.rows() != idx(dim) || rhs.cols() != idx(dim))
    throw DimensionError("constraint '" + name + "': right-hand side is " +
                         std::to_string(rhs.rows()) + "x" +
                         std::to_string(rhs.cols()) + ", expected " +
                         std::to_string(dim));
  if (!is_hermitian(rhs))
    throw DomainError("constraint '" + name +
                      "': right-hand side is not Hermitian");
  constraints_.push_back(Constraint{std::move(name), Constraint::Kind::equality,
                                    std::move(terms), hermitian_part(rhs)});
  return ConstraintId{constraints_.size() - 1};
}

ConstraintId SdpProblem::add_psd_constraint(std::string name, Expr terms,
                                            CMatrix constant) {
  const std::size_t dim = check_expr(terms);
  if (constant.size() == 0)
    constant = CMatrix::Zero(idx(dim), idx(dim));
  if (constant.rows() != idx(dim) || constant.cols() != idx(dim))
    throw DimensionError("constraint '" + name + "': constant has wrong shape");
  if (!is_hermitian(constant))
    throw DomainError("constraint '" + name + "': constant is not Hermitian");
  constraints_.push_back(Constraint{std::move(name), Constraint::Kind::psd,
                                    std::move(terms),
                                    hermitian_part(constant)});
  return ConstraintId{constraints_.size() - 1};
}

void SdpProblem::set_objective(Sense sense, Expr terms, double constant) {
  if (check_expr(terms) != 1)
    throw DimensionError("objective terms must be scalar");
  sense_ = sense;
  objective_ = std::move(terms);
  objective_constant_ = constant;
}

std::size_t SdpProblem::constraint_dim(ConstraintId c) const {
  return static_cast<std::size_t>(constraints_.at(c.index).constant.rows());
}

CMatrix SdpProblem::evaluate(const Expr &terms,
                             const std::vector<CMatrix> &values,
                             std::size_t dim) const {
  if (values.size() != variables_.size())
    throw DimensionError("evaluate: expected one value per variable");
  CMatrix out = CMatrix::Zero(idx(dim), idx(dim));
  for (const LinearTerm &t : terms)
    out += t.apply(values[t.var.index]);
  return out;
}

double SdpProblem::objective_value(const std::vector<CMatrix> &values) const {
  return evaluate(objective_, values, 1)(0, 0).real() + objective_constant_;
}

CMatrix SdpProblem::constraint_value(ConstraintId c,
                                     const std::vector<CMatrix> &values) const {
  const Constraint &k = constraints_.at(c.index);
  const CMatrix lhs =
      evaluate(k.terms, values, static_cast<std::size_t>(k.constant.rows()));
  return k.kind == Constraint::Kind::equality ? CMatrix(lhs - k.constant)
                                              : CMatrix(lhs + k.constant);
}

} // namespace pim::sdp

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

#include "pim/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "pim/error.hpp"

namespace pim {

namespace {

using Index = Eigen::Index;

void require_square(const CMatrix &m, const char *what) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(what) + ": matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
}

} // namespace

CMatrix identity(std::size_t n) {
  return CMatrix::Identity(static_cast<Index>(n), static_cast<Index>(n));
}

CMatrix tensor_product(const CMatrix &a, const CMatrix &b) {
  const Index rb = b.rows(), cb = b.cols();
  CMatrix out(a.rows() * rb, a.cols() * cb);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

CMatrix partial_trace(const CMatrix &m, std::size_t dim_a, std::size_t dim_b,
                      Subsystem keep) {
  const Index da = static_cast<Index>(dim_a), db = static_cast<Index>(dim_b);
  if (m.rows() != da * db || m.cols() != da * db)
    throw DimensionError("partial_trace: matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", subsystem dims " +
                         std::to_string(dim_a) + "x" + std::to_string(dim_b));
  if (keep == Subsystem::first) {
    CMatrix out = CMatrix::Zero(da, da);
    for (Index i = 0; i < da; ++i)
      for (Index j = 0; j < da; ++j) {
        Complex s = 0.0;
        for (Index k = 0; k < db; ++k)
          s += m(i * db + k, j * db + k);
        out(i, j) = s;
      }
    return out;
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (Index a = 0; a < da; ++a)
    out += m.block(a * db, a * db, db, db);
  return out;
}

double hermiticity_error(const CMatrix &m) {
  require_square(m, "hermiticity_error");
  if (m.size() == 0)
    return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix &m, double tol) {
  return m.rows() == m.cols() && hermiticity_error(m) <= tol;
}

CMatrix hermitian_part(const CMatrix &m) {
  require_square(m, "hermitian_part");
  return 0.5 * (m + m.adjoint());
}

HermitianEigen eig_hermitian(const CMatrix &m) {
  require_square(m, "eig_hermitian");
  if (hermiticity_error(m) > kHermitianTol)
    throw DomainError("eig_hermitian: input is not Hermitian (deviation " +
                      std::to_string(hermiticity_error(m)) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(hermitian_part(m)));
  if (solver.info() != Eigen::Success)
    throw DomainError("eig_hermitian: eigensolver did not converge");
  // Eigen returns ascending order.
  HermitianEigen out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

RVector eigenvalues_hermitian(const CMatrix &m) {
  require_square(m, "eigenvalues_hermitian");
  if (m.size() == 0)
    return RVector();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(hermitian_part(m)), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

double min_eigenvalue(const CMatrix &m) {
  RVector ev = eigenvalues_hermitian(m);
  return ev.size() ? ev.minCoeff() : 0.0;
}

double trace_norm(const CMatrix &m) {
  require_square(m, "trace_norm");
  if (m.size() == 0)
    return 0.0;
  if (hermiticity_error(m) <= kHermitianTol)
    return eigenvalues_hermitian(m).cwiseAbs().sum();
  RVector ev = eigenvalues_hermitian(m.adjoint() * m);
  double s = 0.0;
  for (Index i = 0; i < ev.size(); ++i)
    s += std::sqrt(std::max(0.0, ev(i)));
  return s;
}

bool is_psd(const CMatrix &m, double tol) {
  require_square(m, "is_psd");
  if (hermiticity_error(m) > std::max(tol, kHermitianTol))
    throw DomainError("is_psd: input is not Hermitian");
  return min_eigenvalue(m) >= -tol;
}

double max_abs(const CMatrix &m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

bool all_finite(const CMatrix &m) { return m.allFinite(); }

} // namespace pim

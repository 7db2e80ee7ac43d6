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

#include <gtest/gtest.h>

#include "pim/matrix.hpp"
#include "pim/random.hpp"

namespace pim {
namespace {

CMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  Rng rng(seed);
  return rng.complex_gaussian(r, c);
}

TEST(Matrix, IdentityIsDiagonal) {
  const CMatrix i = identity(3);
  EXPECT_EQ(i.rows(), 3);
  EXPECT_EQ(max_abs(i - CMatrix::Identity(3, 3)), 0.0);
}

TEST(Matrix, TensorProductMatchesIndexFormula) {
  const CMatrix a = random_matrix(2, 3, 1);
  const CMatrix b = random_matrix(3, 2, 2);
  const CMatrix t = tensor_product(a, b);
  ASSERT_EQ(t.rows(), 6);
  ASSERT_EQ(t.cols(), 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 2; ++l)
          EXPECT_EQ(t(i * 3 + k, j * 2 + l), a(i, j) * b(k, l));
}

TEST(Matrix, TensorProductOfPaulis) {
  CMatrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 2) = 1;
  expected(1, 3) = -1;
  expected(2, 0) = 1;
  expected(3, 1) = -1;
  EXPECT_EQ(max_abs(tensor_product(x, z) - expected), 0.0);
}

TEST(Matrix, PartialTraceOfProductOperator) {
  const CMatrix a = random_matrix(2, 2, 3);
  const CMatrix b = random_matrix(3, 3, 4);
  const CMatrix ab = tensor_product(a, b);
  EXPECT_LT(max_abs(partial_trace(ab, 2, 3, Subsystem::first) - a * b.trace()),
            1e-12);
  EXPECT_LT(max_abs(partial_trace(ab, 2, 3, Subsystem::second) - b * a.trace()),
            1e-12);
}

TEST(Matrix, PartialTraceMatchesExplicitSum) {
  const CMatrix m = random_matrix(6, 6, 5);
  CMatrix keep_a = CMatrix::Zero(2, 2), keep_b = CMatrix::Zero(3, 3);
  for (int a = 0; a < 2; ++a)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b = 0; b < 3; ++b)
        keep_a(a, a2) += m(a * 3 + b, a2 * 3 + b);
  for (int b = 0; b < 3; ++b)
    for (int b2 = 0; b2 < 3; ++b2)
      for (int a = 0; a < 2; ++a)
        keep_b(b, b2) += m(a * 3 + b, a * 3 + b2);
  EXPECT_LT(max_abs(partial_trace(m, 2, 3, Subsystem::first) - keep_a), 1e-12);
  EXPECT_LT(max_abs(partial_trace(m, 2, 3, Subsystem::second) - keep_b), 1e-12);
}

TEST(Matrix, PartialTraceRejectsWrongShape) {
  EXPECT_ANY_THROW(partial_trace(identity(5), 2, 3, Subsystem::first));
}

TEST(Matrix, HermitianPartAndError) {
  const CMatrix m = random_matrix(4, 4, 6);
  const CMatrix h = hermitian_part(m);
  EXPECT_TRUE(is_hermitian(h));
  EXPECT_FALSE(is_hermitian(m));
  EXPECT_NEAR(hermiticity_error(m), (m - m.adjoint()).cwiseAbs().maxCoeff(),
              1e-15);
}

TEST(Matrix, EigenvaluesDescendingAndReconstruct) {
  const CMatrix h = hermitian_part(random_matrix(5, 5, 7));
  const HermitianEigen e = eig_hermitian(h);
  for (int i = 1; i < 5; ++i)
    EXPECT_GE(e.eigenvalues(i - 1), e.eigenvalues(i));
  const CMatrix rebuilt = e.eigenvectors *
                          e.eigenvalues.cast<Complex>().asDiagonal() *
                          e.eigenvectors.adjoint();
  EXPECT_LT(max_abs(rebuilt - h), 1e-12);
  EXPECT_DOUBLE_EQ(min_eigenvalue(h), e.eigenvalues(4));
}

TEST(Matrix, TraceNormKnownValues) {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_NEAR(trace_norm(x), 2.0, 1e-14);
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = -3.0;
  d(2, 2) = 0.5;
  EXPECT_NEAR(trace_norm(d), 5.5, 1e-14);
  // Non-Hermitian: nilpotent with singular values {1, 0}.
  CMatrix n = CMatrix::Zero(2, 2);
  n(0, 1) = 1.0;
  EXPECT_NEAR(trace_norm(n), 1.0, 1e-14);
}

TEST(Matrix, TraceNormMatchesSingularValues) {
  const CMatrix m = random_matrix(4, 4, 8);
  Eigen::JacobiSVD<CMatrix> svd(m);
  EXPECT_NEAR(trace_norm(m), svd.singularValues().sum(), 1e-10);
}

TEST(Matrix, PsdCheck) {
  const CMatrix g = random_matrix(3, 3, 9);
  EXPECT_TRUE(is_psd(g * g.adjoint(), 1e-12));
  EXPECT_FALSE(is_psd(-identity(3), 1e-12));
  EXPECT_TRUE(is_psd(-1e-13 * identity(3), 1e-12));
}

TEST(Matrix, FiniteCheck) {
  CMatrix m = identity(2);
  EXPECT_TRUE(all_finite(m));
  m(0, 1) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  EXPECT_FALSE(all_finite(m));
}

} // namespace
} // namespace pim

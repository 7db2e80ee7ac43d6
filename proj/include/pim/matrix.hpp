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

#ifndef PIM_MATRIX_HPP
#define PIM_MATRIX_HPP

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace pim {

using Complex = std::complex<double>;

// Dense complex matrix, row-major, zero-based. Every basis ordering in the
// library (Choi indices, vectorization, tensor factors) refers to this
// convention: entry (i, j) of a bipartite operator on A (x) B is addressed as
// (a * dim_b + b, a' * dim_b + b').
using CMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RVector = Eigen::VectorXd;

// Max-entry Hermiticity tolerance used throughout.
inline constexpr double kHermitianTol = 1e-10;

enum class Subsystem { first, second };

struct HermitianEigen {
  RVector eigenvalues;  // descending
  CMatrix eigenvectors; // columns, unitary
};

CMatrix identity(std::size_t n);

// (a (x) b)[i*rb + k, j*cb + l] = a[i,j] * b[k,l]
CMatrix tensor_product(const CMatrix &a, const CMatrix &b);

// Traces out the subsystem that is not `keep`; m acts on A (x) B.
CMatrix partial_trace(const CMatrix &m, std::size_t dim_a, std::size_t dim_b,
                      Subsystem keep);

// max |m - m^dagger| over entries
double hermiticity_error(const CMatrix &m);
bool is_hermitian(const CMatrix &m, double tol = kHermitianTol);

// (m + m^dagger) / 2
CMatrix hermitian_part(const CMatrix &m);

HermitianEigen eig_hermitian(const CMatrix &m);

// Eigenvalues only, descending.
RVector eigenvalues_hermitian(const CMatrix &m);

double min_eigenvalue(const CMatrix &m);

// Sum of singular values. Hermitian input goes through eig_hermitian; general
// square input through the spectrum of m^dagger m.
double trace_norm(const CMatrix &m);

bool is_psd(const CMatrix &m, double tol);

double max_abs(const CMatrix &m);

bool all_finite(const CMatrix &m);

} // namespace pim

#endif

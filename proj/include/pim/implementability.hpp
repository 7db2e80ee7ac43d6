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

#ifndef PIM_IMPLEMENTABILITY_HPP
#define PIM_IMPLEMENTABILITY_HPP

#include <string>
#include <vector>

#include "pim/channel.hpp"
#include "pim/matrix.hpp"

/// Physical implementability of Hermitian- and trace-preserving maps.
///
/// nu(N) = log2 min { sum |eta_a| : N = sum eta_a O_a, O_a CPTP }. The
/// minimum is attained by two channels, N = p1 O1 - p2 O2, and equals the
/// optimum of
///
///   min p1 + p2  s.t.  J_N = J1 - J2,  tr_B J_i = p_i I,  J_i >= 0
///
/// whose dual is
///
///   max tr[M J_N]  s.t.  M + N (x) I >= 0,  -M + K (x) I >= 0,
///                        tr N = tr K = 1.
///
/// Costs (total_cost, gamma, SDP optima) are linear scale; nu is log2.
namespace pim {

inline constexpr double kDefaultSolverTol = 1e-8;

/// Optimal two-channel decomposition with its dual witness.
struct NuCertificate {
  double nu = 0.0;
  double gamma = 0.0; // p1 + p2, the primal value
  double p1 = 0.0;
  double p2 = 0.0;
  CMatrix j1, j2;
  CMatrix dual_m, dual_n, dual_k;
  double dual_value = 0.0; // tr[M J_N], a lower bound on gamma
  double gap = 0.0;        // |gamma - dual_value| / max(1, gamma)
};

struct QuasiTerm {
  double eta = 0.0;
  LinearMap channel;
};

struct QuasiDecomposition {
  std::vector<QuasiTerm> terms;

  double total_cost() const;
  double eta_sum() const;
  // sum_a eta_a J_a
  LinearMap recombine() const;
};

struct TraceNormBounds {
  double lower = 0.0; // ||J||_1 / d
  double upper = 0.0; // ||J||_1
};

struct CertificateReport {
  bool pass = false;
  double gamma_residual = 0.0;      // |2^nu - (p1 + p2)|
  double tp_residual = 0.0;         // |p1 - p2 - 1|
  double difference_residual = 0.0; // max |J_N - J1 + J2|
  double marginal_residual = 0.0;   // max_i max |tr_B J_i - p_i I|
  double primal_min_eig = 0.0;      // min(lambda_min J1, lambda_min J2)
  double dual_min_eig = 0.0;        // min over both dual constraints
  double dual_trace_residual = 0.0; // max(|tr N - 1|, |tr K - 1|)
  double gap = 0.0;
  std::vector<std::string> failures;
};

struct DualWitnessReport {
  bool feasible = false;
  double objective = 0.0; // tr[M J_N]
  double plus_min_eig = 0.0;
  double minus_min_eig = 0.0;
  double trace_residual = 0.0;
};

// Throws DomainError for non-HPTP input and SolverError if the solver does
// not reach tol.
NuCertificate nu(const LinearMap &map, double tol = kDefaultSolverTol);

// {(p1, J1/p1), (-p2, J2/p2)}; a coefficient below 1e-12 drops its term.
// Throws DomainError when p1 is not positive or p2 is negative.
QuasiDecomposition decompose_two_channel(const NuCertificate &cert);

// eta1 = (||J||_1 + 1) d with O1 completely depolarising, eta2 = eta1 - 1.
// Throws DomainError for non-HPTP input.
QuasiDecomposition canonical_decomposition(const LinearMap &map);

// Merges terms of equal sign into one channel each; total cost unchanged.
// Throws DomainError on empty input.
QuasiDecomposition sign_split(const std::vector<QuasiTerm> &terms);

TraceNormBounds trace_norm_bounds(const LinearMap &map);

// Robustness of implementability: min s such that (N + s T) / (1 + s) is
// CPTP for some channel T. Equals (2^nu - 1) / 2.
double robustness(const LinearMap &map, double tol = kDefaultSolverTol);

CertificateReport validate_certificate(const LinearMap &map,
                                       const NuCertificate &cert);

// Feasibility (within 1e-8) and objective of a dual candidate (M, N, K).
DualWitnessReport check_dual_witness(const LinearMap &map, const CMatrix &m,
                                     const CMatrix &n, const CMatrix &k);

} // namespace pim

#endif

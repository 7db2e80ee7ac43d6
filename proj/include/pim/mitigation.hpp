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

#ifndef PIM_MITIGATION_HPP
#define PIM_MITIGATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pim/channel.hpp"
#include "pim/implementability.hpp"
#include "pim/matrix.hpp"

/// Quasiprobability error mitigation.
///
/// Given noise O and a decomposition O^-1 = sum_a eta_a O_a into channels
/// with gamma = sum |eta_a|, each shot draws a with probability
/// |eta_a| / gamma, measures O_a(O(rho)) in the computational basis with
/// outcome s, and records X = gamma sgn(eta_a) A(s), where sgn(x) = -1 for
/// x <= 0. The mean of M shots estimates tr[rho A] without bias, and
///
///   M = ceil(2 gamma^2 ln(2 / eps_fail) / delta^2)
///
/// shots give |estimate - tr[rho A]| <= delta with probability at least
/// 1 - eps_fail (Hoeffding, natural logarithm).
///
/// Shots are split into shards of kShardSize; shard k draws from
/// Rng(substream_seed(seed, k)). Results are merged in shard order, so any
/// thread count yields the same report.
namespace pim {

inline constexpr std::size_t kShardSize = 4096;
inline constexpr std::size_t kMaxEnumerationQubits = 10;

/// Observable diagonal in the computational basis, A(x) in [-1, 1].
struct DiagObservable {
  std::size_t n_qubits = 0;
  std::vector<double> values; // length 2^n_qubits

  // Throws DomainError on a length mismatch or a value outside [-1, 1].
  void validate() const;
  std::size_t dim() const { return std::size_t{1} << n_qubits; }
};

DiagObservable parity_observable(std::size_t n_qubits);

struct MitigationPlan {
  QuasiDecomposition decomposition;
  double gamma = 1.0; // total cost, 2^nu
  double nu = 0.0;
  std::uint64_t shots = 0;
  double delta = 0.0;
  double eps_fail = 0.0;
};

struct ShotRecord {
  std::size_t term = 0;
  int sign = 1;
  std::uint64_t outcome = 0;
  double x = 0.0;
};

struct MitigationReport {
  double estimate = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t clamped_entries = 0; // diagonal entries below -1e-9
  std::vector<ShotRecord> per_shot;  // filled when requested
};

struct RunOptions {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> shots; // overrides plan.shots
  unsigned threads = 1;
  bool record_shots = false;
};

// ceil(2 gamma^2 ln(2 / eps_fail) / delta^2). Throws DomainError unless
// gamma >= 1, delta > 0 and 0 < eps_fail < 1.
std::uint64_t hoeffding_shots(double gamma, double delta, double eps_fail);

MitigationPlan plan(QuasiDecomposition decomposition, double delta,
                    double eps_fail);

// sgn(x) = 1 for x > 0, -1 otherwise.
int quasi_sign(double eta);

// Throws DomainError when rho is not a d x d density matrix (Hermitian, PSD
// and unit trace within 1e-9), the noise is not CPTP, or dimensions differ.
MitigationReport run(const CMatrix &rho, const LinearMap &noise,
                     const DiagObservable &observable,
                     const MitigationPlan &plan, const RunOptions &opts);

// sum_a eta_a sum_s p_a(s) A(s) by full enumeration; at most
// kMaxEnumerationQubits qubits.
double exact_estimator_mean(const CMatrix &rho, const LinearMap &noise,
                            const DiagObservable &observable,
                            const QuasiDecomposition &decomposition);

// tr[O(rho) A], the unmitigated value.
double noisy_expectation(const CMatrix &rho, const LinearMap &noise,
                         const DiagObservable &observable);

// tr[rho A]
double ideal_expectation(const CMatrix &rho, const DiagObservable &observable);

} // namespace pim

#endif

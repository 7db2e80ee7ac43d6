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

#ifndef PIM_VERIFY_HPP
#define PIM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pim/matrix.hpp"
#include "pim/zoo.hpp"

/// Property sweeps run by `pim verify`. Every check reports a residual and
/// passes iff residual <= tolerance.
namespace pim {

enum class Suite { properties, analytic, duality, mitigation, all };

std::string_view suite_name(Suite s);
// Throws ParseError on an unknown name.
Suite suite_from_name(std::string_view name);

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1; // mitigation shot workers
};

std::vector<CheckResult> run_suite(Suite s, const VerifyOptions &opts = {});

// Parameter grids for the closed-form sweep: amplitude damping and
// depolarizing (d = 2, 3) at eps = 0.05, 0.10, ..., 0.90, dephasing at
// eps = 0.05, ..., 0.45, and generalized amplitude damping on
// y in {0.1, 0.3, 0.5, 0.7, 0.9} x N in {0, 0.25, 0.5, 0.75, 1}.
std::vector<NamedFamily> analytic_grid();

/// Dual candidate (M, N, K) for the implementability program.
struct DualWitness {
  CMatrix m, n, k;
};

// Witness attaining (1 + eps) / (1 - eps) for every inverse amplitude
// damping map, and (1 + y - 2Ny) / (1 - y) for inverse generalized
// amplitude damping with N <= 1/2.
DualWitness damping_dual_witness();
// Witness for inverse generalized amplitude damping with N > 1/2, attaining
// (1 - y + 2Ny) / (1 - y): the N <= 1/2 witness conjugated by X on both
// factors, since GAD(y, N) = X GAD(y, 1 - N) X.
DualWitness flipped_damping_dual_witness();

} // namespace pim

#endif

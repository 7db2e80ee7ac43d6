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

#ifndef PIM_SERIALIZATION_HPP
#define PIM_SERIALIZATION_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pim/channel.hpp"
#include "pim/implementability.hpp"
#include "pim/mitigation.hpp"
#include "pim/verify.hpp"
#include "pim/zoo.hpp"

/// JSON file formats. Every document carries "format": 1. Complex numbers
/// are [re, im] pairs (plain numbers are read as real); matrices are
/// row-major arrays of rows.
///
/// Channel:      {"format": 1, "dim": d, "kind": K, ..., "invert": false}
///   kraus          "operators": [matrix, ...]
///   choi           "choi": matrix (d^2 x d^2, input factor first)
///   mixed_unitary  "terms": [{"coefficient": r, "unitary": matrix}, ...]
///   named          "family": name, "params": {...}
///                    amplitude_damping              {"epsilon"}
///                    generalized_amplitude_damping  {"y", "N"}
///                    depolarizing                   {"d", "epsilon"}
///                    dephasing_qubit                {"epsilon"}
/// State:        {"format": 1, "density_matrix": matrix} or {"ket": vector}
/// Observable:   {"format": 1, "n_qubits": n, "values": [A(0), ...]} or
///               "values": {"<index>": A(index), ...}; absent entries are 0.
/// Decomposition: {"format": 1, "kind": "quasi_decomposition", "method",
///               "dim", "total_cost", "nu", "terms": [{"eta", "choi"}]}
///
/// Parse failures throw ParseError; well-formed documents describing an
/// invalid object throw DomainError.
namespace pim {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

enum class SpecKind { kraus, choi, mixed_unitary, named };

struct ChannelSpec {
  std::size_t dim = 0;
  SpecKind kind = SpecKind::choi;
  bool invert = false;
  std::vector<CMatrix> operators; // kraus
  CMatrix choi;                   // choi
  MixedUnitarySpec mixed;         // mixed_unitary
  NamedFamily named;              // named
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json &j);
Json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const Json &j);

// Throws ParseError if text is not a JSON document.
Json parse_json(std::string_view text);

ChannelSpec channel_spec_from_json(const Json &j);
Json channel_spec_to_json(const ChannelSpec &s);

// Builds the map, checking that Kraus input is CPTN and Choi input is HP,
// then inverts it if requested.
LinearMap build_map(const ChannelSpec &s,
                    double cond_limit = kDefaultCondLimit);

CMatrix state_from_json(const Json &j);
DiagObservable observable_from_json(const Json &j);
Json observable_to_json(const DiagObservable &a);

Json decomposition_to_json(const QuasiDecomposition &q,
                           std::string_view method);
// Every term must be CPTP within 1e-8.
QuasiDecomposition decomposition_from_json(const Json &j);

Json certificate_to_json(const NuCertificate &c, const TraceNormBounds &b);

// Report of one mitigation run. "under_planned" is set when fewer shots ran
// than the plan requires; "exact" is null when the oracle was skipped.
// Per-shot records are [term, sign, outcome, X] with the outcome as an
// n_qubits bit string, most significant bit first.
Json mitigation_report_to_json(const MitigationPlan &plan,
                               const MitigationReport &report,
                               std::string_view method, std::size_t n_qubits,
                               double noisy_value, std::optional<double> exact);

Json check_result_to_json(const CheckResult &r);

// Canonical serialisation used for every printed document.
std::string dump(const Json &j);

} // namespace pim

#endif

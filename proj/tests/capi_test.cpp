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

#include <cmath>
#include <string>

#include "pim/pim.h"

namespace {

const char *kDampingInverse =
    R"({"format": 1, "dim": 2, "kind": "named", "family": "amplitude_damping",
        "params": {"epsilon": 0.5}, "invert": true})";
const char *kDephasing =
    R"({"format": 1, "dim": 2, "kind": "named", "family": "dephasing_qubit",
        "params": {"epsilon": 0.25}})";
const char *kZeroState = R"({"format": 1, "ket": [1, 0]})";
const char *kParity = R"({"format": 1, "n_qubits": 1, "values": [1, -1]})";

std::string take(char *s) {
  std::string out = s ? s : "";
  pim_string_free(s);
  return out;
}

TEST(CApi, Version) { EXPECT_STREQ(pim_version(), "1.0.0"); }

TEST(CApi, NuOfDampingInverse) {
  pim_map *map = nullptr;
  ASSERT_EQ(pim_map_from_json(kDampingInverse, &map), PIM_OK);
  size_t dim = 0;
  EXPECT_EQ(pim_map_dim(map, &dim), PIM_OK);
  EXPECT_EQ(dim, 2u);
  pim_certificate *cert = nullptr;
  ASSERT_EQ(pim_nu(map, 1e-8, &cert), PIM_OK);
  pim_nu_values v{};
  EXPECT_EQ(pim_certificate_values(cert, &v), PIM_OK);
  EXPECT_NEAR(v.nu, std::log2(3.0), 1e-7);
  EXPECT_NEAR(v.p1 + v.p2, v.gamma, 1e-12);
  EXPECT_NEAR(v.trace_norm_upper, 4.0, 1e-9);
  int valid = 0;
  EXPECT_EQ(pim_certificate_check(cert, &valid), PIM_OK);
  EXPECT_EQ(valid, 1);
  char *json = nullptr;
  EXPECT_EQ(pim_certificate_to_json(cert, &json), PIM_OK);
  EXPECT_NE(take(json).find("\"nu\""), std::string::npos);
  double lo = 0, hi = 0;
  EXPECT_EQ(pim_trace_norm_bounds(map, &lo, &hi), PIM_OK);
  EXPECT_NEAR(lo, 2.0, 1e-9);
  pim_certificate_free(cert);
  pim_map_free(map);
}

TEST(CApi, ErrorCodes) {
  pim_map *map = nullptr;
  EXPECT_EQ(pim_map_from_json("{", &map), PIM_ERR_PARSE);
  EXPECT_NE(std::string(pim_last_error()), "");
  EXPECT_EQ(pim_map_from_json(
                R"({"format": 1, "dim": 2, "kind": "named",
                    "family": "dephasing_qubit", "params": {"epsilon": 0.5},
                    "invert": true})",
                &map),
            PIM_ERR_NOT_INVERTIBLE);
  EXPECT_EQ(pim_map_from_json(
                R"({"format": 1, "dim": 1, "kind": "kraus",
                    "operators": [[[2]]]})",
                &map),
            PIM_ERR_DOMAIN);
  EXPECT_EQ(map, nullptr);
  EXPECT_EQ(pim_map_from_json(nullptr, &map), PIM_ERR_DOMAIN);
}

TEST(CApi, NonHptpMapIsDomainError) {
  pim_map *map = nullptr;
  ASSERT_EQ(pim_map_from_json(
                R"({"format": 1, "dim": 1, "kind": "kraus",
                    "operators": [[[0.5]]]})",
                &map),
            PIM_OK);
  pim_certificate *cert = nullptr;
  EXPECT_EQ(pim_nu(map, 1e-8, &cert), PIM_ERR_DOMAIN);
  EXPECT_EQ(cert, nullptr);
  pim_map_free(map);
}

TEST(CApi, DecompositionRoundTrip) {
  pim_map *map = nullptr;
  ASSERT_EQ(pim_map_from_json(kDampingInverse, &map), PIM_OK);
  for (pim_method m : {PIM_METHOD_OPTIMAL, PIM_METHOD_CANONICAL}) {
    pim_decomposition *q = nullptr;
    ASSERT_EQ(pim_decompose(map, m, 1e-8, &q), PIM_OK);
    char *json = nullptr;
    ASSERT_EQ(pim_decomposition_to_json(q, &json), PIM_OK);
    const std::string text = take(json);
    pim_decomposition *back = nullptr;
    ASSERT_EQ(pim_decomposition_from_json(text.c_str(), &back), PIM_OK);
    double err = 1.0, cost = 0.0, cost_back = 0.0;
    EXPECT_EQ(pim_decomposition_recombination_error(back, map, &err), PIM_OK);
    EXPECT_LT(err, 1e-7);
    EXPECT_EQ(pim_decomposition_total_cost(q, &cost), PIM_OK);
    EXPECT_EQ(pim_decomposition_total_cost(back, &cost_back), PIM_OK);
    EXPECT_EQ(cost, cost_back);
    if (m == PIM_METHOD_OPTIMAL)
      EXPECT_NEAR(cost, 3.0, 1e-7);
    else
      EXPECT_GT(cost, 3.0);
    pim_decomposition_free(back);
    pim_decomposition_free(q);
  }
  pim_map_free(map);
}

TEST(CApi, MitigateIsDeterministic) {
  pim_mitigate_options o;
  pim_mitigate_options_init(&o);
  o.seed = 7;
  char *a = nullptr, *b = nullptr;
  ASSERT_EQ(pim_mitigate(kDephasing, kZeroState, kParity, &o, &a), PIM_OK);
  o.threads = 4;
  ASSERT_EQ(pim_mitigate(kDephasing, kZeroState, kParity, &o, &b), PIM_OK);
  const std::string sa = take(a), sb = take(b);
  EXPECT_EQ(sa, sb);
  EXPECT_NE(sa.find("\"exact\":1.0"), std::string::npos);
  EXPECT_NE(sa.find("\"under_planned\":false"), std::string::npos);
}

TEST(CApi, MitigateFlagsUnderPlannedShots) {
  pim_mitigate_options o;
  pim_mitigate_options_init(&o);
  o.shots = 10;
  char *a = nullptr;
  ASSERT_EQ(pim_mitigate(kDephasing, kZeroState, kParity, &o, &a), PIM_OK);
  EXPECT_NE(take(a).find("\"under_planned\":true"), std::string::npos);
}

TEST(CApi, MitigateRejectsSingularNoise) {
  pim_mitigate_options o;
  pim_mitigate_options_init(&o);
  char *a = nullptr;
  EXPECT_EQ(pim_mitigate(R"({"format": 1, "dim": 2, "kind": "named",
                             "family": "dephasing_qubit",
                             "params": {"epsilon": 0.5}})",
                         kZeroState, kParity, &o, &a),
            PIM_ERR_NOT_INVERTIBLE);
  EXPECT_EQ(a, nullptr);
}

TEST(CApi, VerifyUnknownSuite) {
  char *out = nullptr;
  EXPECT_EQ(pim_verify("everything", 1, 1, &out), PIM_ERR_PARSE);
}

TEST(CApi, VerifyAnalyticSuite) {
  char *out = nullptr;
  EXPECT_EQ(pim_verify("analytic", 1, 1, &out), PIM_OK);
  const std::string text = take(out);
  EXPECT_NE(text.find("\"summary\":true"), std::string::npos);
  EXPECT_EQ(text.find("\"pass\":false"), std::string::npos);
}

TEST(CApi, ChannelNormalizeIsIdempotent) {
  char *once = nullptr, *twice = nullptr;
  ASSERT_EQ(pim_channel_normalize(kDephasing, &once), PIM_OK);
  const std::string a = take(once);
  ASSERT_EQ(pim_channel_normalize(a.c_str(), &twice), PIM_OK);
  EXPECT_EQ(a, take(twice));
}

} // namespace

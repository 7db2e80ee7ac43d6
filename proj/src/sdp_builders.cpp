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

#include "pim/error.hpp"
#include "pim/sdp.hpp"

namespace pim::sdp {

namespace {

using T = LinearTerm;

// Hermitised Choi operator of an HPTP map; DomainError otherwise.
CMatrix hptp_choi(const LinearMap &map, const char *what) {
  const MapClass c = classify(map);
  if (!c.is_hp || !c.is_tp)
    throw DomainError(std::string(what) +
                      ": map is not Hermitian- and trace-preserving");
  return hermitian_part(map.choi());
}

CMatrix zeros(std::size_t n) {
  return CMatrix::Zero(static_cast<Eigen::Index>(n),
                       static_cast<Eigen::Index>(n));
}

CMatrix scalar(double v) {
  CMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

} // namespace

PrimalNuProgram build_primal_nu(const LinearMap &map) {
  const CMatrix j = hptp_choi(map, "build_primal_nu");
  const std::size_t d = map.dim(), n = d * d;
  PrimalNuProgram out;
  SdpProblem &p = out.problem;
  out.j1 = p.psd_matrix("J1", n);
  out.j2 = p.psd_matrix("J2", n);
  out.p1 = p.free_scalar("p1");
  out.p2 = p.free_scalar("p2");
  out.difference =
      p.add_equality("J1 - J2 = J", {T::of(out.j1), T::of(out.j2, -1.0)}, j);
  out.marginal1 = p.add_equality(
      "tr_B J1 = p1 I",
      {T::partial_trace(out.j1, d, d), T::scalar_identity(out.p1, d, -1.0)},
      zeros(d));
  out.marginal2 = p.add_equality(
      "tr_B J2 = p2 I",
      {T::partial_trace(out.j2, d, d), T::scalar_identity(out.p2, d, -1.0)},
      zeros(d));
  p.set_objective(Sense::minimize, {T::of(out.p1), T::of(out.p2)});
  return out;
}

DualNuProgram build_dual_nu(const LinearMap &map) {
  const CMatrix j = hptp_choi(map, "build_dual_nu");
  const std::size_t d = map.dim(), n = d * d;
  DualNuProgram out;
  SdpProblem &p = out.problem;
  out.m = p.free_matrix("M", n);
  out.n = p.free_matrix("N", d);
  out.k = p.free_matrix("K", d);
  out.plus = p.add_psd_constraint(
      "M + N (x) I >= 0", {T::of(out.m), T::kron_identity(out.n, d)}, zeros(n));
  out.minus = p.add_psd_constraint(
      "-M + K (x) I >= 0", {T::of(out.m, -1.0), T::kron_identity(out.k, d)},
      zeros(n));
  out.trace_n = p.add_equality("tr N = 1", {T::trace_of(out.n)}, scalar(1.0));
  out.trace_k = p.add_equality("tr K = 1", {T::trace_of(out.k)}, scalar(1.0));
  p.set_objective(Sense::maximize, {T::inner(out.m, j)});
  return out;
}

CptnNuProgram build_cptn_nu(const LinearMap &map) {
  const CMatrix j = hptp_choi(map, "build_cptn_nu");
  const std::size_t d = map.dim(), n = d * d;
  CptnNuProgram out;
  SdpProblem &p = out.problem;
  out.j1 = p.psd_matrix("J1", n);
  out.j2 = p.psd_matrix("J2", n);
  out.p1 = p.free_scalar("p1");
  out.p2 = p.free_scalar("p2");
  p.add_equality("J1 - J2 = J", {T::of(out.j1), T::of(out.j2, -1.0)}, j);
  p.add_psd_constraint(
      "p1 I - tr_B J1 >= 0",
      {T::scalar_identity(out.p1, d), T::partial_trace(out.j1, d, d, -1.0)},
      zeros(d));
  p.add_psd_constraint(
      "p2 I - tr_B J2 >= 0",
      {T::scalar_identity(out.p2, d), T::partial_trace(out.j2, d, d, -1.0)},
      zeros(d));
  p.set_objective(Sense::minimize, {T::of(out.p1), T::of(out.p2)});
  return out;
}

RobustnessPrimalProgram build_robustness_primal(const LinearMap &map) {
  const CMatrix j = hptp_choi(map, "build_robustness_primal");
  const std::size_t d = map.dim(), n = d * d;
  RobustnessPrimalProgram out;
  SdpProblem &p = out.problem;
  out.jt = p.psd_matrix("Jt", n);
  out.s = p.nonneg_scalar("s");
  p.add_psd_constraint("Jt - J >= 0", {T::of(out.jt)}, -j);
  p.add_equality(
      "tr_B Jt - s I = I",
      {T::partial_trace(out.jt, d, d), T::scalar_identity(out.s, d, -1.0)},
      identity(d));
  p.set_objective(Sense::minimize, {T::of(out.s)});
  return out;
}

RobustnessDualProgram build_robustness_dual(const LinearMap &map) {
  const CMatrix j = hptp_choi(map, "build_robustness_dual");
  const std::size_t d = map.dim(), n = d * d;
  RobustnessDualProgram out;
  SdpProblem &p = out.problem;
  out.m = p.psd_matrix("M", n);
  out.n = p.free_matrix("N", d);
  p.add_psd_constraint("N (x) I - M >= 0",
                       {T::kron_identity(out.n, d), T::of(out.m, -1.0)},
                       zeros(n));
  p.add_equality("tr N = 1", {T::trace_of(out.n)}, scalar(1.0));
  p.set_objective(Sense::maximize, {T::inner(out.m, j)}, -1.0);
  return out;
}

RobustnessFullProgram build_robustness_full(const LinearMap &map) {
  const CMatrix j = hptp_choi(map, "build_robustness_full");
  const std::size_t d = map.dim(), n = d * d;
  RobustnessFullProgram out;
  SdpProblem &p = out.problem;
  out.p = p.psd_matrix("P", n);
  out.q = p.psd_matrix("Q", n);
  out.s = p.nonneg_scalar("s");
  p.add_equality("Q - P = J", {T::of(out.q), T::of(out.p, -1.0)}, j);
  p.add_equality(
      "tr_B P = s I",
      {T::partial_trace(out.p, d, d), T::scalar_identity(out.s, d, -1.0)},
      zeros(d));
  p.add_equality(
      "tr_B Q - s I = I",
      {T::partial_trace(out.q, d, d), T::scalar_identity(out.s, d, -1.0)},
      identity(d));
  p.set_objective(Sense::minimize, {T::of(out.s)});
  return out;
}

} // namespace pim::sdp

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

#include "pim/error.hpp"
#include "pim/random.hpp"
#include "pim/sdp.hpp"
#include "pim/zoo.hpp"

namespace pim::sdp {
namespace {

CMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return hermitian_part(rng.complex_gaussian(n, n));
}

CMatrix scalar(double v) { return CMatrix::Constant(1, 1, v); }

TEST(Sdp, ScalarLowerBound) {
  SdpProblem p;
  const VarId x = p.nonneg_scalar("x");
  p.add_psd_constraint("x >= 1", {LinearTerm::of(x)}, scalar(-1.0));
  p.set_objective(Sense::minimize, {LinearTerm::of(x)});
  const SdpSolution s = solve(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_NEAR(s.primal_value, 1.0, 1e-7);
  EXPECT_NEAR(s.dual_value, 1.0, 1e-7);
}

TEST(Sdp, DetectsInfeasibility) {
  SdpProblem p;
  const VarId x = p.nonneg_scalar("x");
  p.add_equality("x = -1", {LinearTerm::of(x)}, scalar(-1.0));
  p.set_objective(Sense::minimize, {LinearTerm::of(x)});
  EXPECT_EQ(solve(p).status, Status::infeasible);
}

TEST(Sdp, DetectsInconsistentEqualities) {
  SdpProblem p;
  const VarId x = p.free_scalar("x");
  p.add_equality("x = 1", {LinearTerm::of(x)}, scalar(1.0));
  p.add_equality("x = 2", {LinearTerm::of(x)}, scalar(2.0));
  p.set_objective(Sense::minimize, {LinearTerm::of(x)});
  EXPECT_EQ(solve(p).status, Status::infeasible);
}

// max tr[C X] over density matrices is the largest eigenvalue of C.
TEST(Sdp, LargestEigenvalueOverDensityMatrices) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const CMatrix c = random_hermitian(4, seed);
    SdpProblem p;
    const VarId x = p.psd_matrix("X", 4);
    const ConstraintId tr =
        p.add_equality("tr X = 1", {LinearTerm::trace_of(x)}, scalar(1.0));
    p.set_objective(Sense::maximize, {LinearTerm::inner(x, c)});
    const SdpSolution s = solve(p);
    ASSERT_EQ(s.status, Status::optimal);
    const double lmax = eigenvalues_hermitian(c)(0);
    EXPECT_NEAR(s.primal_value, lmax, 1e-7);
    EXPECT_NEAR(s.dual_value, lmax, 1e-7);
    EXPECT_NEAR(s.dual_vars[tr.index](0, 0).real(), lmax, 1e-6);
    EXPECT_NEAR(std::abs(s.primal_vars[x.index].trace() - 1.0), 0.0, 1e-8);
  }
}

// min tr X subject to X >= C, X >= 0 is the sum of the positive eigenvalues.
TEST(Sdp, PositivePartTrace) {
  const CMatrix c = random_hermitian(3, 11);
  SdpProblem p;
  const VarId x = p.psd_matrix("X", 3);
  p.add_psd_constraint("X - C >= 0", {LinearTerm::of(x)}, -c);
  p.set_objective(Sense::minimize, {LinearTerm::trace_of(x)});
  const SdpSolution s = solve(p);
  ASSERT_EQ(s.status, Status::optimal);
  const RVector ev = eigenvalues_hermitian(c);
  double expected = 0.0;
  for (double v : ev)
    expected += std::max(v, 0.0);
  EXPECT_NEAR(s.primal_value, expected, 1e-7);
}

TEST(Sdp, FreeScalarEpigraph) {
  const CMatrix c = random_hermitian(3, 12);
  SdpProblem p;
  const VarId t = p.free_scalar("t");
  p.add_psd_constraint("t I - C >= 0", {LinearTerm::scalar_identity(t, 3)}, -c);
  p.set_objective(Sense::minimize, {LinearTerm::of(t)});
  const SdpSolution s = solve(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_NEAR(s.primal_value, eigenvalues_hermitian(c)(0), 1e-7);
}

TEST(Sdp, FreeMatrixEquality) {
  const CMatrix c = random_hermitian(2, 13);
  SdpProblem p;
  const VarId x = p.free_matrix("X", 2);
  p.add_equality("X = C", {LinearTerm::of(x)}, c);
  p.set_objective(Sense::minimize, {LinearTerm::trace_of(x)}, 0.5);
  const SdpSolution s = solve(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_NEAR(s.primal_value, c.trace().real() + 0.5, 1e-8);
}

TEST(Sdp, PartialTraceAndKronTerms) {
  const CMatrix x = random_hermitian(6, 14);
  const LinearTerm pt = LinearTerm::partial_trace(VarId{0}, 2, 3);
  EXPECT_LT(max_abs(pt.apply(x) - partial_trace(x, 2, 3, Subsystem::first)),
            1e-14);
  const CMatrix y = random_hermitian(2, 15);
  const LinearTerm kr = LinearTerm::kron_identity(VarId{0}, 3, 2.0);
  EXPECT_LT(max_abs(kr.apply(y) - 2.0 * tensor_product(y, identity(3))), 1e-14);
  EXPECT_EQ(pt.output_dim(6), 2u);
  EXPECT_THROW(pt.output_dim(5), DimensionError);
}

TEST(Sdp, HvecIsIsometric) {
  const CMatrix a = random_hermitian(4, 16);
  const CMatrix b = random_hermitian(4, 17);
  const RVector va = hvec(a), vb = hvec(b);
  ASSERT_EQ(va.size(), 16);
  EXPECT_NEAR(va.dot(vb), (a * b).trace().real(), 1e-12);
  EXPECT_LT(max_abs(hmat(va, 4) - a), 1e-14);
}

TEST(Sdp, ConstraintValueAtSolution) {
  SdpProblem p;
  const VarId x = p.psd_matrix("X", 2);
  const ConstraintId c =
      p.add_equality("tr X = 2", {LinearTerm::trace_of(x)}, scalar(2.0));
  p.set_objective(Sense::minimize,
                  {LinearTerm::inner(x, random_hermitian(2, 18))});
  const SdpSolution s = solve(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_LT(max_abs(p.constraint_value(c, s.primal_vars)), 1e-8);
  EXPECT_NEAR(p.objective_value(s.primal_vars), s.primal_value, 1e-12);
}

TEST(Sdp, ImplementabilityProgramsOnDampingInverse) {
  const LinearMap inv = inverse_map(choi_from_kraus(amplitude_damping(0.5)));
  const SdpSolution primal = solve(build_primal_nu(inv).problem);
  const SdpSolution dual = solve(build_dual_nu(inv).problem);
  const SdpSolution cptn = solve(build_cptn_nu(inv).problem);
  ASSERT_EQ(primal.status, Status::optimal);
  ASSERT_EQ(dual.status, Status::optimal);
  ASSERT_EQ(cptn.status, Status::optimal);
  EXPECT_NEAR(primal.primal_value, 3.0, 1e-7);
  EXPECT_NEAR(dual.primal_value, 3.0, 1e-7);
  EXPECT_NEAR(cptn.primal_value, 3.0, 1e-7);
}

TEST(Sdp, RobustnessProgramsOnDampingInverse) {
  // 2^nu = 3 gives robustness (3 - 1) / 2 = 1.
  const LinearMap inv = inverse_map(choi_from_kraus(amplitude_damping(0.5)));
  const SdpSolution p = solve(build_robustness_primal(inv).problem);
  const SdpSolution d = solve(build_robustness_dual(inv).problem);
  const SdpSolution f = solve(build_robustness_full(inv).problem);
  ASSERT_EQ(p.status, Status::optimal);
  ASSERT_EQ(d.status, Status::optimal);
  ASSERT_EQ(f.status, Status::optimal);
  EXPECT_NEAR(p.primal_value, 1.0, 1e-7);
  EXPECT_NEAR(d.primal_value, 1.0, 1e-7);
  EXPECT_NEAR(f.primal_value, 1.0, 1e-7);
}

TEST(Sdp, BuildersRejectNonHptp) {
  const LinearMap half = 0.5 * LinearMap::identity(2);
  EXPECT_THROW(build_primal_nu(half), DomainError);
  EXPECT_THROW(build_dual_nu(half), DomainError);
  EXPECT_THROW(build_robustness_primal(half), DomainError);
}

TEST(Sdp, StatusNames) {
  EXPECT_EQ(to_string(Status::optimal), "optimal");
  EXPECT_EQ(to_string(Status::infeasible), "infeasible");
}

} // namespace
} // namespace pim::sdp

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
#include "pim/implementability.hpp"
#include "pim/zoo.hpp"

namespace pim {
namespace {

LinearMap damping_inverse(double eps) {
  return inverse_map(choi_from_kraus(amplitude_damping(eps)));
}

CMatrix real_matrix(std::initializer_list<double> v, Eigen::Index n) {
  CMatrix m(n, n);
  Eigen::Index i = 0;
  for (double x : v) {
    m(i / n, i % n) = x;
    ++i;
  }
  return m;
}

TEST(Implementability, DampingInverseIsLog3AtHalf) {
  const NuCertificate c = nu(damping_inverse(0.5));
  EXPECT_NEAR(c.nu, std::log2(3.0), 1e-7);
  EXPECT_NEAR(c.p1, 2.0, 1e-7);
  EXPECT_NEAR(c.p2, 1.0, 1e-7);
  EXPECT_LT(c.gap, 1e-7);
}

TEST(Implementability, ChannelsCostNothing) {
  const NuCertificate c = nu(depolarizing(3, 0.2));
  EXPECT_NEAR(c.nu, 0.0, 1e-12);
  EXPECT_NEAR(c.p2, 0.0, 1e-12);
  EXPECT_TRUE(validate_certificate(depolarizing(3, 0.2), c).pass);
}

TEST(Implementability, RejectsNonHptp) {
  EXPECT_THROW(nu(0.5 * LinearMap::identity(2)), DomainError);
  CMatrix j = LinearMap::identity(2).choi();
  j(0, 1) = Complex(0.0, 0.2);
  EXPECT_THROW(nu(LinearMap(2, j)), DomainError);
}

TEST(Implementability, CertificateIsExactlyFeasible) {
  const LinearMap m = random_hptp(2, 5);
  const NuCertificate c = nu(m);
  const CertificateReport r = validate_certificate(m, c);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.difference_residual, 1e-12);
  EXPECT_LT(r.marginal_residual, 1e-12);
  EXPECT_GE(r.primal_min_eig, -1e-12);
  EXPECT_GE(r.dual_min_eig, -1e-12);
}

TEST(Implementability, TamperedCertificateFails) {
  const LinearMap m = damping_inverse(0.3);
  NuCertificate c = nu(m);
  c.p1 -= 0.1;
  c.gamma -= 0.1;
  c.nu = std::log2(c.gamma);
  const CertificateReport r = validate_certificate(m, c);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.failures.empty());
}

TEST(Implementability, TwoChannelDecompositionRecombines) {
  const LinearMap m = random_hptp(2, 6);
  const NuCertificate c = nu(m);
  const QuasiDecomposition q = decompose_two_channel(c);
  ASSERT_EQ(q.terms.size(), 2u);
  EXPECT_GT(q.terms[0].eta, 0.0);
  EXPECT_LT(q.terms[1].eta, 0.0);
  for (const QuasiTerm &t : q.terms) {
    const MapClass k = classify(t.channel);
    EXPECT_TRUE(k.is_cp && k.is_tp);
  }
  EXPECT_NEAR(q.eta_sum(), 1.0, 1e-12);
  EXPECT_NEAR(q.total_cost(), c.gamma, 1e-12);
  EXPECT_LT(max_abs(q.recombine().choi() - m.choi()), 1e-7);
}

TEST(Implementability, ChannelDecompositionHasOneTerm) {
  const QuasiDecomposition q = decompose_two_channel(nu(dephasing_qubit(0.1)));
  EXPECT_EQ(q.terms.size(), 1u);
  EXPECT_DOUBLE_EQ(q.total_cost(), 1.0);
}

// For the identity on a qubit ||J||_1 = 2, so eta1 = 3 * 2 and eta2 = 5.
TEST(Implementability, CanonicalDecompositionOfIdentity) {
  const QuasiDecomposition q = canonical_decomposition(LinearMap::identity(2));
  EXPECT_NEAR(q.total_cost(), 11.0, 1e-9);
  EXPECT_LT(max_abs(q.recombine().choi() - LinearMap::identity(2).choi()),
            1e-12);
}

TEST(Implementability, CanonicalCostDominatesOptimal) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LinearMap m = random_hptp(2, seed);
    const QuasiDecomposition can = canonical_decomposition(m);
    EXPECT_LT(max_abs(can.recombine().choi() - m.choi()), 1e-10);
    EXPECT_GE(can.total_cost(), nu(m).gamma);
  }
}

TEST(Implementability, SignSplitMergesTerms) {
  const LinearMap a = choi_from_kraus(random_cptp(2, 2, 1));
  const LinearMap b = choi_from_kraus(random_cptp(2, 2, 2));
  const LinearMap c = choi_from_kraus(random_cptp(2, 2, 3));
  const std::vector<QuasiTerm> terms = {{1.5, a}, {0.7, b}, {-1.2, c}};
  const QuasiDecomposition q = sign_split(terms);
  ASSERT_EQ(q.terms.size(), 2u);
  EXPECT_NEAR(q.total_cost(), 3.4, 1e-12);
  const LinearMap expected = 1.5 * a + 0.7 * b - 1.2 * c;
  EXPECT_LT(max_abs(q.recombine().choi() - expected.choi()), 1e-12);
  EXPECT_THROW(sign_split({}), DomainError);
}

TEST(Implementability, TraceNormBoundsBracketGamma) {
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const LinearMap m = random_hptp(2, seed);
    const TraceNormBounds b = trace_norm_bounds(m);
    const double g = nu(m).gamma;
    EXPECT_LE(b.lower, g + 1e-7);
    EXPECT_GE(b.upper, g - 1e-7);
    EXPECT_NEAR(b.upper, trace_norm(m.choi()), 1e-12);
    EXPECT_NEAR(b.lower, b.upper / 2.0, 1e-12);
  }
}

TEST(Implementability, RobustnessOfDephasingInverse) {
  const LinearMap inv = inverse_map(dephasing_qubit(0.25));
  EXPECT_NEAR(robustness(inv), 0.5, 1e-7);
  EXPECT_NEAR(nu(inv).gamma, 2.0, 1e-7);
}

TEST(Implementability, DampingDualWitness) {
  const CMatrix m =
      real_matrix({1, 0, 1, 0, 0, 1, 0, 1, 1, 0, -2, 0, 0, 1, 0, 0}, 4);
  const CMatrix n = real_matrix({-1, -1, -1, 2}, 2);
  const CMatrix k = real_matrix({1, 1, 1, 0}, 2);
  for (double e : {0.1, 0.5, 0.8}) {
    const DualWitnessReport r = check_dual_witness(damping_inverse(e), m, n, k);
    EXPECT_TRUE(r.feasible);
    EXPECT_NEAR(r.objective, (1 + e) / (1 - e), 1e-12);
  }
  // Swapping N and K breaks feasibility.
  EXPECT_FALSE(check_dual_witness(damping_inverse(0.5), m, k, n).feasible);
}

TEST(Implementability, DualWitnessShapeChecked) {
  EXPECT_THROW(check_dual_witness(damping_inverse(0.5), identity(2),
                                  identity(2), identity(2)),
               DimensionError);
}

} // namespace
} // namespace pim

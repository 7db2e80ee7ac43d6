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
#include "pim/zoo.hpp"

namespace pim {
namespace {

CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TEST(Zoo, AmplitudeDampingKraus) {
  const KrausSet k = amplitude_damping(0.36);
  ASSERT_EQ(k.operators.size(), 2u);
  EXPECT_DOUBLE_EQ(k.operators[0](0, 0).real(), 1.0);
  EXPECT_DOUBLE_EQ(k.operators[0](1, 1).real(), 0.8);
  EXPECT_DOUBLE_EQ(k.operators[1](0, 1).real(), 0.6);
  EXPECT_LT(max_abs(kraus_completeness(k) - identity(2)), 1e-15);
}

TEST(Zoo, AmplitudeDampingDecaysExcitedState) {
  const CMatrix out =
      pim::apply(choi_from_kraus(amplitude_damping(0.5)), diag2(0.0, 1.0));
  EXPECT_LT(max_abs(out - diag2(0.5, 0.5)), 1e-15);
}

TEST(Zoo, GeneralizedDampingReducesToDamping) {
  const LinearMap g = choi_from_kraus(generalized_amplitude_damping(0.3, 0.0));
  const LinearMap a = choi_from_kraus(amplitude_damping(0.3));
  EXPECT_LT(max_abs(g.choi() - a.choi()), 1e-15);
}

TEST(Zoo, GeneralizedDampingFixedPoint) {
  // The thermal state diag(1 - N, N) is invariant.
  const LinearMap g = choi_from_kraus(generalized_amplitude_damping(0.4, 0.3));
  EXPECT_LT(max_abs(pim::apply(g, diag2(0.7, 0.3)) - diag2(0.7, 0.3)), 1e-15);
  EXPECT_LT(
      max_abs(kraus_completeness(generalized_amplitude_damping(0.4, 0.3)) -
              identity(2)),
      1e-15);
}

TEST(Zoo, GeneralizedDampingFlipSymmetry) {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const LinearMap flip = unitary_channel(x);
  const LinearMap g = choi_from_kraus(generalized_amplitude_damping(0.4, 0.8));
  const LinearMap h = choi_from_kraus(generalized_amplitude_damping(0.4, 0.2));
  EXPECT_LT(max_abs(g.choi() - compose(flip, compose(h, flip)).choi()), 1e-15);
}

TEST(Zoo, DepolarizingAction) {
  Rng rng(5);
  const CMatrix g = rng.complex_gaussian(3, 3);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  const CMatrix expected = 0.7 * rho + 0.3 * identity(3) / 3.0;
  EXPECT_LT(max_abs(pim::apply(depolarizing(3, 0.3), rho) - expected), 1e-14);
}

TEST(Zoo, DephasingAction) {
  CMatrix rho(2, 2);
  rho << 0.5, 0.5, 0.5, 0.5;
  const CMatrix out = pim::apply(dephasing_qubit(0.25), rho);
  EXPECT_NEAR(out(0, 1).real(), 0.25, 1e-15);
  EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-15);
}

TEST(Zoo, WeylOperatorsAreTraceOrthogonalUnitaries) {
  const std::size_t d = 3;
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t z = 0; z < d; ++z) {
      const CMatrix w = weyl_operator(d, x, z);
      EXPECT_LT(max_abs(w * w.adjoint() - identity(d)), 1e-14);
      for (std::size_t x2 = 0; x2 < d; ++x2)
        for (std::size_t z2 = 0; z2 < d; ++z2) {
          const Complex t = (w.adjoint() * weyl_operator(d, x2, z2)).trace();
          const double expected = (x == x2 && z == z2) ? double(d) : 0.0;
          EXPECT_NEAR(std::abs(t), expected, 1e-13);
        }
    }
}

TEST(Zoo, WeylShiftAndClock) {
  const CMatrix x = weyl_operator(3, 1, 0);
  EXPECT_DOUBLE_EQ(x(1, 0).real(), 1.0); // X|0> = |1>
  const CMatrix z = weyl_operator(3, 0, 1);
  EXPECT_NEAR(std::arg(z(1, 1)), 2.0 * M_PI / 3.0, 1e-14);
}

TEST(Zoo, InverseSpecsInvertTheChannels) {
  for (std::size_t d : {2, 3}) {
    const LinearMap inv =
        choi_from_mixed_unitary(depolarizing_inverse_spec(d, 0.4));
    EXPECT_LT(max_abs(compose(inv, depolarizing(d, 0.4)).choi() -
                      LinearMap::identity(d).choi()),
              1e-13);
  }
  const LinearMap inv = choi_from_mixed_unitary(dephasing_inverse_spec(0.2));
  EXPECT_LT(max_abs(compose(inv, dephasing_qubit(0.2)).choi() -
                    LinearMap::identity(2).choi()),
            1e-13);
}

TEST(Zoo, AnalyticGammaValues) {
  EXPECT_NEAR(analytic_gamma_inverse({Family::amplitude_damping, 0.5}), 3.0,
              1e-14);
  EXPECT_NEAR(analytic_nu_inverse({Family::amplitude_damping, 0.5}),
              std::log2(3.0), 1e-14);
  EXPECT_NEAR(analytic_gamma_inverse(
                  {Family::generalized_amplitude_damping, 0, 0.5, 0.25}),
              2.5, 1e-14);
  EXPECT_NEAR(analytic_gamma_inverse(
                  {Family::generalized_amplitude_damping, 0, 0.5, 0.75}),
              2.5, 1e-14);
  EXPECT_NEAR(analytic_gamma_inverse({Family::dephasing_qubit, 0.25}), 2.0,
              1e-14);
  // (1 + (1 - 2/4) 0.5) / 0.5
  EXPECT_NEAR(analytic_gamma_inverse({Family::depolarizing, 0.5, 0, 0, 2}), 2.5,
              1e-14);
}

TEST(Zoo, AnalyticRejectsSingularParameters) {
  EXPECT_THROW(analytic_gamma_inverse({Family::amplitude_damping, 1.0}),
               DomainError);
  EXPECT_THROW(analytic_gamma_inverse({Family::dephasing_qubit, 0.5}),
               DomainError);
}

TEST(Zoo, ConstructorsRejectOutOfRange) {
  EXPECT_THROW(amplitude_damping(-0.1), DomainError);
  EXPECT_THROW(amplitude_damping(1.1), DomainError);
  EXPECT_THROW(generalized_amplitude_damping(0.5, 1.5), DomainError);
}

TEST(Zoo, FamilyNamesRoundTrip) {
  for (Family f :
       {Family::amplitude_damping, Family::generalized_amplitude_damping,
        Family::depolarizing, Family::dephasing_qubit})
    EXPECT_EQ(family_from_name(family_name(f)), f);
  EXPECT_THROW(family_from_name("bit_flip"), ParseError);
}

TEST(Zoo, RandomChannelIsCptpAndSeeded) {
  const KrausSet a = random_cptp(3, 2, 99);
  const KrausSet b = random_cptp(3, 2, 99);
  EXPECT_LT(max_abs(kraus_completeness(a) - identity(3)), 1e-13);
  for (std::size_t i = 0; i < a.operators.size(); ++i)
    EXPECT_EQ(max_abs(a.operators[i] - b.operators[i]), 0.0);
  EXPECT_GT(max_abs(a.operators[0] - random_cptp(3, 2, 100).operators[0]),
            1e-3);
}

TEST(Zoo, RandomHptpIsHptp) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const MapClass c = classify(random_hptp(2, s));
    EXPECT_TRUE(c.is_hp && c.is_tp);
  }
  const MapClass fixed = classify(random_hptp(2, 7, 0.0));
  EXPECT_TRUE(fixed.is_cp);
}

TEST(Zoo, RandomPureStateIsRankOne) {
  Rng rng(4);
  const CMatrix rho = random_pure_state(4, rng);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
  EXPECT_LT(max_abs(rho * rho - rho), 1e-14);
}

} // namespace
} // namespace pim

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

#include "pim/channel.hpp"
#include "pim/error.hpp"
#include "pim/zoo.hpp"

namespace pim {
namespace {

CMatrix ket_bra(std::size_t d, std::size_t i, std::size_t j) {
  CMatrix m = CMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

CMatrix random_state(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix g = rng.complex_gaussian(d, d);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

// Direct Kraus action, independent of the Choi machinery.
CMatrix kraus_apply(const KrausSet &k, const CMatrix &rho) {
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const CMatrix &op : k.operators)
    out += op * rho * op.adjoint();
  return out;
}

TEST(Channel, IdentityChoiIsMaximallyEntangledProjector) {
  const LinearMap id = LinearMap::identity(2);
  CMatrix gamma = CMatrix::Zero(4, 4);
  for (int a : {0, 3})
    for (int b : {0, 3})
      gamma(a, b) = 1.0;
  EXPECT_EQ(max_abs(id.choi() - gamma), 0.0);
}

TEST(Channel, ChoiEntriesFollowConvention) {
  // J[(i,k),(j,l)] = N(|i><j|)[k,l]
  const KrausSet ad = amplitude_damping(0.3);
  const LinearMap m = choi_from_kraus(ad);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const CMatrix out = kraus_apply(ad, ket_bra(2, i, j));
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          EXPECT_NEAR(std::abs(m.choi()(i * 2 + k, j * 2 + l) - out(k, l)), 0.0,
                      1e-15);
    }
}

TEST(Channel, ApplyMatchesKrausAction) {
  const KrausSet k = random_cptp(3, 2, 21);
  const CMatrix rho = random_state(3, 22);
  EXPECT_LT(max_abs(pim::apply(choi_from_kraus(k), rho) - kraus_apply(k, rho)),
            1e-13);
}

TEST(Channel, ComposeIsSequentialApplication) {
  const KrausSet a = random_cptp(2, 2, 31);
  const KrausSet b = random_cptp(2, 3, 32);
  const CMatrix rho = random_state(2, 33);
  const LinearMap ab = compose(choi_from_kraus(a), choi_from_kraus(b));
  EXPECT_LT(max_abs(pim::apply(ab, rho) - kraus_apply(a, kraus_apply(b, rho))),
            1e-13);
}

TEST(Channel, TensorActsOnProductStates) {
  const KrausSet a = random_cptp(2, 2, 41);
  const KrausSet b = random_cptp(3, 2, 42);
  const CMatrix r1 = random_state(2, 43), r2 = random_state(3, 44);
  const LinearMap t = tensor(choi_from_kraus(a), choi_from_kraus(b));
  ASSERT_EQ(t.dim(), 6u);
  const CMatrix expected =
      tensor_product(kraus_apply(a, r1), kraus_apply(b, r2));
  EXPECT_LT(max_abs(pim::apply(t, tensor_product(r1, r2)) - expected), 1e-13);
}

TEST(Channel, SuperoperatorRoundTrip) {
  const LinearMap m = random_hptp(2, 51);
  const CMatrix s = superoperator_from_choi(m);
  EXPECT_LT(max_abs(choi_from_superoperator(2, s).choi() - m.choi()), 1e-15);
}

TEST(Channel, SuperoperatorActsOnRowMajorVec) {
  const LinearMap m = choi_from_kraus(random_cptp(2, 2, 52));
  const CMatrix rho = random_state(2, 53);
  CVector v(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      v(i * 2 + j) = rho(i, j);
  const CVector out = superoperator_from_choi(m) * v;
  const CMatrix expected = pim::apply(m, rho);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_NEAR(std::abs(out(i * 2 + j) - expected(i, j)), 0.0, 1e-14);
}

TEST(Channel, InverseComposesToIdentity) {
  const LinearMap ad = choi_from_kraus(amplitude_damping(0.4));
  const LinearMap inv = inverse_map(ad);
  EXPECT_LT(max_abs(compose(inv, ad).choi() - LinearMap::identity(2).choi()),
            1e-12);
  EXPECT_LT(max_abs(compose(ad, inv).choi() - LinearMap::identity(2).choi()),
            1e-12);
  const MapClass c = classify(inv);
  EXPECT_TRUE(c.is_hp);
  EXPECT_TRUE(c.is_tp);
  EXPECT_FALSE(c.is_cp);
}

TEST(Channel, InverseOfSingularMapThrows) {
  EXPECT_THROW(inverse_map(dephasing_qubit(0.5)), NotInvertibleError);
  EXPECT_THROW(inverse_map(choi_from_kraus(amplitude_damping(1.0))),
               NotInvertibleError);
}

TEST(Channel, InverseRequiresTracePreserving) {
  const LinearMap half = 0.5 * LinearMap::identity(2);
  EXPECT_THROW(inverse_map(half), DomainError);
}

TEST(Channel, ClassifyCases) {
  const MapClass cptp = classify(choi_from_kraus(amplitude_damping(0.2)));
  EXPECT_TRUE(cptp.is_hp && cptp.is_tp && cptp.is_cp && cptp.is_tn);

  // Dropping a Kraus operator leaves a CP trace-decreasing map.
  KrausSet partial = amplitude_damping(0.2);
  partial.operators.pop_back();
  const MapClass cptn = classify(choi_from_kraus(partial));
  EXPECT_TRUE(cptn.is_cp && cptn.is_tn);
  EXPECT_FALSE(cptn.is_tp);

  const MapClass grow = classify(2.0 * LinearMap::identity(2));
  EXPECT_TRUE(grow.is_cp);
  EXPECT_FALSE(grow.is_tn);

  CMatrix j = LinearMap::identity(2).choi();
  j(0, 1) = Complex(0.0, 0.3);
  const MapClass nonhp = classify(LinearMap(2, j));
  EXPECT_FALSE(nonhp.is_hp);
  EXPECT_FALSE(nonhp.is_cp);
  EXPECT_FALSE(nonhp.is_tn);
}

TEST(Channel, TransposeIsPositiveButNotCompletelyPositive) {
  // Choi of the transpose is the swap operator.
  CMatrix swap = CMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      swap(i * 2 + j, j * 2 + i) = 1.0;
  const MapClass c = classify(LinearMap(2, swap));
  EXPECT_TRUE(c.is_hp && c.is_tp);
  EXPECT_FALSE(c.is_cp);
}

TEST(Channel, MixedUnitaryValidation) {
  MixedUnitarySpec s{2, {{0.5, identity(2)}, {0.5, weyl_operator(2, 1, 0)}}};
  EXPECT_NO_THROW(choi_from_mixed_unitary(s));
  s.terms[1].coefficient = 0.6;
  EXPECT_THROW(choi_from_mixed_unitary(s), DomainError);
  s.terms[1].coefficient = 0.5;
  s.terms[1].unitary(0, 0) = 0.1;
  EXPECT_THROW(choi_from_mixed_unitary(s), DomainError);
}

TEST(Channel, LinearMapRejectsBadShape) {
  EXPECT_THROW(LinearMap(2, identity(3)), DimensionError);
}

TEST(Channel, ArithmeticIsEntrywise) {
  const LinearMap a = LinearMap::identity(2);
  const LinearMap b = dephasing_qubit(0.3);
  EXPECT_LT(max_abs((a - b).choi() - (a.choi() - b.choi())), 1e-15);
  EXPECT_LT(max_abs((a + b).choi() - (a.choi() + b.choi())), 1e-15);
  EXPECT_THROW(a + LinearMap::identity(3), DimensionError);
}

TEST(Channel, TrivialSuperchannelLeavesMapUnchanged) {
  const LinearMap m = random_hptp(2, 61);
  for (std::size_t e : {1, 2, 3}) {
    const LinearMap out =
        apply_superchannel(m, trivial_pre(2, e), trivial_post(2, e));
    EXPECT_LT(max_abs(out.choi() - m.choi()), 1e-13) << "env " << e;
  }
}

TEST(Channel, SuperchannelWithUnitaryStagesIsConjugation) {
  Rng rng(71);
  const CMatrix u = random_kraus(2, 2, 1, rng).front();
  const CMatrix v = random_kraus(2, 2, 1, rng).front();
  const LinearMap m = random_hptp(2, 72);
  const LinearMap out = apply_superchannel(m, rectangular_from_kraus({v}, 2, 2),
                                           rectangular_from_kraus({u}, 2, 2));
  const LinearMap expected =
      compose(unitary_channel(u), compose(m, unitary_channel(v)));
  EXPECT_LT(max_abs(out.choi() - expected.choi()), 1e-13);
}

TEST(Channel, SuperchannelRejectsNonChannelStages) {
  const LinearMap m = random_hptp(2, 81);
  RectangularMap bad = trivial_pre(2, 2);
  bad.choi *= 2.0;
  EXPECT_THROW(apply_superchannel(m, bad, trivial_post(2, 2)), DomainError);
  EXPECT_THROW(apply_superchannel(m, trivial_pre(2, 2), trivial_post(2, 3)),
               DimensionError);
}

TEST(Channel, RectangularKrausChoiIsTracePreserving) {
  Rng rng(91);
  const RectangularMap r =
      rectangular_from_kraus(random_kraus(2, 4, 3, rng), 2, 4);
  EXPECT_TRUE(is_cptp(r));
  EXPECT_EQ(r.choi.rows(), 8);
}

} // namespace
} // namespace pim

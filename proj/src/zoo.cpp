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

#include "pim/zoo.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "pim/error.hpp"

namespace pim {

namespace {

using Index = Eigen::Index;

void require_unit(double v, const char *name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw DomainError(std::string(name) + " = " + std::to_string(v) +
                      " outside [0, 1]");
}

void require_dim(std::size_t d) {
  if (d < 2)
    throw DomainError("dimension must be at least 2, got " + std::to_string(d));
}

CMatrix pauli_z() {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

} // namespace

std::string_view family_name(Family f) {
  switch (f) {
  case Family::amplitude_damping:
    return "amplitude_damping";
  case Family::generalized_amplitude_damping:
    return "generalized_amplitude_damping";
  case Family::depolarizing:
    return "depolarizing";
  case Family::dephasing_qubit:
    return "dephasing_qubit";
  }
  return "";
}

Family family_from_name(std::string_view name) {
  for (Family f :
       {Family::amplitude_damping, Family::generalized_amplitude_damping,
        Family::depolarizing, Family::dephasing_qubit})
    if (family_name(f) == name)
      return f;
  throw ParseError("unknown channel family '" + std::string(name) + "'");
}

KrausSet amplitude_damping(double epsilon) {
  require_unit(epsilon, "epsilon");
  CMatrix a0 = CMatrix::Zero(2, 2), a1 = CMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - epsilon);
  a1(0, 1) = std::sqrt(epsilon);
  return KrausSet{2, {a0, a1}};
}

KrausSet generalized_amplitude_damping(double y, double n) {
  require_unit(y, "y");
  require_unit(n, "N");
  CMatrix a1 = CMatrix::Zero(2, 2), a2 = CMatrix::Zero(2, 2),
          a3 = CMatrix::Zero(2, 2), a4 = CMatrix::Zero(2, 2);
  a1(0, 0) = std::sqrt(1.0 - n);
  a1(1, 1) = std::sqrt(1.0 - n) * std::sqrt(1.0 - y);
  a2(0, 1) = std::sqrt(y * (1.0 - n));
  a3(0, 0) = std::sqrt(n) * std::sqrt(1.0 - y);
  a3(1, 1) = std::sqrt(n);
  a4(1, 0) = std::sqrt(y * n);
  return KrausSet{2, {a1, a2, a3, a4}};
}

CMatrix weyl_operator(std::size_t d, std::size_t x, std::size_t z) {
  require_dim(d);
  if (x >= d || z >= d)
    throw DomainError("weyl_operator: indices (" + std::to_string(x) + ", " +
                      std::to_string(z) + ") outside Z_" + std::to_string(d));
  // (X^x Z^z)|k> = zeta^{z k} |k + x>
  CMatrix w = CMatrix::Zero(static_cast<Index>(d), static_cast<Index>(d));
  for (std::size_t k = 0; k < d; ++k) {
    const double phase = 2.0 * std::numbers::pi *
                         static_cast<double>((z * k) % d) /
                         static_cast<double>(d);
    w(static_cast<Index>((k + x) % d), static_cast<Index>(k)) =
        std::polar(1.0, phase);
  }
  return w;
}

MixedUnitarySpec depolarizing_spec(std::size_t d, double epsilon) {
  require_dim(d);
  require_unit(epsilon, "epsilon");
  const double d2 = static_cast<double>(d * d);
  MixedUnitarySpec s{d, {}};
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t z = 0; z < d; ++z) {
      double r = epsilon / d2;
      if (x == 0 && z == 0)
        r += 1.0 - epsilon;
      s.terms.push_back({r, weyl_operator(d, x, z)});
    }
  return s;
}

LinearMap depolarizing(std::size_t d, double epsilon) {
  return choi_from_mixed_unitary(depolarizing_spec(d, epsilon));
}

MixedUnitarySpec dephasing_spec(double epsilon) {
  require_unit(epsilon, "epsilon");
  return MixedUnitarySpec{2,
                          {{1.0 - epsilon, identity(2)}, {epsilon, pauli_z()}}};
}

LinearMap dephasing_qubit(double epsilon) {
  return choi_from_mixed_unitary(dephasing_spec(epsilon));
}

MixedUnitarySpec depolarizing_inverse_spec(std::size_t d, double epsilon) {
  require_dim(d);
  require_unit(epsilon, "epsilon");
  if (epsilon >= 1.0)
    throw DomainError("depolarizing inverse requires epsilon < 1");
  const double d2 = static_cast<double>(d * d);
  const double off = -epsilon / (d2 * (1.0 - epsilon));
  MixedUnitarySpec s{d, {}};
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t z = 0; z < d; ++z) {
      const bool id = x == 0 && z == 0;
      const double r =
          id ? 1.0 + (d2 - 1.0) * epsilon / (d2 * (1.0 - epsilon)) : off;
      s.terms.push_back({r, weyl_operator(d, x, z)});
    }
  return s;
}

MixedUnitarySpec dephasing_inverse_spec(double epsilon) {
  require_unit(epsilon, "epsilon");
  if (epsilon >= 0.5)
    throw DomainError("dephasing inverse requires epsilon < 1/2");
  const double den = 1.0 - 2.0 * epsilon;
  return MixedUnitarySpec{
      2, {{(1.0 - epsilon) / den, identity(2)}, {-epsilon / den, pauli_z()}}};
}

LinearMap named_channel(const NamedFamily &f) {
  switch (f.family) {
  case Family::amplitude_damping:
    return choi_from_kraus(amplitude_damping(f.epsilon));
  case Family::generalized_amplitude_damping:
    return choi_from_kraus(generalized_amplitude_damping(f.y, f.n));
  case Family::depolarizing:
    return depolarizing(f.d, f.epsilon);
  case Family::dephasing_qubit:
    return dephasing_qubit(f.epsilon);
  }
  throw DomainError("named_channel: unknown family");
}

double analytic_gamma_inverse(const NamedFamily &f) {
  switch (f.family) {
  case Family::amplitude_damping:
    require_unit(f.epsilon, "epsilon");
    if (f.epsilon >= 1.0)
      throw DomainError("amplitude damping inverse requires epsilon < 1");
    return (1.0 + f.epsilon) / (1.0 - f.epsilon);
  case Family::generalized_amplitude_damping:
    require_unit(f.y, "y");
    require_unit(f.n, "N");
    if (f.y >= 1.0)
      throw DomainError("generalized amplitude damping inverse requires y < 1");
    return (1.0 + std::abs(f.y - 2.0 * f.n * f.y)) / (1.0 - f.y);
  case Family::depolarizing: {
    require_dim(f.d);
    require_unit(f.epsilon, "epsilon");
    if (f.epsilon >= 1.0)
      throw DomainError("depolarizing inverse requires epsilon < 1");
    const double d2 = static_cast<double>(f.d * f.d);
    return (1.0 + (1.0 - 2.0 / d2) * f.epsilon) / (1.0 - f.epsilon);
  }
  case Family::dephasing_qubit:
    require_unit(f.epsilon, "epsilon");
    if (f.epsilon >= 0.5)
      throw DomainError("dephasing inverse requires epsilon < 1/2");
    return 1.0 / (1.0 - 2.0 * f.epsilon);
  }
  throw DomainError("analytic_gamma_inverse: unknown family");
}

double analytic_nu_inverse(const NamedFamily &f) {
  return std::log2(analytic_gamma_inverse(f));
}

std::vector<CMatrix> random_kraus(std::size_t dim_in, std::size_t dim_out,
                                  std::size_t kraus_count, Rng &rng) {
  if (dim_in == 0 || dim_out == 0 || kraus_count == 0)
    throw DomainError(
        "random_kraus: dimensions and Kraus count must be positive");
  if (dim_out * kraus_count < dim_in)
    throw DomainError("random_kraus: dim_out * kraus_count must be >= dim_in");
  const Index rows = static_cast<Index>(dim_out * kraus_count);
  const Index cols = static_cast<Index>(dim_in);
  const CMatrix g = rng.complex_gaussian(dim_out * kraus_count, dim_in);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Index c = 0; c < cols; ++c) {
    const Complex rc = r(c, c);
    if (std::abs(rc) > 0.0)
      q.col(c) *= rc / std::abs(rc);
  }
  std::vector<CMatrix> ops;
  for (std::size_t b = 0; b < kraus_count; ++b)
    ops.push_back(q.middleRows(static_cast<Index>(b * dim_out),
                               static_cast<Index>(dim_out)));
  return ops;
}

KrausSet random_cptp(std::size_t d, std::size_t kraus_count, Rng &rng) {
  if (d == 0 || kraus_count == 0)
    throw DomainError(
        "random_cptp: dimension and Kraus count must be positive");
  return KrausSet{d, random_kraus(d, d, kraus_count, rng)};
}

KrausSet random_cptp(std::size_t d, std::size_t kraus_count,
                     std::uint64_t seed) {
  Rng rng(seed);
  return random_cptp(d, kraus_count, rng);
}

LinearMap random_hptp(std::size_t d, Rng &rng, std::optional<double> eta2) {
  const double drawn = 2.0 * rng.uniform();
  const double e2 = eta2.value_or(drawn);
  if (!(e2 >= 0.0))
    throw DomainError("random_hptp: eta2 must be non-negative");
  const LinearMap a = choi_from_kraus(random_cptp(d, d, rng));
  const LinearMap b = choi_from_kraus(random_cptp(d, d, rng));
  return (1.0 + e2) * a - e2 * b;
}

LinearMap random_hptp(std::size_t d, std::uint64_t seed,
                      std::optional<double> eta2) {
  Rng rng(seed);
  return random_hptp(d, rng, eta2);
}

CMatrix random_pure_state(std::size_t d, Rng &rng) {
  CMatrix v = rng.complex_gaussian(d, 1);
  v /= v.norm();
  return v * v.adjoint();
}

} // namespace pim

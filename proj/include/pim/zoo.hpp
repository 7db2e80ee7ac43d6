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

#ifndef PIM_ZOO_HPP
#define PIM_ZOO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pim/channel.hpp"
#include "pim/random.hpp"

namespace pim {

enum class Family {
  amplitude_damping,
  generalized_amplitude_damping,
  depolarizing,
  dephasing_qubit,
};

// Named channel with its parameters. Fields not used by a family are ignored.
struct NamedFamily {
  Family family = Family::amplitude_damping;
  double epsilon = 0.0; // amplitude damping, depolarizing, dephasing
  double y = 0.0;       // generalized amplitude damping
  double n = 0.0;       // generalized amplitude damping
  std::size_t d = 2;    // depolarizing
};

std::string_view family_name(Family f);
// Throws ParseError on an unknown name.
Family family_from_name(std::string_view name);

// All constructors throw DomainError on out-of-range parameters.

// {|0><0| + sqrt(1-eps)|1><1|, sqrt(eps)|0><1|}
KrausSet amplitude_damping(double epsilon);

// Four Kraus operators; N = 0 gives amplitude_damping(y).
KrausSet generalized_amplitude_damping(double y, double n);

// X^x Z^z with X|k> = |k+1 mod d>, Z|k> = exp(2 pi i k / d)|k>.
CMatrix weyl_operator(std::size_t d, std::size_t x, std::size_t z);

// (1 - eps) rho + eps / d^2 sum_{x,z} W rho W^dagger
LinearMap depolarizing(std::size_t d, double epsilon);
MixedUnitarySpec depolarizing_spec(std::size_t d, double epsilon);

// (1 - eps) rho + eps Z rho Z
LinearMap dephasing_qubit(double epsilon);
MixedUnitarySpec dephasing_spec(double epsilon);

// Mixed-unitary form of the depolarizing inverse: identity coefficient
// 1 + (d^2-1) eps / (d^2 (1-eps)), every other Weyl term -eps / (d^2 (1-eps)).
MixedUnitarySpec depolarizing_inverse_spec(std::size_t d, double epsilon);

// Mixed-unitary form of the dephasing inverse: (1-eps)/(1-2eps) on I and
// -eps/(1-2eps) on Z.
MixedUnitarySpec dephasing_inverse_spec(double epsilon);

LinearMap named_channel(const NamedFamily &f);

// Closed-form gamma = 2^nu of the inverse of the named channel:
//   amplitude damping      (1 + eps) / (1 - eps)
//   generalized AD         (1 + |y - 2 N y|) / (1 - y)
//   depolarizing           (1 + (1 - 2/d^2) eps) / (1 - eps)
//   dephasing              1 / (1 - 2 eps)
// Throws DomainError at or beyond the singular parameter (eps = 1, y = 1,
// dephasing eps = 1/2).
double analytic_gamma_inverse(const NamedFamily &f);
double analytic_nu_inverse(const NamedFamily &f);

// Channel from the first d columns of a QR-orthonormalised
// (d * kraus_count) x d complex Gaussian matrix (column phases fixed by the
// diagonal of R), cut into kraus_count blocks of d rows.
KrausSet random_cptp(std::size_t d, std::size_t kraus_count, Rng &rng);
// Same construction for a channel from dimension dim_in to dim_out; needs
// dim_out * kraus_count >= dim_in.
std::vector<CMatrix> random_kraus(std::size_t dim_in, std::size_t dim_out,
                                  std::size_t kraus_count, Rng &rng);
KrausSet random_cptp(std::size_t d, std::size_t kraus_count,
                     std::uint64_t seed);

// eta1 A - eta2 B with eta2 = 2 * uniform() (unless overridden),
// eta1 = 1 + eta2, and A, B = random_cptp(d, d) drawn in that order.
LinearMap random_hptp(std::size_t d, Rng &rng,
                      std::optional<double> eta2 = std::nullopt);
LinearMap random_hptp(std::size_t d, std::uint64_t seed,
                      std::optional<double> eta2 = std::nullopt);

// Density matrix of a Haar-like random pure state (normalised Gaussian).
CMatrix random_pure_state(std::size_t d, Rng &rng);

} // namespace pim

#endif

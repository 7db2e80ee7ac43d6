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

#ifndef PIM_CHANNEL_HPP
#define PIM_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include "pim/matrix.hpp"

/// Linear maps on d-dimensional operators.
///
/// Choi convention. A map N is stored through its Choi operator
///
///   J = sum_{i,j} |i><j| (x) N(|i><j|),
///
/// on input copy A' (left factor) tensor output A (right factor), so
///
///   J[(i,k), (j,l)] = N(|i><j|)[k, l],    (i,k) -> i * d_out + k.
///
/// Under this convention
///   - N is trace preserving iff partial_trace(J, keep = first) = I,
///   - N(rho)[k,l] = sum_{i,j} rho[i,j] J[(i,k), (j,l)].
///
/// Superoperator convention. vec is row-major, vec(X)[(a,b)] = X[a,b], and
/// the superoperator S satisfies S vec(rho) = vec(N(rho)). Comparing with the
/// action above gives the reshuffle
///
///   S[(k,l), (i,j)] = J[(i,k), (j,l)],
///
/// which is its own inverse up to relabelling and is used in both directions.
namespace pim {

struct KrausSet {
  std::size_t dim = 0;
  std::vector<CMatrix> operators;
};

struct MixedUnitaryTerm {
  double coefficient = 0.0;
  CMatrix unitary;
};

struct MixedUnitarySpec {
  std::size_t dim = 0;
  std::vector<MixedUnitaryTerm> terms;
};

struct MapClass {
  bool is_hp = false;
  bool is_tp = false;
  bool is_cp = false;
  bool is_tn = false;
};

inline constexpr double kTraceTol = 1e-9;
inline constexpr double kDefaultCondLimit = 1e12;

/// Square linear map, input and output dimension d, held as a d^2 x d^2 Choi
/// operator. Values are immutable once constructed.
class LinearMap {
public:
  // Throws DimensionError unless choi is d^2 x d^2 with d >= 1.
  LinearMap(std::size_t dim, CMatrix choi);

  static LinearMap identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const CMatrix &choi() const noexcept { return choi_; }

private:
  std::size_t dim_;
  CMatrix choi_;
};

LinearMap operator+(const LinearMap &a, const LinearMap &b);
LinearMap operator-(const LinearMap &a, const LinearMap &b);
LinearMap operator*(double s, const LinearMap &m);

/// Map with independent input and output dimensions. Only used to describe
/// the pre- and post-processing stages of a superchannel.
struct RectangularMap {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  CMatrix choi; // (dim_in * dim_out)^2, same ordering as LinearMap
};

// Choi operator of rho -> sum_K K rho K^dagger, each K of shape d_out x d_in.
CMatrix choi_from_kraus_operators(const std::vector<CMatrix> &ops,
                                  std::size_t dim_in, std::size_t dim_out);

LinearMap choi_from_kraus(const KrausSet &k);
RectangularMap rectangular_from_kraus(const std::vector<CMatrix> &ops,
                                      std::size_t dim_in, std::size_t dim_out);

// Throws DomainError unless every U is unitary within 1e-10 and the
// coefficients sum to 1 within 1e-12.
LinearMap choi_from_mixed_unitary(const MixedUnitarySpec &s);

LinearMap unitary_channel(const CMatrix &u);

// sum_K K^dagger K
CMatrix kraus_completeness(const KrausSet &k);

CMatrix apply(const LinearMap &map, const CMatrix &rho);

// outer o inner
LinearMap compose(const LinearMap &outer, const LinearMap &inner);

// a (x) b acting on A1 A2, ordered (a1 * d2 + a2).
LinearMap tensor(const LinearMap &a, const LinearMap &b);

CMatrix superoperator_from_choi(const LinearMap &map);
LinearMap choi_from_superoperator(std::size_t dim, const CMatrix &super);

// Map whose superoperator is the matrix inverse of map's. Requires a TP map
// and a superoperator 2-norm condition number at most cond_limit; throws
// DomainError and NotInvertibleError respectively.
LinearMap inverse_map(const LinearMap &map,
                      double cond_limit = kDefaultCondLimit);

// HP: J = J^dagger; TP: tr_out J = I; CP: J >= 0; TN: CP and tr_out J <= I.
// Every test is made within tol. CP and TN are false for non-HP maps.
MapClass classify(const LinearMap &map, double tol = kTraceTol);

// True if the rectangular map is CP and TP within tol.
bool is_cptp(const RectangularMap &map, double tol = kTraceTol);

// post o (N (x) id_E) o pre, where pre: A -> A E and post: A E -> A.
// Throws DimensionError on incompatible shapes and DomainError when pre or
// post is not CPTP.
LinearMap apply_superchannel(const LinearMap &map, const RectangularMap &pre,
                             const RectangularMap &post);

// Superchannel stages that leave every map unchanged: append |0> on E, then
// discard E.
RectangularMap trivial_pre(std::size_t dim, std::size_t env_dim);
RectangularMap trivial_post(std::size_t dim, std::size_t env_dim);

} // namespace pim

#endif

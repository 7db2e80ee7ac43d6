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

#include "pim/channel.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "pim/error.hpp"

namespace pim {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

std::string shape(const CMatrix &m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Superoperator of a rectangular Choi operator: dout^2 x din^2.
CMatrix super_from_choi(const CMatrix &j, std::size_t din, std::size_t dout) {
  const Index di = idx(din), dout_ = idx(dout);
  CMatrix s(dout_ * dout_, di * di);
  for (Index i = 0; i < di; ++i)
    for (Index j2 = 0; j2 < di; ++j2)
      for (Index k = 0; k < dout_; ++k)
        for (Index l = 0; l < dout_; ++l)
          s(k * dout_ + l, i * di + j2) = j(i * dout_ + k, j2 * dout_ + l);
  return s;
}

CMatrix choi_from_super(const CMatrix &s, std::size_t din, std::size_t dout) {
  const Index di = idx(din), dout_ = idx(dout);
  CMatrix j(di * dout_, di * dout_);
  for (Index i = 0; i < di; ++i)
    for (Index j2 = 0; j2 < di; ++j2)
      for (Index k = 0; k < dout_; ++k)
        for (Index l = 0; l < dout_; ++l)
          j(i * dout_ + k, j2 * dout_ + l) = s(k * dout_ + l, i * di + j2);
  return j;
}

void require_same_dim(const LinearMap &a, const LinearMap &b,
                      const char *what) {
  if (a.dim() != b.dim())
    throw DimensionError(std::string(what) + ": dimensions " +
                         std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()) + " differ");
}

} // namespace

LinearMap::LinearMap(std::size_t dim, CMatrix choi)
    : dim_(dim), choi_(std::move(choi)) {
  const Index n = idx(dim * dim);
  if (dim == 0 || choi_.rows() != n || choi_.cols() != n)
    throw DimensionError("LinearMap: Choi operator is " + shape(choi_) +
                         ", expected " + std::to_string(n) + "x" +
                         std::to_string(n));
}

LinearMap LinearMap::identity(std::size_t dim) {
  return choi_from_kraus(KrausSet{dim, {pim::identity(dim)}});
}

LinearMap operator+(const LinearMap &a, const LinearMap &b) {
  require_same_dim(a, b, "operator+");
  return LinearMap(a.dim(), a.choi() + b.choi());
}

LinearMap operator-(const LinearMap &a, const LinearMap &b) {
  require_same_dim(a, b, "operator-");
  return LinearMap(a.dim(), a.choi() - b.choi());
}

LinearMap operator*(double s, const LinearMap &m) {
  return LinearMap(m.dim(), s * m.choi());
}

CMatrix choi_from_kraus_operators(const std::vector<CMatrix> &ops,
                                  std::size_t dim_in, std::size_t dim_out) {
  const Index di = idx(dim_in), dout = idx(dim_out);
  CMatrix j = CMatrix::Zero(di * dout, di * dout);
  CVector v(di * dout);
  for (const CMatrix &k : ops) {
    if (k.rows() != dout || k.cols() != di)
      throw DimensionError("Kraus operator is " + shape(k) + ", expected " +
                           std::to_string(dim_out) + "x" +
                           std::to_string(dim_in));
    // v[(i,k)] = K[k,i], the vector (I (x) K)|Gamma>.
    for (Index i = 0; i < di; ++i)
      for (Index r = 0; r < dout; ++r)
        v(i * dout + r) = k(r, i);
    j.noalias() += v * v.adjoint();
  }
  return j;
}

LinearMap choi_from_kraus(const KrausSet &k) {
  if (k.dim == 0)
    throw DimensionError("choi_from_kraus: dimension must be positive");
  return LinearMap(k.dim, choi_from_kraus_operators(k.operators, k.dim, k.dim));
}

RectangularMap rectangular_from_kraus(const std::vector<CMatrix> &ops,
                                      std::size_t dim_in, std::size_t dim_out) {
  return RectangularMap{dim_in, dim_out,
                        choi_from_kraus_operators(ops, dim_in, dim_out)};
}

LinearMap choi_from_mixed_unitary(const MixedUnitarySpec &s) {
  if (s.dim == 0)
    throw DimensionError("mixed unitary: dimension must be positive");
  const CMatrix id = identity(s.dim);
  double total = 0.0;
  CMatrix j = CMatrix::Zero(idx(s.dim * s.dim), idx(s.dim * s.dim));
  for (const MixedUnitaryTerm &t : s.terms) {
    if (t.unitary.rows() != idx(s.dim) || t.unitary.cols() != idx(s.dim))
      throw DimensionError("mixed unitary: unitary is " + shape(t.unitary));
    if (max_abs(t.unitary.adjoint() * t.unitary - id) > 1e-10)
      throw DomainError("mixed unitary: operator is not unitary");
    total += t.coefficient;
    j += t.coefficient * choi_from_kraus_operators({t.unitary}, s.dim, s.dim);
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw DomainError("mixed unitary: coefficients sum to " +
                      std::to_string(total) + ", expected 1");
  return LinearMap(s.dim, std::move(j));
}

LinearMap unitary_channel(const CMatrix &u) {
  if (u.rows() != u.cols())
    throw DimensionError("unitary_channel: matrix is " + shape(u));
  return choi_from_kraus(KrausSet{static_cast<std::size_t>(u.rows()), {u}});
}

CMatrix kraus_completeness(const KrausSet &k) {
  CMatrix s = CMatrix::Zero(idx(k.dim), idx(k.dim));
  for (const CMatrix &op : k.operators) {
    if (op.rows() != idx(k.dim) || op.cols() != idx(k.dim))
      throw DimensionError("Kraus operator is " + shape(op) + ", expected " +
                           std::to_string(k.dim) + "x" + std::to_string(k.dim));
    s.noalias() += op.adjoint() * op;
  }
  return s;
}

CMatrix apply(const LinearMap &map, const CMatrix &rho) {
  const Index d = idx(map.dim());
  if (rho.rows() != d || rho.cols() != d)
    throw DimensionError("apply: input is " + shape(rho) + ", map dimension " +
                         std::to_string(map.dim()));
  CMatrix out = CMatrix::Zero(d, d);
  const CMatrix &j = map.choi();
  for (Index i = 0; i < d; ++i)
    for (Index k = 0; k < d; ++k)
      if (rho(i, k) != 0.0)
        out += rho(i, k) * j.block(i * d, k * d, d, d);
  return out;
}

CMatrix superoperator_from_choi(const LinearMap &map) {
  return super_from_choi(map.choi(), map.dim(), map.dim());
}

LinearMap choi_from_superoperator(std::size_t dim, const CMatrix &super) {
  const Index n = idx(dim * dim);
  if (super.rows() != n || super.cols() != n)
    throw DimensionError("choi_from_superoperator: matrix is " + shape(super));
  return LinearMap(dim, choi_from_super(super, dim, dim));
}

LinearMap compose(const LinearMap &outer, const LinearMap &inner) {
  require_same_dim(outer, inner, "compose");
  return choi_from_superoperator(outer.dim(),
                                 superoperator_from_choi(outer) *
                                     superoperator_from_choi(inner));
}

LinearMap tensor(const LinearMap &a, const LinearMap &b) {
  const Index d1 = idx(a.dim()), d2 = idx(b.dim());
  const Index d = d1 * d2;
  const CMatrix &ja = a.choi();
  const CMatrix &jb = b.choi();
  CMatrix j(d * d, d * d);
  for (Index i1 = 0; i1 < d1; ++i1)
    for (Index i2 = 0; i2 < d2; ++i2)
      for (Index k1 = 0; k1 < d1; ++k1)
        for (Index k2 = 0; k2 < d2; ++k2) {
          const Index row = (i1 * d2 + i2) * d + (k1 * d2 + k2);
          for (Index j1 = 0; j1 < d1; ++j1)
            for (Index j2 = 0; j2 < d2; ++j2)
              for (Index l1 = 0; l1 < d1; ++l1)
                for (Index l2 = 0; l2 < d2; ++l2) {
                  const Index col = (j1 * d2 + j2) * d + (l1 * d2 + l2);
                  j(row, col) = ja(i1 * d1 + k1, j1 * d1 + l1) *
                                jb(i2 * d2 + k2, j2 * d2 + l2);
                }
        }
  return LinearMap(a.dim() * b.dim(), std::move(j));
}

LinearMap inverse_map(const LinearMap &map, double cond_limit) {
  const std::size_t d = map.dim();
  if (max_abs(partial_trace(map.choi(), d, d, Subsystem::first) - identity(d)) >
      kTraceTol)
    throw DomainError("inverse_map: map is not trace preserving");
  const CMatrix s = superoperator_from_choi(map);
  Eigen::JacobiSVD<CMatrix> svd(s);
  const RVector sv = svd.singularValues();
  const double smax = sv(0), smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || smax / smin > cond_limit)
    throw NotInvertibleError(
        "inverse_map: superoperator condition number " +
        (smin > 0.0 ? std::to_string(smax / smin) : std::string("inf")) +
        " exceeds limit " + std::to_string(cond_limit));
  const CMatrix inv = s.partialPivLu().inverse();
  // The inverse of an HP map is HP; drop the rounding residue.
  return LinearMap(d, hermitian_part(choi_from_super(inv, d, d)));
}

MapClass classify(const LinearMap &map, double tol) {
  const std::size_t d = map.dim();
  const CMatrix &j = map.choi();
  MapClass c;
  c.is_hp = hermiticity_error(j) <= tol;
  const CMatrix marg = partial_trace(j, d, d, Subsystem::first);
  c.is_tp = max_abs(marg - identity(d)) <= tol;
  if (c.is_hp) {
    c.is_cp = min_eigenvalue(j) >= -tol;
    c.is_tn = c.is_cp && min_eigenvalue(identity(d) - marg) >= -tol;
  }
  return c;
}

bool is_cptp(const RectangularMap &map, double tol) {
  const Index n = idx(map.dim_in * map.dim_out);
  if (map.choi.rows() != n || map.choi.cols() != n)
    return false;
  if (hermiticity_error(map.choi) > tol)
    return false;
  if (min_eigenvalue(map.choi) < -tol)
    return false;
  const CMatrix marg =
      partial_trace(map.choi, map.dim_in, map.dim_out, Subsystem::first);
  return max_abs(marg - identity(map.dim_in)) <= tol;
}

LinearMap apply_superchannel(const LinearMap &map, const RectangularMap &pre,
                             const RectangularMap &post) {
  const std::size_t d = map.dim();
  if (pre.dim_in != d || pre.dim_out % d != 0 || pre.dim_out == 0)
    throw DimensionError(
        "apply_superchannel: pre-processing map is " +
        std::to_string(pre.dim_in) + " -> " + std::to_string(pre.dim_out) +
        ", expected A -> A E with dim A = " + std::to_string(d));
  const std::size_t env = pre.dim_out / d;
  if (post.dim_in != d * env || post.dim_out != d)
    throw DimensionError("apply_superchannel: post-processing map is " +
                         std::to_string(post.dim_in) + " -> " +
                         std::to_string(post.dim_out) + ", expected " +
                         std::to_string(d * env) + " -> " + std::to_string(d));
  const Index n_pre = idx(pre.dim_in * pre.dim_out);
  const Index n_post = idx(post.dim_in * post.dim_out);
  if (pre.choi.rows() != n_pre || pre.choi.cols() != n_pre ||
      post.choi.rows() != n_post || post.choi.cols() != n_post)
    throw DimensionError("apply_superchannel: Choi operator shape mismatch");
  if (!is_cptp(pre) || !is_cptp(post))
    throw DomainError("apply_superchannel: pre and post maps must be CPTP");

  const CMatrix s_mid =
      superoperator_from_choi(tensor(map, LinearMap::identity(env)));
  const CMatrix s = super_from_choi(post.choi, post.dim_in, post.dim_out) *
                    s_mid * super_from_choi(pre.choi, pre.dim_in, pre.dim_out);
  return LinearMap(d, choi_from_super(s, d, d));
}

RectangularMap trivial_pre(std::size_t dim, std::size_t env_dim) {
  // |a> -> |a>|0>
  CMatrix v = CMatrix::Zero(idx(dim * env_dim), idx(dim));
  for (std::size_t a = 0; a < dim; ++a)
    v(idx(a * env_dim), idx(a)) = 1.0;
  return rectangular_from_kraus({v}, dim, dim * env_dim);
}

RectangularMap trivial_post(std::size_t dim, std::size_t env_dim) {
  // Kraus operators I (x) <e|.
  std::vector<CMatrix> ops;
  for (std::size_t e = 0; e < env_dim; ++e) {
    CMatrix k = CMatrix::Zero(idx(dim), idx(dim * env_dim));
    for (std::size_t a = 0; a < dim; ++a)
      k(idx(a), idx(a * env_dim + e)) = 1.0;
    ops.push_back(std::move(k));
  }
  return rectangular_from_kraus(ops, dim * env_dim, dim);
}

} // namespace pim

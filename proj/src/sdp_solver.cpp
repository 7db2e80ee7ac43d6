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

// Infeasible-start primal-dual interior-point method.
//
// Standard form after compilation (x_c stacks the coordinates of the cone
// blocks, x_f the free coordinates):
//
//   min c_c.x_c + c_f.x_f   s.t.  A_c x_c + A_f x_f = b,  X_b >= 0
//   max b.y                 s.t.  A_c^T y + z_c = c_c,  A_f^T y = c_f,
//                                 Z_b >= 0
//
// Each iteration solves the HKM Newton system through the Schur complement
//
//   [ M     A_f ] [dy  ]   [ r_p - A_c hvec(R_c Z^-1 - X R_d Z^-1) ]
//   [ A_f^T  0  ] [dx_f] = [ r_f                                   ]
//
// with M = A_c W A_c^T and W the matrix of H -> sym(X H Z^-1).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>

#include "pim/error.hpp"
#include "pim/sdp.hpp"

namespace pim::sdp {

namespace {

using Index = Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

Index idx(std::size_t n) { return static_cast<Index>(n); }

constexpr double kRankTol = 1e-10;
constexpr double kStepFraction = 0.95;
constexpr double kDivergence = 1e10;

struct Block {
  Index n = 0;      // matrix dimension
  Index offset = 0; // first coordinate in x_c
  Index size() const { return n * n; }
};

// Where a variable's coordinates live.
struct VarSlot {
  bool cone = false;
  Index block = 0;  // cone
  Index offset = 0; // free
};

struct Compiled {
  std::vector<Block> blocks;
  std::vector<VarSlot> slots;
  std::vector<Index> slack_block; // per constraint, -1 for equalities
  std::vector<Index> row_offset;  // per constraint
  MatrixXd a_c, a_f;
  VectorXd b, c_c, c_f;
  double sign = 1.0;
  Index n_cone = 0, n_free = 0, m = 0;
};

CMatrix basis_element(Index j, Index n) {
  RVector e = RVector::Zero(n * n);
  e(j) = 1.0;
  return hmat(e, static_cast<std::size_t>(n));
}

Compiled compile(const SdpProblem &p) {
  Compiled k;
  k.sign = p.sense() == Sense::minimize ? 1.0 : -1.0;
  const auto &vars = p.variables();
  const auto &cons = p.constraints();

  for (const Variable &v : vars) {
    VarSlot s;
    const Index n = idx(v.dim);
    if (v.kind == VarKind::psd_matrix || v.kind == VarKind::nonneg_scalar) {
      s.cone = true;
      s.block = idx(k.blocks.size());
      k.blocks.push_back(Block{n, k.n_cone});
      k.n_cone += n * n;
    } else {
      s.offset = k.n_free;
      k.n_free += n * n;
    }
    k.slots.push_back(s);
  }
  for (const Constraint &c : cons) {
    const Index n = c.constant.rows();
    k.row_offset.push_back(k.m);
    k.m += n * n;
    if (c.kind == Constraint::Kind::psd) {
      k.slack_block.push_back(idx(k.blocks.size()));
      k.blocks.push_back(Block{n, k.n_cone});
      k.n_cone += n * n;
    } else {
      k.slack_block.push_back(-1);
    }
  }

  k.a_c = MatrixXd::Zero(k.m, k.n_cone);
  k.a_f = MatrixXd::Zero(k.m, k.n_free);
  k.b = VectorXd::Zero(k.m);
  k.c_c = VectorXd::Zero(k.n_cone);
  k.c_f = VectorXd::Zero(k.n_free);

  auto column = [&](std::size_t var, Index j) -> std::pair<MatrixXd *, Index> {
    const VarSlot &s = k.slots[var];
    if (s.cone)
      return {&k.a_c, k.blocks[static_cast<std::size_t>(s.block)].offset + j};
    return {&k.a_f, s.offset + j};
  };

  for (std::size_t ci = 0; ci < cons.size(); ++ci) {
    const Constraint &c = cons[ci];
    const Index rows = c.constant.rows() * c.constant.rows();
    const Index r0 = k.row_offset[ci];
    for (const LinearTerm &t : c.terms) {
      const Index n = idx(vars[t.var.index].dim);
      for (Index j = 0; j < n * n; ++j) {
        const RVector col = hvec(t.apply(basis_element(j, n)));
        auto [mat, cj] = column(t.var.index, j);
        mat->block(r0, cj, rows, 1) += col;
      }
    }
    if (c.kind == Constraint::Kind::equality) {
      k.b.segment(r0, rows) = hvec(c.constant);
    } else {
      const Block &s = k.blocks[static_cast<std::size_t>(k.slack_block[ci])];
      k.a_c.block(r0, s.offset, rows, rows) -= MatrixXd::Identity(rows, rows);
      k.b.segment(r0, rows) = -hvec(c.constant);
    }
  }

  for (const LinearTerm &t : p.objective_terms()) {
    const Index n = idx(vars[t.var.index].dim);
    for (Index j = 0; j < n * n; ++j) {
      const double v = t.apply(basis_element(j, n))(0, 0).real();
      const VarSlot &s = k.slots[t.var.index];
      if (s.cone)
        k.c_c(k.blocks[static_cast<std::size_t>(s.block)].offset + j) +=
            k.sign * v;
      else
        k.c_f(s.offset + j) += k.sign * v;
    }
  }
  return k;
}

// Indices of a maximal linearly independent set of columns, ascending.
std::vector<Index> independent_columns(const MatrixXd &a) {
  std::vector<Index> keep;
  if (a.cols() == 0)
    return keep;
  if (a.rows() == 0)
    return keep;
  Eigen::ColPivHouseholderQR<MatrixXd> qr(a);
  qr.setThreshold(kRankTol);
  const Index r = qr.rank();
  for (Index i = 0; i < r; ++i)
    keep.push_back(qr.colsPermutation().indices()(i));
  std::sort(keep.begin(), keep.end());
  return keep;
}

MatrixXd select_columns(const MatrixXd &a, const std::vector<Index> &cols) {
  MatrixXd out(a.rows(), idx(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i)
    out.col(idx(i)) = a.col(cols[i]);
  return out;
}

VectorXd select(const VectorXd &v, const std::vector<Index> &ids) {
  VectorXd out(idx(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i)
    out(idx(i)) = v(ids[i]);
  return out;
}

// True if v is consistent with the linear dependencies
// among the columns of `a`: every dropped column a_j = A_keep alpha must
// satisfy v_j = v_keep . alpha.
bool consistent(const MatrixXd &a, const VectorXd &v,
                const std::vector<Index> &keep) {
  if (idx(keep.size()) == a.cols())
    return true;
  const MatrixXd ak = select_columns(a, keep);
  const VectorXd vk = select(v, keep);
  Eigen::ColPivHouseholderQR<MatrixXd> qr(ak);
  const double scale = 1.0 + v.cwiseAbs().maxCoeff();
  std::size_t next = 0;
  for (Index j = 0; j < a.cols(); ++j) {
    if (next < keep.size() && keep[next] == j) {
      ++next;
      continue;
    }
    const VectorXd alpha = qr.solve(VectorXd(a.col(j)));
    if (std::abs(v(j) - vk.dot(alpha)) > 1e-8 * scale)
      return false;
  }
  return true;
}

// Largest step t with X + t dX >= 0 (infinity if unbounded). X must be PD.
double max_step(const CMatrix &x, const CMatrix &dx) {
  Eigen::LLT<CMatrix> llt(x);
  if (llt.info() != Eigen::Success)
    return 0.0;
  const auto l = llt.matrixL();
  CMatrix t = l.solve(dx);
  t = l.solve(CMatrix(t.adjoint()));
  const double lmin = min_eigenvalue(hermitian_part(t));
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

CMatrix inverse_pd(const CMatrix &z, bool &ok) {
  Eigen::LLT<CMatrix> llt(z);
  ok = llt.info() == Eigen::Success;
  if (!ok)
    return z;
  return hermitian_part(llt.solve(CMatrix::Identity(z.rows(), z.cols())));
}

// W[:, j] = hvec(X E_j Z^-1) for the orthonormal Hermitian basis E_j.
MatrixXd hkm_operator(const CMatrix &x, const CMatrix &zinv) {
  const Index n = x.rows();
  MatrixXd w(n * n, n * n);
  const double r = std::numbers::sqrt2 / 2.0;
  const Complex i1(0.0, 1.0);
  Index j = 0;
  for (Index a = 0; a < n; ++a)
    w.col(j++) = hvec(x.col(a) * zinv.row(a));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      const CMatrix p = x.col(a) * zinv.row(b);
      const CMatrix q = x.col(b) * zinv.row(a);
      w.col(j++) = hvec(r * (p + q));
      w.col(j++) = hvec((i1 * r) * (p - q));
    }
  return w;
}

struct Iterate {
  std::vector<CMatrix> x, z; // per block
  VectorXd x_f, y;
};

VectorXd stack(const std::vector<CMatrix> &blocks, Index total) {
  VectorXd v(total);
  Index o = 0;
  for (const CMatrix &m : blocks) {
    const RVector h = hvec(m);
    v.segment(o, h.size()) = h;
    o += h.size();
  }
  return v;
}

std::vector<CMatrix> unstack(const VectorXd &v,
                             const std::vector<Block> &blocks) {
  std::vector<CMatrix> out;
  out.reserve(blocks.size());
  for (const Block &b : blocks)
    out.push_back(
        hmat(v.segment(b.offset, b.size()), static_cast<std::size_t>(b.n)));
  return out;
}

// Primal starting blocks from user values, if they are all PD.
bool warm_blocks(const SdpProblem &p, const Compiled &k,
                 const std::vector<CMatrix> &values, std::vector<CMatrix> &xs,
                 VectorXd &x_f) {
  const auto &vars = p.variables();
  if (values.size() != vars.size())
    return false;
  xs.assign(k.blocks.size(), CMatrix());
  x_f = VectorXd::Zero(k.n_free);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const Index n = idx(vars[v].dim);
    if (values[v].rows() != n || values[v].cols() != n ||
        !is_hermitian(values[v], 1e-8))
      return false;
    const CMatrix h = hermitian_part(values[v]);
    const VarSlot &s = k.slots[v];
    if (s.cone)
      xs[static_cast<std::size_t>(s.block)] = h;
    else
      x_f.segment(s.offset, n * n) = hvec(h);
  }
  for (std::size_t ci = 0; ci < k.slack_block.size(); ++ci)
    if (k.slack_block[ci] >= 0)
      xs[static_cast<std::size_t>(k.slack_block[ci])] =
          hermitian_part(p.constraint_value(ConstraintId{ci}, values));
  for (const CMatrix &x : xs) {
    Eigen::LLT<CMatrix> llt(x);
    if (llt.info() != Eigen::Success || min_eigenvalue(x) <= 1e-8)
      return false;
  }
  return true;
}

} // namespace

SdpSolution solve(const SdpProblem &p, const SolveOptions &opts) {
  if (p.objective_terms().empty())
    throw DomainError("solve: problem has no objective");
  const Compiled k = compile(p);
  SdpSolution sol;

  // Presolve: drop redundant free columns, then redundant rows.
  const std::vector<Index> free_keep = independent_columns(k.a_f);
  if (!consistent(k.a_f, k.c_f, free_keep)) {
    sol.status = Status::infeasible;
    return sol;
  }
  MatrixXd a_full(k.m, k.n_cone + idx(free_keep.size()));
  a_full << k.a_c, select_columns(k.a_f, free_keep);
  const std::vector<Index> rows = independent_columns(a_full.transpose());
  if (!consistent(a_full.transpose(), k.b, rows)) {
    sol.status = Status::infeasible;
    return sol;
  }
  const Index m = idx(rows.size());
  const Index nf = idx(free_keep.size());
  MatrixXd a_c(m, k.n_cone), a_f(m, nf);
  VectorXd b(m);
  for (Index i = 0; i < m; ++i) {
    a_c.row(i) = k.a_c.row(rows[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < nf; ++j)
      a_f(i, j) = k.a_f(rows[static_cast<std::size_t>(i)],
                        free_keep[static_cast<std::size_t>(j)]);
    b(i) = k.b(rows[static_cast<std::size_t>(i)]);
  }
  const VectorXd c_c = k.c_c;
  const VectorXd c_f = select(k.c_f, free_keep);
  const double norm_b = b.norm();
  const double norm_c = std::sqrt(c_c.squaredNorm() + c_f.squaredNorm());

  // Starting point.
  Iterate it;
  double max_row = 0.0, max_ratio = 0.0;
  for (Index i = 0; i < m; ++i) {
    const double an = a_c.row(i).norm();
    max_row = std::max(max_row, std::max(an, a_f.row(i).norm()));
    max_ratio = std::max(max_ratio, (1.0 + std::abs(b(i))) / (1.0 + an));
  }
  it.x_f = VectorXd::Zero(nf);
  it.y = VectorXd::Zero(m);
  for (const Block &blk : k.blocks) {
    const double sn = std::sqrt(static_cast<double>(blk.n));
    const double xi =
        std::max({10.0, sn, static_cast<double>(blk.n) * max_ratio});
    const double eta = std::max({10.0, sn, max_row, norm_c});
    it.x.push_back(xi * CMatrix::Identity(blk.n, blk.n));
    it.z.push_back(eta * CMatrix::Identity(blk.n, blk.n));
  }
  if (opts.warm_start) {
    std::vector<CMatrix> xs;
    VectorXd xf_full;
    if (warm_blocks(p, k, *opts.warm_start, xs, xf_full)) {
      it.x = xs;
      it.x_f = select(xf_full, free_keep);
    }
  }

  double total_n = 0.0;
  for (const Block &blk : k.blocks)
    total_n += static_cast<double>(blk.n);

  const std::size_t nb = k.blocks.size();
  int stalls = 0;
  bool converged = false, infeasible = false;
  double pobj = 0.0, dobj = 0.0;
  int iter = 0;
  for (;; ++iter) {
    const VectorXd x_c = stack(it.x, k.n_cone);
    const VectorXd z_c = stack(it.z, k.n_cone);
    const VectorXd r_p = b - a_c * x_c - a_f * it.x_f;
    const VectorXd r_dc = c_c - a_c.transpose() * it.y - z_c;
    const VectorXd r_df = c_f - a_f.transpose() * it.y;
    pobj = c_c.dot(x_c) + c_f.dot(it.x_f);
    dobj = b.dot(it.y);
    const double upobj = k.sign * pobj + p.objective_constant();
    const double udobj = k.sign * dobj + p.objective_constant();
    sol.gap = std::abs(upobj - udobj) / std::max(1.0, std::abs(upobj));
    sol.primal_infeasibility = r_p.norm() / (1.0 + norm_b);
    sol.dual_infeasibility =
        std::sqrt(r_dc.squaredNorm() + r_df.squaredNorm()) / (1.0 + norm_c);
    if (!std::isfinite(sol.gap) || !std::isfinite(sol.primal_infeasibility) ||
        !std::isfinite(sol.dual_infeasibility))
      break;
    if (sol.gap <= opts.tol && sol.primal_infeasibility <= opts.tol &&
        sol.dual_infeasibility <= opts.tol) {
      converged = true;
      break;
    }
    // Divergence along an infeasibility certificate.
    if (iter > 5) {
      const double aty =
          std::sqrt((c_c - r_dc).squaredNorm() + (c_f - r_df).squaredNorm());
      if (dobj > kDivergence && aty <= opts.tol * dobj) {
        infeasible = true;
        break;
      }
      const double ax = (b - r_p).norm();
      if (pobj < -kDivergence && ax <= opts.tol * -pobj) {
        infeasible = true;
        break;
      }
    }
    if (iter >= opts.max_iterations)
      break;

    double mu = 0.0;
    for (std::size_t i = 0; i < nb; ++i)
      mu += (it.x[i] * it.z[i]).trace().real();
    mu /= total_n;

    // Schur complement.
    std::vector<CMatrix> zinv(nb), r_d(nb);
    MatrixXd schur = MatrixXd::Zero(m, m);
    bool ok = true;
    for (std::size_t i = 0; i < nb && ok; ++i) {
      const Block &blk = k.blocks[i];
      zinv[i] = inverse_pd(it.z[i], ok);
      r_d[i] = hmat(r_dc.segment(blk.offset, blk.size()),
                    static_cast<std::size_t>(blk.n));
      const auto ab = a_c.middleCols(blk.offset, blk.size());
      const MatrixXd t = ab * hkm_operator(it.x[i], zinv[i]);
      schur.noalias() += t * ab.transpose();
    }
    if (!ok)
      break;
    schur = 0.5 * (schur + schur.transpose()).eval();
    MatrixXd kkt = MatrixXd::Zero(m + nf, m + nf);
    kkt.topLeftCorner(m, m) = schur;
    kkt.topRightCorner(m, nf) = a_f;
    kkt.bottomLeftCorner(nf, m) = a_f.transpose();
    const Eigen::PartialPivLU<MatrixXd> lu(kkt);

    struct Direction {
      std::vector<CMatrix> dx, dz;
      VectorXd dx_f, dy;
    };
    auto direction = [&](const std::vector<CMatrix> &r_c) {
      VectorXd rhs(m + nf);
      VectorXd rhs1 = r_p;
      std::vector<CMatrix> g(nb);
      for (std::size_t i = 0; i < nb; ++i) {
        const Block &blk = k.blocks[i];
        g[i] = r_c[i] * zinv[i] - it.x[i] * r_d[i] * zinv[i];
        rhs1 -= a_c.middleCols(blk.offset, blk.size()) * hvec(g[i]);
      }
      rhs << rhs1, r_df;
      const VectorXd sol_vec = lu.solve(rhs);
      Direction d;
      d.dy = sol_vec.head(m);
      d.dx_f = sol_vec.tail(nf);
      const VectorXd dz_c = r_dc - a_c.transpose() * d.dy;
      d.dz = unstack(dz_c, k.blocks);
      d.dx.resize(nb);
      for (std::size_t i = 0; i < nb; ++i)
        d.dx[i] =
            hermitian_part(r_c[i] * zinv[i] - it.x[i] * d.dz[i] * zinv[i]);
      return d;
    };
    auto steps = [&](const Direction &d, double &ap, double &ad) {
      ap = ad = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < nb; ++i) {
        ap = std::min(ap, max_step(it.x[i], d.dx[i]));
        ad = std::min(ad, max_step(it.z[i], d.dz[i]));
      }
    };

    // Predictor.
    std::vector<CMatrix> r_c(nb);
    for (std::size_t i = 0; i < nb; ++i)
      r_c[i] = -(it.x[i] * it.z[i]);
    const Direction aff = direction(r_c);
    double ap = 0.0, ad = 0.0;
    steps(aff, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double mu_aff = 0.0;
    for (std::size_t i = 0; i < nb; ++i)
      mu_aff += ((it.x[i] + ap * aff.dx[i]) * (it.z[i] + ad * aff.dz[i]))
                    .trace()
                    .real();
    mu_aff /= total_n;
    const double sigma =
        mu > 0.0 ? std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0) : 0.0;

    // Corrector.
    for (std::size_t i = 0; i < nb; ++i) {
      const Index n = k.blocks[i].n;
      r_c[i] = sigma * mu * CMatrix::Identity(n, n) - it.x[i] * it.z[i] -
               aff.dx[i] * aff.dz[i];
    }
    const Direction d = direction(r_c);
    steps(d, ap, ad);
    ap = std::min(1.0, kStepFraction * ap);
    ad = std::min(1.0, kStepFraction * ad);
    if (!std::isfinite(ap) || !std::isfinite(ad))
      break;

    for (std::size_t i = 0; i < nb; ++i) {
      it.x[i] = hermitian_part(it.x[i] + ap * d.dx[i]);
      it.z[i] = hermitian_part(it.z[i] + ad * d.dz[i]);
    }
    it.x_f += ap * d.dx_f;
    it.y += ad * d.dy;

    stalls = (ap < 1e-8 && ad < 1e-8) ? stalls + 1 : 0;
    if (stalls >= 3)
      break;
  }

  sol.iterations = iter;
  sol.status = converged    ? Status::optimal
               : infeasible ? Status::infeasible
                            : Status::numerical_failure;
  sol.primal_value = k.sign * pobj + p.objective_constant();
  sol.dual_value = k.sign * dobj + p.objective_constant();

  const auto &vars = p.variables();
  VectorXd free_full = VectorXd::Zero(k.n_free);
  for (Index j = 0; j < nf; ++j)
    free_full(free_keep[static_cast<std::size_t>(j)]) = it.x_f(j);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const VarSlot &s = k.slots[v];
    const Index n = idx(vars[v].dim);
    if (s.cone)
      sol.primal_vars.push_back(it.x[static_cast<std::size_t>(s.block)]);
    else
      sol.primal_vars.push_back(
          hmat(free_full.segment(s.offset, n * n), vars[v].dim));
  }
  VectorXd y_full = VectorXd::Zero(k.m);
  for (Index i = 0; i < m; ++i)
    y_full(rows[static_cast<std::size_t>(i)]) = it.y(i);
  const auto &cons = p.constraints();
  for (std::size_t ci = 0; ci < cons.size(); ++ci) {
    const Index n = cons[ci].constant.rows();
    sol.dual_vars.push_back(k.sign *
                            hmat(y_full.segment(k.row_offset[ci], n * n),
                                 static_cast<std::size_t>(n)));
  }
  return sol;
}

} // namespace pim::sdp

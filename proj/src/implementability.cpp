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

#include "pim/implementability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "pim/error.hpp"
#include "pim/sdp.hpp"

namespace pim {

namespace {

constexpr double kDropTol = 1e-12;

void require_hptp(const LinearMap &map, const char *what) {
  const MapClass c = classify(map);
  if (!c.is_hp || !c.is_tp)
    throw DomainError(std::string(what) +
                      ": map is not Hermitian- and trace-preserving");
}

void require_optimal(const sdp::SdpSolution &s, const char *what) {
  if (s.status != sdp::Status::optimal) {
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  " (gap %.3e, primal infeasibility %.3e, dual infeasibility "
                  "%.3e)",
                  s.gap, s.primal_infeasibility, s.dual_infeasibility);
    throw SolverError(std::string(what) + ": solver returned " +
                      sdp::to_string(s.status) + detail);
  }
}

// Restores exact primal feasibility: tr_B J1 = p1 I, J2 = J1 - J, and both
// blocks PSD.
void polish_primal(NuCertificate &c, const CMatrix &j, std::size_t d) {
  const CMatrix id = identity(d);
  c.j1 = hermitian_part(c.j1);
  const CMatrix marg = partial_trace(c.j1, d, d, Subsystem::first);
  c.j1 += tensor_product(c.p1 * id - marg, id) / static_cast<double>(d);
  c.j1 = hermitian_part(c.j1);
  c.j2 = c.j1 - j;
  c.p2 = c.p1 - 1.0;
  const double lmin = std::min(min_eigenvalue(c.j1), min_eigenvalue(c.j2));
  if (lmin < 0.0) {
    const double t = -lmin;
    const CMatrix idn = identity(d * d);
    c.j1 += t * idn;
    c.j2 += t * idn;
    c.p1 += t * static_cast<double>(d);
    c.p2 += t * static_cast<double>(d);
  }
}

// Restores exact dual feasibility: tr N = tr K = 1 and both PSD constraints.
void polish_dual(NuCertificate &c, const CMatrix &j, std::size_t d) {
  const CMatrix id = identity(d);
  const double dd = static_cast<double>(d);
  c.dual_m = hermitian_part(c.dual_m);
  c.dual_n = hermitian_part(c.dual_n);
  c.dual_k = hermitian_part(c.dual_k);
  c.dual_n += (1.0 - c.dual_n.trace().real()) / dd * id;
  c.dual_k += (1.0 - c.dual_k.trace().real()) / dd * id;
  const double lmin =
      std::min(min_eigenvalue(c.dual_m + tensor_product(c.dual_n, id)),
               min_eigenvalue(-c.dual_m + tensor_product(c.dual_k, id)));
  if (lmin < 0.0) {
    const double s = -lmin;
    const double scale = 1.0 / (1.0 + dd * s);
    c.dual_n = scale * (c.dual_n + s * id);
    c.dual_k = scale * (c.dual_k + s * id);
    c.dual_m = scale * c.dual_m;
  }
  c.dual_value = (c.dual_m.cwiseProduct(j.transpose())).sum().real();
}

} // namespace

double QuasiDecomposition::total_cost() const {
  double s = 0.0;
  for (const QuasiTerm &t : terms)
    s += std::abs(t.eta);
  return s;
}

double QuasiDecomposition::eta_sum() const {
  double s = 0.0;
  for (const QuasiTerm &t : terms)
    s += t.eta;
  return s;
}

LinearMap QuasiDecomposition::recombine() const {
  if (terms.empty())
    throw DomainError("recombine: empty decomposition");
  CMatrix j = terms.front().eta * terms.front().channel.choi();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].channel.dim() != terms.front().channel.dim())
      throw DimensionError("recombine: channels of different dimension");
    j += terms[i].eta * terms[i].channel.choi();
  }
  return LinearMap(terms.front().channel.dim(), std::move(j));
}

NuCertificate nu(const LinearMap &map, double tol) {
  require_hptp(map, "nu");
  const std::size_t d = map.dim();
  const CMatrix j = hermitian_part(map.choi());

  if (classify(map).is_cp) {
    // A channel is its own decomposition; M = N = K = I / d certifies it.
    NuCertificate c;
    c.j1 = j;
    c.j2 = CMatrix::Zero(j.rows(), j.cols());
    c.p1 = 1.0;
    c.p2 = 0.0;
    polish_primal(c, j, d);
    c.gamma = c.p1 + c.p2;
    c.nu = std::max(0.0, std::log2(c.gamma));
    const double dd = static_cast<double>(d);
    c.dual_m = identity(d * d) / dd;
    c.dual_n = identity(d) / dd;
    c.dual_k = identity(d) / dd;
    polish_dual(c, j, d);
    c.gap = std::abs(c.gamma - c.dual_value) / std::max(1.0, c.gamma);
    return c;
  }

  sdp::PrimalNuProgram prog = sdp::build_primal_nu(map);

  // Strictly feasible start: J1 = eta1 I / d, J2 = J1 - J.
  const double eta1 = (trace_norm(j) + 1.0) * static_cast<double>(d);
  std::vector<CMatrix> start(prog.problem.variables().size());
  start[prog.j1.index] = eta1 / static_cast<double>(d) * identity(d * d);
  start[prog.j2.index] = start[prog.j1.index] - j;
  start[prog.p1.index] = CMatrix::Constant(1, 1, eta1);
  start[prog.p2.index] = CMatrix::Constant(1, 1, eta1 - 1.0);
  sdp::SolveOptions opts;
  opts.tol = tol;
  opts.warm_start = std::move(start);

  const sdp::SdpSolution s = sdp::solve(prog.problem, opts);
  require_optimal(s, "nu");

  NuCertificate c;
  c.j1 = s.primal_vars[prog.j1.index];
  c.j2 = s.primal_vars[prog.j2.index];
  c.p1 = s.primal_vars[prog.p1.index](0, 0).real();
  c.p2 = s.primal_vars[prog.p2.index](0, 0).real();
  polish_primal(c, j, d);
  c.gamma = c.p1 + c.p2;
  c.nu = std::max(0.0, std::log2(c.gamma));

  c.dual_m = s.dual_vars[prog.difference.index];
  c.dual_k = -s.dual_vars[prog.marginal1.index];
  c.dual_n = -s.dual_vars[prog.marginal2.index];
  polish_dual(c, j, d);
  c.gap = std::abs(c.gamma - c.dual_value) / std::max(1.0, std::abs(c.gamma));
  return c;
}

QuasiDecomposition decompose_two_channel(const NuCertificate &cert) {
  if (!(cert.p1 > 0.0) || cert.p2 < -kDropTol)
    throw DomainError("decompose_two_channel: invalid certificate (p1 = " +
                      std::to_string(cert.p1) +
                      ", p2 = " + std::to_string(cert.p2) + ")");
  const std::size_t n = static_cast<std::size_t>(cert.j1.rows());
  const std::size_t d = static_cast<std::size_t>(std::lround(std::sqrt(n)));
  if (d * d != n || cert.j2.rows() != cert.j1.rows())
    throw DimensionError("decompose_two_channel: malformed Choi blocks");
  QuasiDecomposition q;
  q.terms.push_back({cert.p1, LinearMap(d, cert.j1 / cert.p1)});
  if (cert.p2 > kDropTol)
    q.terms.push_back({-cert.p2, LinearMap(d, cert.j2 / cert.p2)});
  return q;
}

QuasiDecomposition canonical_decomposition(const LinearMap &map) {
  require_hptp(map, "canonical_decomposition");
  const std::size_t d = map.dim();
  const double dd = static_cast<double>(d);
  const CMatrix j = hermitian_part(map.choi());
  const double eta1 = (trace_norm(j) + 1.0) * dd;
  const double eta2 = eta1 - 1.0;
  const CMatrix j1 = identity(d * d) / dd;
  QuasiDecomposition q;
  q.terms.push_back({eta1, LinearMap(d, j1)});
  q.terms.push_back({-eta2, LinearMap(d, (eta1 * j1 - j) / eta2)});
  return q;
}

QuasiDecomposition sign_split(const std::vector<QuasiTerm> &terms) {
  if (terms.empty())
    throw DomainError("sign_split: empty input");
  const std::size_t d = terms.front().channel.dim();
  const auto n = static_cast<Eigen::Index>(d * d);
  CMatrix pos = CMatrix::Zero(n, n), neg = CMatrix::Zero(n, n);
  double eta_pos = 0.0, eta_neg = 0.0;
  for (const QuasiTerm &t : terms) {
    if (t.channel.dim() != d)
      throw DimensionError("sign_split: channels of different dimension");
    if (t.eta > 0.0) {
      pos += t.eta * t.channel.choi();
      eta_pos += t.eta;
    } else if (t.eta < 0.0) {
      neg -= t.eta * t.channel.choi();
      eta_neg -= t.eta;
    }
  }
  QuasiDecomposition q;
  if (eta_pos > 0.0)
    q.terms.push_back({eta_pos, LinearMap(d, pos / eta_pos)});
  if (eta_neg > 0.0)
    q.terms.push_back({-eta_neg, LinearMap(d, neg / eta_neg)});
  if (q.terms.empty())
    throw DomainError("sign_split: all coefficients are zero");
  return q;
}

TraceNormBounds trace_norm_bounds(const LinearMap &map) {
  const double t = trace_norm(hermitian_part(map.choi()));
  return {t / static_cast<double>(map.dim()), t};
}

double robustness(const LinearMap &map, double tol) {
  require_hptp(map, "robustness");
  const sdp::RobustnessPrimalProgram prog = sdp::build_robustness_primal(map);
  sdp::SolveOptions opts;
  opts.tol = tol;
  const sdp::SdpSolution s = sdp::solve(prog.problem, opts);
  require_optimal(s, "robustness");
  return std::max(0.0, s.primal_value);
}

DualWitnessReport check_dual_witness(const LinearMap &map, const CMatrix &m,
                                     const CMatrix &n, const CMatrix &k) {
  const std::size_t d = map.dim();
  const auto dd = static_cast<Eigen::Index>(d);
  if (m.rows() != dd * dd || m.cols() != dd * dd || n.rows() != dd ||
      n.cols() != dd || k.rows() != dd || k.cols() != dd)
    throw DimensionError("check_dual_witness: witness shapes do not match map");
  DualWitnessReport r;
  const CMatrix id = identity(d);
  const CMatrix hm = hermitian_part(m);
  r.plus_min_eig = min_eigenvalue(hm + tensor_product(hermitian_part(n), id));
  r.minus_min_eig = min_eigenvalue(-hm + tensor_product(hermitian_part(k), id));
  r.trace_residual =
      std::max(std::abs(n.trace() - 1.0), std::abs(k.trace() - 1.0));
  r.objective = (hm.cwiseProduct(map.choi().transpose())).sum().real();
  r.feasible = is_hermitian(m) && is_hermitian(n) && is_hermitian(k) &&
               r.plus_min_eig >= -1e-8 && r.minus_min_eig >= -1e-8 &&
               r.trace_residual <= 1e-8;
  return r;
}

CertificateReport validate_certificate(const LinearMap &map,
                                       const NuCertificate &cert) {
  CertificateReport r;
  const std::size_t d = map.dim();
  const auto n = static_cast<Eigen::Index>(d * d);
  if (cert.j1.rows() != n || cert.j1.cols() != n || cert.j2.rows() != n ||
      cert.j2.cols() != n) {
    r.failures.push_back("Choi blocks have the wrong shape");
    return r;
  }
  const CMatrix id = identity(d);
  r.gamma_residual = std::abs(std::exp2(cert.nu) - (cert.p1 + cert.p2));
  r.tp_residual = std::abs(cert.p1 - cert.p2 - 1.0);
  r.difference_residual = max_abs(map.choi() - cert.j1 + cert.j2);
  r.marginal_residual = std::max(
      max_abs(partial_trace(cert.j1, d, d, Subsystem::first) - cert.p1 * id),
      max_abs(partial_trace(cert.j2, d, d, Subsystem::first) - cert.p2 * id));
  r.primal_min_eig = std::min(min_eigenvalue(hermitian_part(cert.j1)),
                              min_eigenvalue(hermitian_part(cert.j2)));

  try {
    const DualWitnessReport w =
        check_dual_witness(map, cert.dual_m, cert.dual_n, cert.dual_k);
    r.dual_min_eig = std::min(w.plus_min_eig, w.minus_min_eig);
    r.dual_trace_residual = w.trace_residual;
    r.gap = std::abs(cert.p1 + cert.p2 - w.objective) /
            std::max(1.0, std::abs(cert.p1 + cert.p2));
  } catch (const DimensionError &) {
    r.failures.push_back("dual witness has the wrong shape");
  }

  auto check = [&](bool ok, const std::string &what) {
    if (!ok)
      r.failures.push_back(what);
  };
  check(r.gamma_residual <= 1e-6, "2^nu differs from p1 + p2");
  check(r.tp_residual <= 1e-6, "p1 - p2 differs from 1");
  check(r.difference_residual <= 1e-7,
        "J1 - J2 differs from the Choi operator");
  check(r.marginal_residual <= 1e-7, "tr_B J_i differs from p_i I");
  check(r.primal_min_eig >= -1e-8, "J1 or J2 is not PSD");
  check(r.dual_min_eig >= -1e-8, "dual witness violates a PSD constraint");
  check(r.dual_trace_residual <= 1e-8, "dual witness traces differ from 1");
  check(r.gap <= 1e-6, "duality gap exceeds 1e-6");
  r.pass = r.failures.empty();
  return r;
}

} // namespace pim

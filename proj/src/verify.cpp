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

#include "pim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "pim/error.hpp"
#include "pim/implementability.hpp"
#include "pim/mitigation.hpp"
#include "pim/sdp.hpp"

namespace pim {

namespace {

constexpr int kSamples = 20;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Running maximum of a residual over a set of instances.
class Check {
public:
  Check(std::string suite, std::string name, double tolerance)
      : suite_(std::move(suite)), name_(std::move(name)), tol_(tolerance) {}

  void add(double residual) {
    if (std::isnan(residual))
      residual = kInf;
    worst_ = std::max(worst_, residual);
  }

  // Evaluates f, recording a failure if it throws.
  void add(const std::function<double()> &f) {
    try {
      add(f());
    } catch (const std::exception &) {
      add(kInf);
    }
  }

  CheckResult result() const {
    return {suite_, name_, worst_ <= tol_, worst_, tol_};
  }

private:
  std::string suite_, name_;
  double tol_;
  double worst_ = -kInf;
};

CMatrix real_matrix(std::initializer_list<double> v, Eigen::Index n) {
  CMatrix m(n, n);
  Eigen::Index i = 0;
  for (double x : v) {
    m(i / n, i % n) = x;
    ++i;
  }
  return m;
}

CMatrix random_unitary(std::size_t d, Rng &rng) {
  return random_kraus(d, d, 1, rng).front();
}

LinearMap random_channel(std::size_t d, Rng &rng) {
  const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * 4.0);
  return choi_from_kraus(random_cptp(d, k, rng));
}

double gamma_of(const LinearMap &m) { return nu(m).gamma; }

std::vector<LinearMap> random_hptp_maps(Rng &rng) {
  std::vector<LinearMap> maps;
  for (int i = 0; i < kSamples; ++i)
    maps.push_back(random_hptp(2, rng));
  return maps;
}

// Inverses of a few zoo channels plus seeded random HPTP maps.
std::vector<LinearMap> test_maps(Rng &rng) {
  std::vector<LinearMap> maps;
  for (double e : {0.1, 0.5, 0.9})
    maps.push_back(inverse_map(named_channel({Family::amplitude_damping, e})));
  for (double e : {0.1, 0.25, 0.4})
    maps.push_back(inverse_map(named_channel({Family::dephasing_qubit, e})));
  for (std::size_t d : {2, 3})
    maps.push_back(
        inverse_map(named_channel({Family::depolarizing, 0.5, 0, 0, d})));
  maps.push_back(inverse_map(
      named_channel({Family::generalized_amplitude_damping, 0, 0.5, 0.25})));
  maps.push_back(inverse_map(
      named_channel({Family::generalized_amplitude_damping, 0, 0.7, 0.8})));
  for (LinearMap &m : random_hptp_maps(rng))
    maps.push_back(std::move(m));
  return maps;
}

std::vector<CheckResult> analytic_suite(const VerifyOptions &) {
  const char *suite = "analytic";
  std::vector<Check> per_family;
  for (Family f :
       {Family::amplitude_damping, Family::generalized_amplitude_damping,
        Family::depolarizing, Family::dephasing_qubit})
    per_family.emplace_back(suite, std::string(family_name(f)), 1e-5);
  for (const NamedFamily &f : analytic_grid())
    per_family[static_cast<std::size_t>(f.family)].add([&] {
      const LinearMap inv = inverse_map(named_channel(f));
      return std::abs(nu(inv).nu - analytic_nu_inverse(f));
    });

  Check saturation(suite, "mixed_unitary_saturation", 1e-6);
  Rng rng(0x5a7);
  for (std::size_t d : {2, 3})
    for (double e : {0.2, 0.6})
      saturation.add([&] {
        const LinearMap m =
            choi_from_mixed_unitary(depolarizing_inverse_spec(d, e));
        return std::abs(gamma_of(m) - trace_norm_bounds(m).lower);
      });
  for (int i = 0; i < 5; ++i)
    saturation.add([&] {
      // Random signed weights on the qubit Pauli group.
      MixedUnitarySpec s{2, {}};
      double sum = 0.0;
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t z = 0; z < 2; ++z) {
          const double r = 2.0 * rng.uniform() - 0.5;
          s.terms.push_back({r, weyl_operator(2, x, z)});
          sum += r;
        }
      for (MixedUnitaryTerm &t : s.terms)
        t.coefficient /= sum;
      const LinearMap m = choi_from_mixed_unitary(s);
      return std::abs(gamma_of(m) - trace_norm_bounds(m).lower);
    });

  Check limit(suite, "amplitude_damping_limit_ratio", 0.0);
  limit.add([] {
    const LinearMap inv =
        inverse_map(named_channel({Family::amplitude_damping, 0.95}));
    return 0.9 - gamma_of(inv) / trace_norm_bounds(inv).upper;
  });

  std::vector<CheckResult> out;
  for (const Check &c : per_family)
    out.push_back(c.result());
  out.push_back(saturation.result());
  out.push_back(limit.result());
  return out;
}

std::vector<CheckResult> duality_suite(const VerifyOptions &opts) {
  const char *suite = "duality";
  Rng rng(opts.seed);
  Check gap(suite, "primal_dual_agreement", 1e-6);
  Check cert(suite, "certificate_valid", 0.0);
  for (const LinearMap &m : test_maps(rng)) {
    gap.add([&] {
      const sdp::SdpSolution p = sdp::solve(sdp::build_primal_nu(m).problem);
      const sdp::SdpSolution d = sdp::solve(sdp::build_dual_nu(m).problem);
      if (p.status != sdp::Status::optimal || d.status != sdp::Status::optimal)
        return kInf;
      return std::abs(p.primal_value - d.primal_value);
    });
    cert.add([&] { return validate_certificate(m, nu(m)).pass ? 0.0 : 1.0; });
  }

  Check ad(suite, "amplitude_damping_witness", 1e-9);
  const DualWitness w = damping_dual_witness();
  for (int i = 1; i <= 18; ++i)
    ad.add([&] {
      const double e = 0.05 * i;
      const LinearMap inv =
          inverse_map(named_channel({Family::amplitude_damping, e}));
      const DualWitnessReport r = check_dual_witness(inv, w.m, w.n, w.k);
      return r.feasible ? std::abs(r.objective - (1 + e) / (1 - e)) : kInf;
    });

  Check gad(suite, "generalized_damping_witness", 1e-9);
  const DualWitness flipped = flipped_damping_dual_witness();
  for (const NamedFamily &f : analytic_grid()) {
    if (f.family != Family::generalized_amplitude_damping)
      continue;
    gad.add([&] {
      const DualWitness &u = f.n <= 0.5 ? w : flipped;
      const DualWitnessReport r =
          check_dual_witness(inverse_map(named_channel(f)), u.m, u.n, u.k);
      return r.feasible ? std::abs(r.objective - analytic_gamma_inverse(f))
                        : kInf;
    });
  }

  Check cptn(suite, "cptn_relaxation", 1e-6);
  for (const LinearMap &m : random_hptp_maps(rng))
    cptn.add([&] {
      const sdp::SdpSolution r = sdp::solve(sdp::build_cptn_nu(m).problem);
      if (r.status != sdp::Status::optimal)
        return kInf;
      return std::abs(r.primal_value - gamma_of(m));
    });

  return {gap.result(), cert.result(), ad.result(), gad.result(),
          cptn.result()};
}

std::vector<CheckResult> properties_suite(const VerifyOptions &opts) {
  const char *suite = "properties";
  Rng rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);

  Check faithful(suite, "faithfulness", 1e-6);
  for (int i = 0; i < kSamples; ++i)
    faithful.add([&] { return nu(random_channel(2, rng)).nu; });

  Check additive(suite, "additivity", 1e-4);
  Check subadd(suite, "subadditivity", 1e-6);
  Check invariant(suite, "unitary_invariance", 1e-6);
  Check monotone(suite, "superchannel_monotonicity", 1e-6);
  for (int i = 0; i < kSamples; ++i) {
    const LinearMap a = random_hptp(2, rng);
    const LinearMap b = random_hptp(2, rng);
    const CMatrix u = random_unitary(2, rng);
    const CMatrix v = random_unitary(2, rng);
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * 3.0);
    const RectangularMap pre =
        rectangular_from_kraus(random_kraus(2, 4, k, rng), 2, 4);
    const RectangularMap post =
        rectangular_from_kraus(random_kraus(4, 2, 2 * k, rng), 4, 2);
    double na = 0.0, nb = 0.0;
    try {
      na = nu(a).nu;
      nb = nu(b).nu;
    } catch (const std::exception &) {
      na = nb = kNan;
    }
    additive.add([&] { return std::abs(nu(tensor(a, b)).nu - na - nb); });
    subadd.add([&] { return nu(compose(a, b)).nu - na - nb; });
    invariant.add([&] {
      const LinearMap w =
          compose(unitary_channel(u), compose(a, unitary_channel(v)));
      return std::abs(nu(w).nu - na);
    });
    monotone.add([&] { return nu(apply_superchannel(a, pre, post)).nu - na; });
  }

  Check bounds(suite, "trace_norm_bounds", 1e-6);
  Check robust(suite, "robustness_equivalence", 1e-6);
  Check recombine(suite, "decomposition_recombination", 1e-7);
  Check canonical(suite, "canonical_cost_dominates", 1e-9);
  for (const LinearMap &m : test_maps(rng)) {
    NuCertificate c;
    try {
      c = nu(m);
    } catch (const std::exception &) {
      c.gamma = kNan;
    }
    bounds.add([&] {
      const TraceNormBounds b = trace_norm_bounds(m);
      return std::max(b.lower - c.gamma, c.gamma - b.upper);
    });
    robust.add([&] {
      const sdp::SdpSolution full =
          sdp::solve(sdp::build_robustness_full(m).problem);
      if (full.status != sdp::Status::optimal)
        return kInf;
      const double r = robustness(m);
      return std::max(std::abs(c.gamma - (2.0 * r + 1.0)),
                      std::abs(full.primal_value - r));
    });
    recombine.add([&] {
      const double opt =
          max_abs(decompose_two_channel(c).recombine().choi() - m.choi());
      const double can =
          max_abs(canonical_decomposition(m).recombine().choi() - m.choi());
      return std::max(opt, can);
    });
    canonical.add([&] {
      return decompose_two_channel(c).total_cost() -
             canonical_decomposition(m).total_cost();
    });
  }

  return {faithful.result(),  additive.result(),  subadd.result(),
          invariant.result(), monotone.result(),  bounds.result(),
          robust.result(),    recombine.result(), canonical.result()};
}

std::vector<CheckResult> mitigation_suite(const VerifyOptions &opts) {
  const char *suite = "mitigation";
  Rng rng(opts.seed + 17);

  Check shots(suite, "shot_formula", 0.0);
  shots.add([] {
    const bool ok = hoeffding_shots(1.0, 0.1, 0.05) == 738 &&
                    hoeffding_shots(2.0, 0.1, 0.05) == 2952;
    return ok ? 0.0 : 1.0;
  });

  struct Setup {
    LinearMap noise;
    std::size_t qubits;
  };
  const LinearMap ad = named_channel({Family::amplitude_damping, 0.3});
  const LinearMap dephase = named_channel({Family::dephasing_qubit, 0.25});
  const std::vector<Setup> setups = {
      {LinearMap::identity(2), 1},
      {ad, 1},
      {dephase, 1},
      {named_channel({Family::depolarizing, 0.2, 0, 0, 2}), 1},
      {named_channel({Family::generalized_amplitude_damping, 0, 0.4, 0.3}), 1},
      {tensor(dephase, ad), 2},
      {named_channel({Family::depolarizing, 0.1, 0, 0, 4}), 2},
  };

  Check unbiased(suite, "unbiasedness", 1e-10);
  for (const Setup &s : setups) {
    const std::size_t d = s.noise.dim();
    QuasiDecomposition opt, can;
    try {
      const LinearMap inv = inverse_map(s.noise);
      opt = decompose_two_channel(nu(inv));
      can = canonical_decomposition(inv);
    } catch (const std::exception &) {
      unbiased.add(kInf);
      continue;
    }
    for (int trial = 0; trial < 3; ++trial) {
      const CMatrix rho = random_pure_state(d, rng);
      DiagObservable obs = parity_observable(s.qubits);
      if (trial > 0)
        for (double &v : obs.values)
          v = 2.0 * rng.uniform() - 1.0;
      const double ideal = ideal_expectation(rho, obs);
      unbiased.add([&] {
        return std::max(
            std::abs(exact_estimator_mean(rho, s.noise, obs, opt) - ideal),
            std::abs(exact_estimator_mean(rho, s.noise, obs, can) - ideal));
      });
    }
  }

  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const DiagObservable parity = parity_observable(1);
  MitigationPlan p;
  try {
    p = plan(decompose_two_channel(nu(inverse_map(dephase))), 0.05, 0.05);
  } catch (const std::exception &) {
    return {shots.result(), unbiased.result(),
            Check(suite, "plan", 0.0).result()};
  }

  Check bounded(suite, "boundedness", 1e-12);
  bounded.add([&] {
    RunOptions o;
    o.seed = opts.seed;
    o.shots = 20000;
    o.record_shots = true;
    double worst = -kInf;
    for (const ShotRecord &r : run(zero, dephase, parity, p, o).per_shot)
      worst = std::max(worst, std::abs(r.x) - p.gamma);
    return worst;
  });

  Check coverage(suite, "hoeffding_coverage", 0.03);
  coverage.add([&] {
    int failures = 0;
    const int reps = 200;
    for (int i = 0; i < reps; ++i) {
      RunOptions o;
      o.seed = substream_seed(opts.seed, 1000 + static_cast<std::uint64_t>(i));
      o.threads = opts.threads;
      if (std::abs(run(zero, dephase, parity, p, o).estimate - 1.0) > p.delta)
        ++failures;
    }
    return static_cast<double>(failures) / reps - p.eps_fail;
  });

  Check deterministic(suite, "thread_determinism", 0.0);
  deterministic.add([&] {
    RunOptions o;
    o.seed = opts.seed;
    o.shots = 50000;
    o.record_shots = true;
    const MitigationReport a = run(zero, ad, parity, p, o);
    o.threads = std::max(2u, opts.threads);
    const MitigationReport b = run(zero, ad, parity, p, o);
    bool same =
        a.estimate == b.estimate && a.per_shot.size() == b.per_shot.size();
    for (std::size_t i = 0; same && i < a.per_shot.size(); ++i)
      same = a.per_shot[i].x == b.per_shot[i].x &&
             a.per_shot[i].outcome == b.per_shot[i].outcome;
    return same ? 0.0 : 1.0;
  });

  return {shots.result(), unbiased.result(), bounded.result(),
          coverage.result(), deterministic.result()};
}

} // namespace

std::string_view suite_name(Suite s) {
  switch (s) {
  case Suite::properties:
    return "properties";
  case Suite::analytic:
    return "analytic";
  case Suite::duality:
    return "duality";
  case Suite::mitigation:
    return "mitigation";
  case Suite::all:
    return "all";
  }
  return "";
}

Suite suite_from_name(std::string_view name) {
  for (Suite s : {Suite::properties, Suite::analytic, Suite::duality,
                  Suite::mitigation, Suite::all})
    if (suite_name(s) == name)
      return s;
  throw ParseError("unknown suite '" + std::string(name) + "'");
}

std::vector<NamedFamily> analytic_grid() {
  std::vector<NamedFamily> grid;
  for (int i = 1; i <= 18; ++i) {
    const double e = 0.05 * i;
    grid.push_back({Family::amplitude_damping, e});
    grid.push_back({Family::depolarizing, e, 0, 0, 2});
    grid.push_back({Family::depolarizing, e, 0, 0, 3});
  }
  for (int i = 1; i <= 9; ++i)
    grid.push_back({Family::dephasing_qubit, 0.05 * i});
  for (double y : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (double n : {0.0, 0.25, 0.5, 0.75, 1.0})
      grid.push_back({Family::generalized_amplitude_damping, 0, y, n});
  return grid;
}

DualWitness damping_dual_witness() {
  return {real_matrix({1, 0, 1, 0, 0, 1, 0, 1, 1, 0, -2, 0, 0, 1, 0, 0}, 4),
          real_matrix({-1, -1, -1, 2}, 2), real_matrix({1, 1, 1, 0}, 2)};
}

DualWitness flipped_damping_dual_witness() {
  const CMatrix x = real_matrix({0, 1, 1, 0}, 2);
  const CMatrix xx = tensor_product(x, x);
  const DualWitness w = damping_dual_witness();
  return {xx * w.m * xx, x * w.n * x, x * w.k * x};
}

std::vector<CheckResult> run_suite(Suite s, const VerifyOptions &opts) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> r) {
    out.insert(out.end(), r.begin(), r.end());
  };
  if (s == Suite::analytic || s == Suite::all)
    append(analytic_suite(opts));
  if (s == Suite::duality || s == Suite::all)
    append(duality_suite(opts));
  if (s == Suite::properties || s == Suite::all)
    append(properties_suite(opts));
  if (s == Suite::mitigation || s == Suite::all)
    append(mitigation_suite(opts));
  return out;
}

} // namespace pim

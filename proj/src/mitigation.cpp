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

#include "pim/mitigation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include "pim/error.hpp"
#include "pim/random.hpp"

namespace pim {

namespace {

constexpr double kClampTol = 1e-9;

// Cumulative distribution; the last entry is exactly 1.
std::vector<double> cumulative(const std::vector<double> &weights) {
  std::vector<double> c(weights.size());
  double total = 0.0;
  for (double w : weights)
    total += w;
  double run = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    run += weights[i];
    c[i] = run / total;
  }
  if (!c.empty())
    c.back() = 1.0;
  return c;
}

std::size_t draw(const std::vector<double> &cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return it == cdf.end() ? cdf.size() - 1
                         : static_cast<std::size_t>(it - cdf.begin());
}

void require_state(const CMatrix &rho, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  if (rho.rows() != n || rho.cols() != n)
    throw DimensionError("state is " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + ", expected " +
                         std::to_string(d) + "x" + std::to_string(d));
  if (!is_hermitian(rho, kTraceTol))
    throw DomainError("state is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kTraceTol)
    throw DomainError("state does not have unit trace");
  if (min_eigenvalue(hermitian_part(rho)) < -kTraceTol)
    throw DomainError("state is not positive semidefinite");
}

void require_setup(const CMatrix &rho, const LinearMap &noise,
                   const DiagObservable &obs) {
  obs.validate();
  if (noise.dim() != obs.dim())
    throw DimensionError("noise acts on dimension " +
                         std::to_string(noise.dim()) + ", observable on " +
                         std::to_string(obs.dim()));
  const MapClass c = classify(noise);
  if (!c.is_cp || !c.is_tp)
    throw DomainError("noise is not a CPTP map");
  require_state(rho, noise.dim());
}

// Born-rule distribution of the diagonal, with small negative entries
// clamped to zero.
std::vector<double> outcome_weights(const CMatrix &sigma,
                                    std::uint64_t &clamped) {
  std::vector<double> w(static_cast<std::size_t>(sigma.rows()));
  for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
    const double v = sigma(i, i).real();
    if (v < -kClampTol)
      ++clamped;
    w[static_cast<std::size_t>(i)] = std::max(0.0, v);
  }
  return w;
}

// Channel outputs on the noisy state, one distribution per term.
struct Sampler {
  std::vector<double> term_cdf;
  std::vector<std::vector<double>> outcome_cdf;
  std::vector<int> sign;
  double gamma = 1.0;
  std::uint64_t clamped = 0;
};

Sampler make_sampler(const CMatrix &noisy, const QuasiDecomposition &q,
                     std::size_t d) {
  Sampler s;
  std::vector<double> w;
  for (const QuasiTerm &t : q.terms) {
    if (t.channel.dim() != d)
      throw DimensionError("decomposition acts on dimension " +
                           std::to_string(t.channel.dim()) + ", expected " +
                           std::to_string(d));
    w.push_back(std::abs(t.eta));
    s.sign.push_back(quasi_sign(t.eta));
    const CMatrix out = pim::apply(t.channel, noisy);
    s.outcome_cdf.push_back(cumulative(outcome_weights(out, s.clamped)));
  }
  s.term_cdf = cumulative(w);
  s.gamma = q.total_cost();
  return s;
}

} // namespace

void DiagObservable::validate() const {
  if (n_qubits > 30)
    throw DomainError("observable: too many qubits");
  if (values.size() != dim())
    throw DomainError("observable: expected " + std::to_string(dim()) +
                      " values, got " + std::to_string(values.size()));
  for (double v : values)
    if (!(v >= -1.0 && v <= 1.0))
      throw DomainError("observable: value " + std::to_string(v) +
                        " outside [-1, 1]");
}

DiagObservable parity_observable(std::size_t n_qubits) {
  DiagObservable a{n_qubits, {}};
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n_qubits); ++x)
    a.values.push_back(std::popcount(x) % 2 == 0 ? 1.0 : -1.0);
  return a;
}

std::uint64_t hoeffding_shots(double gamma, double delta, double eps_fail) {
  if (!(gamma >= 1.0 - 1e-9) || !std::isfinite(gamma))
    throw DomainError("shot planning: total cost must be at least 1");
  if (!(delta > 0.0))
    throw DomainError("shot planning: delta must be positive");
  if (!(eps_fail > 0.0 && eps_fail < 1.0))
    throw DomainError("shot planning: eps_fail must lie in (0, 1)");
  const double m =
      2.0 * gamma * gamma * std::log(2.0 / eps_fail) / (delta * delta);
  if (m > 1e18)
    throw DomainError("shot planning: shot count overflows");
  return static_cast<std::uint64_t>(std::ceil(m));
}

MitigationPlan plan(QuasiDecomposition decomposition, double delta,
                    double eps_fail) {
  if (decomposition.terms.empty())
    throw DomainError("plan: empty decomposition");
  MitigationPlan p;
  p.gamma = decomposition.total_cost();
  p.nu = std::max(0.0, std::log2(p.gamma));
  p.shots = hoeffding_shots(p.gamma, delta, eps_fail);
  p.delta = delta;
  p.eps_fail = eps_fail;
  p.decomposition = std::move(decomposition);
  return p;
}

int quasi_sign(double eta) { return eta > 0.0 ? 1 : -1; }

MitigationReport run(const CMatrix &rho, const LinearMap &noise,
                     const DiagObservable &observable,
                     const MitigationPlan &plan, const RunOptions &opts) {
  require_setup(rho, noise, observable);
  if (plan.decomposition.terms.empty())
    throw DomainError("run: plan has an empty decomposition");
  const CMatrix noisy = pim::apply(noise, rho);
  const Sampler s = make_sampler(noisy, plan.decomposition, noise.dim());

  const std::uint64_t shots = opts.shots.value_or(plan.shots);
  const std::uint64_t shards = (shots + kShardSize - 1) / kShardSize;
  std::vector<std::vector<ShotRecord>> results(shards);

  auto run_shard = [&](std::uint64_t k) {
    Rng rng(substream_seed(opts.seed, k));
    const std::uint64_t begin = k * kShardSize;
    const std::uint64_t end =
        std::min<std::uint64_t>(shots, begin + kShardSize);
    std::vector<ShotRecord> &out = results[k];
    out.reserve(end - begin);
    for (std::uint64_t i = begin; i < end; ++i) {
      ShotRecord r;
      r.term = draw(s.term_cdf, rng.uniform());
      r.outcome = draw(s.outcome_cdf[r.term], rng.uniform());
      r.sign = s.sign[r.term];
      r.x = s.gamma * r.sign * observable.values[r.outcome];
      out.push_back(r);
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(opts.threads,
                                      static_cast<unsigned>(
                                          std::max<std::uint64_t>(shards, 1))));
  if (threads == 1) {
    for (std::uint64_t k = 0; k < shards; ++k)
      run_shard(k);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::uint64_t k = next++; k < shards; k = next++)
          run_shard(k);
      });
  }

  MitigationReport rep;
  rep.shots = shots;
  rep.seed = opts.seed;
  rep.clamped_entries = s.clamped;
  double sum = 0.0;
  for (const auto &shard : results)
    for (const ShotRecord &r : shard)
      sum += r.x;
  rep.estimate = shots ? sum / static_cast<double>(shots) : 0.0;
  if (opts.record_shots) {
    rep.per_shot.reserve(shots);
    for (auto &shard : results)
      rep.per_shot.insert(rep.per_shot.end(), shard.begin(), shard.end());
  }
  return rep;
}

double exact_estimator_mean(const CMatrix &rho, const LinearMap &noise,
                            const DiagObservable &observable,
                            const QuasiDecomposition &decomposition) {
  if (observable.n_qubits > kMaxEnumerationQubits)
    throw DomainError("exact_estimator_mean: at most " +
                      std::to_string(kMaxEnumerationQubits) + " qubits");
  require_setup(rho, noise, observable);
  const CMatrix noisy = pim::apply(noise, rho);
  double mean = 0.0;
  std::uint64_t clamped = 0;
  for (const QuasiTerm &t : decomposition.terms) {
    if (t.channel.dim() != noise.dim())
      throw DimensionError("exact_estimator_mean: decomposition dimension");
    const std::vector<double> w =
        outcome_weights(pim::apply(t.channel, noisy), clamped);
    double total = 0.0, acc = 0.0;
    for (std::size_t x = 0; x < w.size(); ++x) {
      total += w[x];
      acc += w[x] * observable.values[x];
    }
    if (total > 0.0)
      mean += t.eta * acc / total;
  }
  return mean;
}

double noisy_expectation(const CMatrix &rho, const LinearMap &noise,
                         const DiagObservable &observable) {
  require_setup(rho, noise, observable);
  return ideal_expectation(pim::apply(noise, rho), observable);
}

double ideal_expectation(const CMatrix &rho, const DiagObservable &observable) {
  observable.validate();
  if (rho.rows() != static_cast<Eigen::Index>(observable.dim()))
    throw DimensionError("ideal_expectation: dimension mismatch");
  double e = 0.0;
  for (std::size_t x = 0; x < observable.values.size(); ++x)
    e +=
        rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real() *
        observable.values[x];
  return e;
}

} // namespace pim

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

#include "pim/pim.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "pim/error.hpp"
#include "pim/implementability.hpp"
#include "pim/mitigation.hpp"
#include "pim/serialization.hpp"
#include "pim/verify.hpp"

struct pim_map {
  pim::LinearMap map;
};

struct pim_certificate {
  pim::LinearMap map;
  pim::NuCertificate cert;
  pim::TraceNormBounds bounds;
};

struct pim_decomposition {
  pim::QuasiDecomposition q;
  std::string method;
};

namespace {

thread_local std::string last_error;

pim_status fail(pim_status s, const std::string &msg) {
  last_error = msg;
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F> pim_status guarded(F &&f) {
  try {
    last_error.clear();
    return f();
  } catch (const pim::Error &e) {
    return fail(static_cast<pim_status>(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(PIM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(PIM_ERR_INTERNAL, e.what());
  }
}

char *copy_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define PIM_REQUIRE(cond)                                                      \
  do {                                                                         \
    if (!(cond))                                                               \
      return fail(PIM_ERR_DOMAIN, "null argument: " #cond);                    \
  } while (0)

std::string_view method_name(pim_method m) {
  return m == PIM_METHOD_CANONICAL ? "canonical" : "optimal";
}

pim::QuasiDecomposition decompose(const pim::LinearMap &map, pim_method m,
                                  double tol) {
  if (m == PIM_METHOD_CANONICAL)
    return pim::canonical_decomposition(map);
  if (m != PIM_METHOD_OPTIMAL)
    throw pim::DomainError("unknown decomposition method");
  return pim::decompose_two_channel(pim::nu(map, tol));
}

} // namespace

extern "C" {

const char *pim_version(void) { return "1.0.0"; }

const char *pim_last_error(void) { return last_error.c_str(); }

void pim_string_free(char *s) { std::free(s); }

pim_status pim_map_from_json(const char *json, pim_map **out) {
  PIM_REQUIRE(json && out);
  return guarded([&] {
    const pim::ChannelSpec spec =
        pim::channel_spec_from_json(pim::parse_json(json));
    *out = new pim_map{pim::build_map(spec)};
    return PIM_OK;
  });
}

pim_status pim_map_dim(const pim_map *map, size_t *out) {
  PIM_REQUIRE(map && out);
  *out = map->map.dim();
  return PIM_OK;
}

void pim_map_free(pim_map *map) { delete map; }

pim_status pim_channel_normalize(const char *json, char **out) {
  PIM_REQUIRE(json && out);
  return guarded([&] {
    const pim::ChannelSpec spec =
        pim::channel_spec_from_json(pim::parse_json(json));
    *out = copy_string(pim::dump(pim::channel_spec_to_json(spec)));
    return PIM_OK;
  });
}

pim_status pim_nu(const pim_map *map, double tol, pim_certificate **out) {
  PIM_REQUIRE(map && out);
  return guarded([&] {
    pim::NuCertificate c = pim::nu(map->map, tol);
    *out = new pim_certificate{map->map, std::move(c),
                               pim::trace_norm_bounds(map->map)};
    return PIM_OK;
  });
}

pim_status pim_certificate_values(const pim_certificate *cert,
                                  pim_nu_values *out) {
  PIM_REQUIRE(cert && out);
  const pim::NuCertificate &c = cert->cert;
  *out = {c.nu,
          c.gamma,
          c.p1,
          c.p2,
          c.dual_value,
          c.gap,
          cert->bounds.lower,
          cert->bounds.upper};
  return PIM_OK;
}

pim_status pim_certificate_check(const pim_certificate *cert, int *valid) {
  PIM_REQUIRE(cert && valid);
  return guarded([&] {
    *valid = pim::validate_certificate(cert->map, cert->cert).pass ? 1 : 0;
    return PIM_OK;
  });
}

pim_status pim_certificate_to_json(const pim_certificate *cert, char **out) {
  PIM_REQUIRE(cert && out);
  return guarded([&] {
    *out = copy_string(
        pim::dump(pim::certificate_to_json(cert->cert, cert->bounds)));
    return PIM_OK;
  });
}

void pim_certificate_free(pim_certificate *cert) { delete cert; }

pim_status pim_trace_norm_bounds(const pim_map *map, double *lower,
                                 double *upper) {
  PIM_REQUIRE(map && lower && upper);
  return guarded([&] {
    const pim::TraceNormBounds b = pim::trace_norm_bounds(map->map);
    *lower = b.lower;
    *upper = b.upper;
    return PIM_OK;
  });
}

pim_status pim_decompose(const pim_map *map, pim_method method, double tol,
                         pim_decomposition **out) {
  PIM_REQUIRE(map && out);
  return guarded([&] {
    *out = new pim_decomposition{decompose(map->map, method, tol),
                                 std::string(method_name(method))};
    return PIM_OK;
  });
}

pim_status pim_decomposition_total_cost(const pim_decomposition *q,
                                        double *out) {
  PIM_REQUIRE(q && out);
  *out = q->q.total_cost();
  return PIM_OK;
}

pim_status pim_decomposition_size(const pim_decomposition *q, size_t *out) {
  PIM_REQUIRE(q && out);
  *out = q->q.terms.size();
  return PIM_OK;
}

pim_status pim_decomposition_recombination_error(const pim_decomposition *q,
                                                 const pim_map *map,
                                                 double *out) {
  PIM_REQUIRE(q && map && out);
  return guarded([&] {
    const pim::LinearMap r = q->q.recombine();
    if (r.dim() != map->map.dim())
      throw pim::DimensionError("decomposition and map dimensions differ");
    *out = pim::max_abs(r.choi() - map->map.choi());
    return PIM_OK;
  });
}

pim_status pim_decomposition_to_json(const pim_decomposition *q, char **out) {
  PIM_REQUIRE(q && out);
  return guarded([&] {
    *out = copy_string(pim::dump(pim::decomposition_to_json(q->q, q->method)));
    return PIM_OK;
  });
}

pim_status pim_decomposition_from_json(const char *json,
                                       pim_decomposition **out) {
  PIM_REQUIRE(json && out);
  return guarded([&] {
    const pim::Json j = pim::parse_json(json);
    pim::QuasiDecomposition q = pim::decomposition_from_json(j);
    const auto it = j.find("method");
    std::string method =
        it != j.end() && it->is_string() ? it->get<std::string>() : "unknown";
    *out = new pim_decomposition{std::move(q), std::move(method)};
    return PIM_OK;
  });
}

void pim_decomposition_free(pim_decomposition *q) { delete q; }

void pim_mitigate_options_init(pim_mitigate_options *opts) {
  if (!opts)
    return;
  opts->delta = 0.05;
  opts->eps_fail = 0.05;
  opts->seed = 0;
  opts->shots = 0;
  opts->threads = 1;
  opts->method = PIM_METHOD_OPTIMAL;
  opts->tol = pim::kDefaultSolverTol;
  opts->record_shots = 0;
}

pim_status pim_mitigate(const char *noise_json, const char *state_json,
                        const char *observable_json,
                        const pim_mitigate_options *opts, char **out) {
  PIM_REQUIRE(noise_json && state_json && observable_json && opts && out);
  return guarded([&] {
    const pim::LinearMap noise = pim::build_map(
        pim::channel_spec_from_json(pim::parse_json(noise_json)));
    const pim::CMatrix rho = pim::state_from_json(pim::parse_json(state_json));
    const pim::DiagObservable obs =
        pim::observable_from_json(pim::parse_json(observable_json));
    const pim::MapClass c = pim::classify(noise);
    if (!c.is_cp || !c.is_tp)
      throw pim::DomainError("noise is not a CPTP map");
    const pim::LinearMap inverse = pim::inverse_map(noise);
    const pim::MitigationPlan plan =
        pim::plan(decompose(inverse, opts->method, opts->tol), opts->delta,
                  opts->eps_fail);

    pim::RunOptions run;
    run.seed = opts->seed;
    if (opts->shots > 0)
      run.shots = opts->shots;
    run.threads = opts->threads;
    run.record_shots = opts->record_shots != 0;
    const pim::MitigationReport report = pim::run(rho, noise, obs, plan, run);

    std::optional<double> exact;
    if (obs.n_qubits <= pim::kMaxEnumerationQubits)
      exact = pim::exact_estimator_mean(rho, noise, obs, plan.decomposition);
    const pim::Json j = pim::mitigation_report_to_json(
        plan, report, method_name(opts->method), obs.n_qubits,
        pim::noisy_expectation(rho, noise, obs), exact);
    *out = copy_string(pim::dump(j));
    return PIM_OK;
  });
}

pim_status pim_verify(const char *suite, uint64_t seed, unsigned threads,
                      char **out) {
  PIM_REQUIRE(suite && out);
  return guarded([&] {
    pim::VerifyOptions vo;
    vo.seed = seed;
    vo.threads = threads == 0 ? 1 : threads;
    const pim::Suite s = pim::suite_from_name(suite);
    const std::vector<pim::CheckResult> results = pim::run_suite(s, vo);
    std::string text;
    std::size_t passed = 0;
    for (const pim::CheckResult &r : results) {
      text += pim::dump(pim::check_result_to_json(r)) + "\n";
      passed += r.pass ? 1 : 0;
    }
    const bool ok = passed == results.size();
    text += pim::dump(pim::Json{{"suite", std::string(pim::suite_name(s))},
                                {"summary", true},
                                {"passed", passed},
                                {"failed", results.size() - passed},
                                {"pass", ok}}) +
            "\n";
    *out = copy_string(text);
    if (!ok)
      return fail(PIM_ERR_VERIFICATION, "verification checks failed");
    return PIM_OK;
  });
}

} // extern "C"

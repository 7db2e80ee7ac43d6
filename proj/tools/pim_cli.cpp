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

// pim: implementability and error-mitigation command-line tool.
//
// Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 domain error,
// 4 solver failure, 5 non-invertible noise, 6 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pim/pim.h"

namespace {

using Json = nlohmann::json;

struct Failure {
  pim_status status;
  std::string message;
};

void check(pim_status s) {
  if (s != PIM_OK && s != PIM_ERR_VERIFICATION)
    throw Failure{s, pim_last_error()};
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Failure{PIM_ERR_PARSE, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text << '\n';
  if (!out)
    throw Failure{PIM_ERR_INTERNAL, "cannot write " + path};
}

struct CString {
  char *p = nullptr;
  ~CString() { pim_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct MapDeleter {
  void operator()(pim_map *m) const { pim_map_free(m); }
};
struct CertDeleter {
  void operator()(pim_certificate *c) const { pim_certificate_free(c); }
};
struct DecompDeleter {
  void operator()(pim_decomposition *q) const { pim_decomposition_free(q); }
};
using MapPtr = std::unique_ptr<pim_map, MapDeleter>;
using CertPtr = std::unique_ptr<pim_certificate, CertDeleter>;
using DecompPtr = std::unique_ptr<pim_decomposition, DecompDeleter>;

MapPtr load_map(const std::string &path) {
  pim_map *m = nullptr;
  check(pim_map_from_json(read_file(path).c_str(), &m));
  return MapPtr(m);
}

struct NuArgs {
  std::string channel;
  double tol = 1e-8;
  bool json = false;
};

int cmd_nu(const NuArgs &a) {
  const MapPtr map = load_map(a.channel);
  pim_certificate *raw = nullptr;
  check(pim_nu(map.get(), a.tol, &raw));
  const CertPtr cert(raw);
  pim_nu_values v{};
  check(pim_certificate_values(cert.get(), &v));
  if (a.json) {
    const Json j{{"command", "nu"},
                 {"nu", v.nu},
                 {"gamma", v.gamma},
                 {"p1", v.p1},
                 {"p2", v.p2},
                 {"dual_value", v.dual_value},
                 {"gap", v.gap},
                 {"trace_norm_lower", v.trace_norm_lower},
                 {"trace_norm_upper", v.trace_norm_upper}};
    std::cout << j.dump() << '\n';
  } else {
    std::printf("nu          %.10f\n", v.nu);
    std::printf("2^nu        %.10f\n", v.gamma);
    std::printf("p1          %.10f\n", v.p1);
    std::printf("p2          %.10f\n", v.p2);
    std::printf("gap         %.3e\n", v.gap);
    std::printf("trace norm  %.10f <= 2^nu <= %.10f\n", v.trace_norm_lower,
                v.trace_norm_upper);
  }
  return 0;
}

struct DecomposeArgs {
  std::string channel;
  bool canonical = false;
  std::string out;
  double tol = 1e-8;
  bool json = false;
};

int cmd_decompose(const DecomposeArgs &a) {
  const MapPtr map = load_map(a.channel);
  const pim_method method =
      a.canonical ? PIM_METHOD_CANONICAL : PIM_METHOD_OPTIMAL;
  pim_decomposition *raw = nullptr;
  check(pim_decompose(map.get(), method, a.tol, &raw));
  const DecompPtr q(raw);
  CString text;
  check(pim_decomposition_to_json(q.get(), &text.p));

  double cost = 0.0, error = 0.0;
  std::size_t terms = 0;
  check(pim_decomposition_total_cost(q.get(), &cost));
  check(pim_decomposition_size(q.get(), &terms));
  if (!a.out.empty()) {
    write_file(a.out, text.str());
    // Reload to confirm the file reproduces the map.
    pim_decomposition *back = nullptr;
    check(pim_decomposition_from_json(read_file(a.out).c_str(), &back));
    const DecompPtr reloaded(back);
    check(pim_decomposition_recombination_error(reloaded.get(), map.get(),
                                                &error));
  } else {
    check(pim_decomposition_recombination_error(q.get(), map.get(), &error));
  }

  if (a.json) {
    const Json j{{"command", "decompose"},
                 {"method", a.canonical ? "canonical" : "optimal"},
                 {"total_cost", cost},
                 {"terms", terms},
                 {"recombination_error", error},
                 {"out", a.out.empty() ? Json(nullptr) : Json(a.out)}};
    std::cout << j.dump() << '\n';
    if (a.out.empty())
      std::cout << text.str() << '\n';
  } else {
    if (a.out.empty())
      std::cout << text.str() << '\n';
    std::printf("total cost           %.10f\n", cost);
    std::printf("terms                %zu\n", terms);
    std::printf("recombination error  %.3e\n", error);
  }
  if (error > 1e-7)
    throw Failure{PIM_ERR_SOLVER,
                  "decomposition does not recombine to the map"};
  return 0;
}

struct MitigateArgs {
  std::string noise, state, observable;
  pim_mitigate_options opts{};
  bool canonical = false;
  bool record_shots = false;
};

int cmd_mitigate(MitigateArgs a) {
  const std::string noise = read_file(a.noise);
  const std::string state = read_file(a.state);
  const std::string obs = read_file(a.observable);
  a.opts.method = a.canonical ? PIM_METHOD_CANONICAL : PIM_METHOD_OPTIMAL;
  a.opts.record_shots = a.record_shots ? 1 : 0;
  CString report;
  check(pim_mitigate(noise.c_str(), state.c_str(), obs.c_str(), &a.opts,
                     &report.p));
  std::cout << report.str() << '\n';
  return 0;
}

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

int cmd_verify(const VerifyArgs &a) {
  CString text;
  const pim_status s = pim_verify(a.suite.c_str(), a.seed, a.threads, &text.p);
  check(s);
  std::cout << text.str();
  return s == PIM_OK ? 0 : static_cast<int>(PIM_ERR_VERIFICATION);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Physical implementability and quasiprobability error "
               "mitigation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pim_version()));

  NuArgs nu;
  CLI::App *nu_cmd = app.add_subcommand("nu", "Compute nu and its certificate");
  nu_cmd->add_option("channel", nu.channel, "Channel file")->required();
  nu_cmd->add_option("--tol", nu.tol, "Solver tolerance")
      ->check(CLI::PositiveNumber);
  nu_cmd->add_flag("--json", nu.json, "Print one JSON line");

  DecomposeArgs dec;
  CLI::App *dec_cmd =
      app.add_subcommand("decompose", "Write a quasiprobability decomposition");
  dec_cmd->add_option("channel", dec.channel, "Channel file")->required();
  CLI::Option *canon = dec_cmd->add_flag("--canonical", dec.canonical,
                                         "Closed-form decomposition");
  bool dec_optimal = false;
  dec_cmd->add_flag("--optimal", dec_optimal, "Optimal decomposition (default)")
      ->excludes(canon);
  dec_cmd->add_option("--out", dec.out, "Output file");
  dec_cmd->add_option("--tol", dec.tol, "Solver tolerance")
      ->check(CLI::PositiveNumber);
  dec_cmd->add_flag("--json", dec.json, "Print JSON lines");

  MitigateArgs mit;
  pim_mitigate_options_init(&mit.opts);
  CLI::App *mit_cmd =
      app.add_subcommand("mitigate", "Estimate a noiseless expectation value");
  mit_cmd->add_option("noise", mit.noise, "Noise channel file")->required();
  mit_cmd->add_option("state", mit.state, "State file")->required();
  mit_cmd->add_option("observable", mit.observable, "Observable file")
      ->required();
  mit_cmd->add_option("--delta", mit.opts.delta, "Target precision")
      ->capture_default_str();
  mit_cmd->add_option("--eps-fail", mit.opts.eps_fail, "Failure probability")
      ->capture_default_str();
  mit_cmd->add_option("--seed", mit.opts.seed, "Master seed")
      ->capture_default_str();
  mit_cmd->add_option("--shots", mit.opts.shots, "Override the planned shots");
  mit_cmd->add_option("--threads", mit.opts.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  mit_cmd->add_option("--tol", mit.opts.tol, "Solver tolerance")
      ->check(CLI::PositiveNumber);
  CLI::Option *mit_canon = mit_cmd->add_flag(
      "--canonical", mit.canonical, "Use the closed-form decomposition");
  bool mit_optimal = false;
  mit_cmd->add_flag("--optimal", mit_optimal, "Use the optimal decomposition")
      ->excludes(mit_canon);
  mit_cmd->add_flag("--record-shots", mit.record_shots,
                    "Include per-shot records");
  mit_cmd->add_flag("--json", "Accepted for symmetry; output is always JSON");

  VerifyArgs ver;
  CLI::App *ver_cmd = app.add_subcommand("verify", "Run property suites");
  ver_cmd->add_option("--suite", ver.suite, "Suite to run")
      ->check(CLI::IsMember(
          {"properties", "analytic", "duality", "mitigation", "all"}))
      ->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed, "Seed")->capture_default_str();
  ver_cmd->add_option("--threads", ver.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  ver_cmd->add_flag("--json", "Accepted for symmetry; output is always JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return PIM_ERR_PARSE;
  }

  try {
    if (nu_cmd->parsed())
      return cmd_nu(nu);
    if (dec_cmd->parsed())
      return cmd_decompose(dec);
    if (mit_cmd->parsed())
      return cmd_mitigate(mit);
    return cmd_verify(ver);
  } catch (const Failure &f) {
    std::cerr << "error: " << f.message << '\n';
    return f.status;
  }
}

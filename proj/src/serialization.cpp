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

#include "pim/serialization.hpp"

#include <cmath>
#include <string>

#include "pim/error.hpp"

namespace pim {

namespace {

using Index = Eigen::Index;

const Json &field(const Json &j, const char *key) {
  if (!j.is_object())
    throw ParseError(std::string("expected a JSON object holding '") + key +
                     "'");
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json &j, const char *what) {
  if (!j.is_number())
    throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const Json &j, const char *what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

void check_format(const Json &j) {
  const Json &f = field(j, "format");
  if (!f.is_number_integer() || f.get<int>() != kFormatVersion)
    throw ParseError("unsupported format version " + f.dump() + ", expected " +
                     std::to_string(kFormatVersion));
}

std::string_view kind_name(SpecKind k) {
  switch (k) {
  case SpecKind::kraus:
    return "kraus";
  case SpecKind::choi:
    return "choi";
  case SpecKind::mixed_unitary:
    return "mixed_unitary";
  case SpecKind::named:
    return "named";
  }
  return "";
}

SpecKind kind_from_name(const std::string &s) {
  for (SpecKind k : {SpecKind::kraus, SpecKind::choi, SpecKind::mixed_unitary,
                     SpecKind::named})
    if (kind_name(k) == s)
      return k;
  throw ParseError("unknown channel kind '" + s + "'");
}

CMatrix square_matrix(const Json &j, std::size_t n, const char *what) {
  CMatrix m = matrix_from_json(j);
  if (m.rows() != static_cast<Index>(n) || m.cols() != static_cast<Index>(n))
    throw ParseError(std::string(what) + " is " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + ", expected " +
                     std::to_string(n) + "x" + std::to_string(n));
  return m;
}

Json named_params(const NamedFamily &f) {
  switch (f.family) {
  case Family::amplitude_damping:
  case Family::dephasing_qubit:
    return Json{{"epsilon", f.epsilon}};
  case Family::generalized_amplitude_damping:
    return Json{{"N", f.n}, {"y", f.y}};
  case Family::depolarizing:
    return Json{{"d", f.d}, {"epsilon", f.epsilon}};
  }
  return Json::object();
}

NamedFamily named_from_json(const Json &j, std::size_t dim) {
  NamedFamily f;
  const Json &fam = field(j, "family");
  if (!fam.is_string())
    throw ParseError("'family' must be a string");
  f.family = family_from_name(fam.get<std::string>());
  const Json &p = field(j, "params");
  std::size_t expected = 2;
  switch (f.family) {
  case Family::amplitude_damping:
  case Family::dephasing_qubit:
    f.epsilon = number(field(p, "epsilon"), "epsilon");
    break;
  case Family::generalized_amplitude_damping:
    f.y = number(field(p, "y"), "y");
    f.n = number(field(p, "N"), "N");
    break;
  case Family::depolarizing:
    f.d = count(field(p, "d"), "d");
    f.epsilon = number(field(p, "epsilon"), "epsilon");
    expected = f.d;
    break;
  }
  if (dim != expected)
    throw ParseError("'dim' is " + std::to_string(dim) + " but family " +
                     std::string(family_name(f.family)) +
                     " acts on dimension " + std::to_string(expected));
  return f;
}

std::string outcome_string(std::uint64_t x, std::size_t n_qubits) {
  std::string s(n_qubits, '0');
  for (std::size_t q = 0; q < n_qubits; ++q)
    if ((x >> (n_qubits - 1 - q)) & 1u)
      s[q] = '1';
  return s;
}

} // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json &j) {
  if (j.is_number())
    return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("complex number must be [re, im] or a real number, got " +
                   j.dump());
}

Json matrix_to_json(const CMatrix &m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json &j) {
  if (!j.is_array() || j.empty())
    throw ParseError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    throw ParseError("matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  CMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          complex_from_json(j[r][c]);
  }
  if (!m.allFinite())
    throw ParseError("matrix has non-finite entries");
  return m;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

ChannelSpec channel_spec_from_json(const Json &j) {
  check_format(j);
  ChannelSpec s;
  s.dim = count(field(j, "dim"), "dim");
  if (s.dim == 0)
    throw ParseError("'dim' must be positive");
  const Json &kind = field(j, "kind");
  if (!kind.is_string())
    throw ParseError("'kind' must be a string");
  s.kind = kind_from_name(kind.get<std::string>());
  if (const auto it = j.find("invert"); it != j.end()) {
    if (!it->is_boolean())
      throw ParseError("'invert' must be a boolean");
    s.invert = it->get<bool>();
  }
  switch (s.kind) {
  case SpecKind::kraus: {
    const Json &ops = field(j, "operators");
    if (!ops.is_array() || ops.empty())
      throw ParseError("'operators' must be a non-empty array");
    for (const Json &op : ops)
      s.operators.push_back(square_matrix(op, s.dim, "Kraus operator"));
    break;
  }
  case SpecKind::choi:
    s.choi = square_matrix(field(j, "choi"), s.dim * s.dim, "Choi operator");
    break;
  case SpecKind::mixed_unitary: {
    const Json &terms = field(j, "terms");
    if (!terms.is_array() || terms.empty())
      throw ParseError("'terms' must be a non-empty array");
    s.mixed.dim = s.dim;
    for (const Json &t : terms)
      s.mixed.terms.push_back(
          {number(field(t, "coefficient"), "coefficient"),
           square_matrix(field(t, "unitary"), s.dim, "unitary")});
    break;
  }
  case SpecKind::named:
    s.named = named_from_json(j, s.dim);
    break;
  }
  return s;
}

Json channel_spec_to_json(const ChannelSpec &s) {
  Json j;
  j["format"] = kFormatVersion;
  j["dim"] = s.dim;
  j["kind"] = std::string(kind_name(s.kind));
  j["invert"] = s.invert;
  switch (s.kind) {
  case SpecKind::kraus: {
    Json ops = Json::array();
    for (const CMatrix &k : s.operators)
      ops.push_back(matrix_to_json(k));
    j["operators"] = std::move(ops);
    break;
  }
  case SpecKind::choi:
    j["choi"] = matrix_to_json(s.choi);
    break;
  case SpecKind::mixed_unitary: {
    Json terms = Json::array();
    for (const MixedUnitaryTerm &t : s.mixed.terms)
      terms.push_back({{"coefficient", t.coefficient},
                       {"unitary", matrix_to_json(t.unitary)}});
    j["terms"] = std::move(terms);
    break;
  }
  case SpecKind::named:
    j["family"] = std::string(family_name(s.named.family));
    j["params"] = named_params(s.named);
    break;
  }
  return j;
}

LinearMap build_map(const ChannelSpec &s, double cond_limit) {
  LinearMap map = LinearMap::identity(1);
  switch (s.kind) {
  case SpecKind::kraus: {
    const KrausSet k{s.dim, s.operators};
    const CMatrix slack = identity(s.dim) - kraus_completeness(k);
    if (min_eigenvalue(hermitian_part(slack)) < -kTraceTol)
      throw DomainError("Kraus operators are not trace non-increasing");
    map = choi_from_kraus(k);
    break;
  }
  case SpecKind::choi:
    if (!is_hermitian(s.choi))
      throw DomainError("Choi operator is not Hermitian");
    map = LinearMap(s.dim, s.choi);
    break;
  case SpecKind::mixed_unitary:
    map = choi_from_mixed_unitary(s.mixed);
    break;
  case SpecKind::named:
    map = named_channel(s.named);
    break;
  }
  return s.invert ? inverse_map(map, cond_limit) : map;
}

CMatrix state_from_json(const Json &j) {
  check_format(j);
  if (j.contains("density_matrix")) {
    const CMatrix rho = matrix_from_json(j["density_matrix"]);
    if (rho.rows() != rho.cols())
      throw ParseError("density matrix is not square");
    return rho;
  }
  const Json &ket = field(j, "ket");
  if (!ket.is_array() || ket.empty())
    throw ParseError("'ket' must be a non-empty array");
  CVector v(static_cast<Index>(ket.size()));
  for (std::size_t i = 0; i < ket.size(); ++i)
    v(static_cast<Index>(i)) = complex_from_json(ket[i]);
  return v * v.adjoint();
}

DiagObservable observable_from_json(const Json &j) {
  check_format(j);
  DiagObservable a;
  a.n_qubits = count(field(j, "n_qubits"), "n_qubits");
  if (a.n_qubits > 30)
    throw ParseError("'n_qubits' is too large");
  a.values.assign(a.dim(), 0.0);
  const Json &v = field(j, "values");
  if (v.is_array()) {
    if (v.size() > a.dim())
      throw ParseError("'values' has more than 2^n_qubits entries");
    for (std::size_t i = 0; i < v.size(); ++i)
      a.values[i] = number(v[i], "observable value");
  } else if (v.is_object()) {
    for (const auto &[key, val] : v.items()) {
      std::size_t pos = 0;
      unsigned long long x = 0;
      try {
        x = std::stoull(key, &pos);
      } catch (const std::exception &) {
        pos = 0;
      }
      if (pos != key.size() || key.empty())
        throw ParseError("observable index '" + key + "' is not an integer");
      if (x >= a.dim())
        throw ParseError("observable index " + key + " out of range");
      a.values[x] = number(val, "observable value");
    }
  } else {
    throw ParseError("'values' must be an array or an object");
  }
  a.validate();
  return a;
}

Json observable_to_json(const DiagObservable &a) {
  return Json{{"format", kFormatVersion},
              {"n_qubits", a.n_qubits},
              {"values", a.values}};
}

Json decomposition_to_json(const QuasiDecomposition &q,
                           std::string_view method) {
  Json terms = Json::array();
  for (const QuasiTerm &t : q.terms)
    terms.push_back(
        {{"eta", t.eta}, {"choi", matrix_to_json(t.channel.choi())}});
  const double cost = q.total_cost();
  return Json{{"format", kFormatVersion},
              {"kind", "quasi_decomposition"},
              {"method", std::string(method)},
              {"dim", q.terms.empty() ? 0 : q.terms.front().channel.dim()},
              {"total_cost", cost},
              {"nu", cost > 0.0 ? std::max(0.0, std::log2(cost)) : 0.0},
              {"terms", std::move(terms)}};
}

QuasiDecomposition decomposition_from_json(const Json &j) {
  check_format(j);
  const Json &kind = field(j, "kind");
  if (kind != "quasi_decomposition")
    throw ParseError("expected kind 'quasi_decomposition'");
  const std::size_t d = count(field(j, "dim"), "dim");
  if (d == 0)
    throw ParseError("'dim' must be positive");
  const Json &terms = field(j, "terms");
  if (!terms.is_array() || terms.empty())
    throw ParseError("'terms' must be a non-empty array");
  QuasiDecomposition q;
  for (const Json &t : terms) {
    LinearMap ch(d, square_matrix(field(t, "choi"), d * d, "term Choi"));
    const MapClass c = classify(ch, 1e-8);
    if (!c.is_cp || !c.is_tp)
      throw DomainError("decomposition term is not a CPTP map");
    q.terms.push_back({number(field(t, "eta"), "eta"), std::move(ch)});
  }
  return q;
}

Json certificate_to_json(const NuCertificate &c, const TraceNormBounds &b) {
  return Json{{"nu", c.nu},
              {"gamma", c.gamma},
              {"p1", c.p1},
              {"p2", c.p2},
              {"dual_value", c.dual_value},
              {"gap", c.gap},
              {"trace_norm_lower", b.lower},
              {"trace_norm_upper", b.upper}};
}

Json mitigation_report_to_json(const MitigationPlan &plan,
                               const MitigationReport &report,
                               std::string_view method, std::size_t n_qubits,
                               double noisy_value,
                               std::optional<double> exact) {
  Json j{{"format", kFormatVersion},
         {"kind", "mitigation_report"},
         {"plan",
          {{"method", std::string(method)},
           {"nu", plan.nu},
           {"gamma", plan.gamma},
           {"terms", plan.decomposition.terms.size()},
           {"shots", plan.shots},
           {"delta", plan.delta},
           {"eps_fail", plan.eps_fail}}},
         {"shots", report.shots},
         {"under_planned", report.shots < plan.shots},
         {"seed", report.seed},
         {"estimate", report.estimate},
         {"noisy_value", noisy_value},
         {"exact", exact ? Json(*exact) : Json(nullptr)},
         {"clamped_entries", report.clamped_entries}};
  if (!report.per_shot.empty()) {
    Json shots = Json::array();
    for (const ShotRecord &r : report.per_shot)
      shots.push_back(Json::array(
          {r.term, r.sign, outcome_string(r.outcome, n_qubits), r.x}));
    j["per_shot"] = std::move(shots);
  }
  return j;
}

Json check_result_to_json(const CheckResult &r) {
  return Json{{"suite", r.suite},
              {"check", r.name},
              {"pass", r.pass},
              {"residual",
               std::isfinite(r.residual) ? Json(r.residual) : Json(nullptr)},
              {"tolerance", r.tolerance}};
}

std::string dump(const Json &j) { return j.dump(); }

} // namespace pim

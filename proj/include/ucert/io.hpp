// Copyright 2026 The ucert Authors
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

#pragma once

// File formats for the command-line tool: JSON for matrices, vectors,
// realizations and reports; RFC-4180 CSV (header row, comma separated,
// CRLF-free) for figure data. Numbers carry 12 significant digits.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucert/bounds.hpp"
#include "ucert/certify.hpp"
#include "ucert/ellipsoid.hpp"
#include "ucert/entropy.hpp"
#include "ucert/error.hpp"
#include "ucert/gamma.hpp"
#include "ucert/oracle.hpp"

namespace ucert::io {

using json = nlohmann::json;

/// Bad command-line value (maps to the usage exit code).
class UsageError : public InputError {
 public:
  using InputError::InputError;
};

inline std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Round to 12 significant digits; the JSON writer then prints the shortest
/// representation of the rounded value.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  const double r = std::strtod(format12(x).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;  // drop negative zero
}

/// "shannon", "inf", or a decimal alpha > 1 outside (3/2, 2).
inline RenyiOrder parse_order(const std::string& spec) {
  if (spec == "shannon") return RenyiOrder::shannon();
  if (spec == "inf" || spec == "min") return RenyiOrder::min_entropy();
  char* end = nullptr;
  const double alpha = std::strtod(spec.c_str(), &end);
  if (spec.empty() || end == nullptr || *end != '\0' || !std::isfinite(alpha)) {
    throw UsageError("invalid order '" + spec + "': expected shannon, inf, or a decimal alpha");
  }
  if (!(alpha > 1.0)) {
    throw UsageError("invalid order '" + spec + "': alpha must exceed 1 (use 'shannon' for 1)");
  }
  if (alpha > 1.5 && alpha < 2.0) {
    throw UsageError("unsupported order '" + spec +
                     "': alpha in (1.5, 2) has no certified bound (w_alpha(sqrt t) is "
                     "neither convex nor concave there)");
  }
  return RenyiOrder::finite(alpha);
}

inline std::string order_spec(const RenyiOrder& order) { return order_label(order); }

inline json order_to_json(const RenyiOrder& order) {
  if (order.is_finite()) return round12(order.alpha());
  return order_spec(order);
}

// ---------------------------------------------------------------------------
// Readers

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

namespace detail {

inline std::vector<double> number_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError(what + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

inline std::size_t read_m(const json& j) {
  if (!j.contains("m") || !j["m"].is_number_integer() || j["m"].get<long long>() < 1) {
    throw InputError("field 'm' must be a positive integer");
  }
  return j["m"].get<std::size_t>();
}

template <typename Rows>
RealMatrix real_rows(const Rows& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty()) throw InputError(what + " must be a non-empty array");
  const std::size_t n = rows.size();
  const std::size_t cols = rows.front().is_array() ? rows.front().size() : 0;
  RealMatrix out(n, cols);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = number_array(rows[i], what + " row");
    if (row.size() != cols) throw InputError(what + " is ragged");
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = row[j];
  }
  return out;
}

}  // namespace detail

/// {"m": M, "entries": [[...], ...]}; symmetry enforced to 1e-12.
inline AntiCommutationMatrix anticommutation_from_json(const json& j) {
  if (!j.is_object()) throw InputError("anti-commutation file must hold a JSON object");
  const std::size_t m = detail::read_m(j);
  if (!j.contains("entries")) throw InputError("missing field 'entries'");
  const RealMatrix t = detail::real_rows(j["entries"], "entries");
  if (t.rows() != m || t.cols() != m) {
    throw InputError("entries must be " + std::to_string(m) + " x " + std::to_string(m));
  }
  return AntiCommutationMatrix(t, 1e-12);
}

/// {"m": M, "g": [...]}.
inline ExpectationVector expectation_from_json(const json& j) {
  if (!j.is_object()) throw InputError("expectation file must hold a JSON object");
  const std::size_t m = detail::read_m(j);
  if (!j.contains("g")) throw InputError("missing field 'g'");
  auto g = detail::number_array(j["g"], "g");
  if (g.size() != m) throw InputError("g must have " + std::to_string(m) + " entries");
  return ExpectationVector(std::move(g));
}

inline ComplexMatrix complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
    throw InputError("complex matrix must be an object with 're' and 'im'");
  }
  const RealMatrix re = detail::real_rows(j["re"], "re");
  const RealMatrix im = detail::real_rows(j["im"], "im");
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw InputError("'re' and 'im' differ in shape");
  }
  ComplexMatrix out(re.rows(), re.cols());
  for (std::size_t i = 0; i < re.rows(); ++i)
    for (std::size_t k = 0; k < re.cols(); ++k) out(i, k) = Complex(re(i, k), im(i, k));
  return out;
}

struct RealizationData {
  QuantumState state;
  std::vector<BinaryObservable> observables;
};

inline RealizationData realization_from_json(const json& j) {
  if (!j.is_object() || !j.contains("state") || !j.contains("observables")) {
    throw InputError("realization must have 'state' and 'observables'");
  }
  RealizationData out{QuantumState(complex_from_json(j["state"])), {}};
  for (const auto& o : j["observables"]) out.observables.emplace_back(complex_from_json(o));
  return out;
}

// ---------------------------------------------------------------------------
// Writers

inline json real_matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(round12(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json anticommutation_to_json(const AntiCommutationMatrix& t) {
  return {{"m", t.m()}, {"entries", real_matrix_to_json(t.matrix())}};
}

inline json complex_to_json(const ComplexMatrix& m) {
  RealMatrix re(m.rows(), m.cols());
  RealMatrix im(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) {
      re(i, k) = m(i, k).real();
      im(i, k) = m(i, k).imag();
    }
  return {{"re", real_matrix_to_json(re)}, {"im", real_matrix_to_json(im)}};
}

inline json vector_to_json(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(round12(x));
  return out;
}

inline json bound_to_json(const UncertaintyBound& b) {
  json j{{"value_bits", round12(b.value_bits)},
         {"order", order_spec(b.order)},
         {"alpha", order_to_json(b.order)},
         {"m", b.m},
         {"r", round12(b.r)},
         {"method", to_string(b.method)},
         {"generalized_measurements", b.generalized}};
  j["assignment"] = b.assignment ? vector_to_json(b.assignment->t) : json(nullptr);
  return j;
}

inline json realization_to_json(const Realization& r) {
  json obs = json::array();
  for (const auto& a : r.observables) obs.push_back(complex_to_json(a.matrix()));
  const auto g = expectation_vector(r.state, r.observables);
  const auto t = effective_anticommutators(r.state, r.observables);
  return {{"dim", r.state.dim()},
          {"rank", r.rank},
          {"state", complex_to_json(r.state.matrix())},
          {"observables", std::move(obs)},
          {"g", vector_to_json(g.values())},
          {"t", anticommutation_to_json(t)}};
}

inline json certification_to_json(const CertificationReport& rep) {
  json stats = json::array();
  for (const auto& e : rep.stats) {
    stats.push_back({{"j", e.j},
                     {"k", e.k},
                     {"beta_hat", round12(e.beta_hat)},
                     {"rounds_used", e.rounds_used},
                     {"std_error", round12(e.std_error)},
                     {"c", round12(rep.c_values.at({e.j, e.k}))}});
  }
  json bounds = json::array();
  for (const auto& b : rep.bounds) bounds.push_back(bound_to_json(b));
  return {{"m", rep.m},
          {"mode", rep.exact ? "exact" : "sampled"},
          {"rounds_per_setting", rep.rounds_per_setting},
          {"total_rounds", rep.total_rounds},
          {"seed", rep.seed},
          {"assumptions", "memoryless devices: every round is sampled i.i.d."},
          {"unviolated_pairs", rep.unviolated_pairs},
          {"note",
           "pairs with |beta| <= 2 receive the trivial certificate c = 1"},
          {"stats", std::move(stats)},
          {"t_prime", anticommutation_to_json(rep.t_prime)},
          {"r_prime", round12(rep.r_prime)},
          {"bounds", std::move(bounds)}};
}

inline json soundness_to_json(const SoundnessReport& rep) {
  json per_order = json::array();
  for (const auto& s : rep.per_order) {
    per_order.push_back({{"order", order_spec(s.order)},
                         {"checks", s.checks},
                         {"min_slack", round12(s.checks ? s.min_slack : 0.0)},
                         {"max_slack", round12(s.checks ? s.max_slack : 0.0)}});
  }
  json failures = json::array();
  for (const auto& f : rep.failures) {
    failures.push_back({{"trial", f.trial},
                        {"m", f.m},
                        {"order", f.order},
                        {"entropy_bits", round12(f.entropy_bits)},
                        {"bound_bits", round12(f.bound_bits)},
                        {"slack", round12(f.slack)},
                        {"reason", f.reason}});
  }
  return {{"trials", rep.trials},
          {"max_m", rep.max_m},
          {"seed", rep.seed},
          {"slack_tolerance", kSoundnessSlack},
          {"violations", rep.failures.size()},
          {"passed", rep.passed()},
          {"per_order", std::move(per_order)},
          {"failures", std::move(failures)}};
}

inline void write_ellipse_csv(std::ostream& out, std::span<const Point2> pts) {
  out << "g1,g2\n";
  for (const auto& p : pts) out << format12(p.g1) << ',' << format12(p.g2) << '\n';
}

inline void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows) {
  out << "c,q_mu,q_ac,q_opt\n";
  for (const auto& r : rows) {
    out << format12(r.c) << ',' << format12(r.q_mu) << ',' << format12(r.q_ac) << ','
        << format12(r.q_opt) << '\n';
  }
}

/// Parses CSV produced by the writers above (no quoting needed: numeric
/// fields only). Returns the data rows; the header is checked.
inline std::vector<std::vector<double>> read_numeric_csv(std::istream& in,
                                                         const std::string& expected_header) {
  std::string line;
  if (!std::getline(in, line) || line != expected_header) {
    throw InputError("CSV header mismatch: expected '" + expected_header + "'");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      row.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str() || *end != '\0') throw InputError("non-numeric CSV cell '" + cell + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ucert::io

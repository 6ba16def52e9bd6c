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

#include "ucert/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace ucert::io {
namespace {

TEST(Io, ParseOrder) {
  EXPECT_TRUE(parse_order("shannon").is_shannon());
  EXPECT_TRUE(parse_order("inf").is_min_entropy());
  EXPECT_TRUE(parse_order("min").is_min_entropy());
  EXPECT_DOUBLE_EQ(parse_order("1.5").alpha(), 1.5);
  EXPECT_DOUBLE_EQ(parse_order("2").alpha(), 2.0);
  EXPECT_DOUBLE_EQ(parse_order("10").alpha(), 10.0);
  for (const char* bad : {"", "1", "0.5", "1.7", "1.99", "abc", "2x", "nan"}) {
    EXPECT_THROW(parse_order(bad), UsageError) << bad;
  }
}

TEST(Io, OrderLabels) {
  EXPECT_EQ(order_spec(RenyiOrder::shannon()), "shannon");
  EXPECT_EQ(order_spec(RenyiOrder::min_entropy()), "inf");
  EXPECT_EQ(order_spec(RenyiOrder::finite(1.2)), "1.2");
  EXPECT_EQ(order_to_json(RenyiOrder::finite(3.0)), json(3.0));
}

TEST(Io, TwelveSignificantDigits) {
  EXPECT_EQ(format12(2.0 / 3.0), "0.666666666667");
  EXPECT_DOUBLE_EQ(round12(2.0 / 3.0), 0.666666666667);
  EXPECT_EQ(json(round12(1.0 / 3.0)).dump(), "0.333333333333");
  EXPECT_EQ(round12(-1e-30), -1e-30);
  EXPECT_FALSE(std::signbit(round12(-0.0)));
}

TEST(Io, AntiCommutationJsonRoundTrip) {
  const AntiCommutationMatrix t(RealMatrix{{1.0, 0.25, -0.5}, {0.25, 1.0, 0.0}, {-0.5, 0.0, 0.75}});
  const json j = anticommutation_to_json(t);
  const auto back = anticommutation_from_json(json::parse(j.dump()));
  EXPECT_EQ(max_abs_diff(back.matrix(), t.matrix()), 0.0);
}

TEST(Io, AntiCommutationJsonValidation) {
  EXPECT_THROW(anticommutation_from_json(json::parse(R"({"entries": [[1]]})")), InputError);
  EXPECT_THROW(anticommutation_from_json(json::parse(R"({"m": 2, "entries": [[1, 0]]})")),
               InputError);
  EXPECT_THROW(
      anticommutation_from_json(json::parse(R"({"m": 2, "entries": [[1, 0.5], [0.4, 1]]})")),
      InputError);
  EXPECT_THROW(anticommutation_from_json(json::parse(R"({"m": 2, "entries": [[1, 0], [0]]})")),
               InputError);
  EXPECT_THROW(
      anticommutation_from_json(json::parse(R"({"m": 2, "entries": [[1, "a"], [0, 1]]})")),
      InputError);
  EXPECT_THROW(anticommutation_from_json(json::parse("[1, 2]")), InputError);
}

TEST(Io, ExpectationJson) {
  const auto g = expectation_from_json(json::parse(R"({"m": 2, "g": [1, -0.5]})"));
  EXPECT_EQ(g.m(), 2u);
  EXPECT_DOUBLE_EQ(g[1], -0.5);
  EXPECT_THROW(expectation_from_json(json::parse(R"({"m": 3, "g": [1, 0]})")), InputError);
  EXPECT_THROW(expectation_from_json(json::parse(R"({"m": 1, "g": [1.5]})")), InputError);
}

TEST(Io, RealizationJsonRoundTrip) {
  const AntiCommutationMatrix t(RealMatrix{{1.0, 0.5}, {0.5, 1.0}});
  const ExpectationVector g({0.5, 0.5});
  const auto real = construct_realization(g, t);
  const json j = json::parse(realization_to_json(real).dump(2));
  EXPECT_EQ(j["rank"], 2);
  EXPECT_EQ(j["dim"], 2);
  const auto data = realization_from_json(j);
  const auto g_back = expectation_vector(data.state, data.observables);
  const auto t_back = effective_anticommutators(data.state, data.observables);
  EXPECT_NEAR(g_back[0], 0.5, 1e-10);
  EXPECT_NEAR(g_back[1], 0.5, 1e-10);
  EXPECT_LE(max_abs_diff(t_back.matrix(), t.matrix()), 1e-10);
  const auto t_read = anticommutation_from_json(j["t"]);
  EXPECT_LE(max_abs_diff(t_read.matrix(), t.matrix()), 1e-11);
}

TEST(Io, BoundJson) {
  const json j = bound_to_json(bound(RenyiOrder::shannon(), 3, 1.0));
  EXPECT_EQ(j["value_bits"], json(0.666666666667));
  EXPECT_EQ(j["order"], "shannon");
  EXPECT_EQ(j["method"], "low_alpha");
  EXPECT_EQ(j["m"], 3);
  EXPECT_EQ(j["assignment"], json::parse("[1.0, 0.0, 0.0]"));
  EXPECT_FALSE(j["generalized_measurements"].get<bool>());
}

TEST(Io, CertificationJson) {
  const std::vector<RenyiOrder> orders{RenyiOrder::shannon()};
  const json j = certification_to_json(certify_pipeline(3, 0, 42, orders));
  EXPECT_EQ(j["mode"], "exact");
  EXPECT_EQ(j["stats"].size(), 3u);
  EXPECT_EQ(j["r_prime"], json(1.0));
  const auto tp = anticommutation_from_json(j["t_prime"]);
  EXPECT_EQ(tp.m(), 3u);
  EXPECT_TRUE(j.contains("assumptions"));
}

TEST(Io, SoundnessJson) {
  const std::vector<RenyiOrder> orders{RenyiOrder::shannon(), RenyiOrder::finite(2.0)};
  const json j = soundness_to_json(verify_soundness(20, 3, orders, 1));
  EXPECT_EQ(j["violations"], 0);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["per_order"].size(), 2u);
  EXPECT_EQ(j["per_order"][1]["order"], "2");
}

TEST(Io, EllipseCsvRoundTrip) {
  const auto pts = ellipse_boundary(0.5, 50);
  std::stringstream ss;
  write_ellipse_csv(ss, pts);
  const auto rows = read_numeric_csv(ss, "g1,g2");
  ASSERT_EQ(rows.size(), pts.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 2u);
    EXPECT_NEAR(rows[i][0], pts[i].g1, 1e-11);
    EXPECT_NEAR(rows[i][1], pts[i].g2, 1e-11);
  }
}

TEST(Io, CompareCsvRoundTrip) {
  const std::vector<CompareRow> rows{{0.5, 0.5, 0.5, 0.5}, {1.0, 0.0, 0.0, 0.0}};
  std::stringstream ss;
  write_compare_csv(ss, rows);
  EXPECT_EQ(ss.str(), "c,q_mu,q_ac,q_opt\n0.5,0.5,0.5,0.5\n1,0,0,0\n");
  const auto back = read_numeric_csv(ss, "c,q_mu,q_ac,q_opt");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1], (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
}

TEST(Io, CsvValidation) {
  std::stringstream wrong("a,b\n1,2\n");
  EXPECT_THROW(read_numeric_csv(wrong, "g1,g2"), InputError);
  std::stringstream bad("g1,g2\n1,x\n");
  EXPECT_THROW(read_numeric_csv(bad, "g1,g2"), InputError);
}

}  // namespace
}  // namespace ucert::io

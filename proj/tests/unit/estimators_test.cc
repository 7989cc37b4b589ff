// Copyright 2026 The Reachbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "reachbench/estimators/estimators.h"
#include "reachbench/util/error.h"
#include "support/fixtures.h"

namespace reachbench::estimators {
namespace {

using incidence::FrequencyCounts;
using incidence::IncidenceMatrix;
using Units = std::vector<std::vector<incidence::ElementId>>;

FrequencyCounts worked_counts() {
  // t = 20, S_obs = 100, f1 = 10, f2 = 5.
  return testing::counts_from_json(20, Json{{"1", 10}, {"2", 5}, {"20", 85}});
}

IncidenceMatrix random_matrix(std::size_t t, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> pi(n);
  std::uniform_real_distribution<double> u(-3.5, -0.3);
  for (auto& p : pi) p = std::pow(10.0, u(rng));
  return testing::bernoulli_matrix(pi, t, seed + 1);
}

TEST(FormulaTest, WorkedValuesMatchOracle) {
  const Json doc = testing::load_fixture("estimator_formulas.json");
  const Json& w = doc.at("worked");
  const FrequencyCounts c = testing::counts_from_json(20, w.at("f"));
  EXPECT_NEAR(estimate_point(c, Method::kChao2).point, w.at("Chao2").get<double>(), 1e-9);
  EXPECT_NEAR(estimate_point(c, Method::kChao2Bc).point,
              w.at("Chao2_bc").get<double>(), 1e-9);
  EXPECT_NEAR(estimate_point(c, Method::kJk1).point, w.at("JK1").get<double>(), 1e-9);
  EXPECT_NEAR(estimate_point(c, Method::kJk2).point, w.at("JK2").get<double>(), 1e-9);
  EXPECT_NEAR(estimate_point(c, Method::kZelterman).point,
              w.at("Zelterman").get<double>(), 1e-9);
  // Hand values.
  EXPECT_DOUBLE_EQ(estimate_point(c, Method::kChao2).point, 109.5);
  EXPECT_DOUBLE_EQ(estimate_point(c, Method::kChao2Bc).point, 107.125);
  EXPECT_NEAR(estimate_point(c, Method::kJk2).point, 114.2368, 1e-4);
  EXPECT_NEAR(estimate_point(c, Method::kZelterman).point, 158.198, 1e-3);
}

TEST(FormulaTest, BootstrapWorkedValue) {
  const IncidenceMatrix m(Units{{1, 2}, {2}});  // Y = [1, 2], t = 2
  const auto c = incidence::frequency_counts(m);
  EXPECT_DOUBLE_EQ(bootstrap_estimator(c).point, 2.25);
}

TEST(FormulaTest, CasesMatchOracle) {
  const Json doc = testing::load_fixture("estimator_formulas.json");
  for (const Json& k : doc.at("cases")) {
    const auto t = k.at("t").get<std::size_t>();
    const FrequencyCounts c = testing::counts_from_json(t, k.at("f"));
    for (Method m : {Method::kChao2, Method::kChao2Bc, Method::kIChao2, Method::kJk1,
                     Method::kJk2, Method::kIce, Method::kIce1, Method::kZelterman,
                     Method::kChaoBunge}) {
      const std::string name(method_name(m));
      const EstimateWithCI e = estimate_point(c, m);
      const double expected = k.at(name).get<double>();
      if (expected < static_cast<double>(c.s_obs)) {
        EXPECT_EQ(e.status, Status::kDegenerateFallback) << name;
        EXPECT_DOUBLE_EQ(e.point, static_cast<double>(c.s_obs)) << name;
      } else {
        EXPECT_NEAR(e.point, expected, 1e-9 * expected) << name << " t=" << t;
      }
    }
  }
}

TEST(FormulaTest, Chao2LogIntervalMatchesOracle) {
  const Json ci = testing::load_fixture("estimator_formulas.json").at("chao2_log_ci_90");
  const EstimateWithCI e = chao2_family(worked_counts(), Chao2Variant::kClassic);
  EXPECT_NEAR(e.diagnostic("variance"), ci.at("variance").get<double>(), 1e-9);
  EXPECT_EQ(e.ci_method, "log-transform");
  EXPECT_NEAR(e.ci_low, ci.at("low").get<double>(), 1e-9);
  EXPECT_NEAR(e.ci_high, ci.at("high").get<double>(), 1e-9);
}

TEST(Chao2Test, NoSingletonsMeansNoExtrapolation) {
  const auto c = testing::counts_from_json(10, Json{{"2", 4}, {"5", 6}});
  for (Method m : {Method::kChao2, Method::kChao2Bc, Method::kIChao2}) {
    EXPECT_DOUBLE_EQ(estimate_point(c, m).point, 10.0) << method_name(m);
  }
}

TEST(Chao2Test, ZeroDoubletonBranchEqualsBiasCorrectedLimit) {
  const auto c = testing::counts_from_json(15, Json{{"1", 6}, {"3", 4}});
  EXPECT_DOUBLE_EQ(estimate_point(c, Method::kChao2).point,
                   estimate_point(c, Method::kChao2Bc).point);
}

TEST(Chao2Test, ContinuousInDoubletons) {
  // Stepping f2 by one moves the estimate by the closed-form difference.
  for (std::uint64_t f2 : {3u, 10u, 40u}) {
    const auto a = FrequencyCounts::from_frequencies(30, {20, f2});
    const auto b = FrequencyCounts::from_frequencies(30, {20, f2 + 1});
    const double da = estimate_point(a, Method::kChao2).point;
    const double db = estimate_point(b, Method::kChao2).point;
    // One more observed element, minus the analytic drop of the f1^2 / f2 term.
    const double f = static_cast<double>(f2);
    EXPECT_NEAR(db - da, 1.0 - 29.0 / 30.0 * 400.0 / (2.0 * f * (f + 1.0)), 1e-9);
  }
}

TEST(Chao2Test, ImprovedNeedsFourUnits) {
  const auto c = FrequencyCounts::from_frequencies(3, {2, 1});
  EXPECT_TRUE(estimate_point(c, Method::kIChao2).failed());
  EXPECT_FALSE(estimate_point(c, Method::kChao2).failed());
}

TEST(Chao2Test, ImprovedSubstitutesMissingF4) {
  const auto c = FrequencyCounts::from_frequencies(10, {6, 3, 2});
  const EstimateWithCI e = estimate_point(c, Method::kIChao2);
  EXPECT_EQ(e.diagnostic("f4_substituted"), 1.0);
  const double t = 10;
  const double inner = std::max(6.0 - (t - 3) / (2 * (t - 1)) * 3.0 * 2.0, 0.0);
  EXPECT_NEAR(e.point - e.diagnostic("chao2"), (t - 3) / (4 * t) * 2.0 * inner, 1e-12);
}

TEST(JackknifeTest, NoSingletonsOrDoubletons) {
  const auto c = testing::counts_from_json(10, Json{{"4", 3}, {"9", 2}});
  EXPECT_DOUBLE_EQ(estimate_point(c, Method::kJk1).point, 5.0);
  EXPECT_DOUBLE_EQ(estimate_point(c, Method::kJk2).point, 5.0);
}

TEST(JackknifeTest, FirstOrderVarianceFromUnitSingletons) {
  // q = [2, 0, 1, 0], f1 = 3, t = 4.
  const IncidenceMatrix m(Units{{1, 2, 9}, {9}, {3, 9}, {9}});
  const auto c = incidence::frequency_counts(m);
  const EstimateWithCI e = jackknife(c, 1);
  const double mean = 0.75;
  const double ss = (2 - mean) * (2 - mean) + 2 * mean * mean + (1 - mean) * (1 - mean);
  EXPECT_NEAR(e.diagnostic("variance"), 0.75 * ss, 1e-12);
  EXPECT_EQ(e.ci_method, "log-transform");
}

TEST(IceTest, NoInfrequentElements) {
  const auto c = testing::counts_from_json(30, Json{{"12", 4}, {"30", 6}});
  const EstimateWithCI e = estimate_point(c, Method::kIce);
  EXPECT_DOUBLE_EQ(e.point, 10.0);
  EXPECT_EQ(e.status, Status::kDegenerateFallback);
}

TEST(IceTest, AllSingletonsFallsBackToChao2) {
  const auto c = testing::counts_from_json(10, Json{{"1", 5}});
  const EstimateWithCI e = estimate_point(c, Method::kIce);
  EXPECT_EQ(e.status, Status::kDegenerateFallback);
  EXPECT_DOUBLE_EQ(e.point, estimate_point(c, Method::kChao2).point);
}

TEST(IceTest, HomogeneousCvNearZero) {
  // Equal pi: the fitted CV^2 should average near 0 and ICE reduce to the
  // coverage form S_freq + S_inf / C.
  const std::vector<double> pi(300, 0.08);
  double cv2 = 0.0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto c = incidence::frequency_counts(testing::bernoulli_matrix(pi, 40, r));
    const EstimateWithCI e = estimate_point(c, Method::kIce);
    cv2 += e.diagnostic("cv2");
    if (e.diagnostic("cv2") == 0.0) {
      const double s_inf = e.diagnostic("s_infrequent");
      EXPECT_NEAR(e.point,
                  static_cast<double>(c.s_obs) - s_inf + s_inf / e.diagnostic("coverage"),
                  1e-9);
    }
  }
  EXPECT_LT(cv2 / reps, 0.05);
}

TEST(IceTest, ExactTStarCountsUnitsWithInfrequentElements) {
  // Element 7 is in all 12 units (frequent), element 1 only in unit 0.
  Units units(12, std::vector<incidence::ElementId>{7});
  units[0].push_back(1);
  units[3].push_back(2);
  units[5].push_back(2);
  const auto c = incidence::frequency_counts(IncidenceMatrix(units));
  EstimatorOptions exact;
  exact.ice_exact_t_star = true;
  EXPECT_EQ(ice_family(c, IceVariant::kIce, exact).diagnostic("t_star"), 3.0);
  EXPECT_EQ(ice_family(c, IceVariant::kIce).diagnostic("t_star"), 12.0);
}

TEST(ZeltermanTest, DegenerateCases) {
  EXPECT_TRUE(zelterman(FrequencyCounts::from_frequencies(10, {4, 0, 3})).failed());
  EXPECT_TRUE(zelterman(FrequencyCounts::from_frequencies(10, {0, 3})).failed());
  const auto big = FrequencyCounts::from_frequencies(10, {1, 500});
  EXPECT_NEAR(zelterman(big).point, 501.0, 1e-9);
}

TEST(BootstrapEstimatorTest, Saturated) {
  const auto c = FrequencyCounts::from_frequencies(5, {0, 0, 0, 0, 9});
  EXPECT_DOUBLE_EQ(bootstrap_estimator(c).point, 9.0);
}

TEST(BootstrapEstimatorTest, BoundOnRandomData) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto c = incidence::frequency_counts(random_matrix(25, 200, seed));
    const double t = 25;
    const double f1 = static_cast<double>(c.count(1));
    const double extra = bootstrap_estimator(c).point - static_cast<double>(c.s_obs);
    const double bound = f1 * std::pow(1 - 1 / t, t) +
                         (static_cast<double>(c.s_obs) - f1) * std::pow(1 - 2 / t, t);
    EXPECT_GE(extra, 0.0);
    EXPECT_LE(extra, bound + 1e-9);
  }
}

TEST(ChaoBungeTest, NoSingletons) {
  const auto c = FrequencyCounts::from_frequencies(6, {0, 4, 2});
  EXPECT_DOUBLE_EQ(chao_bunge(c).point, 6.0);
}

TEST(ChaoBungeTest, ThetaAtLeastOneFails) {
  const auto c = FrequencyCounts::from_frequencies(6, {8});
  const EstimateWithCI e = chao_bunge(c);
  EXPECT_TRUE(e.failed());
  EXPECT_GE(e.diagnostic("theta"), 1.0);
}

TEST(NpmleTest, SaturatedData) {
  const auto c = FrequencyCounts::from_frequencies(8, {0, 0, 0, 0, 0, 0, 0, 12});
  for (bool penalized : {false, true}) {
    const EstimateWithCI e = npmle(c, penalized);
    ASSERT_FALSE(e.failed()) << e.message;
    EXPECT_NEAR(e.point, 12.0, 1e-9);
  }
}

TEST(NpmleTest, HomogeneousRecovery) {
  const std::vector<double> pi(200, 0.3);
  double sum = 0.0;
  int ok = 0;
  int collapsed = 0;
  int single_support = 0;
  for (int r = 0; r < 100; ++r) {
    const auto c = incidence::frequency_counts(testing::bernoulli_matrix(pi, 50, 1000 + r));
    const EstimateWithCI e = npmle(c, false);
    if (e.failed()) continue;
    ++ok;
    sum += e.point;
    collapsed += std::abs(e.diagnostic("mixture_mean") - 0.3) < 0.02 &&
                 e.diagnostic("mixture_sd") < 0.03;
    single_support += e.diagnostic("support_points") == 1.0;
  }
  ASSERT_GE(ok, 95);
  EXPECT_NEAR(sum / ok, 200.0, 10.0);
  EXPECT_GE(collapsed, 9 * ok / 10);
  std::printf("homogeneous fits: %d of %d with a single support point\n",
              single_support, ok);
}

TEST(NpmleTest, PenalizedVarianceSoftExpectation) {
  // Sparse data; logged, not asserted.
  const std::vector<double> pi(200, 0.02);
  std::vector<double> u;
  std::vector<double> p;
  for (int r = 0; r < 100; ++r) {
    const auto c = incidence::frequency_counts(testing::bernoulli_matrix(pi, 30, 5000 + r));
    const EstimateWithCI a = npmle(c, false);
    const EstimateWithCI b = npmle(c, true);
    if (!a.failed()) u.push_back(a.point);
    if (!b.failed()) p.push_back(b.point);
  }
  auto var = [](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
  };
  std::printf("sparse data: UNPMLE ok %zu var %.3f, PNPMLE ok %zu var %.3f\n",
              u.size(), var(u), p.size(), var(p));
  EXPECT_GE(p.size(), 90u);
}

TEST(IntervalTest, LogTransformHandValues) {
  const auto ci = log_transform_interval(100.0, 110.0, 25.0, 0.9);
  ASSERT_TRUE(ci.has_value());
  const double k = std::exp(1.6448536269514722 * std::sqrt(std::log(1.25)));
  EXPECT_NEAR(ci->first, 100.0 + 10.0 / k, 1e-12);
  EXPECT_NEAR(ci->second, 100.0 + 10.0 * k, 1e-12);
  EXPECT_FALSE(log_transform_interval(100.0, 100.0, 25.0, 0.9).has_value());
  EXPECT_FALSE(log_transform_interval(100.0, 110.0, -1.0, 0.9).has_value());
}

TEST(IntervalTest, ZeroLevelCollapses) {
  const IncidenceMatrix m = random_matrix(20, 100, 3);
  EstimatorOptions o;
  o.level = 0.0;
  for (Method method : all_methods()) {
    const EstimateWithCI e = estimate(m, method, o);
    if (e.failed()) continue;
    EXPECT_EQ(e.ci_low, e.point) << method_name(method);
    EXPECT_EQ(e.ci_high, e.point) << method_name(method);
  }
}

TEST(IntervalTest, ConstantResamplesGiveZeroWidth) {
  // Every unit identical: every resample reproduces the data.
  const IncidenceMatrix m(Units(10, std::vector<incidence::ElementId>{1, 2, 3}));
  const EstimateWithCI e = estimate(m, Method::kBootstrap);
  EXPECT_EQ(e.ci_method, "bootstrap");
  EXPECT_EQ(e.ci_low, e.point);
  EXPECT_EQ(e.ci_high, e.point);
}

TEST(IntervalTest, BootstrapUsedWithoutAnalyticVariance) {
  const IncidenceMatrix m = random_matrix(30, 300, 4);
  EstimatorOptions o;
  o.bootstrap_replicates = 100;
  const EstimateWithCI e = estimate(m, Method::kJk2, o);
  ASSERT_FALSE(e.failed());
  EXPECT_EQ(e.ci_method, "bootstrap-log");
  EXPECT_LT(e.ci_low, e.point);
  EXPECT_GT(e.ci_high, e.point);
  // Log-transform intervals are geometric around the unseen count.
  const double s_obs = static_cast<double>(m.num_elements());
  const double unseen = e.point - s_obs;
  EXPECT_NEAR((e.ci_low - s_obs) * (e.ci_high - s_obs), unseen * unseen,
              1e-9 * unseen * unseen);
}

TEST(PropertyTest, OkEstimatesNotBelowObserved) {
  EstimatorOptions o;
  o.bootstrap_replicates = 20;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const IncidenceMatrix m = random_matrix(5 + seed * 3, 150, seed);
    const double s_obs = static_cast<double>(m.num_elements());
    for (const EstimateWithCI& e : estimate_all(m, all_methods(), o)) {
      if (e.failed()) continue;
      EXPECT_GE(e.point, s_obs) << method_name(e.method) << " seed " << seed;
      if (e.has_ci()) {
        EXPECT_LE(e.ci_low, e.point);
        EXPECT_GE(e.ci_high, e.point);
      }
    }
  }
}

TEST(PropertyTest, DeterministicAndLabelInvariant) {
  const IncidenceMatrix m = random_matrix(20, 150, 9);
  Units relabeled = m.columns();
  for (auto& u : relabeled) {
    for (auto& id : u) id = 100000 - id * 7;
  }
  const IncidenceMatrix r(relabeled);
  EstimatorOptions o;
  o.bootstrap_replicates = 50;
  const auto a = estimate_all(m, all_methods(), o);
  const auto b = estimate_all(m, all_methods(), o);
  const auto c = estimate_all(r, all_methods(), o);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto name = method_name(a[i].method);
    EXPECT_EQ(a[i].status, b[i].status) << name;
    EXPECT_EQ(a[i].point, b[i].point) << name;
    EXPECT_EQ(a[i].ci_low, b[i].ci_low) << name;
    EXPECT_EQ(a[i].status, c[i].status) << name;
    if (a[i].failed()) continue;
    EXPECT_DOUBLE_EQ(a[i].point, c[i].point) << name;
    EXPECT_DOUBLE_EQ(a[i].ci_low, c[i].ci_low) << name;
    EXPECT_DOUBLE_EQ(a[i].ci_high, c[i].ci_high) << name;
  }
}

TEST(PropertyTest, ErrorShrinksWithMoreUnits) {
  const std::vector<double> pi(200, 0.01);
  for (Method m : {Method::kChao2, Method::kJk1, Method::kBootstrap}) {
    double previous = INFINITY;
    for (std::size_t t : {25u, 50u, 100u}) {
      double sum = 0.0;
      int n = 0;
      for (int r = 0; r < 1000; ++r) {
        const auto c =
            incidence::frequency_counts(testing::bernoulli_matrix(pi, t, 7919 * t + r));
        const EstimateWithCI e = estimate_point(c, m);
        if (e.failed()) continue;
        sum += e.point;
        ++n;
      }
      const double error = std::abs(sum / n - 200.0);
      EXPECT_LT(error, previous) << method_name(m) << " t=" << t;
      previous = error;
    }
  }
}

TEST(MethodTest, NamesAndLists) {
  EXPECT_EQ(all_methods().size(), 12u);
  for (Method m : all_methods()) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_EQ(parse_method_list("all").size(), 12u);
  EXPECT_EQ(parse_method_list("Chao2,JK1,Chao2"),
            (std::vector<Method>{Method::kChao2, Method::kJk1}));
  EXPECT_THROW(parse_method_list("Chao3"), ConfigError);
}

TEST(StatusTest, TooFewUnitsFailsEverywhere) {
  const auto c = FrequencyCounts::from_frequencies(1, {4});
  for (Method m : all_methods()) {
    EXPECT_TRUE(estimate_point(c, m).failed()) << method_name(m);
  }
}

}  // namespace
}  // namespace reachbench::estimators

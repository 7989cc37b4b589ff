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

#include <boost/math/distributions/normal.hpp>

#include "reachbench/estimators/estimators.h"
#include "reachbench/util/error.h"

namespace reachbench::estimators {
namespace {

constexpr std::pair<Method, std::string_view> kNames[] = {
    {Method::kChao2, "Chao2"},         {Method::kChao2Bc, "Chao2_bc"},
    {Method::kIChao2, "iChao2"},       {Method::kJk1, "JK1"},
    {Method::kJk2, "JK2"},             {Method::kIce, "ICE"},
    {Method::kIce1, "ICE1"},           {Method::kZelterman, "Zelterman"},
    {Method::kBootstrap, "Bootstrap"}, {Method::kChaoBunge, "Chao-Bunge"},
    {Method::kUnpmle, "UNPMLE"},       {Method::kPnpmle, "PNPMLE"},
};

double f(const FrequencyCounts& c, std::size_t k) {
  return static_cast<double>(c.count(k));
}

double sobs(const FrequencyCounts& c) { return static_cast<double>(c.s_obs); }

EstimateWithCI failed(Method method, std::string message) {
  EstimateWithCI e;
  e.method = method;
  e.status = Status::kFailed;
  e.message = std::move(message);
  return e;
}

EstimateWithCI ok(Method method, double point) {
  EstimateWithCI e;
  e.method = method;
  e.point = point;
  e.status = Status::kOk;
  return e;
}

// Points below S_obs are raised to S_obs and flagged.
void clamp_to_observed(EstimateWithCI& e, const FrequencyCounts& c) {
  if (e.status != Status::kFailed && e.point < sobs(c)) {
    e.diagnostics.emplace_back("unclamped_point", e.point);
    e.point = sobs(c);
    e.status = Status::kDegenerateFallback;
    e.message = "estimate below S_obs clamped";
  }
}

void attach_log_interval(EstimateWithCI& e, const FrequencyCounts& c,
                         double variance, double level) {
  e.diagnostics.emplace_back("variance", variance);
  if (const auto ci = log_transform_interval(sobs(c), e.point, variance, level)) {
    e.ci_low = ci->first;
    e.ci_high = ci->second;
    e.ci_method = "log-transform";
  }
}

}  // namespace

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = [] {
    std::vector<Method> m;
    for (const auto& [method, name] : kNames) m.push_back(method);
    return m;
  }();
  return methods;
}

std::string_view method_name(Method method) {
  for (const auto& [m, name] : kNames) {
    if (m == method) return name;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [m, n] : kNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

std::vector<Method> parse_method_list(std::string_view list) {
  if (list == "all") return all_methods();
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    const std::string_view name = list.substr(start, end - start);
    const auto m = parse_method(name);
    if (!m) throw ConfigError("unknown estimator '" + std::string(name) + "'");
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    start = end + 1;
  }
  return out;
}

std::string_view status_name(Status status) {
  switch (status) {
    case Status::kOk:
      return "ok";
    case Status::kDegenerateFallback:
      return "degenerate-fallback";
    case Status::kFailed:
      return "failed";
  }
  return "failed";
}

double EstimateWithCI::diagnostic(std::string_view key) const {
  for (const auto& [k, v] : diagnostics) {
    if (k == key) return v;
  }
  return kNaN;
}

std::optional<std::pair<double, double>> log_transform_interval(
    double s_obs, double point, double variance, double level) {
  const double t0 = point - s_obs;
  if (!(t0 > 0.0) || !(variance > 0.0) || !std::isfinite(variance)) {
    return std::nullopt;
  }
  if (level <= 0.0) return std::make_pair(point, point);
  const boost::math::normal_distribution<double> normal;
  const double z = boost::math::quantile(normal, 0.5 + level / 2.0);
  const double k = std::exp(z * std::sqrt(std::log1p(variance / (t0 * t0))));
  return std::make_pair(s_obs + t0 / k, s_obs + t0 * k);
}

EstimateWithCI chao2_family(const FrequencyCounts& c, Chao2Variant variant,
                            const EstimatorOptions& options) {
  const Method method = variant == Chao2Variant::kClassic ? Method::kChao2
                        : variant == Chao2Variant::kBiasCorrected
                            ? Method::kChao2Bc
                            : Method::kIChao2;
  if (c.t < 2) return failed(method, "needs t >= 2");
  if (variant == Chao2Variant::kImproved && c.t < 4) {
    return failed(method, "needs t >= 4");
  }
  const double t = static_cast<double>(c.t);
  const double a = (t - 1.0) / t;
  const double f1 = f(c, 1);
  const double f2 = f(c, 2);

  double point = 0.0;
  if (variant == Chao2Variant::kBiasCorrected) {
    point = sobs(c) + a * f1 * (f1 - 1.0) / (2.0 * (f2 + 1.0));
  } else if (f2 > 0.0) {
    point = sobs(c) + a * f1 * f1 / (2.0 * f2);
  } else {
    point = sobs(c) + a * f1 * (f1 - 1.0) / 2.0;
  }

  if (variant == Chao2Variant::kImproved) {
    const double f3 = f(c, 3);
    const double f4 = std::max(f(c, 4), 1.0);
    const double inner =
        std::max(f1 - (t - 3.0) / (2.0 * (t - 1.0)) * f2 * f3 / f4, 0.0);
    const double correction = (t - 3.0) / (4.0 * t) * f3 / f4 * inner;
    EstimateWithCI e = ok(method, point + correction);
    e.diagnostics.emplace_back("chao2", point);
    e.diagnostics.emplace_back("correction", correction);
    if (c.count(4) == 0) e.diagnostics.emplace_back("f4_substituted", 1.0);
    clamp_to_observed(e, c);
    return e;
  }

  EstimateWithCI e = ok(method, point);
  if (f1 == 0.0) return e;
  double var = 0.0;
  if (f2 > 0.0 && variant == Chao2Variant::kClassic) {
    const double r = f1 / f2;
    var = f2 * (a / 2.0 * r * r + a * a * r * r * r + a * a / 4.0 * r * r * r * r);
  } else if (f2 > 0.0) {
    const double g = f2 + 1.0;
    var = a * f1 * (f1 - 1.0) / (2.0 * g) +
          a * a * f1 * std::pow(2.0 * f1 - 1.0, 2) / (4.0 * g * g) +
          a * a * f1 * f1 * f2 * std::pow(f1 - 1.0, 2) / (4.0 * std::pow(g, 4));
  } else {
    var = a * f1 * (f1 - 1.0) / 2.0 +
          a * a * f1 * std::pow(2.0 * f1 - 1.0, 2) / 4.0 -
          a * a * std::pow(f1, 4) / (4.0 * point);
  }
  if (options.analytic_ci) attach_log_interval(e, c, var, options.level);
  return e;
}

EstimateWithCI jackknife(const FrequencyCounts& c, int order,
                         const EstimatorOptions& options) {
  const Method method = order == 1 ? Method::kJk1 : Method::kJk2;
  if (order != 1 && order != 2) return failed(method, "order must be 1 or 2");
  if (c.t < 2) return failed(method, "needs t >= 2");
  const double t = static_cast<double>(c.t);
  const double f1 = f(c, 1);
  const double f2 = f(c, 2);
  if (order == 1) {
    EstimateWithCI e = ok(method, sobs(c) + f1 * (t - 1.0) / t);
    // Variance from the per-unit singleton counts q_j.
    if (options.analytic_ci && c.unit_singletons.size() == c.t && f1 > 0.0) {
      double ss = 0.0;
      for (auto q : c.unit_singletons) {
        const double d = static_cast<double>(q) - f1 / t;
        ss += d * d;
      }
      attach_log_interval(e, c, (t - 1.0) / t * ss, options.level);
    }
    return e;
  }
  EstimateWithCI e = ok(method, sobs(c) + f1 * (2.0 * t - 3.0) / t -
                                    f2 * (t - 2.0) * (t - 2.0) / (t * (t - 1.0)));
  clamp_to_observed(e, c);
  return e;
}

EstimateWithCI ice_family(const FrequencyCounts& c, IceVariant variant,
                          const EstimatorOptions& options) {
  const Method method = variant == IceVariant::kIce ? Method::kIce : Method::kIce1;
  if (c.t < 2) return failed(method, "needs t >= 2");
  const std::size_t cutoff = std::min<std::size_t>(options.ice_cutoff, c.t);
  double s_inf = 0.0;
  double n_inf = 0.0;
  double pairs = 0.0;
  for (std::size_t k = 1; k <= cutoff; ++k) {
    const double fk = f(c, k);
    const double kk = static_cast<double>(k);
    s_inf += fk;
    n_inf += kk * fk;
    pairs += kk * (kk - 1.0) * fk;
  }
  const double s_freq = sobs(c) - s_inf;
  const double f1 = f(c, 1);
  if (n_inf == 0.0) {
    EstimateWithCI e = ok(method, sobs(c));
    e.status = Status::kDegenerateFallback;
    e.message = "no infrequent elements";
    return e;
  }
  const double coverage = 1.0 - f1 / n_inf;
  if (coverage <= 0.0) {
    EstimatorOptions classic = options;
    classic.analytic_ci = false;
    EstimateWithCI e = chao2_family(c, Chao2Variant::kClassic, classic);
    e.method = method;
    if (!e.failed()) e.status = Status::kDegenerateFallback;
    e.message = "zero sample coverage, Chao2 used";
    return e;
  }
  double t_star = static_cast<double>(c.t);
  if (options.ice_exact_t_star && c.unit_min_y.size() == c.t) {
    t_star = 0.0;
    for (auto y : c.unit_min_y) {
      if (y != 0 && y <= cutoff) t_star += 1.0;
    }
  }
  EstimateWithCI e = ok(method, 0.0);
  double gamma2 = 0.0;
  if (t_star > 1.0) {
    const double ratio = t_star / (t_star - 1.0);
    gamma2 = std::max(s_inf / coverage * ratio * pairs / (n_inf * n_inf) - 1.0, 0.0);
    if (variant == IceVariant::kIce1) {
      gamma2 = std::max(
          gamma2 * (1.0 + (1.0 - coverage) / coverage * ratio * pairs / n_inf), 0.0);
    }
  } else {
    e.status = Status::kDegenerateFallback;
    e.message = "t* <= 1, CV set to 0";
  }
  e.point = s_freq + s_inf / coverage + f1 / coverage * gamma2;
  e.diagnostics.emplace_back("coverage", coverage);
  e.diagnostics.emplace_back("cv2", gamma2);
  e.diagnostics.emplace_back("t_star", t_star);
  e.diagnostics.emplace_back("s_infrequent", s_inf);
  clamp_to_observed(e, c);
  return e;
}

EstimateWithCI zelterman(const FrequencyCounts& c) {
  if (c.t < 2) return failed(Method::kZelterman, "needs t >= 2");
  const double f1 = f(c, 1);
  const double f2 = f(c, 2);
  if (f1 == 0.0 || f2 == 0.0) {
    return failed(Method::kZelterman, "needs f1 > 0 and f2 > 0");
  }
  const double lambda = 2.0 * f2 / f1;
  EstimateWithCI e = ok(Method::kZelterman, sobs(c) / -std::expm1(-lambda));
  e.diagnostics.emplace_back("lambda", lambda);
  return e;
}

EstimateWithCI bootstrap_estimator(const FrequencyCounts& c) {
  if (c.t < 2) return failed(Method::kBootstrap, "needs t >= 2");
  const double t = static_cast<double>(c.t);
  double extra = 0.0;
  for (std::size_t k = 1; k <= c.t; ++k) {
    const double fk = f(c, k);
    if (fk > 0.0) extra += fk * std::pow(1.0 - static_cast<double>(k) / t, t);
  }
  return ok(Method::kBootstrap, sobs(c) + extra);
}

EstimateWithCI chao_bunge(const FrequencyCounts& c) {
  if (c.t < 2) return failed(Method::kChaoBunge, "needs t >= 2");
  double first = 0.0;
  double second = 0.0;
  for (std::size_t k = 1; k <= c.t; ++k) {
    const double kk = static_cast<double>(k);
    first += kk * f(c, k);
    second += kk * kk * f(c, k);
  }
  if (first == 0.0) return ok(Method::kChaoBunge, 0.0);
  const double theta = f(c, 1) * second / (first * first);
  if (theta >= 1.0) {
    EstimateWithCI e = failed(Method::kChaoBunge, "theta >= 1");
    e.diagnostics.emplace_back("theta", theta);
    return e;
  }
  EstimateWithCI e = ok(Method::kChaoBunge, (sobs(c) - f(c, 1)) / (1.0 - theta));
  e.diagnostics.emplace_back("theta", theta);
  clamp_to_observed(e, c);
  return e;
}

EstimateWithCI estimate_point(const FrequencyCounts& c, Method method,
                              const EstimatorOptions& options) {
  switch (method) {
    case Method::kChao2:
      return chao2_family(c, Chao2Variant::kClassic, options);
    case Method::kChao2Bc:
      return chao2_family(c, Chao2Variant::kBiasCorrected, options);
    case Method::kIChao2:
      return chao2_family(c, Chao2Variant::kImproved, options);
    case Method::kJk1:
      return jackknife(c, 1, options);
    case Method::kJk2:
      return jackknife(c, 2, options);
    case Method::kIce:
      return ice_family(c, IceVariant::kIce, options);
    case Method::kIce1:
      return ice_family(c, IceVariant::kIce1, options);
    case Method::kZelterman:
      return zelterman(c);
    case Method::kBootstrap:
      return bootstrap_estimator(c);
    case Method::kChaoBunge:
      return chao_bunge(c);
    case Method::kUnpmle:
      return npmle(c, false, options.em);
    case Method::kPnpmle:
      return npmle(c, true, options.em);
  }
  return failed(method, "unknown method");
}

}  // namespace reachbench::estimators

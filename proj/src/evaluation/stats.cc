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

#include "reachbench/evaluation/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <spdlog/spdlog.h>

#include "reachbench/util/error.h"

namespace reachbench::evaluation {

namespace {

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

double variance_of(std::span<const double> x, double mean) {
  double ss = 0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(x.size() - 1);
}

double normal_sf(double z) {
  if (std::isinf(z)) return z > 0 ? 0.0 : 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::normal(), z));
}

// Polynomial c[0] + c[1] x + ...
template <std::size_t N>
double poly(const double (&c)[N], double x) {
  double r = 0;
  for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
  return r;
}

}  // namespace

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw ConfigError("welch_t_test: each sample needs at least 2 values");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const double qa = variance_of(a, ma) / na;
  const double qb = variance_of(b, mb) / nb;
  WelchResult r;
  if (qa + qb == 0.0) {
    r.dof = na + nb - 2;
    if (ma == mb) {
      r.statistic = 0;
      r.p_value = 1;
    } else {
      r.statistic = ma > mb ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
      r.p_value = 0;
      spdlog::debug("welch_t_test: zero variance with unequal means");
    }
    return r;
  }
  r.statistic = (ma - mb) / std::sqrt(qa + qb);
  r.dof = (qa + qb) * (qa + qb) /
          (qa * qa / (na - 1) + qb * qb / (nb - 1));
  const boost::math::students_t dist(r.dof);
  r.p_value = std::min(
      1.0, 2.0 * boost::math::cdf(boost::math::complement(
                     dist, std::fabs(r.statistic))));
  return r;
}

NormalityResult normality_check(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3) throw ConfigError("normality_check: needs at least 3 values");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 0)) {
    throw ValidationError("normality_check: sample has zero range");
  }
  const double median = x[n / 2];
  for (double& v : x) v = (v - median) / range;

  // Coefficients a[0..n/2).
  const std::size_t half = n / 2;
  const double an = static_cast<double>(n);
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::sqrt(0.5);
  } else {
    static const double kC1[] = {0.0,       0.221157, -0.147981,
                                 -2.071190, 4.434685, -2.706056};
    static const double kC2[] = {0.0,       0.042981, -0.293762,
                                 -1.752461, 5.682633, -3.582633};
    const boost::math::normal standard;
    double summ2 = 0;
    for (std::size_t i = 0; i < half; ++i) {
      a[i] = boost::math::quantile(
          standard, (static_cast<double>(i + 1) - 0.375) / (an + 0.25));
      summ2 += a[i] * a[i];
    }
    summ2 *= 2;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(kC1, rsn) - a[0] / ssumm2;
    std::size_t first;
    double fac;
    if (n > 5) {
      first = 2;
      const double a2 = -a[1] / ssumm2 + poly(kC2, rsn);
      fac = std::sqrt((summ2 - 2 * a[0] * a[0] - 2 * a[1] * a[1]) /
                      (1 - 2 * a1 * a1 - 2 * a2 * a2));
      a[1] = a2;
    } else {
      first = 1;
      fac = std::sqrt((summ2 - 2 * a[0] * a[0]) / (1 - 2 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = first; i < half; ++i) a[i] = -a[i] / fac;
  }

  // Antisymmetric full coefficient vector: -a[i] at the low end.
  auto coef = [&](std::size_t i) {
    const std::size_t j = n - 1 - i;
    if (i == j) return 0.0;
    return i < j ? -a[i] : a[j];
  };
  double sa = 0, sx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += coef(i);
    sx += x[i];
  }
  sa /= an;
  sx /= an;
  double ssa = 0, ssx = 0, sax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double asa = coef(i) - sa;
    const double xsx = x[i] - sx;
    ssa += asa * asa;
    ssx += xsx * xsx;
    sax += asa * xsx;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  NormalityResult r;
  r.statistic = 1.0 - w1;

  if (n == 3) {
    constexpr double kPi6 = 1.90985931710274;
    constexpr double kStqr = 1.04719755119660;
    r.p_value = std::clamp(
        kPi6 * (std::asin(std::sqrt(r.statistic)) - kStqr), 0.0, 1.0);
    return r;
  }
  double y = std::log(w1);
  double m, s;
  if (n <= 11) {
    static const double kG[] = {-2.273, 0.459};
    static const double kC3[] = {0.5440, -0.39978, 0.025054, -6.714e-4};
    static const double kC4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
    const double gamma = poly(kG, an);
    if (y >= gamma) {
      r.p_value = 1e-99;
      return r;
    }
    y = -std::log(gamma - y);
    m = poly(kC3, an);
    s = std::exp(poly(kC4, an));
  } else {
    static const double kC5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static const double kC6[] = {-0.4803, -0.082676, 0.0030302};
    const double xx = std::log(an);
    m = poly(kC5, xx);
    s = std::exp(poly(kC6, xx));
  }
  r.p_value = std::clamp(normal_sf((y - m) / s), 0.0, 1.0);
  return r;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw ConfigError("mann_whitney_u: samples must be nonempty");
  }
  const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;
  std::vector<std::pair<double, bool>> pooled;
  pooled.reserve(n);
  for (double v : a) pooled.emplace_back(v, true);
  for (double v : b) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });

  double rank_sum_a = 0;
  double tie_term = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
    const double len = static_cast<double>(j - i);
    tie_term += len * len * len - len;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second) rank_sum_a += avg_rank;
    }
    i = j;
  }
  const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2);
  MannWhitneyResult r;
  r.u = rank_sum_a - dn1 * (dn1 + 1) / 2;
  const double u_max = std::max(r.u, dn1 * dn2 - r.u);

  if (n1 <= kMannWhitneyExactLimit && n2 <= kMannWhitneyExactLimit &&
      tie_term == 0.0) {
    r.exact = true;
    // counts[i][j][u]: orderings of i first-sample and j second-sample
    // values with statistic u.
    std::vector<std::vector<std::vector<double>>> counts(
        n1 + 1, std::vector<std::vector<double>>(n2 + 1));
    for (std::size_t i = 0; i <= n1; ++i) {
      for (std::size_t j = 0; j <= n2; ++j) {
        auto& c = counts[i][j];
        c.assign(i * j + 1, 0.0);
        if (i == 0 || j == 0) {
          c[0] = 1;
          continue;
        }
        const auto& without_a = counts[i - 1][j];  // largest from b
        const auto& without_b = counts[i][j - 1];
        for (std::size_t u = 0; u < without_b.size(); ++u) c[u] += without_b[u];
        for (std::size_t u = 0; u < without_a.size(); ++u) c[u + j] += without_a[u];
      }
    }
    const auto& dist = counts[n1][n2];
    const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
    double tail = 0;
    for (auto u = static_cast<std::size_t>(u_max); u < dist.size(); ++u) {
      tail += dist[u];
    }
    r.p_value = std::min(1.0, 2.0 * tail / total);
    return r;
  }

  const double dn = static_cast<double>(n);
  const double mu = dn1 * dn2 / 2;
  const double sigma =
      std::sqrt(dn1 * dn2 / 12 * ((dn + 1) - tie_term / (dn * (dn - 1))));
  if (!(sigma > 0)) {
    r.p_value = 1;
    return r;
  }
  const double z = (u_max - mu - 0.5) / sigma;
  r.p_value = std::clamp(2.0 * normal_sf(z), 0.0, 1.0);
  return r;
}

}  // namespace reachbench::evaluation

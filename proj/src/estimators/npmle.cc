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

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "reachbench/estimators/estimators.h"
#include "reachbench/util/random.h"
#include "reachbench/util/seed.h"

namespace reachbench::estimators {
namespace {

constexpr double kMinP = 1e-12;
constexpr double kMaxP = 1.0 - 1e-12;
constexpr double kPruneWeight = 1e-12;
constexpr double kMergeDistance = 1e-7;
// Points closer than this are indistinguishable at desk-scale t.
constexpr double kFinalMergeDistance = 1e-3;
constexpr double kUnboundedFactor = 1e6;

struct Mixture {
  std::vector<double> p;
  std::vector<double> w;
};

// Zero-truncated binomial mixture data: the observed classes k with f_k > 0.
struct Data {
  double t = 0.0;
  double n = 0.0;
  std::vector<double> k;
  std::vector<double> fk;
  std::vector<double> log_choose;  // log C(t, k) per class
  double log_choose0 = 0.0;
};

double log_sum_exp(const std::vector<double>& v) {
  const double top = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(top)) return top;
  double s = 0.0;
  for (double x : v) s += std::exp(x - top);
  return top + std::log(s);
}

// Probability of Y = 0 under the mixture.
double p_zero(const Data& d, const Mixture& m) {
  double s = 0.0;
  for (std::size_t j = 0; j < m.p.size(); ++j) {
    s += m.w[j] * std::exp(d.t * std::log1p(-m.p[j]));
  }
  return s;
}

double penalty(double n_total, double n, double target, double scale) {
  const double d = n_total - n - target;
  return d * d / (2.0 * scale);
}

// Maximizes the profile in N for fixed P0 by safeguarded Newton steps
// from `guess`. Returns -1 when unbounded.
double solve_n(const Data& d, double p0, bool penalized, double target,
               double scale, double guess) {
  const double log_p0 = p0 > 0.0 ? std::log(p0) : -INFINITY;
  auto slope = [&](double n_total) {
    double s = boost::math::digamma(n_total + 1.0) -
               boost::math::digamma(n_total - d.n + 1.0) + log_p0;
    if (penalized) s -= (n_total - d.n - target) / scale;
    return s;
  };
  auto curvature = [&](double n_total) {
    double c = boost::math::trigamma(n_total + 1.0) -
               boost::math::trigamma(n_total - d.n + 1.0);
    if (penalized) c -= 1.0 / scale;
    return c;
  };
  if (!(slope(d.n) > 0.0)) return d.n;
  const double cap = d.n * kUnboundedFactor + kUnboundedFactor;
  double lo = d.n;
  double hi = INFINITY;
  double x = std::max(guess, d.n + 1e-6);
  for (int it = 0; it < 200; ++it) {
    const double s = slope(x);
    if (s > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x - s / curvature(x);
    if (!(next > lo && next < hi)) {
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : d.n + 2.0 * (x - d.n);
    }
    if (next > cap) return -1.0;
    if (std::abs(next - x) <= 1e-12 * next) return next;
    x = next;
  }
  return x;
}

void prune(Mixture& m, double merge_distance = kMergeDistance) {
  std::vector<std::size_t> order(m.p.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return m.p[a] < m.p[b]; });
  Mixture out;
  for (std::size_t i : order) {
    if (m.w[i] < kPruneWeight) continue;
    if (!out.p.empty() && m.p[i] - out.p.back() < merge_distance) {
      const double w = out.w.back() + m.w[i];
      out.p.back() = (out.p.back() * out.w.back() + m.p[i] * m.w[i]) / w;
      out.w.back() = w;
    } else {
      out.p.push_back(m.p[i]);
      out.w.push_back(m.w[i]);
    }
  }
  double total = 0.0;
  for (double w : out.w) total += w;
  for (double& w : out.w) w /= total;
  m = std::move(out);
}

struct Fit {
  bool converged = false;
  bool unbounded = false;
  Mixture mixture;
  double n_total = 0.0;
  double objective = -INFINITY;
  int iterations = 0;
  double last_delta = 0.0;
};

Fit fit(const Data& d, Mixture m, double n_total, bool penalized, double target,
        double scale, const EmConfig& em) {
  Fit out;
  const std::size_t classes = d.k.size() + 1;
  std::vector<double> counts(classes);
  std::vector<double> ks(classes);
  std::vector<double> log_c(classes);
  ks[0] = 0.0;
  log_c[0] = d.log_choose0;
  for (std::size_t i = 0; i < d.k.size(); ++i) {
    counts[i + 1] = d.fk[i];
    ks[i + 1] = d.k[i];
    log_c[i + 1] = d.log_choose[i];
  }
  std::vector<double> dens(m.p.size() * classes);
  std::vector<double> terms;
  std::vector<double> log_w;
  std::vector<double> log_p;
  std::vector<double> log_q;
  const double base_n = d.n;
  double prev = -INFINITY;
  for (int it = 1; it <= em.max_iterations; ++it) {
    counts[0] = n_total - base_n;
    const std::size_t s = m.p.size();
    dens.resize(s * classes);
    terms.resize(s);
    log_w.resize(s);
    log_p.resize(s);
    log_q.resize(s);
    for (std::size_t j = 0; j < s; ++j) {
      log_w[j] = std::log(m.w[j]);
      log_p[j] = std::log(m.p[j]);
      log_q[j] = std::log1p(-m.p[j]);
    }
    // E-step; the normalizers also give the objective of the current state.
    double obj = std::lgamma(n_total + 1.0) - std::lgamma(n_total - base_n + 1.0);
    for (std::size_t c = 0; c < classes; ++c) {
      for (std::size_t j = 0; j < s; ++j) {
        terms[j] = log_w[j] + log_c[c] + ks[c] * log_p[j] + (d.t - ks[c]) * log_q[j];
      }
      const double total = log_sum_exp(terms);
      if (counts[c] > 0.0) obj += counts[c] * total;
      for (std::size_t j = 0; j < s; ++j) {
        dens[j * classes + c] = std::exp(terms[j] - total);
      }
    }
    if (penalized) obj -= penalty(n_total, base_n, target, scale);
    out.last_delta = obj - prev;
    if (std::abs(obj - prev) <= em.tolerance * (1.0 + std::abs(obj))) {
      prune(m);
      out.converged = true;
      out.mixture = std::move(m);
      out.n_total = n_total;
      out.objective = obj;
      out.iterations = it;
      return out;
    }
    prev = obj;
    for (std::size_t j = 0; j < s; ++j) {
      double mass = 0.0;
      double hits = 0.0;
      for (std::size_t c = 0; c < classes; ++c) {
        const double r = counts[c] * dens[j * classes + c];
        mass += r;
        hits += r * ks[c];
      }
      m.w[j] = mass / n_total;
      m.p[j] = mass > 0.0 ? std::clamp(hits / (d.t * mass), kMinP, kMaxP) : kMinP;
    }
    if (it % 50 == 0) prune(m);
    const double next_n =
        solve_n(d, p_zero(d, m), penalized, target, scale, n_total);
    if (next_n < 0.0) {
      out.unbounded = true;
      out.iterations = it;
      return out;
    }
    n_total = next_n;
  }
  out.iterations = em.max_iterations;
  out.mixture = std::move(m);
  out.n_total = n_total;
  out.objective = prev;
  return out;
}

}  // namespace

EstimateWithCI npmle(const FrequencyCounts& c, bool penalized, const EmConfig& em) {
  EstimateWithCI e;
  e.method = penalized ? Method::kPnpmle : Method::kUnpmle;
  e.status = Status::kFailed;
  if (c.t < 2) {
    e.message = "needs t >= 2";
    return e;
  }
  if (em.max_support < 1 || em.max_iterations < 1 || em.restarts < 0 ||
      !(em.tolerance > 0.0)) {
    e.message = "invalid EM configuration";
    return e;
  }
  if (c.s_obs == 0) {
    e.point = 0.0;
    e.status = Status::kOk;
    return e;
  }
  Data d;
  d.t = static_cast<double>(c.t);
  d.n = static_cast<double>(c.s_obs);
  d.log_choose0 = 0.0;
  for (std::size_t k = 1; k <= c.t; ++k) {
    if (c.count(k) == 0) continue;
    const double kk = static_cast<double>(k);
    d.k.push_back(kk);
    d.fk.push_back(static_cast<double>(c.count(k)));
    d.log_choose.push_back(std::lgamma(d.t + 1.0) - std::lgamma(kk + 1.0) -
                           std::lgamma(d.t - kk + 1.0));
  }

  // Penalty centre: the bias-corrected Chao2 count of unseen elements.
  const double a = (d.t - 1.0) / d.t;
  const double f1 = static_cast<double>(c.count(1));
  const double f2 = static_cast<double>(c.count(2));
  const double target = a * f1 * (f1 - 1.0) / (2.0 * (f2 + 1.0));
  const double scale = std::max(target, 1.0);

  // Starting points spread over the observed frequency classes.
  const std::size_t s = std::min<std::size_t>(em.max_support, d.k.size());
  Mixture base;
  for (std::size_t j = 0; j < s; ++j) {
    const std::size_t idx =
        s == 1 ? d.k.size() / 2 : j * (d.k.size() - 1) / (s - 1);
    base.p.push_back(std::clamp(d.k[idx] / d.t, kMinP, kMaxP));
    base.w.push_back(1.0 / static_cast<double>(s));
  }
  prune(base);

  Fit best;
  int unbounded = 0;
  int total_iterations = 0;
  for (int r = 0; r <= em.restarts; ++r) {
    Mixture init = base;
    if (r > 0) {
      Rng rng(derive_seed(0x6e706d6c65ULL, "npmle/restart",
                          static_cast<std::uint64_t>(r)));
      for (double& p : init.p) {
        p = std::clamp(p * std::exp(rng.uniform01() * 2.0 - 1.0), kMinP, kMaxP);
      }
      if (r == 1) {
        init.p.push_back(std::clamp(0.5 / d.t, kMinP, kMaxP));
        init.w.push_back(1.0 / static_cast<double>(init.w.size() + 1));
        double total = 0.0;
        for (double w : init.w) total += w;
        for (double& w : init.w) w /= total;
      }
    }
    const double n0 = d.n + std::max(target, 1.0);
    Fit candidate = fit(d, std::move(init), n0, penalized, target, scale, em);
    total_iterations += candidate.iterations;
    if (candidate.unbounded) ++unbounded;
    if (candidate.converged && candidate.objective > best.objective) {
      best = std::move(candidate);
    } else if (!best.converged && !candidate.unbounded &&
               candidate.objective > best.objective) {
      best = std::move(candidate);
    }
  }
  e.diagnostics.emplace_back("em_iterations", total_iterations);
  e.diagnostics.emplace_back("restarts_unbounded", unbounded);
  if (!best.converged) {
    e.diagnostics.emplace_back("loglik_delta", best.last_delta);
    e.message = unbounded > 0 ? "likelihood unbounded in N"
                              : "EM did not converge within the iteration budget";
    return e;
  }
  prune(best.mixture, kFinalMergeDistance);
  const double p0 = p_zero(d, best.mixture);
  if (!(p0 < kMaxP)) {
    e.message = "fitted P(Y=0) is 1";
    return e;
  }
  e.point = d.n / (1.0 - p0);
  e.status = Status::kOk;
  e.diagnostics.emplace_back("p0", p0);
  e.diagnostics.emplace_back("n_hat", best.n_total);
  const auto top = static_cast<std::size_t>(
      std::max_element(best.mixture.w.begin(), best.mixture.w.end()) -
      best.mixture.w.begin());
  e.diagnostics.emplace_back("dominant_p", best.mixture.p[top]);
  e.diagnostics.emplace_back("dominant_weight", best.mixture.w[top]);
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t j = 0; j < best.mixture.p.size(); ++j) {
    mean += best.mixture.w[j] * best.mixture.p[j];
    second += best.mixture.w[j] * best.mixture.p[j] * best.mixture.p[j];
  }
  e.diagnostics.emplace_back("mixture_mean", mean);
  e.diagnostics.emplace_back("mixture_sd", std::sqrt(std::max(second - mean * mean, 0.0)));
  e.diagnostics.emplace_back("support_points",
                             static_cast<double>(best.mixture.p.size()));
  e.diagnostics.emplace_back("log_likelihood", best.objective);
  if (penalized) e.diagnostics.emplace_back("penalty_target", target);
  if (e.point < d.n) e.point = d.n;
  return e;
}

}  // namespace reachbench::estimators

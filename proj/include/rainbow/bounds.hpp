// Closed-form girth bounds and the scalar inequalities the constructions
// lean on, as evaluable functions and sweepable predicates. log is base 2
// throughout; arithmetic is binary64 (the inequalities carry huge slack),
// with exact integer spot checks at powers of two where that is possible.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/error.hpp"

namespace rainbow {

inline double log2d(double x) { return std::log2(x); }

inline long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

// All bounds for an (n, k) instance. Entries that involve log k are not
// defined at k = 1 and stay empty there.
struct BoundTable {
  long long n = 0;
  long long k = 0;
  long long aharoni = 0;                // ceil(n/k)
  long long shen = 0;                   // ceil(n/k) + 73
  std::optional<double> bs_exact;       // 2(n+k)/(3k) (log k + log log k + 4)
  std::optional<double> bs_cor;         // 14(n+k) log k / (3k)
  std::optional<double> res_one;        // n (log k)^2 / (10 k^{3/2}) + 14 log k
  std::optional<double> cor_one;        // n (log k)^2 / (5 k^{3/2})
};

inline BoundTable bound_table(long long n, long long k) {
  if (n < 1 || k < 1) fail(Err::domain_error, "bound_table needs n >= 1 and k >= 1");
  BoundTable t;
  t.n = n;
  t.k = k;
  t.aharoni = ceil_div(n, k);
  t.shen = t.aharoni + 73;
  if (k >= 2) {
    const double nd = static_cast<double>(n), kd = static_cast<double>(k);
    const double lk = log2d(kd);
    t.bs_exact = 2.0 * (nd + kd) / (3.0 * kd) * (lk + log2d(lk) + 4.0);
    t.bs_cor = 14.0 * (nd + kd) * lk / (3.0 * kd);
    const double k32 = std::pow(kd, 1.5);
    t.res_one = nd * lk * lk / (10.0 * k32) + 14.0 * lk;
    t.cor_one = nd * lk * lk / (5.0 * k32);
  }
  return t;
}

struct LemmaResult {
  std::string name;
  bool pass = true;
  long long first_failure = -1;  // smallest violating k, -1 if none
};

struct LemmaReport {
  long long k_lo = 0;
  long long k_hi = 0;
  std::vector<LemmaResult> lemmas;
  bool all_pass = true;
};

// Sweeps the in-proof scalar inequalities over every integer k in
// [k_lo, k_hi]; where c appears it is 10^9. The fourth inequality is
// evaluated in log space so large k cannot overflow.
inline LemmaReport check_scalar_lemmas(long long k_lo, long long k_hi) {
  if (k_lo < 2 || k_hi < k_lo) fail(Err::domain_error, "need 2 <= k_lo <= k_hi");
  LemmaReport rep;
  rep.k_lo = k_lo;
  rep.k_hi = k_hi;
  const double c = 1e9;
  const double exponent_560 = std::sqrt(c) / (1120.0 * std::log(2.0)) - 0.5;

  auto sweep = [&](const std::string& name, auto&& pred) {
    LemmaResult r;
    r.name = name;
    for (long long k = k_lo; k <= k_hi; ++k) {
      if (!pred(static_cast<double>(k))) {
        r.pass = false;
        r.first_failure = k;
        break;
      }
    }
    rep.all_pass = rep.all_pass && r.pass;
    rep.lemmas.push_back(r);
  };

  sweep("loglog_k_plus_4_le_6_log_k",
        [&](double k) { return log2d(log2d(k)) + 4.0 <= 6.0 * log2d(k); });
  sweep("log_k_sq_le_5_sqrt_k",
        [&](double k) { const double l = log2d(k); return l * l <= 5.0 * std::sqrt(k); });
  sweep("5_k_pow_1_9_gt_log_k",
        [&](double k) { return 5.0 * std::pow(k, 1.0 / 9.0) > log2d(k); });
  sweep("560_le_k_pow_exp_log_k", [&](double k) {
    return log2d(560.0) <= exponent_560 * log2d(k) + log2d(log2d(k));
  });

  // Exact integer spot checks at k = 2^(2^i): both logs are integers there,
  // so the first two inequalities reduce to integer comparisons.
  LemmaResult exact;
  exact.name = "power_of_two_spot_checks";
  for (long long i = 0; i <= 4; ++i) {
    const long long j = 1LL << i;        // log k
    const long long k = 1LL << j;        // k = 2^j with log log k = i
    if (k < k_lo || k > k_hi) continue;
    if (!(i + 4 <= 6 * j)) { exact.pass = false; exact.first_failure = k; break; }
    // (log k)^2 <= 5 sqrt(k) at even j: compare squares to stay integral.
    if (j % 2 == 0 && !(j * j * j * j <= 25LL * k)) { exact.pass = false; exact.first_failure = k; break; }
  }
  rep.all_pass = rep.all_pass && exact.pass;
  rep.lemmas.push_back(exact);
  return rep;
}

struct VarianceReport {
  long long k = 0;
  long long r = 0;
  double c = 0;
  long long samples = 0;
  double x = 0;          // (r - 4k)/r, the point the bound is applied at
  double window_lo = 0;  // 1 - 400/c
  double max_ratio = 0;
  double argmax_y = 0;
  bool pass = false;
};

// Numeric check of the variance bound: with t = ck, for y in [x, 1) with
// x = (r-4k)/r, the dependent-sum variance estimate
//   t y^2 (1-y^2) + (t/50 + 16k) t (y^3 - y^4)
// must stay below t^2 (y^2 - 1/100)^2 k / (2r). The inequality is applied at
// y = x, and only holds to the right of x (the budget side shrinks like
// k/(2r) while the estimate is r-free), so the sweep covers [x, 1).
inline VarianceReport variance_bound_check(long long k, long long r, double c, long long samples) {
  if (k < 1 || r < 1 || c <= 0 || samples < 1) fail(Err::domain_error, "bad variance check arguments");
  const double t = c * static_cast<double>(k);
  if (t / 100.0 >= static_cast<double>(r))
    fail(Err::hypothesis_violated, "t/100 >= r: deletion hypothesis does not hold");
  if (static_cast<double>(r) <= 4.0 * static_cast<double>(k))
    fail(Err::hypothesis_violated, "r <= 4k: deletion probability is not a probability");

  VarianceReport rep;
  rep.k = k;
  rep.r = r;
  rep.c = c;
  rep.samples = samples;
  rep.window_lo = 1.0 - 400.0 / c;
  const double x = (static_cast<double>(r) - 4.0 * static_cast<double>(k)) / static_cast<double>(r);
  rep.x = x;

  const double pair_weight = (t / 50.0 + 16.0 * static_cast<double>(k)) * t;
  auto estimate = [&](double y) {
    const double y2 = y * y;
    return t * y2 * (1.0 - y2) + pair_weight * (y2 * y - y2 * y2);
  };
  auto budget = [&](double y) {
    const double d = y * y - 0.01;
    return t * t * d * d * static_cast<double>(k) / (2.0 * static_cast<double>(r));
  };

  rep.max_ratio = 0;
  const double step = (1.0 - x) / static_cast<double>(samples);
  for (long long i = 0; i < samples; ++i) {
    const double y = x + step * static_cast<double>(i);
    const double b = budget(y);
    if (b <= 0) { rep.max_ratio = std::numeric_limits<double>::infinity(); rep.argmax_y = y; break; }
    const double ratio = estimate(y) / b;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax_y = y;
    }
  }
  rep.pass = rep.max_ratio <= 1.0;
  return rep;
}

// Multiplicative Chernoff tails for a sum with the given expectation:
// lower tail P(X <= (1-eps)E) bound, upper tail P(X >= (1+eps)E) bound.
inline std::pair<double, double> chernoff_tails(double mean, double eps) {
  if (!(mean > 0) || !(eps > 0)) fail(Err::domain_error, "chernoff_tails needs mean > 0 and eps > 0");
  const double lower = std::exp(-eps * eps * mean / 2.0);
  const double upper = std::exp(-eps * eps * mean / (2.0 + eps));
  return {lower, upper};
}

}  // namespace rainbow

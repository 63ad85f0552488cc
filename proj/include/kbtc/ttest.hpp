#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "kbtc/error.hpp"

namespace kbtc {

struct TTestResult {
  double t = 0.0;
  std::size_t df = 0;
  double p = 1.0;  // two-tailed
  // All differences equal: t is 0 (no shift) or +/-inf, p is 1 or 0.
  bool zero_variance = false;
};

inline double student_t_density(double x, double df) {
  const double log_norm = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                          0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_norm - (df + 1.0) / 2.0 * std::log1p(x * x / df));
}

namespace detail {

template <typename F>
double adaptive_simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                             double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 50) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// P(|T| >= |t|) for Student's t with `df` degrees of freedom, from the
// density integrated over [0, |t|] on doubling panels [0,1], [1,2], [2,4], ...
inline double student_t_two_tailed_p(double t, double df, double tol = 1e-8) {
  if (!(df > 0.0)) throw Error(ErrorCode::kInvalidArgument, "degrees of freedom must be positive");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const double x = std::abs(t);
  auto density = [df](double v) { return student_t_density(v, df); };

  int panels = 1;
  for (double edge = 1.0; edge < x; edge *= 2.0) ++panels;
  const double panel_tol = tol / (2.0 * panels);

  double central = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (lo < x) {
    const double upper = std::min(hi, x);
    central += adaptive_simpson(density, lo, upper, panel_tol);
    lo = hi;
    hi *= 2.0;
  }
  return std::clamp(1.0 - 2.0 * central, 0.0, 1.0);
}

// Paired t-test over per-fold scores: d_i = a_i - b_i,
// t = mean(d) sqrt(k) / sd(d) with the k-1 sample deviation, df = k-1.
inline TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kLengthMismatch, "paired samples differ in length");
  const std::size_t k = a.size();
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "paired t-test needs at least 2 pairs");

  double mean = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    mean += a[i] - b[i];
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  }
  mean /= static_cast<double>(k);
  double ss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = (a[i] - b[i]) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(k - 1));

  TTestResult r;
  r.df = k - 1;
  // Differences equal up to rounding of the inputs count as constant.
  if (sd <= 1e-12 * scale) {
    r.zero_variance = true;
    if (std::abs(mean) <= 1e-12 * scale) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = std::copysign(std::numeric_limits<double>::infinity(), mean);
      r.p = 0.0;
    }
    return r;
  }
  r.t = mean * std::sqrt(static_cast<double>(k)) / sd;
  r.p = student_t_two_tailed_p(r.t, static_cast<double>(r.df));
  return r;
}

}  // namespace kbtc

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace multiwinner {
namespace bounds {

using rational = boost::multiprecision::cpp_rational;

// H_K = sum_{i=1..K} 1/i, exact
inline rational harmonic(int k) {
  if (k < 1) throw std::invalid_argument("harmonic: K >= 1 required");
  rational h = 0;
  for (int i = 1; i <= k; ++i) h += rational(1, i);
  return h;
}

inline double harmonic_double(int k) {
  double h = 0;
  for (int i = k; i >= 1; --i) h += 1.0 / i;
  return h;
}

// principal branch of w e^w = y for y >= 0, Newton from w0 = ln(1+y);
// long double internally so the returned double is the nearest root
inline double lambert_w(double y) {
  if (!(y >= 0)) throw std::invalid_argument("lambert_w: y >= 0 required");
  if (y == 0) return 0.0;
  long double target = y;
  long double w = std::log(1.0L + target);
  for (int it = 0; it < 200; ++it) {
    long double ew = std::exp(w);
    long double f = w * ew - target;
    if (std::fabs(f) <= 1e-18L * std::max(1.0L, target)) break;
    long double step = f / (ew * (w + 1.0L));
    // damp: never jump below the w >= 0 domain
    if (w - step < 0) step = w / 2.0L;
    w -= step;
  }
  return static_cast<double>(w);
}

// Algorithm A guarantee: 1 - (K-1)/(2(m-1)) - H_K/K
inline double monroe_greedy_bound(int m, int k) {
  if (m < 2 || k < 1) throw std::invalid_argument("monroe_greedy_bound: m >= 2, K >= 1");
  return 1.0 - (k - 1) / (2.0 * (m - 1)) - harmonic_double(k) / k;
}

// Algorithm A on P-truncated ballots: sum over rounds i = 0..K-1 of
// max(r(i), 0) / (n(m-1)) with the three-case r(i); the n/K factor cancels
inline double monroe_truncated_bound(int m, int k, int p) {
  if (m < 2 || k < 1 || k > m) throw std::invalid_argument("monroe_truncated_bound: bad m/K");
  if (p < 1 || p > m) throw std::invalid_argument("monroe_truncated_bound: P in [1, m]");
  double total = 0;
  for (int ii = 0; ii < k; ++ii) {
    double i = ii;
    double f;
    if (i + (m - i) / (k - i) <= p)
      f = m - i - (m - i) / (k - i);
    else if (i >= k - 2 && i <= 2.0 * p - m)
      f = (k - i) * (m - i) / 4.0;
    else
      f = (m - p) * (k - i) * (p - i) / (m - i);
    total += std::max(f, 0.0);
  }
  return total / (static_cast<double>(k) * (m - 1));
}

// expected single-sample quality of a random K-committee under Monroe:
// 1/2 (1 + K/m - K^2/(m^2 - m) + K^3/(m^3 - m^2))
inline double sampling_expected_ratio(int m, int k) {
  if (m < 2 || k < 1) throw std::invalid_argument("sampling_expected_ratio: bad m/K");
  double dm = m, dk = k;
  return 0.5 * (1.0 + dk / dm - dk * dk / (dm * dm - dm) +
                dk * dk * dk / (dm * dm * dm - dm * dm));
}

// P(quality below expectation - eps) <= exp(-K eps^2 / 128), needs K >= 8
inline double sampling_failure_prob(int k, double eps) {
  if (k < 8) throw std::invalid_argument("sampling_failure_prob: K >= 8 required");
  if (!(eps > 0)) throw std::invalid_argument("sampling_failure_prob: eps > 0");
  return std::exp(-k * eps * eps / 128.0);
}

// samples Algorithm AR gives Algorithm R: ceil(-512 ln(1 - lambda) / (K eps^2))
inline int ar_sample_count(int k, double eps, double lambda) {
  if (k < 1) throw std::invalid_argument("ar_sample_count: K >= 1");
  if (!(eps > 0 && eps < 1) || !(lambda > 0 && lambda < 1))
    throw std::invalid_argument("ar_sample_count: eps, lambda in (0,1)");
  return static_cast<int>(std::ceil(-512.0 * std::log(1.0 - lambda) / (k * eps * eps)));
}

// Algorithm P guarantee: 1 - 2 w(K)/K
inline double cc_p_bound(int k) {
  if (k < 1) throw std::invalid_argument("cc_p_bound: K >= 1");
  return 1.0 - 2.0 * lambert_w(k) / k;
}

// Algorithm P top-x window: ceil(m w(K) / K)
inline int cc_p_x(int m, int k) {
  if (m < 1 || k < 1 || k > m) throw std::invalid_argument("cc_p_x: bad m/K");
  int x = static_cast<int>(std::ceil(m * lambert_w(k) / k));
  return std::min(std::max(x, 1), m);
}

// Algorithm P on Q-truncated ballots: (m-Q)/(m-1) (1 - e^{-QK/m}),
// valid for Q <= m w(K)/K
inline double cc_truncated_bound(int m, int k, int q) {
  if (m < 2 || k < 1 || k > m) throw std::invalid_argument("cc_truncated_bound: bad m/K");
  if (q < 1 || q > m) throw std::invalid_argument("cc_truncated_bound: Q in [1, m]");
  if (q > m * lambert_w(k) / k)
    throw std::invalid_argument("cc_truncated_bound: requires Q <= m w(K)/K");
  return (m - q) / (m - 1.0) * (1.0 - std::exp(-(static_cast<double>(q) * k) / m));
}

// delta-relaxed P window: ceil(-m ln(delta) / K)
inline int cc_delta_x(int m, int k, double delta) {
  if (m < 1 || k < 1 || k > m) throw std::invalid_argument("cc_delta_x: bad m/K");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("cc_delta_x: delta in (0,1)");
  int x = static_cast<int>(std::ceil(-static_cast<double>(m) * std::log(delta) / k));
  return std::min(std::max(x, 1), m);
}

struct Crossover {
  double x;      // K/m where sampling overtakes the greedy guarantee
  double ratio;  // common value of both guarantees there
};

// root of 1 + x - x^2 + x^3 = 2 - x on (0,1); the left side is twice the
// limit sampling ratio, the right twice the greedy guarantee limit
inline Crossover sampling_crossover() {
  auto f = [](double x) { return x * x * x - x * x + 2.0 * x - 1.0; };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  return {x, 0.5 * (1.0 + x - x * x + x * x * x)};
}

struct BoundReport {
  std::string name;
  double raw = 0;
  double clamped = 0;  // raw clipped to [0,1] for ratio-type bounds
};

inline BoundReport make_bound_report(const std::string& name, double raw,
                                     bool is_ratio) {
  BoundReport r{name, raw, raw};
  if (is_ratio) r.clamped = std::min(1.0, std::max(0.0, raw));
  return r;
}

}  // namespace bounds
}  // namespace multiwinner

#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include "assignment.hpp"
#include "core.hpp"

namespace multiwinner {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BruteForceOptions {
  std::int64_t max_committees = 200000;
};

struct BruteForceResult {
  std::vector<alt_id> committee;
  Assignment assignment;
  std::int64_t value = 0;
};

namespace detail {

inline std::int64_t binomial_capped(int m, int k, std::int64_t cap) {
  if (k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (m - k + i) / i;  // exact: product of i consecutive ints divisible by i!
    if (c > cap) return cap + 1;
  }
  return c;
}

// lexicographic next k-combination over 0..m-1; false when exhausted
inline bool next_combination(std::vector<alt_id>& comb, int m) {
  int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[i] < m - k + i) {
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Exhaustive winner determination: every K-subset in lexicographic order,
// optimal assignment per rule, strict improvement keeps the earlier (lex
// smaller) committee on ties. The value is C_opt.
inline BruteForceResult brute_force_winners(const PreferenceProfile& profile,
                                            const ScoringFunction& psf,
                                            const ElectionRule& rule,
                                            const BruteForceOptions& opt = {}) {
  const int m = profile.num_alternatives();
  const int n = profile.num_voters();
  const int k = rule.k;
  if (k < 1 || k > m) throw std::invalid_argument("brute force: K out of range");
  if (rule.kind == RuleKind::monroe && k > n)
    throw std::invalid_argument("brute force: monroe needs K <= n");
  std::int64_t count = detail::binomial_capped(m, k, opt.max_committees);
  if (count > opt.max_committees) {
    std::ostringstream os;
    os << "brute force refused: C(" << m << "," << k << ") exceeds budget of "
       << opt.max_committees << " committees";
    throw BudgetError(os.str());
  }

  std::vector<alt_id> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  BruteForceResult best;
  bool have = false;
  do {
    Assignment phi = optimal_assignment(profile, psf, comb, rule);
    std::int64_t val = evaluate(profile, psf, phi).l1;
    if (!have || val > best.value) {
      best = {comb, std::move(phi), val};
      have = true;
    }
  } while (detail::next_combination(comb, m));
  return best;
}

// ILP for winner determination, CPLEX LP text format. Binary a_{i}_{j} says
// voter i is represented by alternative j, x_{j} says j is in the committee.
//   max sum alpha(pos_i(j)) a_i_j
//   (a) a_i_j <= x_j
//   (b) sum_j a_i_j = 1 for each voter
//   (c) floor(n/K) x_j <= sum_i a_i_j <= ceil(n/K) x_j   (Monroe only)
//   (d) sum_j x_j <= K
inline std::string emit_ilp(const PreferenceProfile& profile,
                            const ScoringFunction& psf,
                            const ElectionRule& rule) {
  const int m = profile.num_alternatives();
  const int n = profile.num_voters();
  const int k = rule.k;
  if (k < 1 || k > m) throw std::invalid_argument("emit_ilp: K out of range");
  if (psf.size() != m) throw std::invalid_argument("emit_ilp: psf size != m");
  if (rule.kind == RuleKind::general)
    throw std::invalid_argument("emit_ilp: monroe or cc only");
  const bool monroe = rule.kind == RuleKind::monroe;
  if (monroe && k > n) throw std::invalid_argument("emit_ilp: monroe needs K <= n");

  std::ostringstream os;
  os << "\\ " << (monroe ? "monroe" : "chamberlin-courant")
     << " winner determination, n=" << n << " m=" << m << " K=" << k << "\n";
  os << "Maximize\n obj:";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      std::int64_t c = psf.score_at(profile.position_of(i, j));
      os << (i == 0 && j == 0 ? " " : " + ") << c << " a_" << i << "_" << j;
    }
  os << "\nSubject To\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      os << " link_" << i << "_" << j << ": a_" << i << "_" << j << " - x_" << j
         << " <= 0\n";
  for (int i = 0; i < n; ++i) {
    os << " assign_" << i << ":";
    for (int j = 0; j < m; ++j) os << (j ? " + " : " ") << "a_" << i << "_" << j;
    os << " = 1\n";
  }
  if (monroe) {
    const int lo = n / k, hi = (n + k - 1) / k;
    for (int j = 0; j < m; ++j) {
      os << " cap_lo_" << j << ":";
      for (int i = 0; i < n; ++i) os << (i ? " + " : " ") << "a_" << i << "_" << j;
      os << " - " << lo << " x_" << j << " >= 0\n";
      os << " cap_hi_" << j << ":";
      for (int i = 0; i < n; ++i) os << (i ? " + " : " ") << "a_" << i << "_" << j;
      os << " - " << hi << " x_" << j << " <= 0\n";
    }
  }
  os << " size:";
  for (int j = 0; j < m; ++j) os << (j ? " + " : " ") << "x_" << j;
  os << " <= " << k << "\n";
  os << "Binary\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) os << " a_" << i << "_" << j << "\n";
  for (int j = 0; j < m; ++j) os << " x_" << j << "\n";
  os << "End\n";
  return os.str();
}

}  // namespace multiwinner

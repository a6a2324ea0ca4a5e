#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace multiwinner {

using voter_id = std::int32_t;
using alt_id = std::int32_t;

constexpr alt_id kUnassigned = -1;

// Preference profile over m alternatives (dense ids 0..m-1). Ballots are
// strict orders; truncated ballots simply list fewer than m alternatives.
// Positions are 1-based; every unlisted alternative sits at position m.
class PreferenceProfile {
 public:
  PreferenceProfile() : m_(0) {}

  PreferenceProfile(int m, std::vector<std::vector<alt_id>> rankings,
                    std::vector<std::string> names = {})
      : m_(m), rankings_(std::move(rankings)), names_(std::move(names)) {
    if (m_ <= 0) throw std::invalid_argument("profile: m must be positive");
    rebuild_positions();
  }

  int num_alternatives() const { return m_; }
  int num_voters() const { return static_cast<int>(rankings_.size()); }

  const std::vector<std::vector<alt_id>>& rankings() const { return rankings_; }
  const std::vector<alt_id>& ranking(voter_id v) const { return rankings_[v]; }
  const std::vector<std::string>& names() const { return names_; }

  // 1-based position of a in v's ballot; m if unlisted
  int position_of(voter_id v, alt_id a) const {
    return positions_[static_cast<std::size_t>(v) * m_ + a];
  }

  bool is_complete() const {
    for (const auto& r : rankings_)
      if (static_cast<int>(r.size()) != m_) return false;
    return true;
  }

 private:
  void rebuild_positions() {
    positions_.assign(static_cast<std::size_t>(num_voters()) * m_,
                      static_cast<std::int32_t>(m_));
    for (voter_id v = 0; v < num_voters(); ++v) {
      const auto& r = rankings_[v];
      if (static_cast<int>(r.size()) > m_)
        throw std::invalid_argument("profile: ballot longer than m");
      std::vector<char> seen(m_, 0);
      for (std::size_t i = 0; i < r.size(); ++i) {
        alt_id a = r[i];
        if (a < 0 || a >= m_)
          throw std::invalid_argument("profile: alternative id out of range");
        if (seen[a]) throw std::invalid_argument("profile: duplicate in ballot");
        seen[a] = 1;
        positions_[static_cast<std::size_t>(v) * m_ + a] =
            static_cast<std::int32_t>(i + 1);
      }
    }
  }

  int m_;
  std::vector<std::vector<alt_id>> rankings_;
  std::vector<std::string> names_;
  std::vector<std::int32_t> positions_;  // n x m, row-major
};

enum class PsfKind { borda_dec, borda_inc, truncated, custom };

// Positional scoring function alpha(1..m). DPSF in the algorithms' sense:
// nonincreasing with alpha(m) = 0, so an unassigned voter (position m)
// contributes nothing.
class ScoringFunction {
 public:
  ScoringFunction() = default;

  static ScoringFunction borda_dec(int m) {
    ScoringFunction f;
    f.kind_ = PsfKind::borda_dec;
    f.scores_.resize(m);
    for (int i = 1; i <= m; ++i) f.scores_[i - 1] = m - i;
    return f;
  }

  // increasing (dissatisfaction) variant: alpha(i) = i - 1
  static ScoringFunction borda_inc(int m) {
    ScoringFunction f;
    f.kind_ = PsfKind::borda_inc;
    f.scores_.resize(m);
    for (int i = 1; i <= m; ++i) f.scores_[i - 1] = i - 1;
    return f;
  }

  // <m-1, m-2, ..., m-P, 0, ..., 0>
  static ScoringFunction truncated(int m, int p) {
    if (p < 1 || p > m) throw std::invalid_argument("truncated psf: bad P");
    ScoringFunction f;
    f.kind_ = PsfKind::truncated;
    f.top_ = p;
    f.scores_.assign(m, 0);
    for (int i = 1; i <= p; ++i) f.scores_[i - 1] = m - i;
    return f;
  }

  static ScoringFunction custom(std::vector<std::int64_t> scores) {
    if (scores.empty()) throw std::invalid_argument("custom psf: empty");
    ScoringFunction f;
    f.kind_ = PsfKind::custom;
    f.scores_ = std::move(scores);
    return f;
  }

  PsfKind kind() const { return kind_; }
  int size() const { return static_cast<int>(scores_.size()); }
  int top() const { return top_; }

  std::int64_t score_at(int position) const { return scores_[position - 1]; }
  std::int64_t best() const { return scores_[0]; }

  bool is_dpsf() const {
    for (std::size_t i = 1; i < scores_.size(); ++i)
      if (scores_[i] > scores_[i - 1]) return false;
    return scores_.back() == 0;
  }

 private:
  PsfKind kind_ = PsfKind::borda_dec;
  int top_ = 0;
  std::vector<std::int64_t> scores_;
};

enum class RuleKind { monroe, chamberlin_courant, general };

struct ElectionRule {
  RuleKind kind = RuleKind::monroe;
  int k = 1;
  std::vector<int> capacities;  // general only: per-alternative caps

  static ElectionRule monroe(int k) { return {RuleKind::monroe, k, {}}; }
  static ElectionRule cc(int k) { return {RuleKind::chamberlin_courant, k, {}}; }
  static ElectionRule general(int k, std::vector<int> caps) {
    return {RuleKind::general, k, std::move(caps)};
  }

  // per-alternative capacity used when assigning n voters
  int capacity(int n, alt_id a = 0) const {
    switch (kind) {
      case RuleKind::monroe:
        return (n + k - 1) / k;  // ceil(n/K)
      case RuleKind::chamberlin_courant:
        return n;
      case RuleKind::general:
        return capacities.at(a);
    }
    return n;
  }
};

// Partial K-assignment: rep[v] is v's representative or kUnassigned.
struct Assignment {
  std::vector<alt_id> rep;

  int num_assigned() const {
    int c = 0;
    for (alt_id a : rep) c += (a != kUnassigned);
    return c;
  }

  std::vector<alt_id> used_alternatives() const {
    std::vector<alt_id> u;
    for (alt_id a : rep)
      if (a != kUnassigned) u.push_back(a);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
  }

  std::vector<int> load(int m) const {
    std::vector<int> c(m, 0);
    for (alt_id a : rep)
      if (a != kUnassigned) ++c[a];
    return c;
  }
};

struct EvaluationReport {
  std::int64_t l1 = 0;
  std::int64_t l_inf = 0;  // max per-voter satisfaction
  std::int64_t l_min = 0;  // min per-voter satisfaction
  int num_assigned = 0;
};

inline std::int64_t voter_satisfaction(const PreferenceProfile& profile,
                                       const ScoringFunction& psf, voter_id v,
                                       alt_id a) {
  int pos = (a == kUnassigned) ? profile.num_alternatives()
                               : profile.position_of(v, a);
  return psf.score_at(pos);
}

inline EvaluationReport evaluate(const PreferenceProfile& profile,
                                 const ScoringFunction& psf,
                                 const Assignment& phi) {
  if (static_cast<int>(phi.rep.size()) != profile.num_voters())
    throw std::invalid_argument("evaluate: assignment size != n");
  if (psf.size() != profile.num_alternatives())
    throw std::invalid_argument("evaluate: psf size != m");
  EvaluationReport r;
  bool first = true;
  for (voter_id v = 0; v < profile.num_voters(); ++v) {
    std::int64_t s = voter_satisfaction(profile, psf, v, phi.rep[v]);
    r.l1 += s;
    if (first) {
      r.l_inf = r.l_min = s;
      first = false;
    } else {
      r.l_inf = std::max(r.l_inf, s);
      r.l_min = std::min(r.l_min, s);
    }
    r.num_assigned += (phi.rep[v] != kUnassigned);
  }
  return r;
}

// C_ideal: every voter at their top choice
inline std::int64_t ideal_satisfaction(const PreferenceProfile& profile,
                                       const ScoringFunction& psf) {
  return static_cast<std::int64_t>(profile.num_voters()) * psf.best();
}

// exact reduced ratio of two non-negative 64-bit ints
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio of(std::int64_t num, std::int64_t den) {
    if (den == 0) return {num == 0 ? 0 : 1, 0};  // 0/0 -> 0, x/0 kept as inf marker
    std::int64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    return {num / g, den / g};
  }

  double value() const {
    if (den == 0) return num == 0 ? 0.0 : 1.0 / 0.0;
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

}  // namespace multiwinner

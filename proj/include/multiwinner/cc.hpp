#pragma once

#include <cmath>
#include <cstdint>
#include <map>

#include "assignment.hpp"
#include "bounds.hpp"
#include "core.hpp"
#include "exact.hpp"
#include "rng.hpp"
#include "solution.hpp"

namespace multiwinner {

namespace detail {

inline void validate_cc_args(const PreferenceProfile& profile,
                             const ScoringFunction& psf, int k,
                             bool borda_like_only) {
  if (psf.size() != profile.num_alternatives())
    throw std::invalid_argument("psf size != m");
  if (k < 1 || k > profile.num_alternatives())
    throw std::invalid_argument("K out of range (K > m)");
  if (borda_like_only && psf.kind() != PsfKind::borda_dec &&
      psf.kind() != PsfKind::truncated)
    throw std::invalid_argument("algorithm requires borda_dec or truncated psf");
  if (!psf.is_dpsf())
    throw std::invalid_argument("algorithm requires a DPSF (nonincreasing, alpha(m)=0)");
}

// CC value of a committee: every voter at their best member
inline std::int64_t cc_value(const PreferenceProfile& profile,
                             const ScoringFunction& psf,
                             const std::vector<alt_id>& committee) {
  std::int64_t total = 0;
  for (voter_id v = 0; v < profile.num_voters(); ++v) {
    int best = profile.num_alternatives();
    for (alt_id a : committee) best = std::min(best, profile.position_of(v, a));
    total += psf.score_at(best);
  }
  return total;
}

inline SolutionReport finish_cc(const PreferenceProfile& profile,
                                const ScoringFunction& psf,
                                const std::string& algorithm, int k,
                                const std::vector<alt_id>& committee) {
  Assignment phi = optimal_assignment_cc(profile, committee);
  return make_report(profile, psf, "cc", algorithm, k, committee, phi);
}

// coverage-greedy committee of Algorithm P: K rounds picking the alternative
// ranked within the top x by the most still-unassigned voters (ties to the
// lowest id), exactly those voters then counting as assigned
inline std::vector<alt_id> p_select(const PreferenceProfile& profile, int k,
                                    int x) {
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  std::vector<char> assigned(n, 0), used(m, 0);
  std::vector<alt_id> committee;
  for (int round = 0; round < k; ++round) {
    int best_cover = -1;
    alt_id best_alt = -1;
    for (alt_id a = 0; a < m; ++a) {
      if (used[a]) continue;
      int cover = 0;
      for (voter_id v = 0; v < n; ++v)
        if (!assigned[v] && profile.position_of(v, a) <= x) ++cover;
      if (cover > best_cover) {
        best_cover = cover;
        best_alt = a;
      }
    }
    used[best_alt] = 1;
    committee.push_back(best_alt);
    for (voter_id v = 0; v < n; ++v)
      if (!assigned[v] && profile.position_of(v, best_alt) <= x) assigned[v] = 1;
  }
  std::sort(committee.begin(), committee.end());
  return committee;
}

}  // namespace detail

// greedy marginal-gain committee for CC; (1 - 1/e) guarantee
inline SolutionReport cc_algo_gm(const PreferenceProfile& profile,
                                 const ScoringFunction& psf, int k) {
  detail::validate_cc_args(profile, psf, k, /*borda_like_only=*/false);
  detail::Stopwatch sw;
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  std::vector<int> best_pos(n, m);  // position of current best member
  std::vector<char> used(m, 0);
  std::vector<alt_id> committee;
  for (int round = 0; round < k; ++round) {
    std::int64_t best_val = -1;
    alt_id best_alt = -1;
    for (alt_id a = 0; a < m; ++a) {
      if (used[a]) continue;
      std::int64_t val = 0;
      for (voter_id v = 0; v < n; ++v)
        val += psf.score_at(std::min(best_pos[v], profile.position_of(v, a)));
      if (val > best_val) {
        best_val = val;
        best_alt = a;
      }
    }
    used[best_alt] = 1;
    committee.push_back(best_alt);
    for (voter_id v = 0; v < n; ++v)
      best_pos[v] = std::min(best_pos[v], profile.position_of(v, best_alt));
  }
  std::sort(committee.begin(), committee.end());
  SolutionReport rep = detail::finish_cc(profile, psf, "gm", k, committee);
  rep.time_ms = sw.ms();
  return rep;
}

// beam search of width d; extending a state by alternative a reassigns every
// voter who strictly prefers a to their current representative. d = 1
// reproduces cc_algo_gm. Pruning once per round; equal winner sets merge.
inline SolutionReport cc_algo_c(const PreferenceProfile& profile,
                                const ScoringFunction& psf, int k, int d) {
  detail::validate_cc_args(profile, psf, k, /*borda_like_only=*/false);
  if (d < 1) throw std::invalid_argument("cc_algo_c: d >= 1");
  detail::Stopwatch sw;
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();

  struct State {
    std::vector<int> best_pos;
    std::vector<char> used;
    std::vector<alt_id> committee;  // sorted
    std::int64_t sat = 0;
  };
  std::vector<State> beam(1);
  beam[0].best_pos.assign(n, m);
  beam[0].used.assign(m, 0);

  for (int round = 0; round < k; ++round) {
    struct Ext {
      std::int64_t sat;
      int parent;
      alt_id alt;
    };
    std::vector<Ext> exts;
    std::map<std::vector<alt_id>, std::size_t> by_committee;
    for (std::size_t p = 0; p < beam.size(); ++p)
      for (alt_id a = 0; a < m; ++a) {
        if (beam[p].used[a]) continue;
        std::int64_t sat = 0;
        for (voter_id v = 0; v < n; ++v)
          sat += psf.score_at(std::min(beam[p].best_pos[v], profile.position_of(v, a)));
        std::vector<alt_id> key = beam[p].committee;
        key.insert(std::lower_bound(key.begin(), key.end(), a), a);
        auto it = by_committee.find(key);
        if (it == by_committee.end()) {
          by_committee.emplace(std::move(key), exts.size());
          exts.push_back({sat, static_cast<int>(p), a});
        } else if (sat > exts[it->second].sat) {
          exts[it->second] = {sat, static_cast<int>(p), a};
        }
      }
    std::stable_sort(exts.begin(), exts.end(),
                     [](const Ext& x, const Ext& y) { return x.sat > y.sat; });
    if (static_cast<int>(exts.size()) > d) exts.resize(d);

    std::vector<State> next;
    next.reserve(exts.size());
    for (const Ext& e : exts) {
      State s = beam[e.parent];
      for (voter_id v = 0; v < n; ++v)
        s.best_pos[v] = std::min(s.best_pos[v], profile.position_of(v, e.alt));
      s.used[e.alt] = 1;
      s.committee.insert(
          std::lower_bound(s.committee.begin(), s.committee.end(), e.alt), e.alt);
      s.sat = e.sat;
      next.push_back(std::move(s));
    }
    beam = std::move(next);
  }

  std::size_t best = 0;  // beam is sorted by sat already; ties keep order
  SolutionReport rep =
      detail::finish_cc(profile, psf, "c", k, beam[best].committee);
  rep.params["d"] = d;
  rep.time_ms = sw.ms();
  return rep;
}

// Algorithm P: coverage greedy with window x = ceil(m w(K)/K); the returned
// assignment is the pointwise-best map onto the selected committee.
// 1 - 2w(K)/K guarantee for complete Borda ballots.
inline SolutionReport cc_algo_p(const PreferenceProfile& profile,
                                const ScoringFunction& psf, int k,
                                std::optional<int> x_override = std::nullopt) {
  detail::validate_cc_args(profile, psf, k, /*borda_like_only=*/true);
  detail::Stopwatch sw;
  const int m = profile.num_alternatives();
  int x = x_override ? *x_override : bounds::cc_p_x(m, k);
  if (x < 1 || x > m) throw std::invalid_argument("cc_algo_p: x in [1, m]");
  std::vector<alt_id> committee = detail::p_select(profile, k, x);
  SolutionReport rep = detail::finish_cc(profile, psf, "p", k, committee);
  rep.params["x"] = x;
  rep.time_ms = sw.ms();
  return rep;
}

// delta-relaxed Algorithm P: window x = ceil(-m ln(delta)/K); additionally
// reports l_min over the best (1-delta) fraction of voters and the
// (1 + ln(delta)/K) guarantee scaled by the top score
inline SolutionReport cc_algo_p_delta(const PreferenceProfile& profile,
                                      const ScoringFunction& psf, int k,
                                      double delta) {
  detail::validate_cc_args(profile, psf, k, /*borda_like_only=*/true);
  if (!(delta > 0 && delta < 1))
    throw std::invalid_argument("cc_algo_p_delta: delta in (0,1)");
  detail::Stopwatch sw;
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  int x = bounds::cc_delta_x(m, k, delta);
  std::vector<alt_id> committee = detail::p_select(profile, k, x);
  SolutionReport rep = detail::finish_cc(profile, psf, "p-delta", k, committee);
  rep.params["x"] = x;
  rep.delta = delta;

  std::vector<std::int64_t> sats(n);
  for (voter_id v = 0; v < n; ++v)
    sats[v] = voter_satisfaction(profile, psf, v, rep.assignment.rep[v]);
  std::sort(sats.begin(), sats.end(), std::greater<>());
  int keep = static_cast<int>(std::ceil((1.0 - delta) * n));
  keep = std::min(std::max(keep, 1), n);
  rep.l_min_delta = sats[keep - 1];
  rep.delta_bound = (1.0 + std::log(delta) / k) * static_cast<double>(psf.best());
  rep.time_ms = sw.ms();
  return rep;
}

// Algorithm R for CC: best of `samples` uniform K-committees under the
// pointwise-best assignment; substream (seed, i) per sample
inline SolutionReport cc_algo_r(const PreferenceProfile& profile,
                                const ScoringFunction& psf, int k, int samples,
                                std::uint64_t seed) {
  detail::validate_cc_args(profile, psf, k, /*borda_like_only=*/false);
  if (samples < 1) throw std::invalid_argument("cc_algo_r: samples >= 1");
  detail::Stopwatch sw;
  const int m = profile.num_alternatives();
  std::int64_t best_val = -1;
  std::vector<alt_id> best_committee;
  for (int i = 0; i < samples; ++i) {
    rng64 rng = rng64::substream(seed, i);
    std::vector<alt_id> committee = sample_subset<alt_id>(m, k, rng);
    std::int64_t val = detail::cc_value(profile, psf, committee);
    if (val > best_val) {
      best_val = val;
      best_committee = std::move(committee);
    }
  }
  SolutionReport rep = detail::finish_cc(profile, psf, "r", k, best_committee);
  rep.params["samples"] = samples;
  rep.seed = seed;
  rep.time_ms = sw.ms();
  return rep;
}

}  // namespace multiwinner

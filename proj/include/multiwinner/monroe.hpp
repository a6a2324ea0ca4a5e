#pragma once

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

inline void validate_monroe_args(const PreferenceProfile& profile,
                                 const ScoringFunction& psf, int k,
                                 bool borda_like_only) {
  if (psf.size() != profile.num_alternatives())
    throw std::invalid_argument("psf size != m");
  if (k < 1 || k > profile.num_alternatives())
    throw std::invalid_argument("K out of range (K > m)");
  if (k > profile.num_voters())
    throw std::invalid_argument("monroe needs K <= n");
  if (borda_like_only && psf.kind() != PsfKind::borda_dec &&
      psf.kind() != PsfKind::truncated)
    throw std::invalid_argument("algorithm requires borda_dec or truncated psf");
  if (!psf.is_dpsf())
    throw std::invalid_argument("algorithm requires a DPSF (nonincreasing, alpha(m)=0)");
}

// voters each greedy round assigns: ceil(n/K) while the remainder lasts,
// floor(n/K) after, so the K rounds cover all n voters (ILP (c) stays
// feasible when K does not divide n)
inline std::vector<int> round_quotas(int n, int k) {
  std::vector<int> q(k, n / k);
  for (int i = 0; i < n % k; ++i) ++q[i];
  return q;
}

// the t unassigned voters ranking a best, by (position, voter index)
inline std::vector<std::pair<int, voter_id>> top_voters_for(
    const PreferenceProfile& profile, const std::vector<char>& assigned,
    alt_id a, int t) {
  std::vector<std::pair<int, voter_id>> cand;
  cand.reserve(profile.num_voters());
  for (voter_id v = 0; v < profile.num_voters(); ++v)
    if (!assigned[v]) cand.push_back({profile.position_of(v, a), v});
  if (static_cast<int>(cand.size()) > t) {
    std::partial_sort(cand.begin(), cand.begin() + t, cand.end());
    cand.resize(t);
  } else {
    std::sort(cand.begin(), cand.end());
  }
  return cand;
}

inline std::int64_t greedy_gain(const PreferenceProfile& profile,
                                const ScoringFunction& psf,
                                const std::vector<char>& assigned, alt_id a,
                                int t) {
  std::int64_t g = 0;
  for (const auto& [pos, v] : top_voters_for(profile, assigned, a, t))
    g += psf.score_at(pos);
  return g;
}

}  // namespace detail

// Algorithm A: exact for K <= 2, else K greedy rounds each grabbing the
// best-scoring unused alternative together with its top unassigned voters.
// Ties: lowest alternative id, then lowest voter id.
inline SolutionReport algo_a(const PreferenceProfile& profile,
                             const ScoringFunction& psf, int k,
                             const BruteForceOptions& budget = {}) {
  detail::validate_monroe_args(profile, psf, k, /*borda_like_only=*/true);
  detail::Stopwatch sw;
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();

  if (k <= 2) {
    BruteForceResult bf =
        brute_force_winners(profile, psf, ElectionRule::monroe(k), budget);
    SolutionReport rep = detail::make_report(profile, psf, "monroe", "a", k,
                                             bf.committee, bf.assignment);
    rep.time_ms = sw.ms();
    return rep;
  }

  std::vector<int> quotas = detail::round_quotas(n, k);
  std::vector<char> assigned(n, 0), used(m, 0);
  Assignment phi;
  phi.rep.assign(n, kUnassigned);
  std::vector<alt_id> committee;
  for (int round = 0; round < k; ++round) {
    const int t = quotas[round];
    std::int64_t best_gain = -1;
    alt_id best_alt = -1;
    for (alt_id a = 0; a < m; ++a) {
      if (used[a]) continue;
      std::int64_t g = detail::greedy_gain(profile, psf, assigned, a, t);
      if (g > best_gain) {
        best_gain = g;
        best_alt = a;
      }
    }
    used[best_alt] = 1;
    committee.push_back(best_alt);
    for (const auto& [pos, v] :
         detail::top_voters_for(profile, assigned, best_alt, t)) {
      assigned[v] = 1;
      phi.rep[v] = best_alt;
    }
  }
  SolutionReport rep =
      detail::make_report(profile, psf, "monroe", "a", k, committee, phi);
  rep.time_ms = sw.ms();
  return rep;
}

// Algorithm B: A's committee, then the optimal balanced reassignment
inline SolutionReport algo_b(const PreferenceProfile& profile,
                             const ScoringFunction& psf, int k,
                             const BruteForceOptions& budget = {}) {
  detail::Stopwatch sw;
  SolutionReport a = algo_a(profile, psf, k, budget);
  Assignment phi = optimal_assignment_capacitated(
      profile, psf, a.committee, ElectionRule::monroe(k).capacity(a.n),
      /*require_balanced=*/true);
  SolutionReport rep =
      detail::make_report(profile, psf, "monroe", "b", k, a.committee, phi);
  rep.time_ms = sw.ms();
  return rep;
}

// Algorithm C: beam of width d over partial assignments; extends every beam
// state by every unused alternative, prunes once per round to the d best by
// assigned satisfaction (states with equal winner sets merge, keeping the
// higher satisfaction), and finally reoptimizes each survivor with the
// balanced flow. d = 1 reproduces Algorithm B.
inline SolutionReport algo_c(const PreferenceProfile& profile,
                             const ScoringFunction& psf, int k, int d) {
  detail::validate_monroe_args(profile, psf, k, /*borda_like_only=*/true);
  if (d < 1) throw std::invalid_argument("algo_c: d >= 1");
  detail::Stopwatch sw;
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  std::vector<int> quotas = detail::round_quotas(n, k);

  struct State {
    Assignment phi;
    std::vector<char> assigned;
    std::vector<char> used;
    std::vector<alt_id> committee;  // sorted
    std::int64_t sat = 0;
  };
  std::vector<State> beam(1);
  beam[0].phi.rep.assign(n, kUnassigned);
  beam[0].assigned.assign(n, 0);
  beam[0].used.assign(m, 0);

  for (int round = 0; round < k; ++round) {
    const int t = quotas[round];
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
        std::int64_t sat =
            beam[p].sat + detail::greedy_gain(profile, psf, beam[p].assigned, a, t);
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
      for (const auto& [pos, v] :
           detail::top_voters_for(profile, s.assigned, e.alt, t)) {
        s.assigned[v] = 1;
        s.phi.rep[v] = e.alt;
      }
      s.used[e.alt] = 1;
      s.committee.insert(
          std::lower_bound(s.committee.begin(), s.committee.end(), e.alt), e.alt);
      s.sat = e.sat;
      next.push_back(std::move(s));
    }
    beam = std::move(next);
  }

  const int cap = ElectionRule::monroe(k).capacity(n);
  std::int64_t best_val = -1;
  std::vector<alt_id> best_committee;
  Assignment best_phi;
  for (const State& s : beam) {
    Assignment phi = optimal_assignment_capacitated(profile, psf, s.committee,
                                                    cap, /*require_balanced=*/true);
    std::int64_t val = evaluate(profile, psf, phi).l1;
    if (val > best_val) {
      best_val = val;
      best_committee = s.committee;
      best_phi = std::move(phi);
    }
  }
  SolutionReport rep =
      detail::make_report(profile, psf, "monroe", "c", k, best_committee, best_phi);
  rep.params["d"] = d;
  rep.time_ms = sw.ms();
  return rep;
}

// Greedy marginal-gain committee (Algorithm GM): K rounds each adding the
// alternative maximizing l1 of the optimal ceil(n/K)-capacitated partial
// assignment; (1 - 1/e) guarantee by submodularity of that value.
inline SolutionReport algo_gm(const PreferenceProfile& profile,
                              const ScoringFunction& psf, int k) {
  detail::validate_monroe_args(profile, psf, k, /*borda_like_only=*/false);
  detail::Stopwatch sw;
  const int m = profile.num_alternatives();
  const int cap = ElectionRule::monroe(k).capacity(profile.num_voters());
  std::vector<alt_id> committee;
  for (int round = 0; round < k; ++round) {
    std::int64_t best_val = -1;
    alt_id best_alt = -1;
    for (alt_id a = 0; a < m; ++a) {
      if (std::binary_search(committee.begin(), committee.end(), a)) continue;
      std::vector<alt_id> trial = committee;
      trial.insert(std::lower_bound(trial.begin(), trial.end(), a), a);
      std::int64_t val = capacitated_value(profile, psf, trial, cap);
      if (val > best_val) {
        best_val = val;
        best_alt = a;
      }
    }
    committee.insert(
        std::lower_bound(committee.begin(), committee.end(), best_alt), best_alt);
  }
  Assignment phi =
      optimal_assignment_capacitated(profile, psf, committee, cap, false);
  SolutionReport rep =
      detail::make_report(profile, psf, "monroe", "gm", k, committee, phi);
  rep.time_ms = sw.ms();
  return rep;
}

// Algorithm R: `samples` uniformly random K-committees, each optimally
// balanced-assigned; best kept. Sample i uses substream (seed, i) so the
// result does not depend on evaluation order.
inline SolutionReport algo_r(const PreferenceProfile& profile,
                             const ScoringFunction& psf, int k, int samples,
                             std::uint64_t seed) {
  detail::validate_monroe_args(profile, psf, k, /*borda_like_only=*/false);
  if (samples < 1) throw std::invalid_argument("algo_r: samples >= 1");
  detail::Stopwatch sw;
  const int m = profile.num_alternatives();
  std::int64_t best_val = -1;
  std::vector<alt_id> best_committee;
  Assignment best_phi;
  for (int i = 0; i < samples; ++i) {
    rng64 rng = rng64::substream(seed, i);
    std::vector<alt_id> committee = sample_subset<alt_id>(m, k, rng);
    Assignment phi = optimal_assignment_capacitated(
        profile, psf, committee, ElectionRule::monroe(k).capacity(profile.num_voters()),
        /*require_balanced=*/true);
    std::int64_t val = evaluate(profile, psf, phi).l1;
    if (val > best_val) {
      best_val = val;
      best_committee = std::move(committee);
      best_phi = std::move(phi);
    }
  }
  SolutionReport rep =
      detail::make_report(profile, psf, "monroe", "r", k, best_committee, best_phi);
  rep.params["samples"] = samples;
  rep.seed = seed;
  rep.time_ms = sw.ms();
  return rep;
}

// Algorithm AR: exact for K <= 8 or H_K/K >= eps/2; brute force for
// m <= 1 + 2/eps; otherwise the better of A and R with
// ceil(-512 ln(1-lambda) / (K eps^2)) samples. 0.715 - eps guarantee.
inline SolutionReport algo_ar(const PreferenceProfile& profile,
                              const ScoringFunction& psf, int k, double eps,
                              double lambda, std::uint64_t seed,
                              const BruteForceOptions& budget = {}) {
  detail::validate_monroe_args(profile, psf, k, /*borda_like_only=*/true);
  if (!(eps > 0 && eps < 1) || !(lambda > 0 && lambda < 1))
    throw std::invalid_argument("algo_ar: eps, lambda in (0,1)");
  detail::Stopwatch sw;
  const int m = profile.num_alternatives();
  double hk = bounds::harmonic_double(k);

  auto exact_branch = [&](const char* branch_name, double branch_code) {
    BruteForceResult bf;
    try {
      bf = brute_force_winners(profile, psf, ElectionRule::monroe(k), budget);
    } catch (const BudgetError& e) {
      throw BudgetError(std::string("algo_ar ") + branch_name + ": " + e.what());
    }
    SolutionReport rep = detail::make_report(profile, psf, "monroe", "ar", k,
                                             bf.committee, bf.assignment);
    rep.params["branch"] = branch_code;
    rep.params["epsilon"] = eps;
    rep.params["lambda"] = lambda;
    rep.time_ms = sw.ms();
    return rep;
  };

  if (hk / k >= eps / 2.0 || k <= 8)
    return exact_branch("exact branch (K <= 8 or H_K/K >= eps/2)", 0);
  if (m <= 1.0 + 2.0 / eps)
    return exact_branch("small-m brute-force branch (m <= 1 + 2/eps)", 1);

  SolutionReport a = algo_a(profile, psf, k, budget);
  int samples = bounds::ar_sample_count(k, eps, lambda);
  SolutionReport r = algo_r(profile, psf, k, samples, seed);
  SolutionReport rep = (a.l1 >= r.l1) ? std::move(a) : std::move(r);
  rep.algorithm = "ar";
  rep.params["branch"] = 2;
  rep.params["epsilon"] = eps;
  rep.params["lambda"] = lambda;
  rep.params["samples"] = samples;
  rep.seed = seed;
  rep.time_ms = sw.ms();
  return rep;
}

}  // namespace multiwinner

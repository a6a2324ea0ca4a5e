#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "core.hpp"

namespace multiwinner {

struct SolutionReport {
  std::string rule;       // "monroe" | "cc"
  std::string algorithm;  // "a", "b", "c", "gm", "r", "ar", "p", "p-delta", "exact"
  int n = 0, m = 0, k = 0;
  std::vector<alt_id> committee;  // sorted ascending
  Assignment assignment;
  std::int64_t l1 = 0, l_inf = 0, l_min = 0;
  std::int64_t ideal = 0;
  std::optional<std::int64_t> c_opt;
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> params;
  // p-delta extras
  std::optional<double> delta;
  std::optional<std::int64_t> l_min_delta;
  std::optional<double> delta_bound;
  double time_ms = 0.0;

  Ratio ratio_to_ideal() const { return Ratio::of(l1, ideal); }
  std::optional<Ratio> ratio_to_opt() const {
    if (!c_opt) return std::nullopt;
    return Ratio::of(l1, *c_opt);
  }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline SolutionReport make_report(const PreferenceProfile& profile,
                                  const ScoringFunction& psf,
                                  const std::string& rule,
                                  const std::string& algorithm, int k,
                                  std::vector<alt_id> committee,
                                  Assignment assignment) {
  SolutionReport r;
  r.rule = rule;
  r.algorithm = algorithm;
  r.n = profile.num_voters();
  r.m = profile.num_alternatives();
  r.k = k;
  std::sort(committee.begin(), committee.end());
  r.committee = std::move(committee);
  EvaluationReport ev = evaluate(profile, psf, assignment);
  r.assignment = std::move(assignment);
  r.l1 = ev.l1;
  r.l_inf = ev.l_inf;
  r.l_min = ev.l_min;
  r.ideal = ideal_satisfaction(profile, psf);
  return r;
}

}  // namespace detail
}  // namespace multiwinner

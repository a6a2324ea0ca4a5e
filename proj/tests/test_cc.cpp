#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include <multiwinner/bounds.hpp>
#include <multiwinner/cc.hpp>
#include <multiwinner/exact.hpp>
#include <multiwinner/rng.hpp>

#include "oracles.hpp"

using namespace multiwinner;

namespace {

void require_pointwise_optimal(const PreferenceProfile& prof,
                               const ScoringFunction& psf,
                               const SolutionReport& rep) {
  for (voter_id v = 0; v < prof.num_voters(); ++v) {
    std::int64_t got = voter_satisfaction(prof, psf, v, rep.assignment.rep[v]);
    for (alt_id a : rep.committee)
      REQUIRE(got >= voter_satisfaction(prof, psf, v, a));
  }
}

}  // namespace

TEST_CASE("cc_algo_p worked example: three voters, one seat") {
  // v1: a>b>c, v2: a>c>b, v3: b>a>c; x = ceil(3 w(1)) = 2; a covers all three
  // voters within their top 2, committee {a}, l1 = 5 = C_opt
  PreferenceProfile prof(3, {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}});
  auto psf = ScoringFunction::borda_dec(3);
  auto rep = cc_algo_p(prof, psf, 1);
  REQUIRE(rep.params.at("x") == 2.0);
  REQUIRE(rep.committee == std::vector<alt_id>{0});
  REQUIRE(rep.l1 == 5);
  auto opt = brute_force_winners(prof, psf, ElectionRule::cc(1));
  REQUIRE(rep.l1 == opt.value);
  require_pointwise_optimal(prof, psf, rep);
}

TEST_CASE("cc_algo_p respects the lemma bound on random instances") {
  rng64 seeds(321);
  for (int t = 0; t < 25; ++t) {
    int n = 5 + static_cast<int>(seeds.below(12));
    int m = 4 + static_cast<int>(seeds.below(9));
    int k = 1 + static_cast<int>(seeds.below(std::min(m, 6)));
    auto prof = oracle::random_profile(n, m, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(m);
    auto rep = cc_algo_p(prof, psf, k);
    double bound = bounds::cc_p_bound(k) * n * (m - 1);
    REQUIRE(static_cast<double>(rep.l1) >= bound - 1e-9);
    require_pointwise_optimal(prof, psf, rep);
  }
}

TEST_CASE("cc_algo_p bound also holds at K = m") {
  auto prof = oracle::random_profile(9, 6, 77);
  auto psf = ScoringFunction::borda_dec(6);
  auto rep = cc_algo_p(prof, psf, 6);
  REQUIRE(static_cast<double>(rep.l1) >=
          bounds::cc_p_bound(6) * 9 * 5 - 1e-9);
}

TEST_CASE("cc_algo_p window override") {
  auto prof = oracle::random_profile(8, 5, 31);
  auto psf = ScoringFunction::borda_dec(5);
  auto rep = cc_algo_p(prof, psf, 2, 3);
  REQUIRE(rep.params.at("x") == 3.0);
  REQUIRE_THROWS_AS(cc_algo_p(prof, psf, 2, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(cc_algo_p(prof, psf, 2, 6), std::invalid_argument);
}

TEST_CASE("cc_algo_p on truncated ballots meets the truncated bound") {
  // Q-truncated run with x = Q: l1 >= (m-Q)/(m-1) (1 - e^{-QK/m}) n (m-1)
  rng64 seeds(505);
  for (int t = 0; t < 15; ++t) {
    int m = 8 + static_cast<int>(seeds.below(6));   // 8..13
    int k = 2 + static_cast<int>(seeds.below(3));   // 2..4
    int n = 6 + static_cast<int>(seeds.below(10));  // 6..15
    int max_q = static_cast<int>(m * bounds::lambert_w(k) / k);
    if (max_q < 1) continue;
    int q = 1 + static_cast<int>(seeds.below(max_q));
    auto full = oracle::random_profile(n, m, seeds.next_u64());
    auto prof = truncate_profile(full, q);
    auto psf = ScoringFunction::truncated(m, q);
    auto rep = cc_algo_p(prof, psf, k, q);
    double bound = bounds::cc_truncated_bound(m, k, q) * n * (m - 1);
    REQUIRE(static_cast<double>(rep.l1) >= bound - 1e-9);
  }
}

TEST_CASE("cc_algo_p_delta carries the relaxed metric") {
  // m=10, K=2, delta=e^{-2}: x = ceil(10*2/2) = 10, the full ballot
  auto prof = oracle::random_profile(10, 10, 404);
  auto psf = ScoringFunction::borda_dec(10);
  auto full = cc_algo_p_delta(prof, psf, 2, std::exp(-2.0));
  REQUIRE(full.params.at("x") == 10.0);

  auto rep = cc_algo_p_delta(prof, psf, 2, 0.3);
  REQUIRE(rep.algorithm == "p-delta");
  REQUIRE(rep.delta.has_value());
  REQUIRE(*rep.delta == 0.3);
  REQUIRE(rep.l_min_delta.has_value());
  REQUIRE(rep.delta_bound.has_value());
  // l_min_delta is the ceil((1-delta) n)-th highest satisfaction
  std::vector<std::int64_t> sats;
  for (voter_id v = 0; v < 10; ++v)
    sats.push_back(voter_satisfaction(prof, psf, v, rep.assignment.rep[v]));
  std::sort(sats.rbegin(), sats.rend());
  int keep = static_cast<int>(std::ceil((1.0 - 0.3) * 10));
  REQUIRE(*rep.l_min_delta == sats[keep - 1]);
  // the advertised bound value: (1 + ln(delta)/K) alpha(1)
  REQUIRE(*rep.delta_bound ==
          Catch::Approx((1.0 + std::log(0.3) / 2) * 9).margin(1e-9));
  REQUIRE_THROWS_AS(cc_algo_p_delta(prof, psf, 2, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(cc_algo_p_delta(prof, psf, 2, 1.0), std::invalid_argument);
}

TEST_CASE("cc_algo_gm matches cc_algo_c at d = 1 and stays near the optimum") {
  rng64 seeds(606);
  for (int t = 0; t < 15; ++t) {
    int n = 4 + static_cast<int>(seeds.below(5));
    int m = 4 + static_cast<int>(seeds.below(3));
    int k = 1 + static_cast<int>(seeds.below(3));
    auto prof = oracle::random_profile(n, m, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(m);
    auto gm = cc_algo_gm(prof, psf, k);
    auto c1 = cc_algo_c(prof, psf, k, 1);
    REQUIRE(gm.l1 == c1.l1);
    REQUIRE(gm.committee == c1.committee);
    auto opt = brute_force_winners(prof, psf, ElectionRule::cc(k));
    REQUIRE(static_cast<double>(gm.l1) >=
            (1.0 - std::exp(-1.0)) * opt.value - 1e-9);
    REQUIRE(gm.l1 <= opt.value);
    require_pointwise_optimal(prof, psf, gm);
  }
}

TEST_CASE("cc_algo_gm with K = 1 is exact") {
  auto prof = oracle::random_profile(9, 5, 11);
  auto psf = ScoringFunction::borda_dec(5);
  auto gm = cc_algo_gm(prof, psf, 1);
  auto opt = brute_force_winners(prof, psf, ElectionRule::cc(1));
  REQUIRE(gm.l1 == opt.value);
}

TEST_CASE("cc_algo_c beam behavior") {
  auto prof = oracle::random_profile(10, 6, 202);
  auto psf = ScoringFunction::borda_dec(6);
  std::int64_t prev = -1;
  for (int d : {1, 3, 9, 20}) {
    auto c = cc_algo_c(prof, psf, 3, d);
    REQUIRE(c.l1 >= prev);
    require_pointwise_optimal(prof, psf, c);
    prev = c.l1;
  }
  // beam covering all C(6,3) = 20 committees is exact
  auto opt = brute_force_winners(prof, psf, ElectionRule::cc(3));
  REQUIRE(prev == opt.value);
  REQUIRE_THROWS_AS(cc_algo_c(prof, psf, 3, 0), std::invalid_argument);
}

TEST_CASE("cc_algo_c with K = m reaches the ideal") {
  auto prof = oracle::random_profile(7, 5, 44);
  auto psf = ScoringFunction::borda_dec(5);
  auto c = cc_algo_c(prof, psf, 5, 2);
  REQUIRE(c.l1 == ideal_satisfaction(prof, psf));
}

TEST_CASE("cc_algo_r samples committees reproducibly") {
  auto prof = oracle::random_profile(9, 6, 33);
  auto psf = ScoringFunction::borda_dec(6);
  auto r1 = cc_algo_r(prof, psf, 2, 8, 4242);
  auto r2 = cc_algo_r(prof, psf, 2, 8, 4242);
  REQUIRE(r1.committee == r2.committee);
  REQUIRE(r1.l1 == r2.l1);
  require_pointwise_optimal(prof, psf, r1);
  // K = m: the only sample is the full committee, which is optimal
  auto full = cc_algo_r(prof, psf, 6, 1, 7);
  REQUIRE(full.l1 == ideal_satisfaction(prof, psf));
  REQUIRE_THROWS_AS(cc_algo_r(prof, psf, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("single cc samples achieve the stated expected ratio") {
  // expected single-sample ratio >= (1 - 1/(K+1)) for borda_dec; Monte-Carlo
  // mean stays above it minus a 0.05 cushion
  const int trials = 150;
  const int k = 3;
  double sum = 0;
  rng64 seeds(989);
  for (int t = 0; t < trials; ++t) {
    auto prof = oracle::random_profile(8, 7, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(7);
    auto r = cc_algo_r(prof, psf, k, 1, seeds.next_u64());
    auto opt = brute_force_winners(prof, psf, ElectionRule::cc(k));
    sum += static_cast<double>(r.l1) / static_cast<double>(opt.value);
  }
  REQUIRE(sum / trials >= (1.0 - 1.0 / (k + 1)) - 0.05);
}

TEST_CASE("cc accepts K > n, unlike monroe") {
  // 3 voters, 5 seats: fine for CC (members may represent nobody)
  auto prof = oracle::random_profile(3, 6, 5);
  auto psf = ScoringFunction::borda_dec(6);
  REQUIRE_NOTHROW(cc_algo_gm(prof, psf, 5));
  REQUIRE_NOTHROW(cc_algo_r(prof, psf, 5, 2, 1));
}

TEST_CASE("cc optimum dominates the monroe optimum") {
  rng64 seeds(7171);
  for (int t = 0; t < 10; ++t) {
    int k = 1 + static_cast<int>(seeds.below(3));
    int n = k * (1 + static_cast<int>(seeds.below(2)));
    int m = 3 + static_cast<int>(seeds.below(3));
    auto prof = oracle::random_profile(n, m, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(m);
    auto cc = brute_force_winners(prof, psf, ElectionRule::cc(k));
    auto mon = brute_force_winners(prof, psf, ElectionRule::monroe(k));
    REQUIRE(cc.value >= mon.value);
  }
}

TEST_CASE("cc reports carry rule and metadata") {
  auto prof = oracle::random_profile(6, 4, 15);
  auto psf = ScoringFunction::borda_dec(4);
  auto rep = cc_algo_gm(prof, psf, 2);
  REQUIRE(rep.rule == "cc");
  REQUIRE(rep.algorithm == "gm");
  REQUIRE(rep.k == 2);
  REQUIRE(rep.assignment.num_assigned() == 6);
}

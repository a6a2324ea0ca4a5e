#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <multiwinner/bounds.hpp>
#include <multiwinner/exact.hpp>
#include <multiwinner/monroe.hpp>
#include <multiwinner/rng.hpp>

#include "oracles.hpp"

using namespace multiwinner;

namespace {

PreferenceProfile unanimous(int n, int m) {
  std::vector<alt_id> ballot(m);
  for (int i = 0; i < m; ++i) ballot[i] = i;
  return PreferenceProfile(m, std::vector<std::vector<alt_id>>(n, ballot));
}

}  // namespace

TEST_CASE("algo_a on a unanimous profile elects the universal top-K") {
  // all voters rank 0 > 1 > ... ; l1 = (n/K) sum_{i=1..K} (m - i)
  const int n = 6, m = 5, k = 3;
  auto prof = unanimous(n, m);
  auto psf = ScoringFunction::borda_dec(m);
  auto rep = algo_a(prof, psf, k);
  REQUIRE(rep.committee == std::vector<alt_id>{0, 1, 2});
  REQUIRE(rep.l1 == (n / k) * ((m - 1) + (m - 2) + (m - 3)));
  REQUIRE(rep.algorithm == "a");
  REQUIRE(rep.rule == "monroe");
  // reassignment cannot improve a unanimous profile
  REQUIRE(algo_b(prof, psf, k).l1 == rep.l1);
}

TEST_CASE("algo_a with K = 1 is the Borda winner") {
  auto prof = oracle::random_profile(7, 5, 1234);
  auto psf = ScoringFunction::borda_dec(5);
  auto rep = algo_a(prof, psf, 1);
  // independent Borda tally
  std::int64_t best_score = -1;
  alt_id best = -1;
  for (alt_id a = 0; a < 5; ++a) {
    std::int64_t s = 0;
    for (voter_id v = 0; v < 7; ++v) s += oracle::sat_of(prof, psf, v, a);
    if (s > best_score) best_score = s, best = a;
  }
  REQUIRE(rep.committee == std::vector<alt_id>{best});
  REQUIRE(rep.l1 == best_score);
}

TEST_CASE("algo_a with K = 2 matches brute force") {
  rng64 seeds(99);
  for (int t = 0; t < 10; ++t) {
    auto prof = oracle::random_profile(6, 5, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(5);
    auto rep = algo_a(prof, psf, 2);
    auto opt = brute_force_winners(prof, psf, ElectionRule::monroe(2));
    REQUIRE(rep.l1 == opt.value);
  }
}

TEST_CASE("algo_a satisfies the lemma bound and never beats the optimum") {
  // n = 12, m = 6, K = 3: bound = 1 - 2/10 - (11/6)/3 = 0.18889 (the formula
  // value at m = 6; the m = 10 value of the same expression is 0.2778)
  const double bound = bounds::monroe_greedy_bound(6, 3);
  REQUIRE(bound == Catch::Approx(0.1888888889).margin(1e-9));
  rng64 seeds(2718);
  for (int t = 0; t < 15; ++t) {
    auto prof = oracle::random_profile(12, 6, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(6);
    auto rep = algo_a(prof, psf, 3);
    auto opt = brute_force_winners(prof, psf, ElectionRule::monroe(3));
    REQUIRE(static_cast<double>(rep.l1) >= bound * 12 * (6 - 1) - 1e-9);
    REQUIRE(rep.l1 <= opt.value);
  }
}

TEST_CASE("algo_a handles K not dividing n with floor/ceil rounds") {
  auto prof = oracle::random_profile(8, 6, 31);
  auto psf = ScoringFunction::borda_dec(6);
  auto rep = algo_a(prof, psf, 3);
  REQUIRE(rep.assignment.num_assigned() == 8);
  auto load = rep.assignment.load(6);
  for (alt_id a : rep.committee) {
    REQUIRE(load[a] >= 2);  // floor(8/3)
    REQUIRE(load[a] <= 3);  // ceil(8/3)
  }
}

TEST_CASE("algo_a validates its arguments") {
  auto prof = oracle::random_profile(4, 4, 1);
  REQUIRE_THROWS_AS(algo_a(prof, ScoringFunction::borda_dec(4), 5),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(algo_a(prof, ScoringFunction::borda_dec(3), 2),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(algo_a(prof, ScoringFunction::borda_inc(4), 2),
                    std::invalid_argument);
  // K <= n required: 5 seats for 4 voters is infeasible under balance
  auto prof2 = oracle::random_profile(3, 6, 2);
  REQUIRE_THROWS_AS(algo_a(prof2, ScoringFunction::borda_dec(6), 4),
                    std::invalid_argument);
  // truncated psf is allowed
  REQUIRE_NOTHROW(algo_a(prof, ScoringFunction::truncated(4, 2), 2));
}

TEST_CASE("algo_b reassignment only improves") {
  rng64 seeds(555);
  for (int t = 0; t < 20; ++t) {
    int n = 6 + static_cast<int>(seeds.below(10));
    int m = 4 + static_cast<int>(seeds.below(4));
    int k = 3 + static_cast<int>(seeds.below(2));
    auto prof = oracle::random_profile(n, m, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(m);
    auto a = algo_a(prof, psf, k);
    auto b = algo_b(prof, psf, k);
    REQUIRE(b.l1 >= a.l1);
    REQUIRE(b.committee == a.committee);
    REQUIRE(b.algorithm == "b");
    // b's assignment stays balanced
    auto load = b.assignment.load(m);
    for (alt_id x : b.committee) {
      REQUIRE(load[x] >= n / k);
      REQUIRE(load[x] <= (n + k - 1) / k);
    }
  }
}

TEST_CASE("algo_c with d = 1 reproduces algo_b") {
  rng64 seeds(808);
  for (int t = 0; t < 12; ++t) {
    int n = 6 + static_cast<int>(seeds.below(8));
    int m = 4 + static_cast<int>(seeds.below(4));
    int k = 3;
    auto prof = oracle::random_profile(n, m, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(m);
    auto b = algo_b(prof, psf, k);
    auto c = algo_c(prof, psf, k, 1);
    REQUIRE(c.l1 == b.l1);
    REQUIRE(c.committee == b.committee);
    REQUIRE(c.params.at("d") == 1.0);
  }
}

TEST_CASE("algo_c value is nondecreasing in the beam width") {
  auto prof = oracle::random_profile(12, 6, 4096);
  auto psf = ScoringFunction::borda_dec(6);
  std::int64_t prev = -1;
  for (int d : {1, 2, 4, 8, 16}) {
    auto c = algo_c(prof, psf, 3, d);
    REQUIRE(c.l1 >= prev);
    prev = c.l1;
  }
}

TEST_CASE("algo_c with a full-width beam is exact on tiny instances") {
  // d = 25 >= C(5,2) = 10 covers every committee, so the final flow
  // re-optimization makes it brute force
  rng64 seeds(112233);
  for (int t = 0; t < 8; ++t) {
    auto prof = oracle::random_profile(6, 5, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(5);
    auto c = algo_c(prof, psf, 2, 25);
    auto opt = brute_force_winners(prof, psf, ElectionRule::monroe(2));
    REQUIRE(c.l1 == opt.value);
  }
}

TEST_CASE("algo_gm stays within (1 - 1/e) of the optimum") {
  const double guarantee = 1.0 - std::exp(-1.0);
  rng64 seeds(606);
  for (int t = 0; t < 15; ++t) {
    int n = 4 + static_cast<int>(seeds.below(5));  // 4..8
    int m = 4 + static_cast<int>(seeds.below(3));  // 4..6
    int k = 2 + static_cast<int>(seeds.below(2));  // 2..3
    if (k > n) k = n;
    auto prof = oracle::random_profile(n, m, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(m);
    auto gm = algo_gm(prof, psf, k);
    auto opt = brute_force_winners(prof, psf, ElectionRule::monroe(k));
    REQUIRE(static_cast<double>(gm.l1) >= guarantee * opt.value - 1e-9);
    // gm reports the ceil(n/K)-capacity assignment; only when K | n does that
    // coincide with a balance-feasible Monroe assignment, bounded by C_opt
    if (n % k == 0) REQUIRE(gm.l1 <= opt.value);
    auto load = gm.assignment.load(m);
    for (alt_id x : gm.committee) REQUIRE(load[x] <= (n + k - 1) / k);
    REQUIRE(static_cast<int>(gm.committee.size()) == k);
  }
}

TEST_CASE("algo_gm with K = 1 is exact") {
  auto prof = oracle::random_profile(9, 5, 13);
  auto psf = ScoringFunction::borda_dec(5);
  auto gm = algo_gm(prof, psf, 1);
  auto opt = brute_force_winners(prof, psf, ElectionRule::monroe(1));
  REQUIRE(gm.l1 == opt.value);
}

TEST_CASE("algo_gm accepts custom DPSFs") {
  auto prof = oracle::random_profile(6, 4, 72);
  auto psf = ScoringFunction::custom({9, 2, 1, 0});
  REQUIRE_NOTHROW(algo_gm(prof, psf, 2));
}

TEST_CASE("algo_r with K = m has only one committee to sample") {
  auto prof = oracle::random_profile(8, 4, 21);
  auto psf = ScoringFunction::borda_dec(4);
  auto r = algo_r(prof, psf, 4, 1, 77);
  REQUIRE(r.committee == std::vector<alt_id>{0, 1, 2, 3});
  auto opt = brute_force_winners(prof, psf, ElectionRule::monroe(4));
  REQUIRE(r.l1 == opt.value);
  REQUIRE(r.seed.has_value());
  REQUIRE(*r.seed == 77);
  REQUIRE(r.params.at("samples") == 1.0);
}

TEST_CASE("algo_r is deterministic in the seed and improves with samples") {
  auto prof = oracle::random_profile(12, 8, 3333);
  auto psf = ScoringFunction::borda_dec(8);
  auto r1 = algo_r(prof, psf, 3, 5, 99);
  auto r2 = algo_r(prof, psf, 3, 5, 99);
  REQUIRE(r1.committee == r2.committee);
  REQUIRE(r1.l1 == r2.l1);
  REQUIRE(r1.assignment.rep == r2.assignment.rep);
  // more samples keep the running max: prefix property of the substreams
  auto r10 = algo_r(prof, psf, 3, 10, 99);
  REQUIRE(r10.l1 >= r1.l1);
  REQUIRE_THROWS_AS(algo_r(prof, psf, 3, 0, 99), std::invalid_argument);
}

TEST_CASE("single random samples achieve the lemma's expected ratio") {
  // m = 10, K = 6: expected single-sample C/C_opt is 0.72 for borda_dec;
  // Monte-Carlo mean over instances and seeds stays above 0.72 - 0.05
  const int trials = 120;
  double sum = 0;
  rng64 seeds(515);
  for (int t = 0; t < trials; ++t) {
    auto prof = oracle::random_profile(12, 10, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(10);
    auto r = algo_r(prof, psf, 6, 1, seeds.next_u64());
    auto opt = brute_force_winners(prof, psf, ElectionRule::monroe(6));
    sum += static_cast<double>(r.l1) / static_cast<double>(opt.value);
  }
  double mean = sum / trials;
  REQUIRE(mean >= bounds::sampling_expected_ratio(10, 6) - 0.05);
}

TEST_CASE("algo_ar takes the exact branch for small K") {
  auto prof = oracle::random_profile(10, 5, 2020);
  auto psf = ScoringFunction::borda_dec(5);
  auto ar = algo_ar(prof, psf, 3, 0.2, 0.9, 1);
  auto opt = brute_force_winners(prof, psf, ElectionRule::monroe(3));
  REQUIRE(ar.l1 == opt.value);
  REQUIRE(ar.algorithm == "ar");
  REQUIRE(ar.params.at("branch") == 0.0);
  REQUIRE(ar.params.at("epsilon") == 0.2);
  REQUIRE(ar.params.at("lambda") == 0.9);
}

TEST_CASE("algo_ar small-m instances are solved exactly") {
  // eps = 0.5 -> m <= 1 + 2/eps = 5 would force brute force; with m = 4 the
  // K <= 8 guard already fires, so the result must equal the optimum
  auto prof = oracle::random_profile(8, 4, 11);
  auto psf = ScoringFunction::borda_dec(4);
  auto ar = algo_ar(prof, psf, 2, 0.5, 0.9, 5);
  auto opt = brute_force_winners(prof, psf, ElectionRule::monroe(2));
  REQUIRE(ar.l1 == opt.value);
}

TEST_CASE("algo_ar sampling branch runs A and R and keeps the better") {
  // K = 9 > 8 and H_9/9 = 0.314 < eps/2 = 0.35 and m = 12 > 1 + 2/0.7: the
  // sampling branch with ceil(512 ln 10 / (9 * 0.49)) = 268 samples
  auto prof = oracle::random_profile(18, 12, 9090);
  auto psf = ScoringFunction::borda_dec(12);
  auto ar = algo_ar(prof, psf, 9, 0.7, 0.9, 3);
  REQUIRE(ar.params.at("branch") == 2.0);
  REQUIRE(ar.params.at("samples") == 268.0);
  auto a = algo_a(prof, psf, 9);
  auto r = algo_r(prof, psf, 9, 268, 3);
  REQUIRE(ar.l1 == std::max(a.l1, r.l1));
  // deterministic given the seed
  auto again = algo_ar(prof, psf, 9, 0.7, 0.9, 3);
  REQUIRE(again.committee == ar.committee);
  REQUIRE(again.l1 == ar.l1);
}

TEST_CASE("algo_ar validates eps and lambda and reports budget refusals") {
  auto prof = oracle::random_profile(10, 5, 8);
  auto psf = ScoringFunction::borda_dec(5);
  REQUIRE_THROWS_AS(algo_ar(prof, psf, 3, 0.0, 0.9, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(algo_ar(prof, psf, 3, 0.2, 1.0, 1), std::invalid_argument);
  BruteForceOptions tiny;
  tiny.max_committees = 2;
  try {
    algo_ar(prof, psf, 3, 0.2, 0.9, 1, tiny);
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    REQUIRE(std::string(e.what()).find("exact branch") != std::string::npos);
  }
}

TEST_CASE("chain dominance a <= b <= c(d) <= opt") {
  rng64 seeds(70707);
  for (int t = 0; t < 10; ++t) {
    auto prof = oracle::random_profile(9, 6, seeds.next_u64());
    auto psf = ScoringFunction::borda_dec(6);
    auto a = algo_a(prof, psf, 3);
    auto b = algo_b(prof, psf, 3);
    auto c = algo_c(prof, psf, 3, 4);
    auto opt = brute_force_winners(prof, psf, ElectionRule::monroe(3));
    REQUIRE(a.l1 <= b.l1);
    REQUIRE(b.l1 <= c.l1);
    REQUIRE(c.l1 <= opt.value);
  }
}

TEST_CASE("monroe reports carry consistent metadata") {
  auto prof = oracle::random_profile(10, 5, 60);
  auto psf = ScoringFunction::borda_dec(5);
  auto rep = algo_b(prof, psf, 2);
  REQUIRE(rep.n == 10);
  REQUIRE(rep.m == 5);
  REQUIRE(rep.k == 2);
  REQUIRE(rep.ideal == 40);
  REQUIRE(std::is_sorted(rep.committee.begin(), rep.committee.end()));
  REQUIRE(rep.assignment.used_alternatives() == rep.committee);
  auto ratio = rep.ratio_to_ideal();
  REQUIRE(ratio.value() <= 1.0);
  REQUIRE(ratio.value() >= 0.0);
}

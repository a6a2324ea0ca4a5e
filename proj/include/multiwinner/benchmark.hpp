#pragma once

#include <atomic>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <thread>

#include "cc.hpp"
#include "monroe.hpp"
#include "profiles.hpp"

namespace multiwinner {

struct AlgoSpec {
  std::string rule;  // "monroe" | "cc"
  std::string algo;  // "a", "b", "c", "gm", "r", "ar", "p", "p-delta", "exact"
  int d = 15;
  int samples = 100;
  double epsilon = 0.2;
  double lambda = 0.9;
  double delta = 0.1;
  std::optional<int> x;

  std::string label() const { return rule + "-" + algo; }
};

inline AlgoSpec parse_algo_spec(const std::string& text) {
  AlgoSpec spec;
  auto dash = text.find('-');
  if (dash == std::string::npos)
    throw std::invalid_argument("algorithm spec must look like rule-algo: " + text);
  spec.rule = text.substr(0, dash);
  spec.algo = text.substr(dash + 1);
  if (spec.rule != "monroe" && spec.rule != "cc")
    throw std::invalid_argument("unknown rule in spec: " + text);
  static const char* monroe_algos[] = {"a", "b", "c", "gm", "r", "ar", "exact"};
  static const char* cc_algos[] = {"c", "gm", "p", "p-delta", "r", "exact"};
  bool ok = false;
  if (spec.rule == "monroe")
    for (const char* a : monroe_algos) ok = ok || spec.algo == a;
  else
    for (const char* a : cc_algos) ok = ok || spec.algo == a;
  if (!ok) throw std::invalid_argument("unknown algorithm for rule: " + text);
  return spec;
}

inline SolutionReport run_algorithm(const PreferenceProfile& profile,
                                    const ScoringFunction& psf, int k,
                                    const AlgoSpec& spec, std::uint64_t seed,
                                    const BruteForceOptions& budget = {}) {
  if (spec.rule == "monroe") {
    if (spec.algo == "a") return algo_a(profile, psf, k, budget);
    if (spec.algo == "b") return algo_b(profile, psf, k, budget);
    if (spec.algo == "c") return algo_c(profile, psf, k, spec.d);
    if (spec.algo == "gm") return algo_gm(profile, psf, k);
    if (spec.algo == "r") return algo_r(profile, psf, k, spec.samples, seed);
    if (spec.algo == "ar")
      return algo_ar(profile, psf, k, spec.epsilon, spec.lambda, seed, budget);
    if (spec.algo == "exact") {
      detail::Stopwatch sw;
      BruteForceResult bf =
          brute_force_winners(profile, psf, ElectionRule::monroe(k), budget);
      SolutionReport rep = detail::make_report(profile, psf, "monroe", "exact",
                                               k, bf.committee, bf.assignment);
      rep.time_ms = sw.ms();
      return rep;
    }
  } else if (spec.rule == "cc") {
    if (spec.algo == "c") return cc_algo_c(profile, psf, k, spec.d);
    if (spec.algo == "gm") return cc_algo_gm(profile, psf, k);
    if (spec.algo == "p") return cc_algo_p(profile, psf, k, spec.x);
    if (spec.algo == "p-delta") return cc_algo_p_delta(profile, psf, k, spec.delta);
    if (spec.algo == "r") return cc_algo_r(profile, psf, k, spec.samples, seed);
    if (spec.algo == "exact") {
      detail::Stopwatch sw;
      BruteForceResult bf =
          brute_force_winners(profile, psf, ElectionRule::cc(k), budget);
      SolutionReport rep = detail::make_report(profile, psf, "cc", "exact", k,
                                               bf.committee, bf.assignment);
      rep.time_ms = sw.ms();
      return rep;
    }
  }
  throw std::invalid_argument("unknown rule/algorithm: " + spec.rule + "-" + spec.algo);
}

struct BenchmarkConfig {
  std::string model = "ic";
  int n = 100;
  int m = 10;
  int k = 3;
  int repetitions = 1;
  std::uint64_t seed = 1;
  std::vector<AlgoSpec> algorithms;
  bool with_opt = false;
  std::vector<int> truncation;  // P values; empty means complete profiles only
  int threads = 1;
  double urn_alpha_ratio = 0.05;
  int mixture_components = 5;
  BruteForceOptions budget;
};

struct BenchmarkRow {
  int rep = 0;
  int p = 0;  // truncation level (m = complete)
  int algo_index = 0;
  SolutionReport report;
};

struct BenchmarkSummary {
  AlgoSpec algo;
  int p = 0;
  int count = 0;
  double mean_ratio_ideal = 0, std_ratio_ideal = 0;
  std::optional<double> mean_ratio_opt, std_ratio_opt;
};

struct BenchmarkResult {
  BenchmarkConfig config;
  std::vector<BenchmarkRow> rows;
  std::vector<BenchmarkSummary> summaries;
};

// Runs repetitions (optionally across threads); repetition r draws its
// instance from substream (seed, 2r) and its per-algorithm seeds from
// substream (seed, 2r+1), so output is identical for any thread count.
inline BenchmarkResult run_benchmark(const BenchmarkConfig& cfg) {
  if (cfg.repetitions < 1) throw std::invalid_argument("benchmark: repetitions >= 1");
  if (cfg.algorithms.empty()) throw std::invalid_argument("benchmark: no algorithms");
  std::vector<int> levels = cfg.truncation;
  if (levels.empty()) levels = {cfg.m};
  for (int p : levels)
    if (p < 1 || p > cfg.m)
      throw std::invalid_argument("benchmark: truncation level outside [1, m]");

  const std::size_t per_rep = levels.size() * cfg.algorithms.size();
  BenchmarkResult result;
  result.config = cfg;
  result.rows.resize(static_cast<std::size_t>(cfg.repetitions) * per_rep);

  auto run_rep = [&](int rep) {
    GeneratorConfig gen;
    gen.n = cfg.n;
    gen.m = cfg.m;
    gen.seed = rng64::substream(cfg.seed, 2 * static_cast<std::uint64_t>(rep)).next_u64();
    gen.urn_alpha_ratio = cfg.urn_alpha_ratio;
    gen.mixture_components = cfg.mixture_components;
    PreferenceProfile full = generate(cfg.model, gen);

    rng64 seed_stream =
        rng64::substream(cfg.seed, 2 * static_cast<std::uint64_t>(rep) + 1);
    std::vector<std::uint64_t> algo_seeds(cfg.algorithms.size());
    for (auto& s : algo_seeds) s = seed_stream.next_u64();

    for (std::size_t pi = 0; pi < levels.size(); ++pi) {
      const int p = levels[pi];
      PreferenceProfile profile =
          p < cfg.m ? truncate_profile(full, p) : full;
      ScoringFunction psf = p < cfg.m ? ScoringFunction::truncated(cfg.m, p)
                                      : ScoringFunction::borda_dec(cfg.m);
      std::optional<std::int64_t> opt_monroe, opt_cc;
      if (cfg.with_opt) {
        for (const AlgoSpec& spec : cfg.algorithms) {
          if (spec.rule == "monroe" && !opt_monroe)
            opt_monroe = brute_force_winners(profile, psf,
                                             ElectionRule::monroe(cfg.k), cfg.budget)
                             .value;
          if (spec.rule == "cc" && !opt_cc)
            opt_cc = brute_force_winners(profile, psf, ElectionRule::cc(cfg.k),
                                         cfg.budget)
                         .value;
        }
      }
      for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
        const AlgoSpec& spec = cfg.algorithms[ai];
        SolutionReport rep_out =
            run_algorithm(profile, psf, cfg.k, spec, algo_seeds[ai], cfg.budget);
        if (cfg.with_opt)
          rep_out.c_opt = spec.rule == "monroe" ? opt_monroe : opt_cc;
        std::size_t slot =
            static_cast<std::size_t>(rep) * per_rep + pi * cfg.algorithms.size() + ai;
        result.rows[slot] =
            BenchmarkRow{rep, p, static_cast<int>(ai), std::move(rep_out)};
      }
    }
  };

  const int workers = std::max(1, std::min(cfg.threads, cfg.repetitions));
  if (workers == 1) {
    for (int rep = 0; rep < cfg.repetitions; ++rep) run_rep(rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          int rep = next.fetch_add(1);
          if (rep >= cfg.repetitions) break;
          run_rep(rep);
        }
      });
    for (auto& t : pool) t.join();
  }

  // summaries per (algorithm, truncation level), in config order
  for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai)
    for (int p : levels) {
      BenchmarkSummary s;
      s.algo = cfg.algorithms[ai];
      s.p = p;
      std::vector<double> ri, ro;
      for (const BenchmarkRow& row : result.rows) {
        if (row.algo_index != static_cast<int>(ai) || row.p != p) continue;
        ri.push_back(row.report.ratio_to_ideal().value());
        if (auto r = row.report.ratio_to_opt()) ro.push_back(r->value());
      }
      auto mean_std = [](const std::vector<double>& xs) {
        double mean = 0;
        for (double x : xs) mean += x;
        mean /= xs.empty() ? 1 : xs.size();
        double var = 0;
        for (double x : xs) var += (x - mean) * (x - mean);
        if (xs.size() > 1) var /= xs.size() - 1;
        return std::pair<double, double>(mean, std::sqrt(var));
      };
      s.count = static_cast<int>(ri.size());
      std::tie(s.mean_ratio_ideal, s.std_ratio_ideal) = mean_std(ri);
      if (!ro.empty()) {
        auto [mo, so] = mean_std(ro);
        s.mean_ratio_opt = mo;
        s.std_ratio_opt = so;
      }
      result.summaries.push_back(std::move(s));
    }
  return result;
}

// CSV: one data row per (repetition, truncation level, algorithm) plus one
// summary row per (algorithm, level). time_ms is the only timing column and
// the only one expected to differ between identical runs.
inline void write_benchmark_csv(std::ostream& out, const BenchmarkResult& res) {
  out << "schema_version,row_type,model,n,m,k,p,rule,algorithm,d,samples,"
         "epsilon,lambda,delta,x,rep,seed,committee,l1,l_inf,l_min,ideal,"
         "c_opt,ratio_ideal,ratio_opt,mean_ratio_ideal,std_ratio_ideal,"
         "mean_ratio_opt,std_ratio_opt,time_ms\n";
  auto num = [](double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
  };
  const BenchmarkConfig& cfg = res.config;
  auto algo_cells = [&](const AlgoSpec& a, std::ostream& o) {
    o << a.rule << ',' << a.algo << ',';
    if (a.algo == "c") o << a.d;
    o << ',';
    if (a.algo == "r" || a.algo == "ar") o << a.samples;
    o << ',';
    if (a.algo == "ar") o << num(a.epsilon);
    o << ',';
    if (a.algo == "ar") o << num(a.lambda);
    o << ',';
    if (a.algo == "p-delta") o << num(a.delta);
    o << ',';
    if (a.algo == "p" && a.x) o << *a.x;
  };
  for (const BenchmarkRow& row : res.rows) {
    const AlgoSpec& a = cfg.algorithms[row.algo_index];
    const SolutionReport& r = row.report;
    out << "1,row," << cfg.model << ',' << cfg.n << ',' << cfg.m << ',' << cfg.k
        << ',' << row.p << ',';
    algo_cells(a, out);
    out << ',' << row.rep << ',';
    if (r.seed) out << *r.seed;
    out << ',';
    for (std::size_t i = 0; i < r.committee.size(); ++i)
      out << (i ? " " : "") << r.committee[i];
    out << ',' << r.l1 << ',' << r.l_inf << ',' << r.l_min << ',' << r.ideal << ',';
    if (r.c_opt) out << *r.c_opt;
    out << ',' << num(r.ratio_to_ideal().value()) << ',';
    if (auto ro = r.ratio_to_opt()) out << num(ro->value());
    out << ",,,,," << num(r.time_ms) << "\n";
  }
  for (const BenchmarkSummary& s : res.summaries) {
    out << "1,summary," << cfg.model << ',' << cfg.n << ',' << cfg.m << ','
        << cfg.k << ',' << s.p << ',';
    algo_cells(s.algo, out);
    out << ",,,,,,,,,,," << num(s.mean_ratio_ideal) << ',' << num(s.std_ratio_ideal)
        << ',';
    if (s.mean_ratio_opt) out << num(*s.mean_ratio_opt);
    out << ',';
    if (s.std_ratio_opt) out << num(*s.std_ratio_opt);
    out << ",\n";
  }
}

}  // namespace multiwinner

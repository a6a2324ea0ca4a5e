#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include <multiwinner/benchmark.hpp>
#include <multiwinner/bounds.hpp>
#include <multiwinner/cc.hpp>
#include <multiwinner/exact.hpp>
#include <multiwinner/json_io.hpp>
#include <multiwinner/monroe.hpp>
#include <multiwinner/profiles.hpp>

namespace mw = multiwinner;

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

mw::PreferenceProfile load_profile(const std::string& path) {
  if (path == "-") return mw::read_profile(std::cin);
  return mw::read_profile_file(path);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

struct GenerateCmd {
  std::string model = "ic", out = "-";
  int n = 0, m = 0, truncate = 0;
  std::uint64_t seed = 0;
  double urn_ratio = 0.05;
  int mixture_components = 5;

  void run() const {
    mw::GeneratorConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.seed = seed;
    cfg.urn_alpha_ratio = urn_ratio;
    cfg.mixture_components = mixture_components;
    mw::PreferenceProfile profile = mw::generate(model, cfg);
    if (truncate > 0) profile = mw::truncate_profile(profile, truncate);
    std::ostringstream os;
    mw::write_profile(os, profile);
    write_text(out, os.str());
  }
};

struct SolveCmd {
  std::string profile_path, rule = "monroe", algo = "a", out = "-";
  int k = 1, d = 15, samples = 100, truncate = 0;
  double epsilon = 0.2, lambda = 0.9, delta = 0.1;
  int x = 0;
  std::uint64_t seed = 0;
  bool with_opt = false;
  std::int64_t budget = 200000;

  void run() const {
    mw::AlgoSpec spec = mw::parse_algo_spec(rule + "-" + algo);
    spec.d = d;
    spec.samples = samples;
    spec.epsilon = epsilon;
    spec.lambda = lambda;
    spec.delta = delta;
    if (x > 0) spec.x = x;
    mw::PreferenceProfile profile = load_profile(profile_path);
    const int m = profile.num_alternatives();
    mw::ScoringFunction psf = mw::ScoringFunction::borda_dec(m);
    if (truncate > 0 && truncate < m) {
      profile = mw::truncate_profile(profile, truncate);
      psf = mw::ScoringFunction::truncated(m, truncate);
    } else if (!profile.is_complete()) {
      int longest = 0;
      for (const auto& r : profile.rankings())
        longest = std::max(longest, static_cast<int>(r.size()));
      psf = mw::ScoringFunction::truncated(m, std::max(1, longest));
    }
    mw::BruteForceOptions bf{budget};
    mw::SolutionReport rep = mw::run_algorithm(profile, psf, k, spec, seed, bf);
    if (with_opt) {
      mw::ElectionRule r = spec.rule == "monroe" ? mw::ElectionRule::monroe(k)
                                                 : mw::ElectionRule::cc(k);
      rep.c_opt = mw::brute_force_winners(profile, psf, r, bf).value;
    }
    write_text(out, mw::report_json(rep).dump(2) + "\n");
  }
};

struct BenchmarkCmd {
  std::string model = "ic", algos, out = "-", truncation_list;
  int n = 100, m = 10, k = 3, reps = 1, threads = 1;
  std::uint64_t seed = 1;
  bool with_opt = false, sweep_truncation = false;
  double urn_ratio = 0.05;
  int mixture_components = 5;
  std::int64_t budget = 200000;

  void run() const {
    mw::BenchmarkConfig cfg;
    cfg.model = model;
    cfg.n = n;
    cfg.m = m;
    cfg.k = k;
    cfg.repetitions = reps;
    cfg.seed = seed;
    cfg.with_opt = with_opt;
    cfg.threads = threads;
    cfg.urn_alpha_ratio = urn_ratio;
    cfg.mixture_components = mixture_components;
    cfg.budget.max_committees = budget;
    if (algos.empty()) throw std::invalid_argument("--algos is required");
    std::stringstream ss(algos);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) cfg.algorithms.push_back(mw::parse_algo_spec(tok));
    if (sweep_truncation)
      for (int p = 1; p <= m; ++p) cfg.truncation.push_back(p);
    else if (!truncation_list.empty())
      cfg.truncation = parse_int_list(truncation_list);
    mw::BenchmarkResult res = mw::run_benchmark(cfg);
    std::ostringstream os;
    mw::write_benchmark_csv(os, res);
    write_text(out, os.str());
  }
};

struct BoundsCmd {
  std::string name;
  int m = 0, k = 0, p = 0, q = 0;
  double epsilon = 0.2, lambda = 0.9, delta = 0.1, y = 0;

  void run() const {
    namespace b = mw::bounds;
    std::ostringstream os;
    os.precision(12);
    auto emit = [&os](const b::BoundReport& r) {
      os << "name=" << r.name << "\nraw=" << r.raw << "\nclamped=" << r.clamped
         << "\n";
    };
    if (name == "harmonic") {
      b::rational h = b::harmonic(k);
      os << "name=harmonic\nexact=" << boost::multiprecision::numerator(h) << "/"
         << boost::multiprecision::denominator(h)
         << "\nvalue=" << b::harmonic_double(k) << "\n";
    } else if (name == "lambert-w") {
      double w = b::lambert_w(y);
      os << "name=lambert-w\nw=" << w << "\nresidual=" << w * std::exp(w) - y
         << "\n";
    } else if (name == "monroe-greedy") {
      emit(b::make_bound_report("monroe-greedy", b::monroe_greedy_bound(m, k), true));
    } else if (name == "monroe-truncated") {
      emit(b::make_bound_report("monroe-truncated",
                                b::monroe_truncated_bound(m, k, p), true));
    } else if (name == "sampling-ratio") {
      emit(b::make_bound_report("sampling-ratio", b::sampling_expected_ratio(m, k),
                                true));
    } else if (name == "sampling-failure") {
      emit(b::make_bound_report("sampling-failure",
                                b::sampling_failure_prob(k, epsilon), true));
    } else if (name == "ar-samples") {
      os << "name=ar-samples\nvalue=" << b::ar_sample_count(k, epsilon, lambda)
         << "\n";
    } else if (name == "cc-p") {
      emit(b::make_bound_report("cc-p", b::cc_p_bound(k), true));
      os << "x=" << b::cc_p_x(m > 0 ? m : k, k) << "\n";
    } else if (name == "cc-truncated") {
      emit(b::make_bound_report("cc-truncated", b::cc_truncated_bound(m, k, q),
                                true));
    } else if (name == "cc-delta-x") {
      os << "name=cc-delta-x\nvalue=" << b::cc_delta_x(m, k, delta) << "\n";
    } else if (name == "crossover") {
      b::Crossover c = b::sampling_crossover();
      os << "name=crossover\nx=" << c.x << "\nratio=" << c.ratio << "\n";
    } else {
      throw std::invalid_argument("unknown bound name: " + name);
    }
    std::cout << os.str();
  }
};

struct EmitIlpCmd {
  std::string profile_path, rule = "monroe", out = "-";
  int k = 1, truncate = 0;

  void run() const {
    mw::PreferenceProfile profile = load_profile(profile_path);
    const int m = profile.num_alternatives();
    mw::ScoringFunction psf = mw::ScoringFunction::borda_dec(m);
    if (truncate > 0 && truncate < m) {
      profile = mw::truncate_profile(profile, truncate);
      psf = mw::ScoringFunction::truncated(m, truncate);
    }
    mw::ElectionRule r = rule == "monroe"
                             ? mw::ElectionRule::monroe(k)
                             : rule == "cc" ? mw::ElectionRule::cc(k)
                                            : throw std::invalid_argument(
                                                  "rule must be monroe or cc");
    write_text(out, mw::emit_ilp(profile, psf, r));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monroe / Chamberlin-Courant winner determination toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file (flags win over file)");

  GenerateCmd gen;
  CLI::App* g = app.add_subcommand("generate", "generate a preference profile");
  g->add_option("--model", gen.model, "ic | urn | mallows")->capture_default_str();
  g->add_option("--n", gen.n, "number of voters")->required();
  g->add_option("--m", gen.m, "number of alternatives")->required();
  g->add_option("--seed", gen.seed, "rng seed")->capture_default_str();
  g->add_option("--urn-ratio", gen.urn_ratio, "urn: a/m!")->capture_default_str();
  g->add_option("--mixture-components", gen.mixture_components,
                "mallows mixture size")
      ->capture_default_str();
  g->add_option("--truncate", gen.truncate, "keep only the top P positions");
  g->add_option("--out", gen.out, "output path, - for stdout")->capture_default_str();

  SolveCmd solve;
  CLI::App* s = app.add_subcommand("solve", "run one algorithm on a profile");
  s->add_option("--profile", solve.profile_path, "profile path, - for stdin")
      ->required();
  s->add_option("--rule", solve.rule, "monroe | cc")->capture_default_str();
  s->add_option("--algo", solve.algo,
                "monroe: a b c gm r ar exact; cc: c gm p p-delta r exact")
      ->capture_default_str();
  s->add_option("--k", solve.k, "committee size")->required();
  s->add_option("--d", solve.d, "beam width for algo c")->capture_default_str();
  s->add_option("--samples", solve.samples, "samples for algo r")
      ->capture_default_str();
  s->add_option("--epsilon", solve.epsilon, "ar accuracy")->capture_default_str();
  s->add_option("--lambda", solve.lambda, "ar confidence")->capture_default_str();
  s->add_option("--delta", solve.delta, "p-delta voter fraction")
      ->capture_default_str();
  s->add_option("--x", solve.x, "override algo p window");
  s->add_option("--seed", solve.seed, "rng seed")->capture_default_str();
  s->add_flag("--with-opt", solve.with_opt, "also brute-force C_opt");
  s->add_option("--budget", solve.budget, "brute-force committee budget")
      ->capture_default_str();
  s->add_option("--truncate", solve.truncate, "truncate ballots to top P first");
  s->add_option("--out", solve.out, "output path, - for stdout")
      ->capture_default_str();

  BenchmarkCmd bench;
  CLI::App* b = app.add_subcommand("benchmark", "repeated runs, CSV output");
  b->add_option("--model", bench.model, "ic | urn | mallows")->capture_default_str();
  b->add_option("--n", bench.n)->capture_default_str();
  b->add_option("--m", bench.m)->capture_default_str();
  b->add_option("--k", bench.k)->capture_default_str();
  b->add_option("--reps", bench.reps, "repetitions")->capture_default_str();
  b->add_option("--seed", bench.seed, "master seed")->capture_default_str();
  b->add_option("--algos", bench.algos,
                "comma list, e.g. monroe-a,monroe-b,cc-p")
      ->required();
  b->add_flag("--with-opt", bench.with_opt, "brute-force C_opt per instance");
  b->add_flag("--sweep-truncation", bench.sweep_truncation, "run P = 1..m");
  b->add_option("--truncation", bench.truncation_list, "comma list of P values");
  b->add_option("--threads", bench.threads)->capture_default_str();
  b->add_option("--urn-ratio", bench.urn_ratio)->capture_default_str();
  b->add_option("--mixture-components", bench.mixture_components)
      ->capture_default_str();
  b->add_option("--budget", bench.budget)->capture_default_str();
  b->add_option("--out", bench.out, "output path, - for stdout")
      ->capture_default_str();

  BoundsCmd bounds;
  CLI::App* bd = app.add_subcommand("bounds", "theoretical bound calculators");
  bd->add_option("--name", bounds.name,
                 "harmonic | lambert-w | monroe-greedy | monroe-truncated | "
                 "sampling-ratio | sampling-failure | ar-samples | cc-p | "
                 "cc-truncated | cc-delta-x | crossover")
      ->required();
  bd->add_option("--m", bounds.m);
  bd->add_option("--k", bounds.k);
  bd->add_option("--p", bounds.p);
  bd->add_option("--q", bounds.q);
  bd->add_option("--epsilon", bounds.epsilon)->capture_default_str();
  bd->add_option("--lambda", bounds.lambda)->capture_default_str();
  bd->add_option("--delta", bounds.delta)->capture_default_str();
  bd->add_option("--y", bounds.y, "lambert-w argument");

  EmitIlpCmd ilp;
  CLI::App* e = app.add_subcommand("emit-ilp", "write the winner ILP (CPLEX LP)");
  e->add_option("--profile", ilp.profile_path, "profile path, - for stdin")
      ->required();
  e->add_option("--rule", ilp.rule, "monroe | cc")->capture_default_str();
  e->add_option("--k", ilp.k, "committee size")->required();
  e->add_option("--truncate", ilp.truncate, "truncate ballots to top P first");
  e->add_option("--out", ilp.out, "output path, - for stdout")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (g->parsed()) gen.run();
    if (s->parsed()) solve.run();
    if (b->parsed()) bench.run();
    if (bd->parsed()) bounds.run();
    if (e->parsed()) ilp.run();
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}

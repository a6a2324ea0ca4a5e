#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "core.hpp"
#include "rng.hpp"

namespace multiwinner {

struct GeneratorConfig {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  // urn: a / m! where a copies of a drawn vote return to the urn
  double urn_alpha_ratio = 0.05;
  // weight the urn gains per draw, as a fraction of the initial mass;
  // defaults to urn_alpha_ratio (classic Polya-Eggenberger growth of a)
  std::optional<double> urn_growth_ratio;
  // mallows mixture components
  int mixture_components = 5;
};

namespace detail {

inline void check_gen(const GeneratorConfig& cfg) {
  if (cfg.n < 1 || cfg.m < 1)
    throw std::invalid_argument("generator: n >= 1 and m >= 1 required");
}

inline std::vector<alt_id> random_permutation(int m, rng64& rng) {
  std::vector<alt_id> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  rng.shuffle(perm);
  return perm;
}

}  // namespace detail

inline PreferenceProfile gen_impartial_culture(const GeneratorConfig& cfg) {
  detail::check_gen(cfg);
  rng64 rng(cfg.seed);
  std::vector<std::vector<alt_id>> rankings(cfg.n);
  for (int v = 0; v < cfg.n; ++v)
    rankings[v] = detail::random_permutation(cfg.m, rng);
  return PreferenceProfile(cfg.m, std::move(rankings));
}

// Polya-Eggenberger urn: the urn starts with all m! orders at equal weight
// W0 (never materialized); each draw returns the vote with a extra copies,
// a = urn_alpha_ratio * W0. Draw t is fresh with probability
// W0 / (W0 + t * a) and otherwise copies a uniform earlier draw.
inline PreferenceProfile gen_urn(const GeneratorConfig& cfg) {
  detail::check_gen(cfg);
  if (cfg.urn_alpha_ratio < 0)
    throw std::invalid_argument("gen_urn: the alpha ratio cannot be negative");
  double growth = cfg.urn_growth_ratio.value_or(cfg.urn_alpha_ratio);
  if (growth < 0) throw std::invalid_argument("gen_urn: negative growth ratio");
  rng64 rng(cfg.seed);
  std::vector<std::vector<alt_id>> rankings;
  rankings.reserve(cfg.n);
  for (int t = 0; t < cfg.n; ++t) {
    double p_fresh = 1.0 / (1.0 + t * growth);
    if (t == 0 || rng.next_double() < p_fresh)
      rankings.push_back(detail::random_permutation(cfg.m, rng));
    else
      rankings.push_back(rankings[rng.below(t)]);
  }
  return PreferenceProfile(cfg.m, std::move(rankings));
}

// one Mallows draw by repeated insertion: the j-th candidate of the center
// goes to insertion position p in {1..j} with probability
// phi^(j-p) / sum_{q=0}^{j-1} phi^q, so phi -> 0 reproduces the center and
// phi = 1 is uniform
inline std::vector<alt_id> sample_mallows(const std::vector<alt_id>& center,
                                          double phi, rng64& rng) {
  if (!(phi >= 0 && phi <= 1))
    throw std::invalid_argument("sample_mallows: phi in [0,1]");
  std::vector<alt_id> vote;
  vote.reserve(center.size());
  for (std::size_t j1 = 1; j1 <= center.size(); ++j1) {
    double total = phi == 1.0
                       ? static_cast<double>(j1)
                       : (1.0 - std::pow(phi, static_cast<double>(j1))) / (1.0 - phi);
    double r = rng.next_double() * total;
    // q = j - p: weight phi^q for q = 0, 1, ...
    std::size_t q = 0;
    double w = 1.0, acc = 0.0;
    for (; q + 1 < j1; ++q) {
      acc += w;
      if (r < acc) break;
      w *= phi;
    }
    std::size_t p = j1 - q;  // 1-based insertion position
    vote.insert(vote.begin() + (p - 1), center[j1 - 1]);
  }
  return vote;
}

// Mallows mixture: component weights uniform on the simplex, dispersions
// uniform on [0,1), centers uniform permutations
inline PreferenceProfile gen_mallows_mixture(const GeneratorConfig& cfg) {
  detail::check_gen(cfg);
  if (cfg.mixture_components < 1)
    throw std::invalid_argument("gen_mallows_mixture: components >= 1");
  rng64 rng(cfg.seed);
  const int comps = cfg.mixture_components;
  std::vector<double> lambda(comps);
  double sum = 0;
  for (int i = 0; i < comps; ++i) {
    lambda[i] = -std::log(1.0 - rng.next_double());
    sum += lambda[i];
  }
  for (int i = 0; i < comps; ++i) lambda[i] /= sum;
  std::vector<double> phi(comps);
  for (int i = 0; i < comps; ++i) phi[i] = rng.next_double();
  std::vector<std::vector<alt_id>> centers(comps);
  for (int i = 0; i < comps; ++i)
    centers[i] = detail::random_permutation(cfg.m, rng);

  std::vector<std::vector<alt_id>> rankings(cfg.n);
  for (int v = 0; v < cfg.n; ++v) {
    double r = rng.next_double();
    int c = 0;
    double acc = 0;
    for (; c + 1 < comps; ++c) {
      acc += lambda[c];
      if (r < acc) break;
    }
    rankings[v] = sample_mallows(centers[c], phi[c], rng);
  }
  return PreferenceProfile(cfg.m, std::move(rankings));
}

// number of discordant pairs between two complete rankings
inline int kendall_tau(const std::vector<alt_id>& r1,
                       const std::vector<alt_id>& r2) {
  if (r1.size() != r2.size())
    throw std::invalid_argument("kendall_tau: rankings must have equal length");
  const int m = static_cast<int>(r1.size());
  std::vector<int> pos2(m, -1);
  for (int i = 0; i < m; ++i) {
    if (r2[i] < 0 || r2[i] >= m || pos2[r2[i]] != -1)
      throw std::invalid_argument("kendall_tau: not a permutation");
    pos2[r2[i]] = i;
  }
  std::vector<char> seen(m, 0);
  int discordant = 0;
  for (int i = 0; i < m; ++i) {
    if (r1[i] < 0 || r1[i] >= m || seen[r1[i]])
      throw std::invalid_argument("kendall_tau: not a permutation");
    seen[r1[i]] = 1;
    for (int j = i + 1; j < m; ++j)
      if (pos2[r1[i]] > pos2[r1[j]]) ++discordant;
  }
  return discordant;
}

// keep only the top min(P, ballot length) of every ballot
inline PreferenceProfile truncate_profile(const PreferenceProfile& profile,
                                          int p) {
  if (p < 1 || p > profile.num_alternatives())
    throw std::invalid_argument("truncate_profile: P in [1, m]");
  std::vector<std::vector<alt_id>> rankings = profile.rankings();
  for (auto& r : rankings)
    if (static_cast<int>(r.size()) > p) r.resize(p);
  return PreferenceProfile(profile.num_alternatives(), std::move(rankings),
                           profile.names());
}

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline long parse_long(const std::string& s, int line_no, const char* what) {
  std::size_t used = 0;
  long v;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("expected integer ") + what + ": '" + s + "'");
  }
  if (used != s.size())
    throw ParseError(line_no, std::string("trailing junk after ") + what + ": '" + s + "'");
  return v;
}

}  // namespace detail

// PrefLib SOC/SOI reader: '#'-prefixed metadata ("# NUMBER ALTERNATIVES: m",
// "# ALTERNATIVE NAME i: ...") followed by "count: a,b,c" ballot lines with
// 1-based alternative ids. SOI ballots list only a prefix.
inline PreferenceProfile read_profile(std::istream& in) {
  int m = -1;
  long declared_voters = -1;
  std::vector<std::string> names;
  std::vector<std::vector<alt_id>> rankings;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = detail::trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      std::string meta = detail::trim(s.substr(1));
      auto colon = meta.find(':');
      if (colon == std::string::npos) continue;
      std::string key = detail::trim(meta.substr(0, colon));
      std::string value = detail::trim(meta.substr(colon + 1));
      if (key == "NUMBER ALTERNATIVES") {
        long v = detail::parse_long(value, line_no, "alternative count");
        if (v < 1) throw ParseError(line_no, "NUMBER ALTERNATIVES must be >= 1");
        m = static_cast<int>(v);
        if (static_cast<int>(names.size()) < m) names.resize(m);
      } else if (key == "NUMBER VOTERS") {
        declared_voters = detail::parse_long(value, line_no, "voter count");
      } else if (key.rfind("ALTERNATIVE NAME ", 0) == 0) {
        long idx = detail::parse_long(key.substr(17), line_no, "alternative index");
        if (idx < 1) throw ParseError(line_no, "alternative index must be >= 1");
        if (static_cast<std::size_t>(idx) > names.size()) names.resize(idx);
        names[idx - 1] = value;
      }
      continue;
    }
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw ParseError(line_no, "expected 'count: ranking' data line");
    if (m < 0)
      throw ParseError(line_no, "ballot before '# NUMBER ALTERNATIVES' header");
    long count = detail::parse_long(detail::trim(s.substr(0, colon)), line_no,
                                    "ballot count");
    if (count < 1) throw ParseError(line_no, "ballot count must be >= 1");
    std::vector<alt_id> ballot;
    std::vector<char> seen(m, 0);
    std::stringstream body(s.substr(colon + 1));
    std::string tok;
    while (std::getline(body, tok, ',')) {
      tok = detail::trim(tok);
      if (tok.empty()) throw ParseError(line_no, "empty entry in ranking");
      long a = detail::parse_long(tok, line_no, "alternative id");
      if (a < 1 || a > m)
        throw ParseError(line_no, "alternative id " + std::to_string(a) +
                                      " outside 1.." + std::to_string(m));
      if (seen[a - 1])
        throw ParseError(line_no,
                         "duplicate alternative " + std::to_string(a) + " in ballot");
      seen[a - 1] = 1;
      ballot.push_back(static_cast<alt_id>(a - 1));
    }
    if (ballot.empty()) throw ParseError(line_no, "empty ballot");
    for (long c = 0; c < count; ++c) rankings.push_back(ballot);
  }
  if (m < 0) throw ParseError(line_no, "missing '# NUMBER ALTERNATIVES' header");
  if (rankings.empty()) throw ParseError(line_no, "no ballots");
  if (declared_voters >= 0 &&
      declared_voters != static_cast<long>(rankings.size()))
    throw ParseError(line_no, "NUMBER VOTERS says " + std::to_string(declared_voters) +
                                  " but file has " + std::to_string(rankings.size()));
  names.resize(m);
  bool have_names = false;
  for (const auto& nm : names)
    if (!nm.empty()) have_names = true;
  return PreferenceProfile(m, std::move(rankings),
                           have_names ? std::move(names)
                                      : std::vector<std::string>{});
}

inline PreferenceProfile read_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file: " + path);
  return read_profile(in);
}

// groups identical ballots (count descending, then lexicographic), so the
// round trip preserves the multiset of ballots
inline void write_profile(std::ostream& out, const PreferenceProfile& profile) {
  const int m = profile.num_alternatives();
  std::map<std::vector<alt_id>, int> groups;
  for (const auto& r : profile.rankings()) ++groups[r];
  std::vector<std::pair<std::vector<alt_id>, int>> ordered(groups.begin(),
                                                           groups.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  out << "# DATA TYPE: " << (profile.is_complete() ? "soc" : "soi") << "\n";
  out << "# NUMBER ALTERNATIVES: " << m << "\n";
  out << "# NUMBER VOTERS: " << profile.num_voters() << "\n";
  out << "# NUMBER UNIQUE ORDERS: " << ordered.size() << "\n";
  for (int a = 0; a < m; ++a) {
    std::string name = a < static_cast<int>(profile.names().size()) &&
                               !profile.names()[a].empty()
                           ? profile.names()[a]
                           : "a" + std::to_string(a + 1);
    out << "# ALTERNATIVE NAME " << (a + 1) << ": " << name << "\n";
  }
  for (const auto& [ballot, count] : ordered) {
    out << count << ": ";
    for (std::size_t i = 0; i < ballot.size(); ++i)
      out << (i ? "," : "") << (ballot[i] + 1);
    out << "\n";
  }
}

inline void write_profile_file(const std::string& path,
                               const PreferenceProfile& profile) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_profile(out, profile);
}

inline PreferenceProfile generate(const std::string& model,
                                  const GeneratorConfig& cfg) {
  if (model == "ic") return gen_impartial_culture(cfg);
  if (model == "urn") return gen_urn(cfg);
  if (model == "mallows") return gen_mallows_mixture(cfg);
  throw std::invalid_argument("unknown model: " + model +
                              " (expected ic, urn, or mallows)");
}

}  // namespace multiwinner

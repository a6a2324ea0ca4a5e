#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>

#include "core.hpp"

namespace multiwinner {

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// min-cost max-flow, successive shortest paths with potentials.
// Arc order is insertion order and Dijkstra breaks distance ties by node
// index, so equal-cost optima resolve the same way on every run.
class MinCostFlow {
 public:
  explicit MinCostFlow(int num_nodes) : head_(num_nodes, -1) {}

  void add_edge(int from, int to, int cap, std::int64_t cost) {
    arcs_.push_back({to, head_[from], cap, cost});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0, -cost});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  // pushes max flow from s to t, returns (flow, cost)
  std::pair<int, std::int64_t> run(int s, int t) {
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    int n = static_cast<int>(head_.size());
    std::vector<std::int64_t> pot(n, 0), dist(n);
    std::vector<int> prev_arc(n);
    int total_flow = 0;
    std::int64_t total_cost = 0;
    for (;;) {
      dist.assign(n, inf);
      dist[s] = 0;
      using Item = std::pair<std::int64_t, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
      pq.push({0, s});
      while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (int e = head_[u]; e != -1; e = arcs_[e].next) {
          const Arc& a = arcs_[e];
          if (a.cap <= 0) continue;
          std::int64_t nd = d + a.cost + pot[u] - pot[a.to];
          if (nd < dist[a.to]) {
            dist[a.to] = nd;
            prev_arc[a.to] = e;
            pq.push({nd, a.to});
          }
        }
      }
      if (dist[t] >= inf) break;
      for (int u = 0; u < n; ++u)
        if (dist[u] < inf) pot[u] += dist[u];
      int push = std::numeric_limits<int>::max();
      for (int u = t; u != s; u = arcs_[prev_arc[u] ^ 1].to)
        push = std::min(push, arcs_[prev_arc[u]].cap);
      for (int u = t; u != s; u = arcs_[prev_arc[u] ^ 1].to) {
        arcs_[prev_arc[u]].cap -= push;
        arcs_[prev_arc[u] ^ 1].cap += push;
        total_cost += static_cast<std::int64_t>(push) * arcs_[prev_arc[u]].cost;
      }
      total_flow += push;
    }
    return {total_flow, total_cost};
  }

  struct Arc {
    int to;
    int next;
    int cap;
    std::int64_t cost;
  };
  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

}  // namespace detail

inline void check_committee(const PreferenceProfile& profile,
                            const std::vector<alt_id>& committee) {
  std::vector<char> seen(profile.num_alternatives(), 0);
  for (alt_id a : committee) {
    if (a < 0 || a >= profile.num_alternatives())
      throw std::invalid_argument("committee member out of range");
    if (seen[a]) throw std::invalid_argument("duplicate committee member");
    seen[a] = 1;
  }
}

// CC assignment: every voter to their best-ranked committee member
// (lowest position; ties, which only truncated ballots can produce, go to
// the lowest id).
inline Assignment optimal_assignment_cc(const PreferenceProfile& profile,
                                        const std::vector<alt_id>& committee) {
  check_committee(profile, committee);
  if (committee.empty()) throw std::invalid_argument("empty committee");
  Assignment phi;
  phi.rep.resize(profile.num_voters());
  for (voter_id v = 0; v < profile.num_voters(); ++v) {
    alt_id best = committee[0];
    int best_pos = profile.position_of(v, best);
    for (std::size_t i = 1; i < committee.size(); ++i) {
      int pos = profile.position_of(v, committee[i]);
      if (pos < best_pos ||
          (pos == best_pos && committee[i] < best)) {
        best = committee[i];
        best_pos = pos;
      }
    }
    phi.rep[v] = best;
  }
  return phi;
}

// Optimal partial assignment to `committee` maximizing total satisfaction,
// each member serving at most `capacity` voters; assigns
// min(n, |committee| * capacity) voters.
//
// With require_balanced every voter is assigned and loads follow ILP
// constraint (c): each member serves between floor(n/K) and ceil(n/K),
// K = |committee| (callers pass full K-committees). The lower bounds are
// enforced without an explicit lower-bound transformation: sink capacity is
// split into per-member floor(n/K) arcs plus one shared node carrying the
// n mod K extra units, so a max flow of n saturates every floor arc.
inline Assignment optimal_assignment_capacitated(
    const PreferenceProfile& profile, const ScoringFunction& psf,
    const std::vector<alt_id>& committee, int capacity,
    bool require_balanced = false) {
  check_committee(profile, committee);
  if (psf.size() != profile.num_alternatives())
    throw std::invalid_argument("psf size != m");
  const int n = profile.num_voters();
  const int s = static_cast<int>(committee.size());

  if (require_balanced) {
    if (s == 0 || static_cast<std::int64_t>(s) * ((n + s - 1) / s) < n)
      throw InfeasibleError("balanced assignment infeasible for committee");
  }
  if (capacity < 0) throw std::invalid_argument("negative capacity");

  std::int64_t top = 0;
  for (int p = 1; p <= psf.size(); ++p) top = std::max(top, psf.score_at(p));

  // nodes: 0 = source, 1..n voters, n+1..n+s members, n+s+1 sink,
  // n+s+2 extra (balanced, K does not divide n)
  const int source = 0, sink = n + s + 1;
  const int rem = require_balanced && s > 0 ? n % s : 0;
  detail::MinCostFlow net(n + s + 2 + (rem > 0 ? 1 : 0));
  for (int v = 0; v < n; ++v) net.add_edge(source, 1 + v, 1, 0);
  std::size_t first_voter_arc = 0;  // arcs are appended in pairs, see below
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < s; ++j) {
      std::int64_t cost = top - psf.score_at(profile.position_of(v, committee[j]));
      net.add_edge(1 + v, 1 + n + j, 1, cost);
    }
  if (require_balanced) {
    const int base = s > 0 ? n / s : 0;
    for (int j = 0; j < s; ++j) net.add_edge(1 + n + j, sink, base, 0);
    if (rem > 0) {
      const int extra = n + s + 2;
      for (int j = 0; j < s; ++j) net.add_edge(1 + n + j, extra, 1, 0);
      net.add_edge(extra, sink, rem, 0);
    }
  } else {
    for (int j = 0; j < s; ++j) net.add_edge(1 + n + j, sink, capacity, 0);
  }
  first_voter_arc = 2 * static_cast<std::size_t>(n);

  auto [flow, cost] = net.run(source, sink);
  (void)cost;
  if (require_balanced && flow != n)
    throw InfeasibleError("balanced assignment infeasible for committee");

  Assignment phi;
  phi.rep.assign(n, kUnassigned);
  const auto& arcs = net.arcs();
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < s; ++j) {
      std::size_t e = first_voter_arc + 2 * (static_cast<std::size_t>(v) * s + j);
      if (arcs[e].cap == 0) phi.rep[v] = committee[j];  // forward arc used
    }
  return phi;
}

// total satisfaction of the optimal capacitated partial assignment; the
// z_N(S) of the submodularity lemma when capacity = ceil(n/K)
inline std::int64_t capacitated_value(const PreferenceProfile& profile,
                                      const ScoringFunction& psf,
                                      const std::vector<alt_id>& committee,
                                      int capacity) {
  Assignment phi =
      optimal_assignment_capacitated(profile, psf, committee, capacity, false);
  return evaluate(profile, psf, phi).l1;
}

// dispatch on rule: Monroe -> balanced flow, CC -> best-in-committee
inline Assignment optimal_assignment(const PreferenceProfile& profile,
                                     const ScoringFunction& psf,
                                     const std::vector<alt_id>& committee,
                                     const ElectionRule& rule) {
  if (rule.kind == RuleKind::chamberlin_courant)
    return optimal_assignment_cc(profile, committee);
  return optimal_assignment_capacitated(profile, psf, committee,
                                        rule.capacity(profile.num_voters()),
                                        /*require_balanced=*/true);
}

}  // namespace multiwinner

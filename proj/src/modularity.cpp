#include "scimetrics/modularity.hpp"

#include "scimetrics/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

namespace scimetrics {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Unbiased draw from [0, n); std::uniform_int_distribution is not portable
// across standard libraries, this is.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

void shuffle(std::vector<std::uint32_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

// One level of the multilevel scheme: nodes may stand for aggregated clusters.
struct Level {
  std::vector<std::vector<WeightedGraph::Neighbor>> adj;  // no self entries
  std::vector<double> self_weight;                        // internal weight, each edge once
  std::vector<double> degree;
};

Level base_level(const WeightedGraph& g) {
  Level L;
  const auto n = g.node_count();
  L.adj.resize(n);
  L.self_weight.assign(n, 0.0);
  L.degree.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto nb = g.neighbors(i);
    L.adj[i].assign(nb.begin(), nb.end());
    L.degree[i] = g.degree(i);
  }
  return L;
}

// Returns true if any node changed cluster.
bool local_moving(const Level& L, double m, double resolution, std::mt19937_64& rng,
                  std::vector<std::uint32_t>& mem) {
  const auto n = static_cast<std::uint32_t>(L.adj.size());
  mem.resize(n);
  std::iota(mem.begin(), mem.end(), 0u);
  std::vector<double> tot(L.degree);
  std::vector<std::uint32_t> csize(n, 1);
  std::set<std::uint32_t> empty;

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  shuffle(order, rng);

  std::vector<double> w_to(n, 0.0);
  std::vector<std::uint32_t> touched;
  const double two_m = 2.0 * m;
  bool any_move = false;

  for (bool moved = true; moved;) {
    moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t old_c = mem[i];
      const double k = L.degree[i];
      for (const auto& nb : L.adj[i]) {
        const auto c = mem[nb.node];
        if (w_to[c] == 0.0) touched.push_back(c);
        w_to[c] += nb.weight;
      }
      tot[old_c] -= k;
      --csize[old_c];
      if (csize[old_c] == 0) empty.insert(old_c);

      auto gain = [&](std::uint32_t c) { return w_to[c] - resolution * k * tot[c] / two_m; };
      const double stay = gain(old_c);
      const double eps = 1e-12 * std::max(1.0, k);
      std::sort(touched.begin(), touched.end());
      std::uint32_t best = old_c;
      double best_gain = stay;
      for (auto c : touched) {
        if (c == old_c) continue;
        const double gc = gain(c);
        if (gc > stay + eps && (best == old_c || gc > best_gain)) {
          best = c;
          best_gain = gc;
        }
      }
      // An empty cluster (isolating the node) has gain exactly zero.
      if (!empty.empty() && 0.0 > stay + eps && (best == old_c || 0.0 > best_gain)) {
        const auto e = *empty.begin();
        if (e != old_c) best = e;
      }

      tot[best] += k;
      if (csize[best] == 0) empty.erase(best);
      ++csize[best];
      if (best != old_c) {
        mem[i] = best;
        moved = true;
        any_move = true;
      }
      for (auto c : touched) w_to[c] = 0.0;
      touched.clear();
    }
  }
  return any_move;
}

// Renumbers clusters 0..k-1 by first appearance; returns k.
std::uint32_t compact(std::vector<std::uint32_t>& mem) {
  std::vector<std::uint32_t> remap(mem.size(), std::numeric_limits<std::uint32_t>::max());
  std::uint32_t next = 0;
  for (auto& c : mem) {
    if (remap[c] == std::numeric_limits<std::uint32_t>::max()) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

Level aggregate(const Level& L, const std::vector<std::uint32_t>& mem, std::uint32_t k) {
  Level out;
  out.adj.resize(k);
  out.self_weight.assign(k, 0.0);
  out.degree.assign(k, 0.0);
  std::vector<std::map<std::uint32_t, double>> acc(k);
  for (std::uint32_t i = 0; i < L.adj.size(); ++i) {
    const auto ci = mem[i];
    out.self_weight[ci] += L.self_weight[i];
    out.degree[ci] += L.degree[i];
    for (const auto& nb : L.adj[i]) {
      const auto cj = mem[nb.node];
      if (ci == cj) {
        if (i < nb.node) out.self_weight[ci] += nb.weight;
      } else {
        acc[ci][cj] += nb.weight;
      }
    }
  }
  for (std::uint32_t c = 0; c < k; ++c) {
    for (const auto& [d, w] : acc[c]) out.adj[c].push_back({d, w});
  }
  return out;
}

std::vector<std::uint32_t> run_once(const WeightedGraph& g, double resolution, std::uint64_t seed) {
  const auto n = g.node_count();
  std::vector<std::uint32_t> assignment(n);
  std::iota(assignment.begin(), assignment.end(), 0u);
  if (n == 0 || g.total_weight() <= 0) return assignment;

  std::mt19937_64 rng(seed);
  Level level = base_level(g);
  std::vector<std::uint32_t> mem;
  for (;;) {
    const bool moved = local_moving(level, g.total_weight(), resolution, rng, mem);
    const auto k = compact(mem);
    for (auto& a : assignment) a = mem[a];
    if (!moved || k == level.adj.size()) break;
    level = aggregate(level, mem, k);
  }
  return assignment;
}

std::vector<std::size_t> cluster_sizes(const std::vector<std::uint32_t>& mem, std::uint32_t k) {
  std::vector<std::size_t> sizes(k, 0);
  for (auto c : mem) ++sizes[c];
  return sizes;
}

void merge_small_clusters(const WeightedGraph& g, std::vector<std::uint32_t>& mem,
                          std::size_t min_size) {
  if (min_size <= 1) return;
  std::set<std::uint32_t> isolated;  // undersized clusters without any neighbour
  for (;;) {
    std::map<std::uint32_t, std::size_t> sizes;
    for (auto c : mem) ++sizes[c];
    // smallest undersized cluster, ties to the lowest id
    std::optional<std::uint32_t> target;
    for (const auto& [c, size] : sizes) {
      if (size >= min_size || isolated.count(c)) continue;
      if (!target || size < sizes[*target]) target = c;
    }
    if (!target) return;

    std::map<std::uint32_t, double> link;
    for (std::uint32_t i = 0; i < mem.size(); ++i) {
      if (mem[i] != *target) continue;
      for (const auto& nb : g.neighbors(i)) {
        if (mem[nb.node] != *target) link[mem[nb.node]] += nb.weight;
      }
    }
    if (link.empty()) {
      isolated.insert(*target);
      continue;
    }
    auto best = link.begin();
    for (auto it = link.begin(); it != link.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    for (auto& c : mem) {
      if (c == *target) c = best->first;
    }
  }
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::map<std::uint32_t, double>> acc(n);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop in weighted graph");
    if (!(e.weight > 0)) throw std::invalid_argument("edge weight must be positive");
    acc[e.u][e.v] += e.weight;
    acc[e.v][e.u] += e.weight;
    total_weight_ += e.weight;
  }
  adj_.resize(n);
  degree_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, w] : acc[i]) {
      adj_[i].push_back({j, w});
      degree_[i] += w;
    }
  }
}

double modularity(const WeightedGraph& g, std::span<const std::uint32_t> membership,
                  double resolution) {
  const double m = g.total_weight();
  if (m <= 0) return 0.0;
  if (membership.size() != g.node_count()) throw std::invalid_argument("membership size mismatch");
  std::map<std::uint32_t, double> w_in;
  std::map<std::uint32_t, double> k_tot;
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    k_tot[membership[i]] += g.degree(i);
    for (const auto& nb : g.neighbors(i)) {
      if (i < nb.node && membership[i] == membership[nb.node]) w_in[membership[i]] += nb.weight;
    }
  }
  double q = 0;
  for (const auto& [c, k] : k_tot) {
    const double frac = k / (2.0 * m);
    q += w_in[c] / m - resolution * frac * frac;
  }
  return q;
}

std::uint32_t canonicalize(std::vector<std::uint32_t>& membership) {
  std::map<std::uint32_t, std::pair<std::size_t, std::uint32_t>> info;  // id -> (size, first node)
  for (std::uint32_t i = 0; i < membership.size(); ++i) {
    auto [it, inserted] = info.try_emplace(membership[i], 0, i);
    ++it->second.first;
  }
  std::vector<std::pair<std::uint32_t, std::pair<std::size_t, std::uint32_t>>> order(info.begin(),
                                                                                   info.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second.first != b.second.first) return a.second.first > b.second.first;
    return a.second.second < b.second.second;
  });
  std::map<std::uint32_t, std::uint32_t> remap;
  for (std::uint32_t r = 0; r < order.size(); ++r) remap[order[r].first] = r;
  for (auto& c : membership) c = remap[c];
  return static_cast<std::uint32_t>(order.size());
}

Clustering cluster(const WeightedGraph& g, const ClusteringOptions& opts) {
  if (opts.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(opts.resolution >= 0)) throw std::invalid_argument("resolution must be >= 0");

  if (g.node_count() == 0) return {};

  const auto restarts = static_cast<std::size_t>(opts.restarts);
  std::vector<std::vector<std::uint32_t>> results(restarts);
  std::vector<double> quality(restarts);
  parallel_for(restarts, opts.threads, [&](std::size_t r) {
    results[r] = run_once(g, opts.resolution, splitmix64(opts.seed + 0x632BE59BD9B4E019ULL * r));
    canonicalize(results[r]);
    quality[r] = modularity(g, results[r], opts.resolution);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    const double tol = 1e-12 * std::max(1.0, std::abs(quality[best]));
    if (quality[r] > quality[best] + tol) {
      best = r;
    } else if (std::abs(quality[r] - quality[best]) <= tol) {
      auto kr = *std::max_element(results[r].begin(), results[r].end()) + 1;
      auto kb = *std::max_element(results[best].begin(), results[best].end()) + 1;
      if (cluster_sizes(results[r], kr) < cluster_sizes(results[best], kb)) best = r;
    }
  }

  Clustering out;
  out.membership = std::move(results[best]);
  merge_small_clusters(g, out.membership, opts.min_cluster_size);
  out.n_clusters = canonicalize(out.membership);
  out.quality = modularity(g, out.membership, opts.resolution);
  return out;
}

}  // namespace scimetrics

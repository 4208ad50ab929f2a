#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scimetrics {

// Undirected weighted graph, stored as symmetric adjacency lists.
class WeightedGraph {
 public:
  struct Edge {
    std::uint32_t u;
    std::uint32_t v;
    double weight;
  };
  struct Neighbor {
    std::uint32_t node;
    double weight;
  };

  WeightedGraph() = default;
  // Parallel edges are summed. Self-loops and non-positive weights are
  // rejected with std::invalid_argument.
  WeightedGraph(std::size_t n, std::span<const Edge> edges);

  std::size_t node_count() const { return adj_.size(); }
  std::span<const Neighbor> neighbors(std::uint32_t n) const { return adj_[n]; }
  double degree(std::uint32_t n) const { return degree_[n]; }
  double total_weight() const { return total_weight_; }  // sum of edge weights, each edge once

 private:
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<double> degree_;
  double total_weight_ = 0;
};

// Q = sum_c [ w_in(c) / m - resolution * (K_c / 2m)^2 ], with w_in the
// intra-cluster edge weight, K_c the summed degree and m the total weight.
// Zero for an edgeless graph.
double modularity(const WeightedGraph& g, std::span<const std::uint32_t> membership,
                  double resolution = 1.0);

struct ClusteringOptions {
  double resolution = 1.0;
  std::size_t min_cluster_size = 1;
  std::uint64_t seed = 0;
  int restarts = 10;
  unsigned threads = 1;
};

struct Clustering {
  // Cluster ids are 0..n_clusters-1, numbered by decreasing size, ties by
  // the smallest member node.
  std::vector<std::uint32_t> membership;
  std::uint32_t n_clusters = 0;
  double quality = 0;  // modularity of `membership` at the requested resolution
};

// Modularity optimization by seeded local moving: nodes are visited in a
// shuffled order and moved to the neighbouring cluster with the largest
// strictly positive gain (ties to the lowest cluster id) until a full pass
// moves nothing; clusters are then aggregated into nodes and the procedure
// repeats on the reduced graph. Each restart uses its own seeded generator;
// the best quality wins, ties to the lexicographically smallest cluster-size
// vector, then the earliest restart. Clusters below min_cluster_size are
// merged into the neighbouring cluster with the largest connecting weight.
// The result depends only on (graph, options) minus `threads`.
Clustering cluster(const WeightedGraph& g, const ClusteringOptions& opts);

// Relabels a membership vector into canonical order (see Clustering).
std::uint32_t canonicalize(std::vector<std::uint32_t>& membership);

}  // namespace scimetrics

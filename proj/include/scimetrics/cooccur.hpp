#pragma once

#include "scimetrics/corpus.hpp"
#include "scimetrics/modularity.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scimetrics {

// Normalized, deduplicated union of the record's author and index keywords.
std::set<std::string> extract_terms(const PublicationRecord& record);

struct CooccurrenceEdge {
  std::uint32_t i = 0;  // i < j
  std::uint32_t j = 0;
  std::int64_t count = 0;  // publications containing both terms
  double weight = 0;       // association strength, 0 until filled
};

struct CooccurrenceNetwork {
  std::vector<std::string> terms;  // sorted
  std::vector<std::int64_t> occurrence;
  std::vector<CooccurrenceEdge> edges;  // sorted by (i, j)
  std::int64_t n_publications = 0;      // size of the publication set

  std::optional<std::uint32_t> term_index(std::string_view term) const;
  std::int64_t total_links() const { return static_cast<std::int64_t>(edges.size()); }
  std::int64_t total_link_strength() const;
  WeightedGraph weighted_graph() const;  // uses association-strength weights
};

// Terms occurring in at least `min_occurrence` publications of the set, with
// pairwise co-occurrence counts among them.
CooccurrenceNetwork build_network(const PubIdSet& set, const Corpus& corpus,
                                  std::int64_t min_occurrence);

// a_ij = 2 T c_ij / (occ_i occ_j), T = publications in the set.
CooccurrenceNetwork association_strength(CooccurrenceNetwork network);

Clustering cluster_network(const CooccurrenceNetwork& network, const ClusteringOptions& opts);

struct ClusterSummary {
  std::uint32_t cluster_id = 0;
  std::int64_t n_nodes = 0;
  std::int64_t n_publications = 0;     // publications containing >= 1 cluster term
  std::int64_t core_paper_count = 0;
  std::int64_t core_total = 0;         // core publications in the whole set
  double link_avg = 0;                 // mean network term-pair links per publication
  double year_avg = 0;
  std::vector<std::pair<std::string, std::int64_t>> top_terms;
  bool degenerate = false;             // no publication carries a cluster term

  // Share of all core publications of the set that fall in this cluster.
  double core_paper_pct() const;
  // Share of this cluster's publications that are core.
  double core_fraction_pct() const;
};

// Per-cluster statistics. link_avg counts, for each publication of the
// cluster, the pairs of its terms that are linked in the network.
std::vector<ClusterSummary> cluster_summary(const CooccurrenceNetwork& network,
                                            const Clustering& clustering, const PubIdSet& set,
                                            const Corpus& corpus, const PubIdSet& core,
                                            std::size_t top_n = 5);

}  // namespace scimetrics

#include "scimetrics/cooccur.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace scimetrics {
namespace {

std::uint64_t pair_key(std::uint32_t i, std::uint32_t j) {
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

// Network term ids of a record, ascending.
std::vector<std::uint32_t> term_ids(const PublicationRecord& rec, const CooccurrenceNetwork& net) {
  std::vector<std::uint32_t> ids;
  for (const auto& t : extract_terms(rec)) {
    if (auto idx = net.term_index(t)) ids.push_back(*idx);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

std::set<std::string> extract_terms(const PublicationRecord& record) {
  return normalized_keywords(record);
}

std::optional<std::uint32_t> CooccurrenceNetwork::term_index(std::string_view term) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), term);
  if (it == terms.end() || *it != term) return std::nullopt;
  return static_cast<std::uint32_t>(it - terms.begin());
}

std::int64_t CooccurrenceNetwork::total_link_strength() const {
  std::int64_t s = 0;
  for (const auto& e : edges) s += e.count;
  return s;
}

WeightedGraph CooccurrenceNetwork::weighted_graph() const {
  std::vector<WeightedGraph::Edge> list;
  list.reserve(edges.size());
  for (const auto& e : edges) list.push_back({e.i, e.j, e.weight});
  return WeightedGraph(terms.size(), list);
}

CooccurrenceNetwork build_network(const PubIdSet& set, const Corpus& corpus,
                                  std::int64_t min_occurrence) {
  if (min_occurrence < 1) throw std::invalid_argument("min_occurrence must be >= 1");
  CooccurrenceNetwork net;
  net.n_publications = static_cast<std::int64_t>(set.size());

  std::vector<std::vector<std::string>> per_pub;
  std::map<std::string, std::int64_t> occ;
  for (const auto& id : set) {
    const auto* rec = corpus.find(id);
    if (!rec) continue;
    auto terms = extract_terms(*rec);
    for (const auto& t : terms) ++occ[t];
    per_pub.emplace_back(terms.begin(), terms.end());
  }
  for (const auto& [t, n] : occ) {
    if (n >= min_occurrence) {
      net.terms.push_back(t);
      net.occurrence.push_back(n);
    }
  }

  std::unordered_map<std::uint64_t, std::int64_t> pairs;
  std::vector<std::uint32_t> ids;
  for (const auto& terms : per_pub) {
    ids.clear();
    for (const auto& t : terms) {
      if (auto idx = net.term_index(t)) ids.push_back(*idx);
    }
    // terms are sorted, so ids are ascending
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) ++pairs[pair_key(ids[a], ids[b])];
    }
  }
  net.edges.reserve(pairs.size());
  for (const auto& [key, c] : pairs) {
    net.edges.push_back({static_cast<std::uint32_t>(key >> 32),
                         static_cast<std::uint32_t>(key & 0xffffffffu), c, 0.0});
  }
  std::sort(net.edges.begin(), net.edges.end(), [](const auto& x, const auto& y) {
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });
  return net;
}

CooccurrenceNetwork association_strength(CooccurrenceNetwork network) {
  const double two_t = 2.0 * static_cast<double>(network.n_publications);
  for (auto& e : network.edges) {
    const double oi = static_cast<double>(network.occurrence[e.i]);
    const double oj = static_cast<double>(network.occurrence[e.j]);
    e.weight = two_t * static_cast<double>(e.count) / (oi * oj);
  }
  return network;
}

Clustering cluster_network(const CooccurrenceNetwork& network, const ClusteringOptions& opts) {
  return cluster(network.weighted_graph(), opts);
}

double ClusterSummary::core_paper_pct() const {
  return core_total ? 100.0 * static_cast<double>(core_paper_count) / static_cast<double>(core_total)
                    : 0.0;
}

double ClusterSummary::core_fraction_pct() const {
  return n_publications
             ? 100.0 * static_cast<double>(core_paper_count) / static_cast<double>(n_publications)
             : 0.0;
}

std::vector<ClusterSummary> cluster_summary(const CooccurrenceNetwork& network,
                                            const Clustering& clustering, const PubIdSet& set,
                                            const Corpus& corpus, const PubIdSet& core,
                                            std::size_t top_n) {
  const auto k = clustering.n_clusters;
  std::vector<ClusterSummary> out(k);
  std::vector<std::int64_t> year_sum(k, 0);
  std::vector<std::int64_t> link_sum(k, 0);
  std::vector<std::vector<std::pair<std::string, std::int64_t>>> members(k);
  for (std::uint32_t t = 0; t < network.terms.size(); ++t) {
    const auto c = clustering.membership[t];
    ++out[c].n_nodes;
    members[c].emplace_back(network.terms[t], network.occurrence[t]);
  }

  std::int64_t core_total = 0;
  for (const auto& id : set) {
    const auto* rec = corpus.find(id);
    if (!rec) continue;
    const bool is_core = core.count(id) > 0;
    core_total += is_core;
    const auto ids = term_ids(*rec, network);
    // every pair of network terms on one record is a network edge
    const auto n_ids = static_cast<std::int64_t>(ids.size());
    const std::int64_t links = n_ids * (n_ids - 1) / 2;
    std::set<std::uint32_t> clusters;
    for (auto t : ids) clusters.insert(clustering.membership[t]);
    for (auto c : clusters) {
      ++out[c].n_publications;
      out[c].core_paper_count += is_core;
      year_sum[c] += rec->year;
      link_sum[c] += links;
    }
  }

  for (std::uint32_t c = 0; c < k; ++c) {
    auto& s = out[c];
    s.cluster_id = c;
    s.core_total = core_total;
    s.degenerate = s.n_publications == 0;
    if (!s.degenerate) {
      const double n = static_cast<double>(s.n_publications);
      s.link_avg = static_cast<double>(link_sum[c]) / n;
      s.year_avg = static_cast<double>(year_sum[c]) / n;
    }
    auto& m = members[c];
    std::sort(m.begin(), m.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (m.size() > top_n) m.resize(top_n);
    s.top_terms = std::move(m);
  }
  return out;
}

}  // namespace scimetrics

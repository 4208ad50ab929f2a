#include "scimetrics/interlink.hpp"

#include <algorithm>
#include <map>

namespace scimetrics {
namespace {

std::array<std::int64_t, kSdgCount> sizes_of(const std::vector<SdgAssignment>& assignments) {
  std::array<std::int64_t, kSdgCount> out{};
  for (const auto& a : assignments) {
    for (int id : a.sdgs.ids()) ++out[static_cast<std::size_t>(id - 1)];
  }
  return out;
}

}  // namespace

std::string_view to_string(LinkMode m) {
  return m == LinkMode::cocitation ? "cocitation" : "coclassification";
}

SdgMatrix sdg_cocitation_matrix(const std::vector<SdgAssignment>& assignments,
                                const CitationGraph& graph, const PubIdSet& set) {
  SdgMatrix m;
  m.mode = LinkMode::cocitation;
  m.node_sizes = sizes_of(assignments);

  std::map<std::string_view, SdgSet> sdgs;
  for (const auto& a : assignments) sdgs[a.pub_id] = a.sdgs;

  std::vector<SdgSet> cited;
  for (const auto& citer : set) {
    const auto node = graph.find(citer);
    if (!node) continue;
    cited.clear();
    for (NodeId v : graph.cited_by(*node)) {
      const auto id = graph.id(v);
      if (!set.count(id)) continue;
      auto it = sdgs.find(id);
      cited.push_back(it == sdgs.end() ? SdgSet{} : it->second);
    }
    for (std::size_t a = 0; a < cited.size(); ++a) {
      if (cited[a].empty()) continue;
      for (std::size_t b = a + 1; b < cited.size(); ++b) {
        if (cited[b].empty()) continue;
        // unordered SDG pairs spanned by this (x, y), each counted once
        std::array<std::uint32_t, kSdgCount> pairs{};
        for (int s : cited[a].ids()) {
          for (int t : cited[b].ids()) {
            if (s == t) continue;
            const int lo = std::min(s, t) - 1;
            const int hi = std::max(s, t) - 1;
            pairs[static_cast<std::size_t>(lo)] |= 1u << hi;
          }
        }
        for (int lo = 0; lo < kSdgCount; ++lo) {
          for (int hi = lo + 1; hi < kSdgCount; ++hi) {
            if (pairs[static_cast<std::size_t>(lo)] >> hi & 1u) {
              ++m.cells[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)];
              ++m.cells[static_cast<std::size_t>(hi)][static_cast<std::size_t>(lo)];
            }
          }
        }
      }
    }
  }
  return m;
}

SdgMatrix sdg_coclassification_matrix(const std::vector<SdgAssignment>& assignments) {
  SdgMatrix m;
  m.mode = LinkMode::coclassification;
  m.node_sizes = sizes_of(assignments);
  for (const auto& a : assignments) {
    const auto ids = a.sdgs.ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const auto s = static_cast<std::size_t>(ids[i] - 1);
        const auto t = static_cast<std::size_t>(ids[j] - 1);
        ++m.cells[s][t];
        ++m.cells[t][s];
      }
    }
  }
  return m;
}

std::array<std::optional<double>, kSdgCount> sdg_avg_year(
    const std::vector<SdgAssignment>& assignments, const Corpus& corpus) {
  std::array<std::int64_t, kSdgCount> sum{};
  std::array<std::int64_t, kSdgCount> n{};
  for (const auto& a : assignments) {
    const auto* rec = corpus.find(a.pub_id);
    if (!rec) continue;
    for (int id : a.sdgs.ids()) {
      sum[static_cast<std::size_t>(id - 1)] += rec->year;
      ++n[static_cast<std::size_t>(id - 1)];
    }
  }
  std::array<std::optional<double>, kSdgCount> out{};
  for (std::size_t s = 0; s < out.size(); ++s) {
    if (n[s]) out[s] = static_cast<double>(sum[s]) / static_cast<double>(n[s]);
  }
  return out;
}

std::vector<std::uint32_t> cluster_sdgs(const SdgMatrix& matrix, double resolution,
                                        std::uint64_t seed, int restarts) {
  std::vector<WeightedGraph::Edge> edges;
  for (std::uint32_t s = 0; s < kSdgCount; ++s) {
    for (std::uint32_t t = s + 1; t < kSdgCount; ++t) {
      if (matrix.cells[s][t] != matrix.cells[t][s]) {
        throw std::invalid_argument("cluster_sdgs: matrix is not symmetric");
      }
      if (matrix.cells[s][t] > 0) {
        edges.push_back({s, t, static_cast<double>(matrix.cells[s][t])});
      }
    }
  }
  ClusteringOptions opts;
  opts.resolution = resolution;
  opts.seed = seed;
  opts.restarts = restarts;
  return cluster(WeightedGraph(kSdgCount, edges), opts).membership;
}

}  // namespace scimetrics

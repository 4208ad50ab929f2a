#pragma once

#include "scimetrics/citation_graph.hpp"
#include "scimetrics/corpus.hpp"
#include "scimetrics/modularity.hpp"
#include "scimetrics/sdg.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace scimetrics {

enum class LinkMode { cocitation, coclassification };
std::string_view to_string(LinkMode m);

// Symmetric 17x17 SDG link matrix with zero diagonal. Index 0 is SDG1.
struct SdgMatrix {
  LinkMode mode = LinkMode::cocitation;
  std::array<std::array<std::int64_t, kSdgCount>, kSdgCount> cells{};
  std::array<std::int64_t, kSdgCount> node_sizes{};  // publications per SDG
  std::array<std::optional<double>, kSdgCount> node_avg_year{};

  std::int64_t at(int s, int t) const {
    return cells[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(t - 1)];
  }
};

// For every citing publication of the set and every unordered pair {x, y} of
// distinct set members it cites, each unordered SDG pair {s, t}, s != t,
// with s in sdgs(x) and t in sdgs(y) gains one link, at most once per
// (citer, x, y).
SdgMatrix sdg_cocitation_matrix(const std::vector<SdgAssignment>& assignments,
                                const CitationGraph& graph, const PubIdSet& set);

// cell(s, t) = publications assigned both s and t.
SdgMatrix sdg_coclassification_matrix(const std::vector<SdgAssignment>& assignments);

// Mean publication year per SDG; nullopt for SDGs without publications.
std::array<std::optional<double>, kSdgCount> sdg_avg_year(
    const std::vector<SdgAssignment>& assignments, const Corpus& corpus);

// Modularity clustering of the 17-node graph; membership[s - 1] is the
// cluster of SDG s.
std::vector<std::uint32_t> cluster_sdgs(const SdgMatrix& matrix, double resolution,
                                        std::uint64_t seed, int restarts = 10);

}  // namespace scimetrics

#pragma once

#include "scimetrics/corpus.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scimetrics {

using NodeId = std::uint32_t;

// Directed citation graph: an edge u -> v means u cites v. Every corpus
// record is a node; referenced ids missing from the corpus become phantom
// nodes. No self-loops, no duplicate edges. Immutable after build().
class CitationGraph {
 public:
  static CitationGraph build(const Corpus& corpus);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::string_view id(NodeId n) const { return ids_[n]; }
  bool is_phantom(NodeId n) const { return phantom_[n] != 0; }
  std::optional<NodeId> find(std::string_view pub_id) const;

  // Nodes cited by `n`, in reference-list order.
  std::span<const NodeId> cited_by(NodeId n) const { return out_[n]; }
  // Nodes citing `n`, ascending node id.
  std::span<const NodeId> citing(NodeId n) const { return in_[n]; }

  // All edges as (citing, cited) id pairs in node order.
  std::vector<std::pair<std::string, std::string>> edges() const;
  PubIdSet phantoms() const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::uint8_t> phantom_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::map<std::string, NodeId, std::less<>> index_;
  std::size_t edge_count_ = 0;
};

}  // namespace scimetrics

#include "scimetrics/citation_graph.hpp"

#include <algorithm>

namespace scimetrics {

CitationGraph CitationGraph::build(const Corpus& corpus) {
  CitationGraph g;
  auto intern = [&g](const std::string& id, bool phantom) {
    auto [it, inserted] = g.index_.emplace(id, static_cast<NodeId>(g.ids_.size()));
    if (inserted) {
      g.ids_.push_back(id);
      g.phantom_.push_back(phantom ? 1 : 0);
      g.out_.emplace_back();
      g.in_.emplace_back();
    }
    return it->second;
  };

  for (const auto& rec : corpus.records()) intern(rec.pub_id, false);
  for (const auto& rec : corpus.records()) {
    const NodeId src = g.index_.find(rec.pub_id)->second;
    for (const auto& ref : rec.references) {
      if (ref.empty() || ref == rec.pub_id) continue;
      const NodeId dst = intern(ref, !corpus.contains(ref));
      auto& out = g.out_[src];
      if (std::find(out.begin(), out.end(), dst) != out.end()) continue;
      out.push_back(dst);
      g.in_[dst].push_back(src);
      ++g.edge_count_;
    }
  }
  for (auto& in : g.in_) std::sort(in.begin(), in.end());
  return g;
}

std::optional<NodeId> CitationGraph::find(std::string_view pub_id) const {
  auto it = index_.find(pub_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::string, std::string>> CitationGraph::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < out_.size(); ++u) {
    for (NodeId v : out_[u]) out.emplace_back(ids_[u], ids_[v]);
  }
  return out;
}

PubIdSet CitationGraph::phantoms() const {
  PubIdSet out;
  for (NodeId n = 0; n < ids_.size(); ++n) {
    if (phantom_[n]) out.insert(ids_[n]);
  }
  return out;
}

}  // namespace scimetrics

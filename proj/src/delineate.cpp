#include "scimetrics/delineate.hpp"

#include "scimetrics/parallel.hpp"
#include "scimetrics/text.hpp"

#include <algorithm>
#include <cctype>

namespace scimetrics {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool iequals_at(std::string_view text, std::size_t pos, std::string_view word) {
  if (pos + word.size() > text.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(text[pos + i])) != word[i]) return false;
  }
  return true;
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : text_(text) {}

  TopicQuery parse() {
    TopicQuery q;
    skip_space();
    if (pos_ == text_.size()) throw QueryParseError("empty query", 0);
    for (;;) {
      q.clauses.push_back(clause());
      skip_space();
      if (pos_ == text_.size()) break;
      if (!iequals_at(text_, pos_, "OR") || pos_ + 2 >= text_.size() || !is_space(text_[pos_ + 2])) {
        throw QueryParseError("expected OR", pos_);
      }
      pos_ += 2;
      skip_space();
    }
    return q;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  void expect(char c, const char* what) {
    if (pos_ >= text_.size() || text_[pos_] != c) throw QueryParseError(what, pos_);
    ++pos_;
  }

  PhrasePattern clause() {
    if (!iequals_at(text_, pos_, "TS")) throw QueryParseError("expected TS=\"...\"", pos_);
    pos_ += 2;
    skip_space();
    expect('=', "expected '='");
    skip_space();
    const std::size_t open = pos_;
    expect('"', "expected opening quote");
    const auto close = text_.find('"', pos_);
    if (close == std::string_view::npos) throw QueryParseError("unbalanced quote", open);
    PhrasePattern p = phrase(text_.substr(pos_, close - pos_), pos_);
    if (p.tokens.empty()) throw QueryParseError("empty phrase", open);
    pos_ = close + 1;
    return p;
  }

  static PhrasePattern phrase(std::string_view body, std::size_t offset) {
    PhrasePattern p;
    std::size_t i = 0;
    while (i < body.size()) {
      while (i < body.size() && is_space(body[i])) ++i;
      const std::size_t start = i;
      while (i < body.size() && !is_space(body[i])) ++i;
      if (start == i) break;
      std::string_view word = body.substr(start, i - start);
      const auto star = word.find('*');
      const bool wildcard = star != std::string_view::npos;
      if (wildcard && star + 1 != word.size()) {
        throw QueryParseError("wildcard '*' allowed only at the end of a word",
                              offset + start + star);
      }
      auto toks = text::tokenize(wildcard ? word.substr(0, star) : word);
      if (toks.empty()) {
        if (wildcard) {
          throw QueryParseError("wildcard without a word stem", offset + start + star);
        }
        continue;
      }
      for (auto& t : toks) p.tokens.push_back({std::move(t), false});
      p.tokens.back().wildcard = wildcard;
    }
    return p;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool phrase_in(const PhrasePattern& p, const std::vector<std::string>& words) {
  const auto& toks = p.tokens;
  if (toks.empty() || toks.size() > words.size()) return false;
  for (std::size_t start = 0; start + toks.size() <= words.size(); ++start) {
    std::size_t k = 0;
    while (k < toks.size() && toks[k].matches(words[start + k])) ++k;
    if (k == toks.size()) return true;
  }
  return false;
}

bool phrase_equals(const PhrasePattern& p, const std::vector<std::string>& words) {
  return p.tokens.size() == words.size() && phrase_in(p, words);
}

}  // namespace

bool QueryToken::matches(std::string_view word) const {
  if (wildcard) return word.size() >= text.size() && word.compare(0, text.size(), text) == 0;
  return word == text;
}

TopicQuery parse_query(std::string_view text) { return QueryParser(text).parse(); }

bool match_record(const TopicQuery& query, const PublicationRecord& record) {
  const auto title = text::tokenize(record.title);
  for (const auto& c : query.clauses) {
    if (phrase_in(c, title)) return true;
  }
  const auto abstract = text::tokenize(record.abstract);
  for (const auto& c : query.clauses) {
    if (phrase_in(c, abstract)) return true;
  }
  for (const auto* list : {&record.author_keywords, &record.index_keywords}) {
    for (const auto& kw : *list) {
      const auto words = text::tokenize(kw);
      for (const auto& c : query.clauses) {
        if (phrase_equals(c, words)) return true;
      }
    }
  }
  return false;
}

PubIdSet select_core(const Corpus& corpus, const TopicQuery& query, YearRange years,
                     unsigned threads) {
  const auto records = corpus.records();
  std::vector<std::uint8_t> hit(records.size(), 0);
  parallel_for(records.size(), threads, [&](std::size_t i) {
    hit[i] = years.contains(records[i].year) && match_record(query, records[i]);
  });
  PubIdSet out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (hit[i]) out.insert(records[i].pub_id);
  }
  return out;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::core: return "core";
    case Provenance::cited_only: return "cited_only";
    case Provenance::citing_only: return "citing_only";
    case Provenance::both: return "both";
  }
  return "core";
}

std::optional<Provenance> parse_provenance(std::string_view s) {
  for (auto p : {Provenance::core, Provenance::cited_only, Provenance::citing_only,
                 Provenance::both}) {
    if (s == to_string(p)) return p;
  }
  return std::nullopt;
}

DelineationReport DatasetLabels::report() const {
  DelineationReport r;
  r.core = core.size();
  r.expanded = expanded.size();
  r.final = final.size();
  r.phantoms = phantoms;
  for (const auto& [id, p] : provenance) {
    if (p == Provenance::cited_only || p == Provenance::both) ++r.cited;
    if (p == Provenance::citing_only || p == Provenance::both) ++r.citing;
  }
  return r;
}

DatasetLabels expand_direct_citations(const PubIdSet& core, const CitationGraph& graph,
                                      int layers) {
  if (layers < 0) throw std::invalid_argument("expansion layers must be >= 0");
  DatasetLabels labels;
  labels.core = core;

  std::vector<NodeId> frontier;
  std::vector<std::uint8_t> in_expanded(graph.node_count(), 0);
  for (const auto& id : core) {
    auto n = graph.find(id);
    if (!n || graph.is_phantom(*n)) {
      throw std::invalid_argument("core id '" + id + "' is not a corpus record");
    }
    frontier.push_back(*n);
    in_expanded[*n] = 1;
    labels.provenance.emplace(id, Provenance::core);
  }

  enum : std::uint8_t { kCited = 1, kCiting = 2 };
  PubIdSet phantoms;
  for (int layer = 0; layer < layers && !frontier.empty(); ++layer) {
    // direction flags for nodes first reached in this layer
    std::map<NodeId, std::uint8_t> reached;
    for (NodeId n : frontier) {
      for (NodeId v : graph.cited_by(n)) {
        if (graph.is_phantom(v)) {
          phantoms.insert(std::string(graph.id(v)));
        } else if (!in_expanded[v]) {
          reached[v] |= kCited;
        }
      }
      for (NodeId v : graph.citing(n)) {
        if (!in_expanded[v]) reached[v] |= kCiting;
      }
    }
    frontier.clear();
    for (const auto& [v, flags] : reached) {
      in_expanded[v] = 1;
      frontier.push_back(v);
      const auto p = flags == (kCited | kCiting) ? Provenance::both
                     : flags == kCited            ? Provenance::cited_only
                                                  : Provenance::citing_only;
      labels.provenance.emplace(std::string(graph.id(v)), p);
    }
  }
  for (const auto& [id, p] : labels.provenance) labels.expanded.insert(id);
  labels.phantoms = phantoms.size();
  return labels;
}

DatasetLabels finalize(DatasetLabels labels, const Corpus& corpus, YearRange years,
                       const OrgTypeFilter& org_types) {
  labels.final.clear();
  for (const auto& id : labels.expanded) {
    const auto* rec = corpus.find(id);
    if (rec && years.contains(rec->year) && org_types.matches(*rec)) labels.final.insert(id);
  }
  return labels;
}

}  // namespace scimetrics

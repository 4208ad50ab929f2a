#pragma once

#include "scimetrics/citation_graph.hpp"
#include "scimetrics/corpus.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scimetrics {

// One query word. A wildcard token matches any word starting with `text`
// (zero or more further word characters); a plain token matches exactly.
struct QueryToken {
  std::string text;
  bool wildcard = false;

  bool matches(std::string_view word) const;
  bool operator==(const QueryToken&) const = default;
};

struct PhrasePattern {
  std::vector<QueryToken> tokens;
  bool operator==(const PhrasePattern&) const = default;
};

// Disjunction of phrase clauses.
struct TopicQuery {
  std::vector<PhrasePattern> clauses;
};

class QueryParseError : public std::runtime_error {
 public:
  QueryParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  // 0-based byte offset into the query text.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar: clause ("OR" clause)*, clause := TS = "<phrase>". Field name and
// OR are case-insensitive. A "*" may only end a word.
TopicQuery parse_query(std::string_view text);

// Contiguous phrase match in the title or abstract tokens, or a whole-keyword
// match against any normalized keyword.
bool match_record(const TopicQuery& query, const PublicationRecord& record);

PubIdSet select_core(const Corpus& corpus, const TopicQuery& query, YearRange years,
                     unsigned threads = 1);

enum class Provenance { core, cited_only, citing_only, both };

std::string_view to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view s);

struct DelineationReport {
  std::size_t core = 0;
  std::size_t cited = 0;     // non-core records reached as a cited work
  std::size_t citing = 0;    // non-core records reached as a citing work
  std::size_t expanded = 0;
  std::size_t final = 0;
  std::size_t phantoms = 0;  // distinct out-of-corpus ids reached by expansion
};

struct DatasetLabels {
  PubIdSet core;
  PubIdSet expanded;
  PubIdSet final;
  std::map<std::string, Provenance, std::less<>> provenance;  // keyed by every expanded id
  std::size_t phantoms = 0;

  DelineationReport report() const;
};

// Adds every in-corpus record cited by or citing the current frontier,
// `layers` times (one layer by default). Phantom nodes are counted, never
// added. Throws std::invalid_argument if a core id is not a graph node.
DatasetLabels expand_direct_citations(const PubIdSet& core, const CitationGraph& graph,
                                      int layers = 1);

// final = expanded ∩ filter(corpus, years, org_types)
DatasetLabels finalize(DatasetLabels labels, const Corpus& corpus, YearRange years,
                       const OrgTypeFilter& org_types);

}  // namespace scimetrics

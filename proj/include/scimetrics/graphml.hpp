#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace scimetrics::graphml {

struct Key {
  std::string id;
  std::string domain;  // "node" or "edge"
  std::string name;
  std::string type;    // "string", "int", "double"
};

using Data = std::vector<std::pair<std::string, std::string>>;  // key id -> value

struct Node {
  std::string id;
  Data data;
};

struct Edge {
  std::string source;
  std::string target;
  Data data;
};

struct Document {
  std::vector<Key> keys;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  bool directed = false;
};

void write(std::ostream& out, const Document& doc);

std::string escape(const std::string& s);

}  // namespace scimetrics::graphml

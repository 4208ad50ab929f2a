#include "scimetrics/graphml.hpp"

namespace scimetrics::graphml {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

void write_data(std::ostream& out, const Data& data) {
  for (const auto& [key, value] : data) {
    out << "      <data key=\"" << escape(key) << "\">" << escape(value) << "</data>\n";
  }
}

}  // namespace

void write(std::ostream& out, const Document& doc) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  for (const auto& k : doc.keys) {
    out << "  <key id=\"" << escape(k.id) << "\" for=\"" << k.domain << "\" attr.name=\""
        << escape(k.name) << "\" attr.type=\"" << k.type << "\"/>\n";
  }
  out << "  <graph id=\"G\" edgedefault=\"" << (doc.directed ? "directed" : "undirected")
      << "\">\n";
  for (const auto& n : doc.nodes) {
    out << "    <node id=\"" << escape(n.id) << "\">\n";
    write_data(out, n.data);
    out << "    </node>\n";
  }
  for (const auto& e : doc.edges) {
    out << "    <edge source=\"" << escape(e.source) << "\" target=\"" << escape(e.target)
        << "\">\n";
    write_data(out, e.data);
    out << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

}  // namespace scimetrics::graphml

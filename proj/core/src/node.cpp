#include "atrlab/node.hpp"

#include <algorithm>
#include <sstream>

#include "atrlab/errors.hpp"

namespace atrlab {

bool is_prefix(const Node& a, const Node& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool is_proper_prefix(const Node& a, const Node& b) { return a.size() < b.size() && is_prefix(a, b); }

Node concat(const Node& a, const Node& b) {
  Node out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Node child(const Node& a, Nat label) {
  Node out = a;
  out.push_back(label);
  return out;
}

Node parent(const Node& a) {
  if (a.empty()) throw std::invalid_argument("parent of the empty node");
  return Node(a.begin(), a.end() - 1);
}

bool kb_less(const Node& a, const Node& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() > b.size();
}

std::string to_string(const Node& n) {
  std::ostringstream os;
  for (std::size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
  return os.str();
}

Node parse_node(const std::string& text) {
  Node out;
  std::string cleaned;
  for (char c : text) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '(' && c != ')') cleaned.push_back(c);
  }
  if (cleaned.empty()) return out;
  std::stringstream ss(cleaned);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit)) {
      throw ParseError("bad node entry '" + item + "' in '" + text + "'");
    }
    out.push_back(std::stoull(item));
  }
  return out;
}

}  // namespace atrlab

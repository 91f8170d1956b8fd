#include "atrlab/config.hpp"

#include <fstream>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>

#include "atrlab/errors.hpp"

namespace atrlab {

Budgets parse_budgets(const std::string& text, Budgets base) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    boost::algorithm::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected key=value");
    std::string key = boost::algorithm::trim_copy(line.substr(0, eq));
    std::string value = boost::algorithm::trim_copy(line.substr(eq + 1));
    std::size_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(value, &used);
      if (used != value.size() || value.empty() || value[0] == '-') throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": '" + value + "' is not a natural number");
    }
    if (key == "depth")
      base.depth = v;
    else if (key == "width")
      base.width = v;
    else if (key == "tree-node-cap")
      base.tree_node_cap = v;
    else if (key == "enumeration-cap")
      base.enumeration_cap = v;
    else
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  return base;
}

Budgets load_budgets(const std::string& path, Budgets base) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_budgets(ss.str(), base);
}

std::string to_string(const Budgets& b) {
  return "depth=" + std::to_string(b.depth) + "\nwidth=" + std::to_string(b.width) +
         "\ntree-node-cap=" + std::to_string(b.tree_node_cap) +
         "\nenumeration-cap=" + std::to_string(b.enumeration_cap) + "\n";
}

}  // namespace atrlab

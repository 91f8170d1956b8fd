#pragma once

#include <cstddef>
#include <string>

namespace atrlab {

struct Budgets {
  std::size_t depth = 64;
  std::size_t width = 1;
  std::size_t tree_node_cap = 5000;
  std::size_t enumeration_cap = 1u << 22;
};

// key=value lines; '#' starts a comment. Unknown keys are rejected.
Budgets parse_budgets(const std::string& text, Budgets base = {});
Budgets load_budgets(const std::string& path, Budgets base = {});
std::string to_string(const Budgets& b);

}  // namespace atrlab

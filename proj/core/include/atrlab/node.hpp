#pragma once

#include <string>
#include <vector>

#include "atrlab/pairing.hpp"

namespace atrlab {

// A finite sequence of naturals; tree nodes are nodes of this kind.
using Node = std::vector<Nat>;

bool is_prefix(const Node& a, const Node& b);         // a ⪯ b
bool is_proper_prefix(const Node& a, const Node& b);  // a ≺ b
Node concat(const Node& a, const Node& b);
Node child(const Node& a, Nat label);
Node parent(const Node& a);

// Kleene-Brouwer: a < b iff a properly extends b, or a is smaller at the
// first position where they differ.
bool kb_less(const Node& a, const Node& b);

std::string to_string(const Node& n);  // comma separated, empty for the root
Node parse_node(const std::string& text);

}  // namespace atrlab

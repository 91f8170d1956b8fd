#pragma once

#include <set>
#include <string>

#include "atrlab/hierarchy.hpp"
#include "atrlab/koenig.hpp"
#include "atrlab/machine.hpp"
#include "atrlab/orders.hpp"
#include "atrlab/problems.hpp"

namespace atrlab {

// order n
// a_1 ... a_n
// n rows of n bits, row i column j = 1 iff a_i <= a_j
// optional label lines: "first a", "successor a p"
FiniteOrder parse_order(const std::string& text);
// Labels from the label lines when present, otherwise derived from the order.
LabeledOrder parse_labeled_order(const std::string& text);
std::string format_order(const FiniteOrder& L);
std::string format_labeled_order(const LabeledOrder& L);

// graph n m
// v_1 ... v_n
// m lines "u v"
// optional "part x ..." listing the X side
BipartiteGraph parse_graph(const std::string& text);
std::string format_graph(const BipartiteGraph& G);

// Naturals separated by spaces or commas, braces optional.
std::set<Nat> parse_set(const std::string& text);
std::string format_set(const std::set<Nat>& X);

// One line per entry: "x_1 ... x_k | y_1 ... y_m" maps the join {x} to {y}.
JumpOperator::Table parse_synthetic_table(const std::string& text);

// "bounded:E,S", "suite:S" or "synthetic:FILE".
JumpOperator parse_jump(const std::string& text);

// "prefix p_1 ... p_k" and "tail t" lines.
EventualStream parse_stream(const std::string& text);
// "prefix f_1 ... f_k" and "tail k" lines.
ShiftTable parse_shift_table(const std::string& text);

std::string format_columns(const Columns& columns, const FiniteOrder& L);
std::string read_file(const std::string& path);

}  // namespace atrlab

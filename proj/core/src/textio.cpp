#include "atrlab/textio.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <boost/algorithm/string.hpp>

#include "atrlab/errors.hpp"

namespace atrlab {

namespace {

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    boost::algorithm::trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> words(const std::string& line) {
  std::vector<std::string> out;
  boost::algorithm::split(out, line, boost::algorithm::is_any_of(" \t,{}"), boost::algorithm::token_compress_on);
  std::erase_if(out, [](const std::string& w) { return w.empty(); });
  return out;
}

Nat to_nat(const std::string& w) {
  try {
    std::size_t used = 0;
    Nat v = std::stoull(w, &used);
    if (used == w.size() && w[0] != '-') return v;
  } catch (const std::exception&) {
  }
  throw ParseError("'" + w + "' is not a natural number");
}

std::vector<Nat> nats(const std::vector<std::string>& ws, std::size_t from = 0) {
  std::vector<Nat> out;
  for (std::size_t i = from; i < ws.size(); ++i) out.push_back(to_nat(ws[i]));
  return out;
}

std::pair<std::size_t, std::size_t> header(const std::vector<std::string>& lines, const std::string& tag,
                                           std::size_t count) {
  if (lines.empty()) throw ParseError("empty input, expected '" + tag + "' header");
  auto w = words(lines[0]);
  if (w.empty() || w[0] != tag || w.size() != count + 1)
    throw ParseError("expected header '" + tag + "' with " + std::to_string(count) + " sizes");
  return {to_nat(w[1]), count > 1 ? to_nat(w[2]) : 0};
}

struct ParsedOrder {
  FiniteOrder order;
  std::optional<Nat> first;
  std::set<Nat> successors;
  std::map<Nat, Nat> pred;
};

ParsedOrder parse_order_parts(const std::string& text) {
  auto lines = content_lines(text);
  auto [n, unused] = header(lines, "order", 1);
  if (lines.size() < n + 2 && n > 0) throw ParseError("order: expected element line and " + std::to_string(n) + " rows");
  std::vector<Nat> domain = n ? nats(words(lines[1])) : std::vector<Nat>{};
  if (domain.size() != n) throw ParseError("order: element line has " + std::to_string(domain.size()) + " entries");
  std::vector<std::vector<bool>> leq(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string row = boost::algorithm::erase_all_copy(lines[2 + i], " ");
    if (row.size() != n || row.find_first_not_of("01") != std::string::npos)
      throw ParseError("order: row " + std::to_string(i) + " must hold " + std::to_string(n) + " bits");
    for (char c : row) leq[i].push_back(c == '1');
  }
  ParsedOrder out;
  try {
    out.order = FiniteOrder::from_relation(domain, leq);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("order: ") + e.what());
  }
  for (std::size_t k = (n ? n + 2 : 1); k < lines.size(); ++k) {
    auto w = words(lines[k]);
    if (w[0] == "first" && w.size() == 2)
      out.first = to_nat(w[1]);
    else if (w[0] == "successor" && w.size() == 3) {
      out.successors.insert(to_nat(w[1]));
      out.pred[to_nat(w[1])] = to_nat(w[2]);
    } else
      throw ParseError("order: unexpected line '" + lines[k] + "'");
  }
  return out;
}

}  // namespace

FiniteOrder parse_order(const std::string& text) { return parse_order_parts(text).order; }

LabeledOrder parse_labeled_order(const std::string& text) {
  ParsedOrder p = parse_order_parts(text);
  if (!p.first && p.successors.empty()) return make_labeled(p.order);
  if (p.order.empty()) throw ParseError("order: labels given for an empty order");
  try {
    return LabeledOrder::with_labels(p.order, p.first.value_or(p.order.ascending().front()), p.successors, p.pred);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("order labels: ") + e.what());
  }
}

std::string format_order(const FiniteOrder& L) {
  std::ostringstream out;
  auto domain = L.domain();
  out << "order " << domain.size() << "\n";
  for (std::size_t i = 0; i < domain.size(); ++i) out << (i ? " " : "") << domain[i];
  if (!domain.empty()) out << "\n";
  for (Nat a : domain) {
    for (Nat b : domain) out << (L.leq(a, b) ? '1' : '0');
    out << "\n";
  }
  return out.str();
}

std::string format_labeled_order(const LabeledOrder& L) {
  std::ostringstream out;
  out << format_order(L.order);
  if (L.order.empty()) return out.str();
  out << "first " << L.first << "\n";
  for (Nat s : L.successors) out << "successor " << s << " " << L.pred.at(s) << "\n";
  return out.str();
}

BipartiteGraph parse_graph(const std::string& text) {
  auto lines = content_lines(text);
  auto [n, m] = header(lines, "graph", 2);
  std::size_t k = 1;
  std::vector<Nat> vertices;
  if (n > 0) {
    if (lines.size() < 2) throw ParseError("graph: missing vertex line");
    vertices = nats(words(lines[k++]));
  }
  if (vertices.size() != n) throw ParseError("graph: vertex line has " + std::to_string(vertices.size()) + " entries");
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < m; ++e, ++k) {
    if (k >= lines.size()) throw ParseError("graph: expected " + std::to_string(m) + " edges");
    auto w = nats(words(lines[k]));
    if (w.size() != 2) throw ParseError("graph: edge line '" + lines[k] + "' needs two endpoints");
    edges.push_back({w[0], w[1]});
  }
  std::optional<std::set<Nat>> part;
  if (k < lines.size()) {
    auto w = words(lines[k]);
    if (w[0] != "part") throw ParseError("graph: unexpected line '" + lines[k] + "'");
    auto xs = nats(w, 1);
    part = std::set<Nat>(xs.begin(), xs.end());
    if (++k < lines.size()) throw ParseError("graph: trailing line '" + lines[k] + "'");
  }
  std::sort(vertices.begin(), vertices.end());
  try {
    return BipartiteGraph::make(vertices, edges, part);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

std::string format_graph(const BipartiteGraph& G) {
  std::ostringstream out;
  out << "graph " << G.vertices.size() << " " << G.edges.size() << "\n";
  for (std::size_t i = 0; i < G.vertices.size(); ++i) out << (i ? " " : "") << G.vertices[i];
  if (!G.vertices.empty()) out << "\n";
  for (const auto& [u, v] : G.edges) out << u << " " << v << "\n";
  if (G.x_side) {
    out << "part";
    for (Nat x : *G.x_side) out << " " << x;
    out << "\n";
  }
  return out.str();
}

std::set<Nat> parse_set(const std::string& text) {
  std::set<Nat> out;
  for (const auto& line : content_lines(text))
    for (Nat v : nats(words(line))) out.insert(v);
  return out;
}

std::string format_set(const std::set<Nat>& X) {
  std::string out;
  for (Nat x : X) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

JumpOperator::Table parse_synthetic_table(const std::string& text) {
  JumpOperator::Table out;
  for (const auto& line : content_lines(text)) {
    auto bar = line.find('|');
    if (bar == std::string::npos) throw ParseError("synthetic table: line '" + line + "' has no '|'");
    auto in = nats(words(line.substr(0, bar)));
    auto y = nats(words(line.substr(bar + 1)));
    std::sort(in.begin(), in.end());
    in.erase(std::unique(in.begin(), in.end()), in.end());
    if (!out.emplace(in, std::set<Nat>(y.begin(), y.end())).second)
      throw ParseError("synthetic table: duplicate entry '" + line + "'");
  }
  return out;
}

JumpOperator parse_jump(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("jump: expected kind:arguments, got '" + text + "'");
  std::string kind = text.substr(0, colon), args = text.substr(colon + 1);
  if (kind == "bounded") {
    auto v = nats(words(args));
    if (v.size() != 2) throw ParseError("jump: bounded takes E,S");
    return JumpOperator::bounded(v[0], v[1]);
  }
  if (kind == "suite") {
    auto v = nats(words(args));
    if (v.size() != 1) throw ParseError("jump: suite takes S");
    return JumpOperator::suite(programs::default_suite(), v[0]);
  }
  if (kind == "synthetic") return JumpOperator::synthetic(parse_synthetic_table(read_file(args)));
  throw ParseError("jump: unknown kind '" + kind + "'");
}

EventualStream parse_stream(const std::string& text) {
  EventualStream out;
  bool tail = false;
  for (const auto& line : content_lines(text)) {
    auto w = words(line);
    if (w[0] == "prefix")
      out.prefix = nats(w, 1);
    else if (w[0] == "tail" && w.size() == 2) {
      out.tail = to_nat(w[1]);
      tail = true;
    } else
      throw ParseError("stream: unexpected line '" + line + "'");
  }
  if (!tail) throw ParseError("stream: missing tail line");
  return out;
}

ShiftTable parse_shift_table(const std::string& text) {
  ShiftTable out;
  bool tail = false;
  for (const auto& line : content_lines(text)) {
    auto w = words(line);
    if (w[0] == "prefix")
      out.prefix = nats(w, 1);
    else if (w[0] == "tail" && w.size() == 2) {
      out.tail_start = to_nat(w[1]);
      tail = true;
    } else
      throw ParseError("table: unexpected line '" + line + "'");
  }
  if (!tail) throw ParseError("table: missing tail line");
  return out;
}

std::string format_columns(const Columns& columns, const FiniteOrder& L) {
  std::ostringstream out;
  for (Nat b : L.ascending()) {
    auto it = columns.find(b);
    out << b << ":";
    if (it != columns.end())
      for (Nat n : it->second) out << " " << n;
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace atrlab

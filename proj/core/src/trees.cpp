#include "atrlab/trees.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "atrlab/errors.hpp"

namespace atrlab {

namespace {

std::vector<Nat> key_of(const LazyTree& T, const Node& n) {
  if (T.shape_key) return T.shape_key(n);
  return n;
}

void append_key(std::vector<Nat>& out, const std::vector<Nat>& key) {
  out.push_back(key.size());
  out.insert(out.end(), key.begin(), key.end());
}

Node prefixed(Nat head, const Node& tail) {
  Node out;
  out.reserve(tail.size() + 1);
  out.push_back(head);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

Node drop_first(const Node& n) { return Node(n.begin() + 1, n.end()); }

Node take(const Node& n, std::size_t len) { return Node(n.begin(), n.begin() + len); }

std::vector<Node> nodes_at_depth(const LazyTree& T, std::size_t depth) {
  std::vector<Node> level{Node{}};
  for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
    std::vector<Node> next;
    for (const Node& n : level) {
      auto cs = T.children(n);
      next.insert(next.end(), cs.begin(), cs.end());
    }
    if (next.size() > T.width_budget)
      throw BudgetExceeded("level " + std::to_string(d + 1) + " wider than the width budget");
    level = std::move(next);
  }
  return level;
}

std::size_t position_in(const std::vector<Node>& xs, const Node& x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end() || *it != x) throw std::logic_error("path leaves the tree");
  return static_cast<std::size_t>(it - xs.begin());
}

Nat checked_size(detail::Wide v, Nat cap) {
  if (v > cap) throw BudgetExceeded("node has more children than the width budget");
  return static_cast<Nat>(v);
}

}  // namespace

FiniteTree::FiniteTree() : FiniteTree(std::vector<Node>{Node{}}) {}

FiniteTree::FiniteTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (nodes_.empty() || !nodes_.front().empty())
    throw std::invalid_argument("tree must contain the empty node");
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);
  parent_.assign(nodes_.size(), std::nullopt);
  children_.assign(nodes_.size(), {});
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    auto it = index_.find(parent(nodes_[i]));
    if (it == index_.end())
      throw std::invalid_argument("tree is not prefix closed at " + to_string(nodes_[i]));
    parent_[i] = it->second;
    children_[it->second].push_back(i);
  }
}

bool FiniteTree::contains(const Node& n) const { return index_.count(n) > 0; }

std::optional<std::size_t> FiniteTree::index_of(const Node& n) const {
  auto it = index_.find(n);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteTree::index(const Node& n) const {
  auto it = index_.find(n);
  if (it == index_.end()) throw std::out_of_range("node " + to_string(n) + " not in tree");
  return it->second;
}

std::optional<std::size_t> FiniteTree::parent_index(std::size_t i) const { return parent_[i]; }

std::size_t FiniteTree::height() const {
  std::size_t h = 0;
  for (const Node& n : nodes_) h = std::max(h, n.size());
  return h;
}

FiniteTree FiniteTree::subtree_at(const Node& r) const {
  if (!contains(r)) throw std::out_of_range("node " + to_string(r) + " not in tree");
  std::vector<Node> out;
  auto it = index_.lower_bound(r);
  for (; it != index_.end() && is_prefix(r, it->first); ++it)
    out.emplace_back(it->first.begin() + r.size(), it->first.end());
  return FiniteTree(std::move(out));
}

LazyTree FiniteTree::lazy() const {
  auto self = std::make_shared<const FiniteTree>(*this);
  LazyTree T;
  T.contains = [self](const Node& n) { return self->contains(n); };
  T.children = [self](const Node& n) {
    std::vector<Node> out;
    auto i = self->index_of(n);
    if (!i) return out;
    for (std::size_t c : self->children_of(*i)) out.push_back(self->node(c));
    return out;
  };
  T.depth_budget = std::max<Nat>(T.depth_budget, self->height());
  T.width_budget = std::max<Nat>(T.width_budget, self->size());
  T.explicit_nodes = self;
  return T;
}

LazyTree leaf_tree() { return FiniteTree().lazy(); }

LazyTree three_node_tree() { return FiniteTree({{}, {0}, {1}}).lazy(); }

LazyTree zero_path() {
  LazyTree T;
  T.contains = [](const Node& n) {
    return std::all_of(n.begin(), n.end(), [](Nat x) { return x == 0; });
  };
  T.children = [](const Node& n) { return std::vector<Node>{child(n, 0)}; };
  T.witness = [](std::size_t d) {
    std::vector<Node> chain;
    for (std::size_t i = 1; i <= d; ++i) chain.emplace_back(i, 0);
    return chain;
  };
  T.shape_key = [](const Node&) { return std::vector<Nat>{0}; };
  return T;
}

FiniteTree full_binary_tree(std::size_t depth) {
  std::vector<Node> nodes{Node{}};
  std::vector<Node> level{Node{}};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Node> next;
    for (const Node& n : level) {
      next.push_back(child(n, 0));
      next.push_back(child(n, 1));
    }
    nodes.insert(nodes.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return FiniteTree(std::move(nodes));
}

FiniteTree materialize(const LazyTree& T, std::size_t node_cap) {
  if (T.explicit_nodes) return *T.explicit_nodes;
  if (!T.root.empty()) throw std::invalid_argument("materialize expects a tree rooted at the empty node");
  std::vector<Node> nodes;
  std::deque<Node> queue{Node{}};
  while (!queue.empty()) {
    Node n = std::move(queue.front());
    queue.pop_front();
    if (n.size() > T.depth_budget) throw BudgetExceeded("tree deeper than its depth budget");
    nodes.push_back(n);
    if (nodes.size() > node_cap)
      throw BudgetExceeded("tree has more than " + std::to_string(node_cap) + " nodes");
    for (Node& c : T.children(n)) queue.push_back(std::move(c));
  }
  return FiniteTree(std::move(nodes));
}

LazyTree tree_max(const std::vector<LazyTree>& family) {
  auto fam = std::make_shared<const std::vector<LazyTree>>(family);
  LazyTree T;
  T.contains = [fam](const Node& n) {
    if (n.empty()) return true;
    return n[0] < fam->size() && (*fam)[n[0]].contains(drop_first(n));
  };
  T.children = [fam](const Node& n) {
    std::vector<Node> out;
    if (n.empty()) {
      for (Nat i = 0; i < fam->size(); ++i) out.push_back(Node{i});
      return out;
    }
    if (n[0] >= fam->size()) return out;
    for (const Node& c : (*fam)[n[0]].children(drop_first(n))) out.push_back(prefixed(n[0], c));
    return out;
  };
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!family[i].witness) continue;
    T.witness = [fam, i](std::size_t d) {
      std::vector<Node> chain;
      for (const Node& c : (*fam)[i].witness(d)) chain.push_back(prefixed(i, c));
      return chain;
    };
    break;
  }
  T.shape_key = [fam](const Node& n) {
    if (n.empty()) return std::vector<Nat>{0};
    std::vector<Nat> key{1, n[0]};
    if (n[0] < fam->size()) append_key(key, key_of((*fam)[n[0]], drop_first(n)));
    return key;
  };
  for (const LazyTree& t : family) {
    T.depth_budget = std::max(T.depth_budget, t.depth_budget + 1);
    T.width_budget = std::max(T.width_budget, t.width_budget);
  }
  return T;
}

namespace {

struct MinFamily {
  std::vector<LazyTree> trees;

  // Candidate extensions of a level-m node whose coordinate endpoints are `ends`.
  std::vector<std::vector<Node>> options(std::size_t m, const std::vector<Node>& ends) const {
    std::vector<std::vector<Node>> opts;
    std::size_t k = trees.size();
    for (std::size_t i = 0; i < std::min(m, k); ++i) opts.push_back(trees[i].children(ends[i]));
    if (m < k) opts.push_back(nodes_at_depth(trees[m], m));
    return opts;
  }

  Nat width() const {
    Nat w = 1u << 16;
    for (const LazyTree& t : trees) w = std::max(w, t.width_budget);
    return w;
  }

  static detail::Wide product(const std::vector<std::vector<Node>>& opts) {
    detail::Wide p = 1;
    for (const auto& o : opts) {
      p *= o.size();
      if (p > (static_cast<detail::Wide>(1) << 100)) return p;
    }
    return p;
  }

  std::vector<Node> pick(const std::vector<std::vector<Node>>& opts, Nat x) const {
    std::vector<Node> ends(opts.size());
    for (std::size_t c = opts.size(); c-- > 0;) {
      ends[c] = opts[c][x % opts[c].size()];
      x /= opts[c].size();
    }
    return ends;
  }

  // Label of the child of a level-m node (endpoints `ends`) whose coordinates
  // follow `paths`; advances `ends` to that child.
  Nat label_towards(std::size_t m, std::vector<Node>& ends, const std::vector<Node>& paths) const {
    auto opts = options(m, ends);
    std::vector<Node> next;
    detail::Wide x = 0;
    for (std::size_t c = 0; c < opts.size(); ++c) {
      if (paths[c].size() < m) throw std::invalid_argument("path too short for the requested level");
      Node target = take(paths[c], m);
      x = x * opts[c].size() + position_in(opts[c], target);
      next.push_back(std::move(target));
    }
    ends = std::move(next);
    return static_cast<Nat>(x);
  }

  std::optional<std::vector<Node>> decode(const Node& n) const {
    std::vector<Node> ends;
    for (std::size_t m = 0; m < n.size(); ++m) {
      auto opts = options(m, ends);
      if (n[m] >= product(opts)) return std::nullopt;
      ends = pick(opts, n[m]);
    }
    return ends;
  }
};

LazyTree min_of(const std::vector<LazyTree>& family) {
  auto fam = std::make_shared<const MinFamily>(MinFamily{family});
  LazyTree T;
  T.contains = [fam](const Node& n) { return fam->decode(n).has_value(); };
  T.children = [fam](const Node& n) {
    std::vector<Node> out;
    auto ends = fam->decode(n);
    if (!ends) return out;
    Nat count = checked_size(MinFamily::product(fam->options(n.size(), *ends)), fam->width());
    out.reserve(count);
    for (Nat x = 0; x < count; ++x) out.push_back(child(n, x));
    return out;
  };
  T.shape_key = [fam](const Node& n) {
    std::size_t k = fam->trees.size();
    std::vector<Nat> key{std::min<Nat>(n.size(), k)};
    auto ends = fam->decode(n);
    if (!ends) return key;
    for (std::size_t i = 0; i < ends->size(); ++i) append_key(key, key_of(fam->trees[i], (*ends)[i]));
    return key;
  };
  bool all_witnessed = std::all_of(family.begin(), family.end(),
                                   [](const LazyTree& t) { return t.has_witness(); });
  if (all_witnessed) {
    T.witness = [fam](std::size_t d) {
      std::size_t k = fam->trees.size();
      std::vector<Node> paths;
      for (std::size_t i = 0; i < k; ++i) {
        auto w = fam->trees[i].witness(d + 1);
        if (w.empty() || w.back().size() < d) throw std::logic_error("input witness too short");
        paths.push_back(w.back());
      }
      std::vector<Node> chain;
      Node node;
      std::vector<Node> ends;
      for (std::size_t m = 0; m < d; ++m) {
        node.push_back(fam->label_towards(m, ends, paths));
        chain.push_back(node);
      }
      return chain;
    };
  }
  for (const LazyTree& t : family) T.depth_budget = std::max(T.depth_budget, t.depth_budget + 1);
  T.width_budget = fam->width();
  return T;
}

}  // namespace

LazyTree tree_min(const std::vector<LazyTree>& family) {
  if (family.empty()) return leaf_tree();
  return min_of(family);
}

Node min_node_of_paths(const std::vector<LazyTree>& family, const std::vector<Node>& paths,
                       std::size_t level) {
  if (family.empty()) {
    if (level > 0) throw std::invalid_argument("min of the empty family has only the root");
    return {};
  }
  if (paths.size() != family.size()) throw std::invalid_argument("one path per family member expected");
  MinFamily fam{family};
  Node node;
  std::vector<Node> ends;
  for (std::size_t m = 0; m < level; ++m) node.push_back(fam.label_towards(m, ends, paths));
  return node;
}

LazyTree tree_min_vacuous(const std::vector<LazyTree>& family) {
  if (family.empty()) return zero_path();
  return min_of(family);
}

LazyTree combine(const std::vector<LazyTree>& family) {
  auto fam = std::make_shared<const std::vector<LazyTree>>(family);
  auto split = [fam](Nat label) -> std::optional<std::size_t> {
    auto [i, j] = cantor_unpair(label);
    if (j > 1 || i >= fam->size()) return std::nullopt;
    return static_cast<std::size_t>(i);
  };
  LazyTree T;
  T.contains = [fam, split](const Node& n) {
    if (n.empty()) return true;
    auto i = split(n[0]);
    return i && (*fam)[*i].contains(drop_first(n));
  };
  T.children = [fam, split](const Node& n) {
    std::vector<Node> out;
    if (n.empty()) {
      std::vector<Nat> labels;
      for (Nat i = 0; i < fam->size(); ++i) {
        labels.push_back(cantor_pair(i, 0));
        labels.push_back(cantor_pair(i, 1));
      }
      std::sort(labels.begin(), labels.end());
      for (Nat l : labels) out.push_back(Node{l});
      return out;
    }
    auto i = split(n[0]);
    if (!i) return out;
    for (const Node& c : (*fam)[*i].children(drop_first(n))) out.push_back(prefixed(n[0], c));
    return out;
  };
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!family[i].witness) continue;
    Nat head = cantor_pair(i, 0);
    T.witness = [fam, i, head](std::size_t d) {
      std::vector<Node> chain;
      for (const Node& c : (*fam)[i].witness(d)) chain.push_back(prefixed(head, c));
      return chain;
    };
    break;
  }
  T.shape_key = [fam, split](const Node& n) {
    if (n.empty()) return std::vector<Nat>{0};
    auto i = split(n[0]);
    if (!i) return std::vector<Nat>{2};
    std::vector<Nat> key{1, *i};
    append_key(key, key_of((*fam)[*i], drop_first(n)));
    return key;
  };
  for (const LazyTree& t : family) {
    T.depth_budget = std::max(T.depth_budget, t.depth_budget + 1);
    T.width_budget = std::max(T.width_budget, t.width_budget);
  }
  return T;
}

LazyTree complement(const LazyTree& T) { return combine({T}); }

LazyTree t_of_order(const Order& L, std::size_t width_budget,
                    std::function<std::vector<Nat>(std::size_t)> descent) {
  auto order = std::make_shared<const Order>(L);
  auto candidates = std::make_shared<const std::vector<Nat>>(
      L.is_finite() ? L.finite().domain() : L.enumerate(width_budget));
  LazyTree T;
  T.contains = [order](const Node& n) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (!order->member(n[i])) return false;
      if (i > 0 && !order->less(n[i], n[i - 1])) return false;
    }
    return true;
  };
  T.children = [order, candidates](const Node& n) {
    std::vector<Node> out;
    for (Nat x : *candidates)
      if (n.empty() || order->less(x, n.back())) out.push_back(child(n, x));
    return out;
  };
  T.shape_key = [](const Node& n) {
    if (n.empty()) return std::vector<Nat>{0};
    return std::vector<Nat>{1, n.back()};
  };
  if (descent) {
    T.witness = [descent](std::size_t d) {
      auto seq = descent(d);
      if (seq.size() < d) throw std::logic_error("descending sequence too short");
      std::vector<Node> chain;
      for (std::size_t i = 1; i <= d; ++i) chain.emplace_back(seq.begin(), seq.begin() + i);
      return chain;
    };
  }
  T.width_budget = std::max<Nat>(width_budget, candidates->size());
  if (L.is_finite()) T.depth_budget = L.finite().size();
  return T;
}

std::pair<Node, Nat> fatten_entry(const FiniteTree& T, Nat label) {
  return {T.node(label % T.size()), label / T.size()};
}

Nat fatten_label(const FiniteTree& T, const Node& sigma, Nat n) {
  return n * T.size() + T.index(sigma);
}

LazyTree fatten(const FiniteTree& T, std::size_t width) {
  if (width == 0) throw std::invalid_argument("fatten width must be at least 1");
  auto base = std::make_shared<const FiniteTree>(T);
  auto below = std::make_shared<std::vector<std::vector<std::size_t>>>(T.size());
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = i + 1; j < T.size() && is_prefix(T.node(i), T.node(j)); ++j)
      (*below)[i].push_back(j);
  auto proper_below = std::shared_ptr<const std::vector<std::vector<std::size_t>>>(below);
  Nat K = T.size();
  LazyTree F;
  F.contains = [base, K, width](const Node& n) {
    std::size_t prev = 0;
    for (Nat l : n) {
      Nat idx = l % K;
      if (l / K >= width || idx == 0) return false;
      if (!is_proper_prefix(base->node(prev), base->node(idx))) return false;
      prev = idx;
    }
    return true;
  };
  F.children = [proper_below, K, width](const Node& n) {
    std::vector<Node> out;
    std::size_t last = n.empty() ? 0 : n.back() % K;
    for (Nat w = 0; w < width; ++w)
      for (std::size_t d : (*proper_below)[last]) out.push_back(child(n, w * K + d));
    return out;
  };
  F.shape_key = [K](const Node& n) {
    return std::vector<Nat>{n.empty() ? K : n.back() % K};
  };
  F.depth_budget = std::max<Nat>(T.height(), 1);
  F.width_budget = std::max<Nat>(F.width_budget, width * K);
  return F;
}

RankedTree rank(const FiniteTree& T) {
  RankedTree R{T, 0, std::vector<Nat>(T.size(), 0)};
  for (std::size_t i = T.size(); i-- > 0;)
    for (std::size_t c : T.children_of(i)) R.rank_at[i] = std::max(R.rank_at[i], R.rank_at[c] + 1);
  R.rank = R.rank_at[0];
  return R;
}

RankedTree rank(const LazyTree& T, std::size_t node_cap) { return rank(materialize(T, node_cap)); }

namespace {

struct RankSearch {
  const LazyTree& T;
  std::size_t cap;
  std::map<std::vector<Nat>, Nat> memo;
  std::set<std::vector<Nat>> active;

  Nat at(const Node& n) {
    auto key = key_of(T, n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (active.count(key)) throw BudgetExceeded("tree is ill-founded: a subtree repeats along a branch");
    if (n.size() > T.depth_budget) throw BudgetExceeded("tree deeper than its depth budget");
    if (memo.size() >= cap) throw BudgetExceeded("rank search visited too many subtrees");
    active.insert(key);
    Nat r = 0;
    for (const Node& c : T.children(n)) r = std::max(r, at(c) + 1);
    active.erase(key);
    memo.emplace(std::move(key), r);
    return r;
  }
};

}  // namespace

Nat rank_value_at(const LazyTree& T, const Node& n, std::size_t visit_cap) {
  if (T.explicit_nodes) {
    auto i = T.explicit_nodes->index_of(n);
    if (!i) throw std::out_of_range("node " + to_string(n) + " not in tree");
    return rank(*T.explicit_nodes).rank_at[*i];
  }
  RankSearch search{T, visit_cap, {}, {}};
  return search.at(n);
}

Nat rank_value(const LazyTree& T, std::size_t visit_cap) { return rank_value_at(T, Node{}, visit_cap); }

std::map<Node, Node> kb_embed_fatten(const FiniteTree& T, std::size_t width) {
  if (width == 0) throw std::invalid_argument("fatten width must be at least 1");
  // σ maps to the chain of its nonempty prefixes, each decorated with 0.
  std::map<Node, Node> f;
  std::vector<Node> image(T.size());
  f.emplace(Node{}, Node{});
  for (std::size_t i = 1; i < T.size(); ++i) {
    image[i] = child(image[*T.parent_index(i)], fatten_label(T, T.node(i), 0));
    f.emplace(T.node(i), image[i]);
  }
  return f;
}

std::vector<Node> witness_chain(const LazyTree& T, std::size_t d) {
  if (!T.witness) throw NoWitness("tree carries no path witness");
  auto chain = T.witness(d);
  if (chain.size() != d) throw std::logic_error("witness returned a chain of the wrong length");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!T.contains(chain[i])) throw std::logic_error("witness node outside the tree");
    if (i > 0 && !is_proper_prefix(chain[i - 1], chain[i]))
      throw std::logic_error("witness chain does not extend");
  }
  return chain;
}

std::string serialize(const FiniteTree& T) {
  std::ostringstream out;
  out << "tree " << T.size() << '\n';
  for (const Node& n : T.nodes()) out << to_string(n) << '\n';
  return out.str();
}

FiniteTree parse_tree(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "tree") throw ParseError("expected header 'tree n'");
  std::string line;
  std::getline(in, line);
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw ParseError("tree ended after " + std::to_string(i) + " nodes");
    nodes.push_back(parse_node(line));
  }
  try {
    return FiniteTree(std::move(nodes));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace atrlab

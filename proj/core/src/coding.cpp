#include "atrlab/coding.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <tuple>

#include "atrlab/errors.hpp"

namespace atrlab {

namespace {

bool covered(const KoenigCover& cov, std::size_t v) { return cov.cover.count(v) > 0; }

bool matched_edge(const KoenigCover& cov, std::size_t a, std::size_t b) {
  return cov.matching.count(normalized({a, b})) > 0;
}

// Same checks as cover_defect on tree_graph(T), without building the graph.
void validate_tree_cover(const FiniteTree& T, const KoenigCover& cov) {
  std::size_t n = T.size();
  std::vector<char> in_cover(n, 0), matched(n, 0);
  for (Nat v : cov.cover) {
    if (v >= n) throw InvalidCover("cover holds non-vertex " + std::to_string(v));
    in_cover[v] = 1;
  }
  for (const auto& [u, v] : cov.matching) {
    std::string name = std::to_string(u) + "-" + std::to_string(v);
    if (u >= v || v >= n || T.parent_index(v) != u) throw InvalidCover("matching uses non-edge " + name);
    if (matched[u] || matched[v]) throw InvalidCover("matching edges share vertex");
    matched[u] = matched[v] = 1;
    if (in_cover[u] + in_cover[v] != 1)
      throw InvalidCover("matching edge " + name + " does not have exactly one endpoint in the cover");
  }
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t p = *T.parent_index(i);
    if (!in_cover[i] && !in_cover[p])
      throw InvalidCover("edge " + std::to_string(p) + "-" + std::to_string(i) + " is uncovered");
  }
  for (Nat v : cov.cover)
    if (!matched[v]) throw InvalidCover("cover vertex " + std::to_string(v) + " is unmatched");
}

std::vector<bool> t_star_mask(const FiniteTree& T, const KoenigCover& cov) {
  std::vector<bool> in(T.size(), false);
  in[0] = true;
  for (std::size_t i = 1; i < T.size(); ++i) {
    std::size_t p = *T.parent_index(i);
    in[i] = in[p] && !(covered(cov, i) && matched_edge(cov, p, i));
  }
  return in;
}

std::vector<std::size_t> select_at(const FiniteTree& host, const KoenigCover& cov, std::size_t r,
                                   std::size_t family_size) {
  if (host.children_of(r).size() != 2 * family_size)
    throw ShapeMismatch("node " + to_string(host.node(r)) + " has " +
                        std::to_string(host.children_of(r).size()) + " children, expected " +
                        std::to_string(2 * family_size));
  std::vector<std::size_t> out;
  for (Nat q = 0; q < family_size; ++q) {
    auto c0 = host.index_of(child(host.node(r), cantor_pair(q, 0)));
    auto c1 = host.index_of(child(host.node(r), cantor_pair(q, 1)));
    if (!c0 || !c1) throw ShapeMismatch("node " + to_string(host.node(r)) + " is not a combination root");
    bool m0 = matched_edge(cov, r, *c0);
    bool m1 = matched_edge(cov, r, *c1);
    if (!m0 && !m1) {
      out.push_back(*c0);
      continue;
    }
    std::size_t in_m = m0 ? *c0 : *c1;
    std::size_t other = m0 ? *c1 : *c0;
    out.push_back(covered(cov, r) ? in_m : other);
  }
  return out;
}

RSet extract_at(const FiniteTree& host, const KoenigCover& cov, const JumpRecord& record, std::size_t base) {
  RSet out;
  auto per_branch = select_at(host, cov, base, record.branches.size());
  for (std::size_t p = 0; p < record.branches.size(); ++p) {
    const auto& entries = record.branches[p].entries;
    auto per_entry = select_at(host, cov, per_branch[p], entries.size());
    for (std::size_t q = 0; q < entries.size(); ++q) {
      if (!entries[q].source) continue;
      std::size_t r = per_entry[q];
      if (!entries[q].bit) r = select_at(host, cov, r, 1)[0];
      out[*entries[q].source].insert(host.node(r));
    }
  }
  return out;
}

}  // namespace

bool decode_bit(const FiniteTree& T, const KoenigCover& cov) {
  validate_tree_cover(T, cov);
  return covered(cov, 0);
}

std::vector<KoenigCover> tree_covers(const FiniteTree& T, const EnumerationLimits& limits) {
  return enumerate_koenig_covers(tree_graph(T), limits);
}

std::optional<bool> is_good(const FiniteTree& T, const EnumerationLimits& limits) {
  std::optional<bool> bit;
  bool bad = false;
  for_each_koenig_cover(
      tree_graph(T),
      [&](const KoenigCover& K) {
        bool b = covered(K, 0);
        if (bit && *bit != b) {
          bad = true;
          return false;
        }
        bit = b;
        return true;
      },
      limits);
  if (bad) return std::nullopt;
  return bit;
}

std::set<Node> t_star(const FiniteTree& T, const KoenigCover& cov) {
  validate_tree_cover(T, cov);
  auto mask = t_star_mask(T, cov);
  std::set<Node> out;
  for (std::size_t i = 0; i < T.size(); ++i)
    if (mask[i]) out.insert(T.node(i));
  return out;
}

std::pair<FiniteTree, KoenigCover> restrict_cover(const FiniteTree& T, const KoenigCover& cov, const Node& r) {
  FiniteTree sub = T.subtree_at(r);
  auto rename = [&](Nat host_index) -> std::optional<Nat> {
    const Node& n = T.node(host_index);
    if (!is_prefix(r, n)) return std::nullopt;
    return sub.index(Node(n.begin() + r.size(), n.end()));
  };
  KoenigCover out;
  for (Nat v : cov.cover)
    if (auto s = rename(v)) out.cover.insert(*s);
  for (const Edge& e : cov.matching) {
    auto a = rename(e.first), b = rename(e.second);
    if (a && b) out.matching.insert(normalized({*a, *b}));
  }
  return {std::move(sub), std::move(out)};
}

std::vector<Node> select_child(const FiniteTree& host, const KoenigCover& cov, const Node& r,
                               std::size_t family_size) {
  validate_tree_cover(host, cov);
  auto idx = host.index_of(r);
  if (!idx) throw std::invalid_argument("node " + to_string(r) + " is not in the tree");
  if (!t_star_mask(host, cov)[*idx]) throw std::invalid_argument("node " + to_string(r) + " is not in T*");
  std::vector<Node> out;
  for (std::size_t c : select_at(host, cov, *idx, family_size)) out.push_back(host.node(c));
  return out;
}

CodedFamily base_family(const Column& A, Nat n_max) {
  CodedFamily out;
  FiniteTree leaf;
  FiniteTree three({{}, {0}, {1}});
  for (Nat n = 0; n < n_max; ++n) out.trees.push_back(A.count(n) ? three : leaf);
  return out;
}

CodedFamily jump_family(const std::map<Nat, CodedFamily>& prev, const JumpOperator& J, std::size_t node_cap) {
  if (J.kind() == JumpOperator::Kind::Synthetic)
    throw std::invalid_argument("jump trees need a jump given by machines");
  CodedFamily out;
  for (Nat n = 0; n < J.slot_count(); ++n) {
    JumpRecord record;
    std::vector<LazyTree> branch_trees;
    for (HaltingPair& hp : minimal_halting_pairs(*J.slot_program(n), n, J.step_budget())) {
      JumpRecord::Branch branch;
      std::vector<LazyTree> entry_trees;
      for (const auto& [address, bit] : hp.sigma) {
        JumpRecord::Entry entry{address, bit, std::nullopt};
        auto [a, j] = cantor_unpair(address);
        LazyTree source = leaf_tree();
        if (auto it = prev.find(a); it != prev.end() && j < it->second.trees.size()) {
          entry.source = std::pair{a, j};
          source = it->second.trees[j].lazy();
        }
        entry_trees.push_back(bit ? source : complement(source));
        branch.entries.push_back(entry);
      }
      branch_trees.push_back(combine(entry_trees));
      branch.pair = std::move(hp);
      record.branches.push_back(std::move(branch));
    }
    out.trees.push_back(materialize(combine(branch_trees), node_cap));
    out.records.push_back(std::move(record));
  }
  return out;
}

CodedFamily jump_family(const std::map<Nat, CodedFamily>& prev, Nat e_max, Nat s_max, std::size_t node_cap) {
  return jump_family(prev, JumpOperator::bounded(e_max, s_max), node_cap);
}

RSet extract_r(const FiniteTree& host, const KoenigCover& cov, const JumpRecord& record, const Node& base) {
  return extract_at(host, cov, record, host.index(base));
}

RSet alternative_r(const FiniteTree& host, const KoenigCover& cov, const JumpRecord& record, const Node& base) {
  auto mask = t_star_mask(host, cov);
  RSet out;
  auto keep = [&](const Node& n, const std::pair<Nat, Nat>& key) {
    auto i = host.index_of(n);
    if (!i) throw ShapeMismatch("expected copy root " + to_string(n) + " is missing");
    if (mask[*i]) out[key].insert(n);
  };
  for (std::size_t p = 0; p < record.branches.size(); ++p) {
    const auto& entries = record.branches[p].entries;
    for (Nat j : {0, 1}) {
      Node rp = child(base, cantor_pair(p, j));
      for (std::size_t q = 0; q < entries.size(); ++q) {
        if (!entries[q].source) continue;
        for (Nat jq : {0, 1}) {
          Node rq = child(rp, cantor_pair(q, jq));
          if (entries[q].bit) {
            keep(rq, *entries[q].source);
            continue;
          }
          for (Nat jc : {0, 1}) keep(child(rq, cantor_pair(0, jc)), *entries[q].source);
        }
      }
    }
  }
  return out;
}

Column decode_set(const CodedFamily& family, const std::vector<KoenigCover>& covers) {
  if (covers.size() != family.trees.size())
    throw std::invalid_argument("expected " + std::to_string(family.trees.size()) + " covers, got " +
                                std::to_string(covers.size()));
  Column out;
  for (std::size_t n = 0; n < covers.size(); ++n)
    if (decode_bit(family.trees[n], covers[n])) out.insert(n);
  return out;
}

std::vector<std::pair<Nat, Nat>> HierarchyForest::tree_ids() const {
  std::vector<std::pair<Nat, Nat>> out;
  for (Nat b : order.order.ascending())
    for (Nat n = 0; n < columns.at(b).trees.size(); ++n) out.push_back({b, n});
  return out;
}

HierarchyForest build_forest(const LabeledOrder& L, const Column& A, const JumpOperator& J, std::size_t node_cap) {
  Nat n_max = J.slot_count();
  if (!A.empty()) n_max = std::max(n_max, *A.rbegin() + 1);
  std::function<CodedFamily(Nat, const std::map<Nat, CodedFamily>&)> step =
      [&](Nat b, const std::map<Nat, CodedFamily>& below) {
        if (b == L.first) return base_family(A, n_max);
        return jump_family(below, J, node_cap);
      };
  auto outcome = effective_recursion<CodedFamily>(L.order, step);
  if (!outcome.ok()) std::rethrow_exception(outcome.error);
  return HierarchyForest{L, J, std::move(outcome.table)};
}

Columns decode_forest(const HierarchyForest& F, const ForestCovers& covers) {
  Columns out;
  for (Nat b : F.order.order.ascending()) out[b];
  for (const auto& [b, n] : F.tree_ids()) {
    auto it = covers.find({b, n});
    if (it == covers.end()) throw std::invalid_argument("no cover for tree (" + std::to_string(b) + "," + std::to_string(n) + ")");
    if (decode_bit(F.tree(b, n), it->second)) out[b].insert(n);
  }
  return out;
}

RSet compute_r_ba(const HierarchyForest& F, Nat b, Nat n, const KoenigCover& cov) {
  const FiniteTree& host = F.tree(b, n);
  RSet out;
  std::function<void(const Node&, Nat, Nat)> walk = [&](const Node& r, Nat c, Nat i) {
    const CodedFamily& fam = F.columns.at(c);
    if (fam.is_base()) return;
    for (const auto& [key, nodes] : extract_at(host, cov, fam.records.at(i), host.index(r)))
      for (const Node& s : nodes)
        if (out[key].insert(s).second) walk(s, key.first, key.second);
  };
  walk({}, b, n);
  return out;
}

namespace testing {

std::map<Nat, ConsistencyVerdict> check_consistency_unvalidated(const HierarchyForest& F, const ForestCovers& covers) {
  const FiniteOrder& L = F.order.order;
  std::map<Nat, ConsistencyVerdict> out;
  std::map<Nat, std::tuple<Nat, std::size_t, Nat, Node>> best;  // a -> (i, position of b, n, r)
  for (Nat a : L.ascending()) out[a];
  for (const auto& [b, n] : F.tree_ids()) {
    const KoenigCover& cov = covers.at({b, n});
    const FiniteTree& host = F.tree(b, n);
    for (const auto& [key, nodes] : compute_r_ba(F, b, n, cov)) {
      auto [a, i] = key;
      bool root_bit = covered(covers.at({a, i}), 0);
      for (const Node& r : nodes) {
        if (covered(cov, host.index(r)) == root_bit) continue;
        auto candidate = std::tuple{i, L.position(b), n, r};
        auto it = best.find(a);
        if (it == best.end() || candidate < it->second) best[a] = candidate;
      }
    }
  }
  for (const auto& [a, w] : best) {
    const auto& [i, pos, n, r] = w;
    out[a] = ConsistencyVerdict{false, ConsistencyWitness{L.ascending()[pos], n, i, r}};
  }
  return out;
}

KoenigCover flip_membership(const KoenigCover& cov, Nat vertex) {
  KoenigCover out = cov;
  if (!out.cover.erase(vertex)) out.cover.insert(vertex);
  return out;
}

}  // namespace testing

std::map<Nat, ConsistencyVerdict> check_consistency(const HierarchyForest& F, const ForestCovers& covers) {
  for (const auto& [b, n] : F.tree_ids()) {
    auto it = covers.find({b, n});
    if (it == covers.end()) throw std::invalid_argument("no cover for tree (" + std::to_string(b) + "," + std::to_string(n) + ")");
    validate_tree_cover(F.tree(b, n), it->second);
  }
  return testing::check_consistency_unvalidated(F, covers);
}

}  // namespace atrlab

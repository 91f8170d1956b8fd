#pragma once

// Reference implementations used as test oracles. They share nothing with
// the library beyond its data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "atrlab/koenig.hpp"
#include "atrlab/node.hpp"
#include "atrlab/orders.hpp"
#include "atrlab/pairing.hpp"

namespace oracle {

using atrlab::Edge;
using atrlab::KoenigCover;
using atrlab::Nat;
using atrlab::Node;

// All (C, M) on a small graph, straight from the definition: M a matching,
// C a vertex cover, each M-edge has exactly one endpoint in C, every
// C-vertex lies on an M-edge.
inline std::vector<KoenigCover> brute_force_covers(const std::vector<Nat>& vertices, const std::vector<Edge>& edges) {
  std::vector<KoenigCover> out;
  std::size_t n = vertices.size(), m = edges.size();
  std::vector<std::vector<std::size_t>> matchings;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::set<Nat> used;
    bool ok = true;
    std::vector<std::size_t> picked;
    for (std::size_t e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      ok = used.insert(edges[e].first).second && used.insert(edges[e].second).second;
      picked.push_back(e);
    }
    if (ok) matchings.push_back(picked);
  }
  for (std::uint64_t cmask = 0; cmask < (std::uint64_t{1} << n); ++cmask) {
    std::set<Nat> C;
    for (std::size_t i = 0; i < n; ++i)
      if (cmask >> i & 1) C.insert(vertices[i]);
    bool covers = std::all_of(edges.begin(), edges.end(),
                              [&](const Edge& e) { return C.count(e.first) || C.count(e.second); });
    if (!covers) continue;
    for (const auto& picked : matchings) {
      std::set<Nat> matched;
      bool ok = true;
      for (std::size_t e : picked) {
        const Edge& ed = edges[e];
        if ((C.count(ed.first) > 0) == (C.count(ed.second) > 0)) ok = false;
        matched.insert(ed.first);
        matched.insert(ed.second);
      }
      for (Nat c : C)
        if (!matched.count(c)) ok = false;
      if (!ok) continue;
      KoenigCover K;
      K.cover = C;
      for (std::size_t e : picked) K.matching.insert(atrlab::normalized(edges[e]));
      out.push_back(K);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Height of the tree given by a prefix-closed node set.
inline Nat height(const std::set<Node>& nodes, const Node& at = {}) {
  Nat best = 0;
  for (const Node& n : nodes)
    if (n.size() == at.size() + 1 && std::equal(at.begin(), at.end(), n.begin()))
      best = std::max(best, height(nodes, n) + 1);
  return best;
}

// Kleene-Brouwer comparison written from the definition.
inline bool kb_before(const Node& a, const Node& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  if (k == b.size()) return a.size() > b.size();
  if (k == a.size()) return false;
  return a[k] < b[k];
}

// Random prefix-closed tree with at most `max_nodes` nodes and labels < `max_label`.
inline std::vector<Node> random_tree(std::mt19937_64& rng, std::size_t max_nodes, Nat max_label = 4) {
  std::set<Node> nodes{Node{}};
  std::uniform_int_distribution<std::size_t> size_dist(1, max_nodes);
  std::size_t target = size_dist(rng);
  std::size_t attempts = 0;
  while (nodes.size() < target && attempts++ < 20 * max_nodes) {
    std::vector<Node> all(nodes.begin(), nodes.end());
    Node p = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    p.push_back(std::uniform_int_distribution<Nat>(0, max_label - 1)(rng));
    nodes.insert(p);
  }
  return {nodes.begin(), nodes.end()};
}

// Random simple graph on vertices 0..n-1 with edge probability p.
inline std::pair<std::vector<Nat>, std::vector<Edge>> random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<Nat> vs(n);
  std::iota(vs.begin(), vs.end(), 0);
  std::vector<Edge> es;
  std::bernoulli_distribution coin(p);
  for (Nat u = 0; u < n; ++u)
    for (Nat v = u + 1; v < n; ++v)
      if (coin(rng)) es.push_back({u, v});
  std::shuffle(es.begin(), es.end(), rng);
  return {vs, es};
}

// Random bipartite graph: X = 0..nx-1, Y = nx..nx+ny-1.
inline std::pair<std::vector<Nat>, std::vector<Edge>> random_bipartite(std::mt19937_64& rng, std::size_t nx,
                                                                        std::size_t ny, double p) {
  std::vector<Nat> vs(nx + ny);
  std::iota(vs.begin(), vs.end(), 0);
  std::vector<Edge> es;
  std::bernoulli_distribution coin(p);
  for (Nat x = 0; x < nx; ++x)
    for (Nat y = nx; y < nx + ny; ++y)
      if (coin(rng)) es.push_back({x, y});
  return {vs, es};
}

inline bool connected(std::size_t n, const std::vector<Edge>& es) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const auto& [u, v] : es) parent[find(u)] = find(v);
  for (std::size_t v = 0; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

// Connected bipartite graphs on n vertices up to isomorphism. X = 0..k-1,
// Y = k..n-1 with k <= n-k; the biadjacency matrix is reduced to a
// canonical form over row and column permutations (and transposition when
// both sides have equal size).
inline std::vector<std::vector<Edge>> connected_bipartite_catalog(std::size_t n) {
  std::vector<std::vector<Edge>> out;
  if (n == 1) {
    out.push_back({});
    return out;
  }
  for (std::size_t k = 1; 2 * k <= n; ++k) {
    std::size_t l = n - k;
    std::set<std::vector<std::uint32_t>> seen;
    auto canonical_rows = [&](const std::vector<std::uint32_t>& rows, std::size_t width) {
      std::vector<std::size_t> perm(width);
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<std::uint32_t> best;
      do {
        std::vector<std::uint32_t> r;
        for (std::uint32_t row : rows) {
          std::uint32_t p = 0;
          for (std::size_t j = 0; j < width; ++j)
            if (row >> perm[j] & 1) p |= 1u << j;
          r.push_back(p);
        }
        std::sort(r.begin(), r.end());
        if (best.empty() || r < best) best = r;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return best;
    };
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k * l)); ++mask) {
      std::vector<std::uint32_t> rows(k, 0);
      std::vector<Edge> es;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j)
          if (mask >> (i * l + j) & 1) {
            rows[i] |= 1u << j;
            es.push_back({i, k + j});
          }
      if (!connected(n, es)) continue;
      auto key = canonical_rows(rows, l);
      if (k == l) {
        std::vector<std::uint32_t> cols_t(l, 0);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < l; ++j)
            if (rows[i] >> j & 1) cols_t[j] |= 1u << i;
        key = std::min(key, canonical_rows(cols_t, k));
      }
      if (seen.insert(key).second) out.push_back(es);
    }
  }
  return out;
}

// All finite linear orders on domain {0..n-1}, as ascending lists.
inline std::vector<std::vector<Nat>> all_orders(std::size_t n) {
  std::vector<Nat> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Nat>> out;
  do out.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline std::vector<std::set<Nat>> subsets(Nat n) {
  std::vector<std::set<Nat>> out;
  for (Nat mask = 0; mask < (Nat{1} << n); ++mask) {
    std::set<Nat> s;
    for (Nat i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(i);
    out.push_back(s);
  }
  return out;
}

}  // namespace oracle

#include "atrlab/koenig.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "atrlab/errors.hpp"

namespace atrlab {

namespace {

std::string cycle_text(const std::vector<Nat>& cycle) {
  std::ostringstream os;
  os << "graph has an odd cycle:";
  for (Nat v : cycle) os << ' ' << v;
  return os.str();
}

// Maximum matching of `left` into `right` restricted to allowed vertices.
// mate_right[r] = left partner or npos.
constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Matcher {
  const std::vector<std::vector<std::size_t>>& adj;
  const std::vector<bool>& allowed_right;
  std::vector<std::size_t> mate_right;
  std::vector<std::size_t> mate_left;
  std::vector<int> seen;
  int stamp = 0;

  Matcher(const std::vector<std::vector<std::size_t>>& a, const std::vector<bool>& allowed)
      : adj(a), allowed_right(allowed), mate_right(a.size(), npos), mate_left(a.size(), npos),
        seen(a.size(), 0) {}

  bool augment(std::size_t u) {
    for (std::size_t v : adj[u]) {
      if (!allowed_right[v] || seen[v] == stamp) continue;
      seen[v] = stamp;
      if (mate_right[v] == npos || augment(mate_right[v])) {
        mate_right[v] = u;
        mate_left[u] = v;
        return true;
      }
    }
    return false;
  }

  std::size_t run(const std::vector<std::size_t>& left) {
    std::size_t size = 0;
    for (std::size_t u : left) {
      ++stamp;
      if (augment(u)) ++size;
    }
    return size;
  }
};

}  // namespace

NotBipartite::NotBipartite(std::vector<Nat> cycle)
    : std::invalid_argument(cycle_text(cycle)), cycle_(std::move(cycle)) {}

BipartiteGraph BipartiteGraph::make(std::vector<Nat> vertices, std::vector<Edge> edges,
                                    std::optional<std::set<Nat>> x_side) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw std::invalid_argument("duplicate vertex");
  BipartiteGraph G{std::move(vertices), {}, std::move(x_side)};
  std::set<Edge> seen;
  for (const Edge& e : edges) {
    if (e.first == e.second) throw std::invalid_argument("loop at vertex " + std::to_string(e.first));
    if (!G.has_vertex(e.first) || !G.has_vertex(e.second))
      throw std::invalid_argument("edge endpoint is not a vertex");
    if (!seen.insert(normalized(e)).second) throw std::invalid_argument("duplicate edge");
    G.edges.push_back(e);
  }
  if (G.x_side) {
    for (Nat x : *G.x_side)
      if (!G.has_vertex(x)) throw std::invalid_argument("X side names a non-vertex");
    for (const Edge& e : G.edges)
      if (G.x_side->count(e.first) == G.x_side->count(e.second))
        throw std::invalid_argument("edge does not cross the given partition");
  }
  return G;
}

bool BipartiteGraph::has_vertex(Nat v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::size_t BipartiteGraph::index(Nat v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) throw std::out_of_range("no vertex " + std::to_string(v));
  return static_cast<std::size_t>(it - vertices.begin());
}

std::vector<std::vector<std::size_t>> BipartiteGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (const Edge& e : edges) {
    std::size_t a = index(e.first), b = index(e.second);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<Nat> BipartiteGraph::neighbors(Nat v) const {
  std::vector<Nat> out;
  for (const Edge& e : edges) {
    if (e.first == v) out.push_back(e.second);
    if (e.second == v) out.push_back(e.first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BipartiteCheck check_bipartite(const BipartiteGraph& G) {
  auto adj = G.adjacency();
  std::size_t n = G.size();
  std::vector<int> colour(n, -1);
  std::vector<std::size_t> from(n, npos);
  for (std::size_t s = 0; s < n; ++s) {
    if (colour[s] != -1) continue;
    colour[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adj[u]) {
        if (colour[v] == -1) {
          colour[v] = 1 - colour[u];
          from[v] = u;
          queue.push_back(v);
        } else if (colour[v] == colour[u]) {
          // Walk both BFS branches back to their meeting point.
          std::vector<std::size_t> pu{u}, pv{v};
          while (from[pu.back()] != npos) pu.push_back(from[pu.back()]);
          while (from[pv.back()] != npos) pv.push_back(from[pv.back()]);
          while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
            pu.pop_back();
            pv.pop_back();
          }
          BipartiteCheck out;
          for (std::size_t x : pu) out.odd_cycle.push_back(G.vertices[x]);
          for (std::size_t i = pv.size() - 1; i-- > 0;) out.odd_cycle.push_back(G.vertices[pv[i]]);
          std::reverse(out.odd_cycle.begin(), out.odd_cycle.end());
          return out;
        }
      }
    }
  }
  Bipartition p;
  for (std::size_t i = 0; i < n; ++i) (colour[i] == 0 ? p.x : p.y).insert(G.vertices[i]);
  return BipartiteCheck{p, {}};
}

Bipartition partition_of(const BipartiteGraph& G) {
  if (G.x_side) {
    Bipartition p{*G.x_side, {}};
    for (Nat v : G.vertices)
      if (!G.x_side->count(v)) p.y.insert(v);
    return p;
  }
  auto check = check_bipartite(G);
  if (!check.bipartite()) throw NotBipartite(check.odd_cycle);
  return *check.partition;
}

std::optional<std::string> cover_defect(const BipartiteGraph& G, const KoenigCover& K) {
  std::set<Edge> edge_set;
  for (const Edge& e : G.edges) edge_set.insert(normalized(e));
  for (Nat v : K.cover)
    if (!G.has_vertex(v)) return "cover holds non-vertex " + std::to_string(v);
  std::set<Nat> matched;
  for (const Edge& e : K.matching) {
    if (!edge_set.count(normalized(e)))
      return "matching uses non-edge " + std::to_string(e.first) + "-" + std::to_string(e.second);
    if (!matched.insert(e.first).second || !matched.insert(e.second).second)
      return "matching edges share vertex";
    if (K.cover.count(e.first) + K.cover.count(e.second) != 1)
      return "matching edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
             " does not have exactly one endpoint in the cover";
  }
  for (const Edge& e : G.edges)
    if (!K.cover.count(e.first) && !K.cover.count(e.second))
      return "edge " + std::to_string(e.first) + "-" + std::to_string(e.second) + " is uncovered";
  for (Nat v : K.cover)
    if (!matched.count(v)) return "cover vertex " + std::to_string(v) + " is unmatched";
  return std::nullopt;
}

bool is_koenig_cover(const BipartiteGraph& G, const KoenigCover& K) { return !cover_defect(G, K); }

void validate_cover(const BipartiteGraph& G, const KoenigCover& K) {
  if (auto why = cover_defect(G, K)) throw InvalidCover(*why);
}

KoenigCover koenig_cover(const BipartiteGraph& G) {
  Bipartition p = partition_of(G);
  auto adj = G.adjacency();
  std::size_t n = G.size();
  std::vector<bool> in_x(n), allowed(n);
  std::vector<std::size_t> left;
  for (std::size_t i = 0; i < n; ++i) {
    in_x[i] = p.x.count(G.vertices[i]) > 0;
    allowed[i] = !in_x[i];
    if (in_x[i]) left.push_back(i);
  }
  Matcher m(adj, allowed);
  m.run(left);

  std::vector<bool> z(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t u : left)
    if (m.mate_left[u] == npos) {
      z[u] = true;
      queue.push_back(u);
    }
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    if (in_x[u]) {
      for (std::size_t v : adj[u])
        if (!z[v] && m.mate_left[u] != v) {
          z[v] = true;
          queue.push_back(v);
        }
    } else if (std::size_t w = m.mate_right[u]; w != npos && !z[w]) {
      z[w] = true;
      queue.push_back(w);
    }
  }
  KoenigCover K;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_x[i] != z[i]) K.cover.insert(G.vertices[i]);
    if (in_x[i] && m.mate_left[i] != npos)
      K.matching.insert(normalized({G.vertices[i], G.vertices[m.mate_left[i]]}));
  }
  return K;
}

namespace {

struct CoverSearch {
  const BipartiteGraph& G;
  const std::function<bool(const KoenigCover&)>& visit;
  std::vector<std::vector<std::size_t>> adj;
  std::vector<std::size_t> order, pos;
  std::vector<long> mate;  // -2 unassigned, -1 unmatched
  std::vector<char> in_c;
  std::vector<std::size_t> forced;  // earlier uncovered neighbours
  std::size_t count = 0;
  bool stopped = false;

  static constexpr long kUnset = -2;
  static constexpr long kNone = -1;

  CoverSearch(const BipartiteGraph& g, const std::function<bool(const KoenigCover&)>& v)
      : G(g), visit(v), adj(g.adjacency()), pos(g.size()), mate(g.size(), kUnset),
        in_c(g.size(), 0), forced(g.size(), 0) {
    // Depth-first order keeps each vertex next to its neighbours, so a bad
    // choice fails before unrelated branches multiply it.
    std::vector<bool> placed(g.size(), false);
    for (std::size_t s = 0; s < g.size(); ++s) {
      if (placed[s]) continue;
      std::vector<std::size_t> stack{s};
      while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        if (placed[u]) continue;
        placed[u] = true;
        pos[u] = order.size();
        order.push_back(u);
        for (auto it = adj[u].rbegin(); it != adj[u].rend(); ++it)
          if (!placed[*it]) stack.push_back(*it);
      }
    }
  }

  bool earlier_edges_ok(std::size_t v, std::size_t t) const {
    if (in_c[v]) return true;
    for (std::size_t u : adj[v])
      if (pos[u] < t && !in_c[u]) return false;
    return true;
  }

  // A later vertex w left out of the cover needs every neighbour covered.
  bool may_leave_out(std::size_t w, std::size_t t) const {
    if (forced[w]) return false;
    for (std::size_t u : adj[w])
      if (pos[u] <= t && !in_c[u]) return false;
    return true;
  }

  void descend(std::size_t v, std::size_t t) {
    if (!earlier_edges_ok(v, t)) return;
    if (in_c[v]) {
      step(t + 1);
      return;
    }
    for (std::size_t w : adj[v])
      if (pos[w] > t) ++forced[w];
    step(t + 1);
    for (std::size_t w : adj[v])
      if (pos[w] > t) --forced[w];
  }

  void emit() {
    KoenigCover K;
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (in_c[i]) K.cover.insert(G.vertices[i]);
      if (mate[i] >= 0 && static_cast<std::size_t>(mate[i]) > i)
        K.matching.insert(normalized({G.vertices[i], G.vertices[mate[i]]}));
    }
    ++count;
    if (!visit(K)) stopped = true;
  }

  void step(std::size_t t) {
    if (stopped) return;
    if (t == order.size()) {
      emit();
      return;
    }
    std::size_t v = order[t];
    if (mate[v] >= 0 && pos[mate[v]] < t) {
      in_c[v] = !in_c[mate[v]];
      if (in_c[v] || !forced[v]) descend(v, t);
      return;
    }
    // Unmatched: out of the cover, so every neighbour must be covered.
    mate[v] = kNone;
    in_c[v] = 0;
    bool later_ok = !forced[v];
    for (std::size_t w : adj[v])
      if (pos[w] > t && mate[w] >= 0 && in_c[mate[w]]) later_ok = false;
    if (later_ok) descend(v, t);
    for (std::size_t w : adj[v]) {
      if (stopped) break;
      if (pos[w] < t || mate[w] != kUnset) continue;
      mate[v] = static_cast<long>(w);
      mate[w] = static_cast<long>(v);
      for (char c : {1, 0}) {
        in_c[v] = c;
        if (c && !may_leave_out(w, t)) continue;
        if (!c && forced[v]) continue;
        descend(v, t);
        if (stopped) break;
      }
      mate[w] = kUnset;
    }
    mate[v] = kUnset;
    in_c[v] = 0;
  }
};

}  // namespace

std::size_t for_each_koenig_cover(const BipartiteGraph& G,
                                  const std::function<bool(const KoenigCover&)>& visit,
                                  const EnumerationLimits& limits) {
  if (G.size() > limits.vertex_bound)
    throw TooLarge("graph has " + std::to_string(G.size()) + " vertices; enumeration bound is " +
                   std::to_string(limits.vertex_bound));
  CoverSearch search(G, visit);
  search.step(0);
  return search.count;
}

std::vector<KoenigCover> enumerate_koenig_covers(const BipartiteGraph& G,
                                                 const EnumerationLimits& limits) {
  std::vector<KoenigCover> out;
  bool overflow = false;
  for_each_koenig_cover(
      G,
      [&](const KoenigCover& K) {
        if (out.size() >= limits.result_cap) {
          overflow = true;
          return false;
        }
        out.push_back(K);
        return true;
      },
      limits);
  if (overflow) throw TooLarge("more than " + std::to_string(limits.result_cap) + " covers");
  std::sort(out.begin(), out.end());
  return out;
}

std::set<Nat> demand_set(const BipartiteGraph& G, const std::set<Nat>& A) {
  Bipartition p = partition_of(G);
  for (Nat a : A)
    if (!p.x.count(a)) throw std::invalid_argument("demand set argument is not inside X");
  std::set<Nat> out;
  for (Nat y : p.y) {
    auto nb = G.neighbors(y);
    if (std::all_of(nb.begin(), nb.end(), [&](Nat x) { return A.count(x) > 0; })) out.insert(y);
  }
  return out;
}

namespace {

// Subgraph view used by the demand-set construction. Vertices are indices of G.
struct SimpsonState {
  std::vector<std::vector<std::size_t>> adj;
  std::vector<bool> in_x;
  std::vector<bool> present;
  std::vector<std::size_t> xs;  // X indices ascending

  std::vector<bool> demand(const std::vector<bool>& in_a) const {
    std::vector<bool> d(adj.size(), false);
    for (std::size_t y = 0; y < adj.size(); ++y) {
      if (in_x[y] || !present[y]) continue;
      d[y] = std::all_of(adj[y].begin(), adj[y].end(),
                         [&](std::size_t x) { return !present[x] || in_a[x]; });
    }
    return d;
  }

  std::vector<std::vector<std::size_t>> restricted_adj(const std::vector<bool>& in_a,
                                                      const std::vector<bool>& allowed) const {
    std::vector<std::vector<std::size_t>> a(adj.size());
    for (std::size_t x = 0; x < adj.size(); ++x) {
      if (!in_a[x]) continue;
      for (std::size_t y : adj[x])
        if (present[y] && allowed[y]) a[x].push_back(y);
    }
    return a;
  }

  // Saturating matching of A into allowed vertices, least image vector first.
  std::optional<std::vector<std::size_t>> least_saturating(const std::vector<std::size_t>& A,
                                                           const std::vector<bool>& allowed) const {
    std::vector<bool> in_a(adj.size(), false);
    for (std::size_t x : A) in_a[x] = true;
    auto ra = restricted_adj(in_a, allowed);
    if (Matcher(ra, allowed).run(A) < A.size()) return std::nullopt;
    std::vector<std::size_t> image;
    std::vector<bool> free = allowed;
    for (std::size_t k = 0; k < A.size(); ++k) {
      std::vector<std::size_t> rest(A.begin() + k + 1, A.end());
      bool placed = false;
      for (std::size_t y : ra[A[k]]) {
        if (!free[y]) continue;
        free[y] = false;
        auto rr = restricted_adj(in_a, free);
        if (Matcher(rr, free).run(rest) == rest.size()) {
          image.push_back(y);
          placed = true;
          break;
        }
        free[y] = true;
      }
      if (!placed) return std::nullopt;
    }
    return image;
  }

  // Every A ⊆ X' with a saturating matching into D(A) leaves no vertex of
  // `y_star` in D(A) outside the range of every such matching.
  bool good(const std::vector<bool>& y_star) const {
    std::vector<std::size_t> live;
    for (std::size_t x : xs)
      if (present[x]) live.push_back(x);
    std::size_t n = live.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<bool> in_a(adj.size(), false);
      std::vector<std::size_t> A;
      for (std::size_t k = 0; k < n; ++k)
        if (mask >> k & 1) {
          in_a[live[k]] = true;
          A.push_back(live[k]);
        }
      auto d = demand(in_a);
      if (Matcher(restricted_adj(in_a, d), d).run(A) < A.size()) continue;
      for (std::size_t y = 0; y < adj.size(); ++y) {
        if (!d[y] || !y_star[y]) continue;
        auto without = d;
        without[y] = false;
        if (Matcher(restricted_adj(in_a, without), without).run(A) == A.size()) return false;
      }
    }
    return true;
  }
};

}  // namespace

KoenigCover simpson_cover(const BipartiteGraph& G, std::size_t vertex_bound, SimpsonTrace* trace) {
  if (G.size() > vertex_bound)
    throw TooLarge("graph has " + std::to_string(G.size()) + " vertices; demand-set bound is " +
                   std::to_string(vertex_bound));
  Bipartition p = partition_of(G);
  std::size_t n = G.size();
  SimpsonState st{G.adjacency(), std::vector<bool>(n), std::vector<bool>(n, true), {}};
  for (std::size_t i = 0; i < n; ++i) {
    st.in_x[i] = p.x.count(G.vertices[i]) > 0;
    if (st.in_x[i]) st.xs.push_back(i);
  }

  // Least (A, F) containing each x: A by ascending mask, F by least image vector.
  std::vector<std::optional<std::size_t>> f_star(n);
  std::vector<bool> a_star(n, false);
  std::size_t nx = st.xs.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nx); ++mask) {
    std::vector<bool> in_a(n, false);
    std::vector<std::size_t> A;
    for (std::size_t k = 0; k < nx; ++k)
      if (mask >> k & 1) {
        in_a[st.xs[k]] = true;
        A.push_back(st.xs[k]);
      }
    if (std::all_of(A.begin(), A.end(), [&](std::size_t x) { return a_star[x]; })) continue;
    auto image = st.least_saturating(A, st.demand(in_a));
    if (!image) continue;
    for (std::size_t k = 0; k < A.size(); ++k)
      if (!a_star[A[k]]) {
        a_star[A[k]] = true;
        f_star[A[k]] = (*image)[k];
      }
  }
  auto d_star = st.demand(a_star);
  std::vector<bool> y_star(n, false), x_star(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (st.in_x[i]) x_star[i] = !a_star[i];
    else y_star[i] = !d_star[i];
  }

  SimpsonTrace local;
  std::vector<std::optional<std::size_t>> h(n);
  auto unmatched_y = [&] {
    for (std::size_t y = 0; y < n; ++y)
      if (y_star[y] && st.present[y]) return true;
    return false;
  };
  while (unmatched_y()) {
    bool removed = false;
    for (std::size_t x = 0; x < n && !removed; ++x) {
      if (!x_star[x] || !st.present[x]) continue;
      for (std::size_t y : st.adj[x]) {
        if (!y_star[y] || !st.present[y]) continue;
        st.present[x] = st.present[y] = false;
        if (st.good(y_star)) {
          h[y] = x;
          local.removed_pairs.push_back({G.vertices[x], G.vertices[y]});
          removed = true;
          break;
        }
        st.present[x] = st.present[y] = true;
      }
    }
    if (!removed) throw std::logic_error("demand-set recursion found no removable pair");
  }

  KoenigCover K;
  for (std::size_t i = 0; i < n; ++i) {
    Nat v = G.vertices[i];
    if (a_star[i]) {
      K.cover.insert(v);
      K.matching.insert(normalized({v, G.vertices[*f_star[i]]}));
      local.a_star.insert(v);
      local.f_star.insert({v, G.vertices[*f_star[i]]});
    }
    if (y_star[i]) {
      K.cover.insert(v);
      K.matching.insert(normalized({v, G.vertices[*h[i]]}));
      local.y_star.insert(v);
    }
    if (x_star[i]) local.x_star.insert(v);
  }
  if (trace) *trace = std::move(local);
  return K;
}

std::vector<bool> odd_cycle_flags(const BipartiteGraph& G) {
  // Union-find carrying the parity of each vertex relative to its root.
  std::size_t n = G.size();
  std::vector<std::size_t> up(n);
  std::vector<int> parity(n, 0);
  std::iota(up.begin(), up.end(), 0);
  std::function<std::pair<std::size_t, int>(std::size_t)> find = [&](std::size_t v) {
    if (up[v] == v) return std::pair<std::size_t, int>{v, 0};
    auto [r, p] = find(up[v]);
    up[v] = r;
    parity[v] ^= p;
    return std::pair<std::size_t, int>{r, parity[v]};
  };
  std::vector<bool> flags;
  for (const Edge& e : G.edges) {
    auto [ra, pa] = find(G.index(e.first));
    auto [rb, pb] = find(G.index(e.second));
    if (ra == rb) {
      flags.push_back(pa == pb);
      continue;
    }
    up[ra] = rb;
    parity[ra] = pa ^ pb ^ 1;
    flags.push_back(false);
  }
  return flags;
}

BipartiteGraph bipartite_repair(const BipartiteGraph& G) {
  auto flags = odd_cycle_flags(G);
  std::vector<Edge> kept;
  for (std::size_t k = 0; k < G.edges.size(); ++k)
    if (!flags[k]) kept.push_back(G.edges[k]);
  return BipartiteGraph::make(G.vertices, std::move(kept));
}

BipartiteGraph tree_graph(const FiniteTree& T) {
  std::vector<Nat> vertices(T.size());
  std::iota(vertices.begin(), vertices.end(), 0);
  std::vector<Edge> edges;
  std::set<Nat> x;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (T.depth(i) % 2 == 0) x.insert(i);
    if (auto p = T.parent_index(i)) edges.push_back({*p, i});
  }
  return BipartiteGraph::make(std::move(vertices), std::move(edges), std::move(x));
}

std::string to_string(const KoenigCover& K) {
  std::ostringstream os;
  os << "C={";
  bool first = true;
  for (Nat v : K.cover) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << "} M={";
  first = true;
  for (const Edge& e : K.matching) {
    os << (first ? "" : ",") << e.first << '-' << e.second;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace atrlab

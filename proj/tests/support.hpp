#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "taut/graph.hpp"

namespace taut::fixtures {

struct RandomGraphOptions {
  int max_half_edges = 8;
  int max_genus = 2;
  int max_vertices = 3;
  int max_points = 4;
  bool decorate = true;
  bool kappa = true;
};

/// Connected valid decorated graph with legs 1..n, drawn by rejection.
inline DecoratedGraph random_graph(std::mt19937& rng, const RandomGraphOptions& o = {}) {
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  while (true) {
    DecoratedGraph g;
    const int v = pick(1, o.max_vertices);
    for (int i = 0; i < v; ++i) g.add_vertex(pick(0, o.max_genus));
    for (int i = 1; i < v; ++i) g.add_edge(pick(0, i - 1), i);
    const int extra = pick(0, 2);
    for (int e = 0; e < extra; ++e) g.add_edge(pick(0, v - 1), pick(0, v - 1));
    const int n = pick(0, o.max_points);
    for (int p = 1; p <= n; ++p) g.add_leg(pick(0, v - 1), p);
    if (static_cast<int>(g.half_edges.size()) > o.max_half_edges) continue;
    if (total_genus(g) > o.max_genus) continue;
    if (o.decorate) {
      for (auto& h : g.half_edges)
        if (pick(0, 3) == 0) h.psi = pick(1, 2);
      if (o.kappa)
        for (auto& x : g.vertices)
          if (pick(0, 4) == 0) x.kappa.push_back(pick(1, 2));
    }
    if (is_valid(g)) return g;
  }
}

/// Applies a random permutation to the vertices and half-edges and renames
/// internal labels; the result is isomorphic to g.
inline DecoratedGraph shuffle(const DecoratedGraph& g, std::mt19937& rng) {
  std::vector<int> vperm(g.vertices.size());
  for (std::size_t i = 0; i < vperm.size(); ++i) vperm[i] = static_cast<int>(i);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  DecoratedGraph out;
  out.vertices.resize(g.vertices.size());
  for (std::size_t i = 0; i < vperm.size(); ++i) out.vertices[vperm[i]] = g.vertices[i];
  std::map<int, int> rename;
  for (const auto& h : g.half_edges)
    if (h.label.is_internal()) rename.emplace(h.label.id, 0);
  std::vector<int> ids;
  for (std::size_t i = 0; i < rename.size(); ++i) ids.push_back(static_cast<int>(10 + 3 * i));
  std::shuffle(ids.begin(), ids.end(), rng);
  std::size_t next = 0;
  for (auto& [old, fresh] : rename) fresh = ids[next++];
  for (const auto& h : g.half_edges) {
    HalfEdge c = h;
    c.vertex = vperm[h.vertex];
    if (c.label.is_internal()) c.label.id = rename[c.label.id];
    out.half_edges.push_back(c);
  }
  std::shuffle(out.half_edges.begin(), out.half_edges.end(), rng);
  return out;
}

/// Automorphisms by exhaustive search over half-edge bijections, times the
/// permutations of isolated vertices of equal type.
inline std::uint64_t brute_force_automorphisms(const DecoratedGraph& g) {
  const int h = static_cast<int>(g.half_edges.size());
  const auto partner = g.partners();
  std::vector<int> image(h, -1), vmap(g.vertices.size(), -1), vinv(g.vertices.size(), -1);
  std::vector<bool> used(h, false);
  std::uint64_t count = 0;
  auto go = [&](auto&& self, int a) -> void {
    if (a == h) {
      ++count;
      return;
    }
    const auto& ha = g.half_edges[a];
    for (int b = 0; b < h; ++b) {
      if (used[b]) continue;
      const auto& hb = g.half_edges[b];
      if (ha.psi != hb.psi || ha.label.is_external() != hb.label.is_external()) continue;
      if (ha.label.is_external() && ha.label.id != hb.label.id) continue;
      const int va = ha.vertex, vb = hb.vertex;
      if (vmap[va] >= 0 && vmap[va] != vb) continue;
      if (vmap[va] < 0 && (vinv[vb] >= 0 || g.vertices[va] != g.vertices[vb])) continue;
      const int pa = partner[a];
      if (pa >= 0 && pa < a && image[pa] != partner[b]) continue;
      const bool fresh = vmap[va] < 0;
      if (fresh) {
        vmap[va] = vb;
        vinv[vb] = va;
      }
      used[b] = true;
      image[a] = b;
      self(self, a + 1);
      image[a] = -1;
      used[b] = false;
      if (fresh) {
        vmap[va] = -1;
        vinv[vb] = -1;
      }
    }
  };
  go(go, 0);
  const auto val = g.valences();
  std::map<Vertex, int> isolated;
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    if (val[v] == 0) ++isolated[g.vertices[v]];
  for (const auto& [type, m] : isolated)
    for (int i = 2; i <= m; ++i) count *= static_cast<std::uint64_t>(i);
  return count;
}

}  // namespace taut::fixtures

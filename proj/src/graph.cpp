#include "taut/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "taut/errors.hpp"

namespace taut {

int Vertex::kappa_degree() const { return std::accumulate(kappa.begin(), kappa.end(), 0); }

int DecoratedGraph::add_vertex(int genus, std::vector<int> kappa) {
  std::sort(kappa.begin(), kappa.end());
  vertices.push_back(Vertex{genus, std::move(kappa)});
  return static_cast<int>(vertices.size()) - 1;
}

int DecoratedGraph::add_leg(int vertex, int label, int psi) {
  half_edges.push_back(HalfEdge{vertex, Label::external(label), psi});
  return static_cast<int>(half_edges.size()) - 1;
}

int DecoratedGraph::add_edge(int v, int w, int psi_v, int psi_w) {
  const int id = next_internal_id();
  half_edges.push_back(HalfEdge{v, Label::internal(id), psi_v});
  half_edges.push_back(HalfEdge{w, Label::internal(id), psi_w});
  return id;
}

int DecoratedGraph::next_internal_id() const {
  int next = 0;
  for (const auto& h : half_edges)
    if (h.label.is_internal()) next = std::max(next, h.label.id + 1);
  return next;
}

int DecoratedGraph::max_external_label() const {
  int m = 0;
  for (const auto& h : half_edges)
    if (h.label.is_external()) m = std::max(m, h.label.id);
  return m;
}

std::vector<int> DecoratedGraph::external_labels() const {
  std::vector<int> out;
  for (const auto& h : half_edges)
    if (h.label.is_external()) out.push_back(h.label.id);
  std::sort(out.begin(), out.end());
  return out;
}

int DecoratedGraph::find_leg(int label) const {
  for (std::size_t i = 0; i < half_edges.size(); ++i)
    if (half_edges[i].label == Label::external(label)) return static_cast<int>(i);
  return -1;
}

std::vector<std::pair<int, int>> DecoratedGraph::edges() const {
  std::map<int, std::vector<int>> by_id;
  for (std::size_t i = 0; i < half_edges.size(); ++i)
    if (half_edges[i].label.is_internal()) by_id[half_edges[i].label.id].push_back(static_cast<int>(i));
  std::vector<std::pair<int, int>> out;
  for (const auto& [id, hs] : by_id)
    if (hs.size() == 2) out.emplace_back(hs[0], hs[1]);
  return out;
}

std::vector<int> DecoratedGraph::partners() const {
  std::vector<int> out(half_edges.size(), -1);
  for (auto [a, b] : edges()) {
    out[a] = b;
    out[b] = a;
  }
  return out;
}

std::vector<int> DecoratedGraph::valences() const {
  std::vector<int> out(vertices.size(), 0);
  for (const auto& h : half_edges)
    if (h.vertex >= 0 && h.vertex < static_cast<int>(vertices.size())) ++out[h.vertex];
  return out;
}

std::vector<std::vector<int>> DecoratedGraph::incidence() const {
  std::vector<std::vector<int>> out(vertices.size());
  for (std::size_t i = 0; i < half_edges.size(); ++i) out[half_edges[i].vertex].push_back(static_cast<int>(i));
  return out;
}

int DecoratedGraph::edge_count() const { return static_cast<int>(edges().size()); }

int DecoratedGraph::psi_degree() const {
  int d = 0;
  for (const auto& h : half_edges) d += h.psi;
  return d;
}

int DecoratedGraph::kappa_degree() const {
  int d = 0;
  for (const auto& v : vertices) d += v.kappa_degree();
  return d;
}

std::vector<std::string> validate(const DecoratedGraph& g) {
  std::vector<std::string> out;
  const int nv = static_cast<int>(g.vertices.size());
  for (int v = 0; v < nv; ++v) {
    if (g.vertices[v].genus < 0) out.push_back("vertex " + std::to_string(v) + ": negative genus");
    for (int a : g.vertices[v].kappa)
      if (a < 1) out.push_back("vertex " + std::to_string(v) + ": kappa subscript " + std::to_string(a) + " < 1");
  }
  std::map<int, int> ext_count;
  std::map<int, int> int_count;
  bool dangling = false;
  for (const auto& h : g.half_edges) {
    if (h.vertex < 0 || h.vertex >= nv) {
      out.push_back("half-edge attached to missing vertex " + std::to_string(h.vertex));
      dangling = true;
    }
    if (h.psi < 0) out.push_back("negative psi power");
    if (h.label.is_external()) {
      if (h.label.id < 1) out.push_back("external label " + std::to_string(h.label.id) + " is not positive");
      ++ext_count[h.label.id];
    } else {
      ++int_count[h.label.id];
    }
  }
  for (auto [label, c] : ext_count)
    if (c > 1) out.push_back("external label " + std::to_string(label) + " repeated");
  for (auto [id, c] : int_count)
    if (c != 2) out.push_back("internal label e" + std::to_string(id) + " occurs " + std::to_string(c) + " time(s)");
  if (dangling) return out;

  const auto val = g.valences();
  for (int v = 0; v < nv; ++v) {
    const int euler = 2 * g.vertices[v].genus - 2 + val[v];
    if (euler <= 0)
      out.push_back("vertex " + std::to_string(v) + ": unstable (2g-2+valence = " + std::to_string(euler) + ")");
    else if (const int d = vertex_dimension(g, v); d < 0)
      out.push_back("vertex " + std::to_string(v) + ": decorated dimension " + std::to_string(d));
  }
  return out;
}

bool is_valid(const DecoratedGraph& g) { return validate(g).empty(); }

int total_genus(const DecoratedGraph& g) {
  int s = 0;
  for (const auto& v : g.vertices) s += v.genus;
  return s + g.edge_count() - static_cast<int>(g.vertices.size()) + 1;
}

int vertex_dimension(const DecoratedGraph& g, int v) {
  int val = 0;
  int psi = 0;
  for (const auto& h : g.half_edges)
    if (h.vertex == v) {
      ++val;
      psi += h.psi;
    }
  const auto& vx = g.vertices[v];
  return 3 * vx.genus - 3 + val - psi - vx.kappa_degree();
}

int dimension(const DecoratedGraph& g) {
  int d = 0;
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) d += vertex_dimension(g, v);
  return d;
}

int codimension(const DecoratedGraph& g) {
  const int n = static_cast<int>(g.external_labels().size());
  return 3 * total_genus(g) - 3 + n - dimension(g);
}

std::vector<int> component_ids(const DecoratedGraph& g) {
  const int nv = static_cast<int>(g.vertices.size());
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : g.edges()) {
    const int ra = find(g.half_edges[a].vertex);
    const int rb = find(g.half_edges[b].vertex);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<int> ids(nv, -1);
  std::map<int, int> root_to_id;
  for (int v = 0; v < nv; ++v) {
    const int r = find(v);
    auto [it, inserted] = root_to_id.emplace(r, static_cast<int>(root_to_id.size()));
    ids[v] = it->second;
  }
  return ids;
}

int component_count(const DecoratedGraph& g) {
  const auto ids = component_ids(g);
  return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
}

std::vector<DecoratedGraph> split_components(const DecoratedGraph& g) {
  const auto ids = component_ids(g);
  const int nc = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
  std::vector<DecoratedGraph> out(nc);
  std::vector<int> local(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    auto& c = out[ids[v]];
    local[v] = static_cast<int>(c.vertices.size());
    c.vertices.push_back(g.vertices[v]);
  }
  for (const auto& h : g.half_edges) {
    HalfEdge copy = h;
    copy.vertex = local[h.vertex];
    out[ids[h.vertex]].half_edges.push_back(copy);
  }
  return out;
}

DecoratedGraph disjoint_union(const DecoratedGraph& a, const DecoratedGraph& b) {
  DecoratedGraph out = a;
  const int offset_v = static_cast<int>(a.vertices.size());
  const int offset_e = a.next_internal_id();
  out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (const auto& h : b.half_edges) {
    HalfEdge copy = h;
    copy.vertex += offset_v;
    if (copy.label.is_internal()) copy.label.id += offset_e;
    out.half_edges.push_back(copy);
  }
  return out;
}

DecoratedGraph relabel(const DecoratedGraph& g, const std::map<int, int>& mapping) {
  DecoratedGraph out = g;
  for (auto& h : out.half_edges)
    if (h.label.is_external())
      if (auto it = mapping.find(h.label.id); it != mapping.end()) h.label.id = it->second;
  return out;
}

DecoratedGraph drop_vertex(const DecoratedGraph& g, int v) {
  DecoratedGraph out;
  for (int u = 0; u < static_cast<int>(g.vertices.size()); ++u)
    if (u != v) out.vertices.push_back(g.vertices[u]);
  for (const auto& h : g.half_edges) {
    if (h.vertex == v) throw InputError("drop_vertex: vertex still has half-edges");
    HalfEdge copy = h;
    if (copy.vertex > v) --copy.vertex;
    out.half_edges.push_back(copy);
  }
  return out;
}

}  // namespace taut

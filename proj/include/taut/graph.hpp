#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace taut {

enum class LabelKind : std::uint8_t { External, Internal };

/// A half-edge label. External labels are the marked points (positive
/// integers); internal labels occur exactly twice and pair two half-edges
/// into an edge.
struct Label {
  LabelKind kind = LabelKind::External;
  int id = 0;

  static constexpr Label external(int n) { return {LabelKind::External, n}; }
  static constexpr Label internal(int n) { return {LabelKind::Internal, n}; }

  constexpr bool is_external() const { return kind == LabelKind::External; }
  constexpr bool is_internal() const { return kind == LabelKind::Internal; }

  auto operator<=>(const Label&) const = default;
};

/// A component of the curve: geometric genus and a kappa monomial, stored as
/// the sorted multiset of kappa subscripts.
struct Vertex {
  int genus = 0;
  std::vector<int> kappa;

  int kappa_degree() const;
  auto operator<=>(const Vertex&) const = default;
};

struct HalfEdge {
  int vertex = 0;
  Label label;
  int psi = 0;

  auto operator<=>(const HalfEdge&) const = default;
};

/// Possibly disconnected dual graph with psi powers on half-edges and kappa
/// monomials on vertices. Edges are implicit: two half-edges sharing an
/// internal label. Loops (both ends on one vertex) are allowed.
struct DecoratedGraph {
  std::vector<Vertex> vertices;
  std::vector<HalfEdge> half_edges;

  int add_vertex(int genus, std::vector<int> kappa = {});
  /// Attaches an external half-edge; returns its index.
  int add_leg(int vertex, int label, int psi = 0);
  /// Attaches a fresh edge between two (possibly equal) vertices; returns the
  /// internal id used.
  int add_edge(int v, int w, int psi_v = 0, int psi_w = 0);

  int next_internal_id() const;
  int max_external_label() const;
  /// Sorted external labels.
  std::vector<int> external_labels() const;
  /// Index of the half-edge carrying the external label, or -1.
  int find_leg(int label) const;
  /// Pairs of half-edge indices forming edges, ordered by internal id.
  std::vector<std::pair<int, int>> edges() const;
  /// partner[h] is the other half of h's edge, or -1 for external half-edges.
  std::vector<int> partners() const;
  std::vector<int> valences() const;
  /// Half-edge indices incident to each vertex, in storage order.
  std::vector<std::vector<int>> incidence() const;

  int edge_count() const;
  int psi_degree() const;
  int kappa_degree() const;

  bool operator==(const DecoratedGraph&) const = default;
};

/// Empty list means the graph is valid: labels well formed, every vertex
/// stable and of non-negative decorated dimension.
std::vector<std::string> validate(const DecoratedGraph& g);
bool is_valid(const DecoratedGraph& g);

/// Arithmetic genus sum_v g_v + |E| - |V| + 1. For d components this equals
/// sum_i g(C_i) - d + 1.
int total_genus(const DecoratedGraph& g);

/// 3 g_v - 3 + valence(v) minus the psi and kappa degrees at v.
int vertex_dimension(const DecoratedGraph& g, int v);
int dimension(const DecoratedGraph& g);
/// (3g - 3 + n) - dimension with g the arithmetic genus.
int codimension(const DecoratedGraph& g);

/// Component index per vertex; components are numbered by first vertex.
std::vector<int> component_ids(const DecoratedGraph& g);
int component_count(const DecoratedGraph& g);
/// Connected components as standalone graphs, in component-id order.
std::vector<DecoratedGraph> split_components(const DecoratedGraph& g);
DecoratedGraph disjoint_union(const DecoratedGraph& a, const DecoratedGraph& b);

/// Renames external labels; labels absent from the map are kept.
DecoratedGraph relabel(const DecoratedGraph& g, const std::map<int, int>& mapping);

/// Removes vertex v, which must have no incident half-edges, and reindexes.
DecoratedGraph drop_vertex(const DecoratedGraph& g, int v);

}  // namespace taut

#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "taut/graph.hpp"

namespace taut {

/// Integer encoding of a decorated graph, minimal over all vertex orderings.
/// Layout: [V, L, E, (genus, |kappa|, kappa...) per vertex,
///          (label, vertex, psi) per leg sorted by label,
///          (va, psi_a, vb, psi_b) per edge, sorted, (va,psi_a) <= (vb,psi_b)].
/// Isomorphisms fix external labels and may permute everything else.
struct CanonicalForm {
  std::vector<int> code;

  auto operator<=>(const CanonicalForm&) const = default;
};

CanonicalForm canonicalize(const DecoratedGraph& g);

/// The canonical representative: vertices in canonical order, internal
/// labels e0, e1, ... in sorted edge order.
DecoratedGraph to_graph(const CanonicalForm& form);

bool is_isomorphic(const DecoratedGraph& a, const DecoratedGraph& b);

/// Order of the automorphism group (bijections of half-edges and vertices
/// preserving incidence, pairing, external labels, genus, psi and kappa).
std::uint64_t automorphism_count(const DecoratedGraph& g);

/// Number of external labels in a canonical form.
int leg_count(const CanonicalForm& form);

}  // namespace taut

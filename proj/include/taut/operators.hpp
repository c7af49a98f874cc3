#pragma once

#include <compare>
#include <utility>
#include <vector>

#include "taut/combination.hpp"

namespace taut {

/// Per edge, the four relabelings of the two cut half-edges: psi^l on the
/// i-labelled side with coefficient 1/2, on the j-labelled side with
/// (-1)^(l-1)/2. Invalid results are dropped.
/// Throws InputError if l < 1, i == j, i or j is already a label, or g is invalid.
FormalSum cut_edges(const DecoratedGraph& g, int l, int i, int j);

/// Per vertex of positive genus and 0 <= m < l: genus lowered by one, legs
/// i^(l-1-m) and j^m attached, coefficient (-1)^(m+1)/2.
FormalSum reduce_genus(const DecoratedGraph& g, int l, int i, int j);

/// Per vertex, ordered genus splits, every distribution of its half-edges
/// and kappa factors, leg i^(l-1-m) on the first part and j^m on the second,
/// coefficient (-1)^(m+1)/2.
FormalSum split_vertices(const DecoratedGraph& g, int l, int i, int j);

/// Sum of the three operations above.
FormalSum apply_r(const DecoratedGraph& g, int l, int i, int j);

/// Total genus and sorted external labels shared by every term.
struct Ambient {
  int genus = 0;
  std::vector<int> labels;

  auto operator<=>(const Ambient&) const = default;
};

/// Throws InputError on an empty sum or on terms with different ambients.
Ambient ambient_of(const FormalSum& e);
Ambient ambient_of(const SymbolicSum& e);

/// The two smallest positive labels not in the ambient, used by apply_r.
std::pair<int, int> fresh_labels(const Ambient& a);

/// r_l extended linearly with i, j from fresh_labels. The empty sum maps to
/// the empty sum.
FormalSum apply_r(const FormalSum& e, int l);
SymbolicSum apply_r(const SymbolicSum& e, int l);

}  // namespace taut

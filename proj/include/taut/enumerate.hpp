#pragma once

#include <vector>

#include "taut/combination.hpp"

namespace taut {

enum class Decorations { None, Psi, PsiKappa };

struct EnumerateOptions {
  Decorations decorations = Decorations::Psi;
  /// Labels permuted by symmetrization; empty means no symmetrization.
  std::vector<int> symmetrize_points;
};

/// Connected stable graphs of genus g with legs 1..n and exactly `edges`
/// edges, no decorations, sorted canonically.
std::vector<CanonicalForm> enumerate_pure_strata(int g, int n, int edges);

/// Decorated classes of codimension k in M_{g,n} bar (legs 1..n). Pure strata
/// come first, then by increasing decoration degree, canonical order inside.
/// With symmetrization, one representative per orbit: the least canonical
/// form over all relabelings of the points.
/// Throws InputError unless g >= 0, n >= 0, 2g - 2 + n > 0 and k >= 0. k above
/// the dimension gives an empty list.
std::vector<CanonicalForm> enumerate(int g, int n, int k, const EnumerateOptions& options = {});

/// Least canonical form over all relabelings of `points`.
CanonicalForm orbit_representative(const DecoratedGraph& g, const std::vector<int>& points);

/// Total psi and kappa degree of a canonical graph.
int decoration_degree(const CanonicalForm& form);

}  // namespace taut

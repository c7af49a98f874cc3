#pragma once

#include <string>
#include <vector>

#include "taut/linalg.hpp"
#include "taut/relations.hpp"

namespace taut {

/// E = sum c_i * classes[i-1], one unknown per distinct nonzero class.
/// With a registry, classes whose normal form in the source ambient depends on
/// earlier ones are dropped first.
SymbolicSum general_element(const std::vector<FormalSum>& classes);
std::vector<FormalSum> independent_classes(const std::vector<FormalSum>& classes, const RelationRegistry& registry);

/// Where a row came from: the index l, the target ambient piece and the
/// basis graph whose coordinate vanished.
struct RowProvenance {
  int l = 0;
  std::string ambient;
  CanonicalForm basis_graph;
};

/// Rows are linear forms over unknowns c_1..c_unknowns (columns = unknown
/// indices); scaled to primitive integer rows and deduplicated.
struct LinearSystem {
  int unknowns = 0;
  std::vector<SparseVector> rows;
  std::vector<RowProvenance> provenance;
};

/// "(g,{labels},k)" per component of a basis graph, joined by "x".
std::string ambient_profile(const CanonicalForm& graph);

/// Largest l with r_l possibly nonzero: 3g - 3 + n - k.
int lemma1_bound(int g, int n, int k);

/// Rows from the normal forms of r_l(E) for l in [lmin, lmax].
/// Throws InductiveDataMissing when a target ambient is not complete.
LinearSystem invariance_system(const SymbolicSum& e, int lmin, int lmax, const RelationRegistry& registry);

/// Nullspace basis, one vector per free unknown (the highest-index unknowns
/// are free). Vectors are indexed by unknown (1-based).
std::vector<SparseVector> solve_nullspace(const LinearSystem& system);

struct EquationCandidate {
  /// Primitive integer coefficient vector over the unknowns.
  SparseVector coefficients;
  FormalSum equation;
  /// Vanishes modulo the known relations of the source ambient.
  bool trivial = false;
};

/// Splits the solution span into the directions that vanish modulo the source
/// registry (trivial, listed last) and a complement. Each candidate in the
/// complement is reduced against the trivial directions with highest-index
/// pivots, then made sparser by subtracting trivial directions greedily.
/// Throws InputError on a zero solution vector.
std::vector<EquationCandidate> filter_trivial(const std::vector<SparseVector>& solutions,
                                              const std::vector<FormalSum>& classes, const RelationRegistry& registry);

FormalSum combine(const SparseVector& coefficients, const std::vector<FormalSum>& classes);

struct ResidualTerm {
  std::string ambient;
  CanonicalForm basis_graph;
  Rational coefficient;
};

struct InvarianceReport {
  int l = 0;
  bool zero = true;
  /// r_l(E) was already the empty sum before reduction.
  bool vacuous = false;
  std::vector<ResidualTerm> residual;
};

/// Codimension shared by every term. Throws InputError otherwise.
int codimension_of(const FormalSum& e);

/// Normal form of r_l(E) for each l in [lmin, lmax].
std::vector<InvarianceReport> check_invariance(const FormalSum& e, int lmin, int lmax, const RelationRegistry& registry);

}  // namespace taut

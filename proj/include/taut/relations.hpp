#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "taut/combination.hpp"

namespace taut {

/// One genus-0 TRR step at half-edge a (psi lowered by one), with b and c
/// the two reference half-edges at the same vertex: psi_a is the sum of the
/// boundary divisors separating a from b and c. All arguments are half-edge
/// indices. Throws InputError unless a has psi > 0 and the vertex has genus 0.
FormalSum trr_genus0_step(const DecoratedGraph& g, int a, int b, int c);

/// One genus-1 TRR step at half-edge a: psi_a = 1/24 (loop) plus the
/// divisors splitting off a genus-0 vertex holding a and at least one more
/// half-edge.
FormalSum trr_genus1_step(const DecoratedGraph& g, int a);

/// Rewrites until no genus-0 vertex carries psi. References are the two
/// smallest other half-edges: legs by label first, then edges by index.
FormalSum genus0_trr_rewrite(const FormalSum& e);

/// Rewrites until no vertex of genus 0 or 1 carries psi.
FormalSum genus1_trr_rewrite(const FormalSum& e);

/// For a genus-0 vertex v of valence >= 4 and every 4-subset {a,b,c,d} of
/// its half-edges: R(ab|cd) - R(ac|bd) and R(ab|cd) - R(ad|bc), with R(ab|cd)
/// the sum of splittings of v separating {a,b} from {c,d}.
/// Throws InputError if v is not such a vertex.
std::vector<FormalSum> wdvv_relations(const DecoratedGraph& host, int vertex);

/// Joins legs a and b into an edge in every term.
/// Throws InputError if a term lacks either label or a == b.
FormalSum induce_by_gluing(const FormalSum& rel, int a, int b);

/// Pullback along the map forgetting a new point `label`.
/// Throws InputError if some term already uses the label.
FormalSum induce_by_forgetful(const FormalSum& rel, int label);
/// As above with label one more than the largest label in use.
FormalSum induce_by_forgetful(const FormalSum& rel);

/// Rewrites kappa (kappa_a = pushforward of psi^(a+1) of a new point) and
/// psi (genus-0 and genus-1 TRR) until every term is an undecorated stratum.
/// Throws InductiveDataMissing for a decorated vertex of genus >= 2.
FormalSum reduce_to_strata(const FormalSum& e);

enum class Provenance { Generated, Imported, Induced };
enum class Convention { GluedHalfEdges, AutomorphismWeighted };

std::string to_string(Provenance p);

struct RelationRecord {
  FormalSum relation;
  Provenance provenance;
};

/// Relations among the undecorated connected strata of M_{g,n} bar in
/// codimension k (legs 1..n).
struct RelationBasis {
  int genus = 0;
  int points = 0;
  int codim = 0;
  /// Every stratum, canonical order; index = column.
  std::vector<CanonicalForm> strata;
  /// Strata that are not pivots of the relation span.
  std::vector<CanonicalForm> basis;
  /// Independent relations in insertion order.
  std::vector<RelationRecord> relations;
  /// Whether the generated and imported relations are known to be all of them.
  bool complete = false;

  int rank() const { return static_cast<int>(relations.size()); }
};

/// Known relations per connected ambient: WDVV on every stratum, imported
/// equations from `<root>/g<g>n<n>k<k>.gwi` under all relabelings, and
/// pullbacks of lower ambients that have imported data. Normal forms of
/// possibly disconnected decorated sums are tensor products of component
/// normal forms. Construction of each ambient happens once; all methods are
/// safe to call concurrently.
class RelationRegistry {
 public:
  /// Generated relations only.
  RelationRegistry();
  /// Throws InputError if root is not a directory.
  explicit RelationRegistry(const std::filesystem::path& root);
  ~RelationRegistry();

  RelationRegistry(const RelationRegistry&) = delete;
  RelationRegistry& operator=(const RelationRegistry&) = delete;

  const std::optional<std::filesystem::path>& root() const { return root_; }

  /// Complete when g = 0, when g = 1 and n <= 3 or k <= 1, or when an
  /// imported file exists for (g,n,k).
  bool is_complete(int g, int n, int k) const;
  bool has_imported(int g, int n, int k) const;

  /// Throws InductiveDataMissing when require_complete and the ambient is
  /// not complete.
  const RelationBasis& relation_basis(int g, int n, int k, bool require_complete = true) const;

  /// Coordinates over products of basis strata; zero iff e vanishes modulo
  /// the known relations.
  FormalSum normal_form(const FormalSum& e, bool require_complete = true) const;
  SymbolicSum normal_form(const SymbolicSum& e, bool require_complete = true) const;
  bool is_zero_modulo(const FormalSum& e, bool require_complete = true) const;

  /// Normal form of one connected undecorated stratum.
  FormalSum stratum_normal_form(const CanonicalForm& stratum, bool require_complete) const;

 private:
  struct Ambient {
    int g, n, k;
    auto operator<=>(const Ambient&) const = default;
  };
  struct Built;

  const Built& built(int g, int n, int k) const;
  std::unique_ptr<Built> build(int g, int n, int k) const;
  FormalSum component_normal_form(const DecoratedGraph& connected, bool require_complete) const;

  std::optional<std::filesystem::path> root_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<Ambient, std::unique_ptr<Built>> cache_;
  mutable std::map<std::pair<CanonicalForm, bool>, FormalSum> component_cache_;
};

/// Reads an imported relation file: one relation per line, normalized to
/// glued-half-edge coefficients according to its "# convention:" header
/// (default glued-half-edges). Throws InputError on an unknown convention.
std::vector<FormalSum> read_relation_file(const std::filesystem::path& path);

/// Path of the imported file for an ambient.
std::filesystem::path relation_file_path(const std::filesystem::path& root, int g, int n, int k);

}  // namespace taut

#include "taut/solver.hpp"

#include <set>

#include "taut/errors.hpp"
#include "taut/operators.hpp"

namespace taut {

SymbolicSum general_element(const std::vector<FormalSum>& classes) {
  SymbolicSum e;
  std::vector<const FormalSum*> seen;
  int next = 1;
  for (const auto& c : classes) {
    if (c.is_zero()) continue;
    bool duplicate = false;
    for (const auto* s : seen) duplicate = duplicate || *s == c;
    if (duplicate) continue;
    seen.push_back(&c);
    accumulate(e, c, LinearForm::unknown(next++));
  }
  return e;
}

std::vector<FormalSum> independent_classes(const std::vector<FormalSum>& classes, const RelationRegistry& registry) {
  std::map<CanonicalForm, int> column;
  RowReducer reducer;
  std::vector<FormalSum> out;
  for (const auto& c : classes) {
    SparseVector row;
    for (const auto& [k, q] : registry.normal_form(c, false))
      row[column.emplace(k, static_cast<int>(column.size())).first->second] = q;
    if (reducer.insert(row)) out.push_back(c);
  }
  return out;
}

std::string ambient_profile(const CanonicalForm& graph) {
  std::string out;
  for (const auto& comp : split_components(to_graph(graph))) {
    if (!out.empty()) out += "x";
    out += "(" + std::to_string(total_genus(comp)) + ",{";
    const auto labels = comp.external_labels();
    for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + std::to_string(labels[i]);
    out += "}," + std::to_string(codimension(comp)) + ")";
  }
  return out;
}

int lemma1_bound(int g, int n, int k) { return 3 * g - 3 + n - k; }

LinearSystem invariance_system(const SymbolicSum& e, int lmin, int lmax, const RelationRegistry& registry) {
  LinearSystem sys;
  for (const auto& [k, form] : e)
    if (!form.terms().empty()) sys.unknowns = std::max(sys.unknowns, form.terms().rbegin()->first);
  std::set<SparseVector> seen;
  for (int l = lmin; l <= lmax; ++l) {
    for (const auto& [k, form] : registry.normal_form(apply_r(e, l))) {
      SparseVector row = primitive(form.terms());
      if (row.empty() || !seen.insert(row).second) continue;
      sys.rows.push_back(std::move(row));
      sys.provenance.push_back({l, ambient_profile(k), k});
    }
  }
  return sys;
}

std::vector<SparseVector> solve_nullspace(const LinearSystem& system) {
  std::vector<SparseVector> shifted;
  for (const auto& row : system.rows) {
    SparseVector r;
    for (const auto& [col, x] : row) r[col - 1] = x;
    shifted.push_back(std::move(r));
  }
  std::vector<SparseVector> out;
  for (const auto& v : nullspace(shifted, system.unknowns)) {
    SparseVector x;
    for (const auto& [col, q] : v) x[col + 1] = q;
    out.push_back(std::move(x));
  }
  return out;
}

FormalSum combine(const SparseVector& coefficients, const std::vector<FormalSum>& classes) {
  FormalSum out;
  for (const auto& [i, q] : coefficients) {
    if (i < 1 || i > static_cast<int>(classes.size())) throw InputError("unknown c" + std::to_string(i) + " has no class");
    accumulate(out, classes[i - 1], q);
  }
  return out;
}

namespace {

// Greedy: subtract trivial directions while that shrinks the support.
SparseVector sparsify(SparseVector x, const std::vector<SparseVector>& trivial) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& z : trivial) {
      for (const auto& [col, zc] : z) {
        auto it = x.find(col);
        if (it == x.end()) continue;
        SparseVector y = x;
        axpy(y, -(it->second / zc), z);
        if (y.size() < x.size()) {
          x = std::move(y);
          changed = true;
          break;
        }
      }
    }
  }
  return x;
}

}  // namespace

std::vector<EquationCandidate> filter_trivial(const std::vector<SparseVector>& solutions,
                                              const std::vector<FormalSum>& classes, const RelationRegistry& registry) {
  for (const auto& s : solutions)
    if (s.empty()) throw InputError("degenerate input: zero solution vector");
  // Columns of M are the normal forms of the solutions; its kernel gives the
  // combinations that vanish modulo known relations.
  std::map<CanonicalForm, int> key_index;
  std::vector<SparseVector> by_key;
  for (std::size_t j = 0; j < solutions.size(); ++j) {
    for (const auto& [k, q] : registry.normal_form(combine(solutions[j], classes), false)) {
      auto [it, inserted] = key_index.emplace(k, static_cast<int>(by_key.size()));
      if (inserted) by_key.emplace_back();
      by_key[it->second][static_cast<int>(j)] = q;
    }
  }
  RowReducer reducer(PivotOrder::Rightmost);
  for (const auto& alpha : nullspace(by_key, static_cast<int>(solutions.size()))) {
    SparseVector z;
    for (const auto& [j, a] : alpha) axpy(z, a, solutions[j]);
    reducer.insert(z);
  }
  // Rows with a trivial pivot are reported from the trivial span alone, so
  // back-substitution cannot mix candidates into them.
  const auto trivial_rows = reducer.reduced_rows();
  for (const auto& s : solutions) reducer.insert(s);
  std::vector<SparseVector> trivial;
  std::vector<EquationCandidate> out;
  for (const auto& [p, row] : trivial_rows) trivial.push_back(row);
  for (const auto& [p, row] : reducer.reduced_rows()) {
    if (trivial_rows.count(p)) continue;
    EquationCandidate c;
    c.coefficients = primitive(sparsify(row, trivial));
    c.equation = combine(c.coefficients, classes);
    out.push_back(std::move(c));
  }
  for (const auto& row : trivial) {
    EquationCandidate c;
    c.coefficients = primitive(row);
    c.equation = combine(c.coefficients, classes);
    c.trivial = true;
    out.push_back(std::move(c));
  }
  return out;
}

int codimension_of(const FormalSum& e) {
  if (e.is_zero()) throw InputError("empty sum has no codimension");
  int k = -1;
  for (const auto& [key, c] : e) {
    const int ck = codimension(to_graph(key));
    if (k >= 0 && ck != k) throw InputError("terms have different codimensions");
    k = ck;
  }
  return k;
}

std::vector<InvarianceReport> check_invariance(const FormalSum& e, int lmin, int lmax, const RelationRegistry& registry) {
  std::vector<InvarianceReport> out;
  for (int l = lmin; l <= lmax; ++l) {
    InvarianceReport r;
    r.l = l;
    const FormalSum image = apply_r(e, l);
    r.vacuous = image.is_zero();
    for (const auto& [k, q] : registry.normal_form(image)) r.residual.push_back({ambient_profile(k), k, q});
    r.zero = r.residual.empty();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace taut

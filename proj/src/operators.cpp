#include "taut/operators.hpp"

#include <algorithm>
#include <optional>

#include "taut/errors.hpp"

namespace taut {
namespace {

void check_arguments(const DecoratedGraph& g, int l, int i, int j) {
  if (l < 1) throw InputError("r_l needs l >= 1, got " + std::to_string(l));
  if (i == j) throw InputError("new labels i and j must differ");
  if (i < 1 || j < 1) throw InputError("new labels must be positive");
  if (g.find_leg(i) >= 0 || g.find_leg(j) >= 0)
    throw InputError("new label " + std::to_string(g.find_leg(i) >= 0 ? i : j) + " already used");
  if (auto errors = validate(g); !errors.empty()) throw InputError("invalid graph: " + errors.front());
}

Rational half_sign(int exponent) { return make_rational(exponent % 2 == 0 ? 1 : -1, 2); }

void add_if_valid(FormalSum& out, const DecoratedGraph& g, const Rational& c) {
  if (is_valid(g)) out.add(g, c);
}

}  // namespace

FormalSum cut_edges(const DecoratedGraph& g, int l, int i, int j) {
  check_arguments(g, l, i, j);
  FormalSum out;
  const Rational plus = make_rational(1, 2);
  const Rational twisted = half_sign(l - 1);
  for (auto [h1, h2] : g.edges()) {
    // (label on h1, label on h2, psi^l on h1?, coefficient)
    const struct {
      int a, b;
      bool on_first;
      Rational c;
    } terms[] = {{i, j, true, plus}, {i, j, false, twisted}, {j, i, false, plus}, {j, i, true, twisted}};
    for (const auto& t : terms) {
      DecoratedGraph cut = g;
      cut.half_edges[h1].label = Label::external(t.a);
      cut.half_edges[h2].label = Label::external(t.b);
      cut.half_edges[t.on_first ? h1 : h2].psi += l;
      add_if_valid(out, cut, t.c);
    }
  }
  return out;
}

FormalSum reduce_genus(const DecoratedGraph& g, int l, int i, int j) {
  check_arguments(g, l, i, j);
  FormalSum out;
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    if (g.vertices[v].genus < 1) continue;
    for (int m = 0; m < l; ++m) {
      DecoratedGraph r = g;
      --r.vertices[v].genus;
      r.add_leg(v, i, l - 1 - m);
      r.add_leg(v, j, m);
      add_if_valid(out, r, half_sign(m + 1));
    }
  }
  return out;
}

FormalSum split_vertices(const DecoratedGraph& g, int l, int i, int j) {
  check_arguments(g, l, i, j);
  FormalSum out;
  const auto incidence = g.incidence();
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    const auto& hs = incidence[v];
    const auto& kappa = g.vertices[v].kappa;
    if (hs.size() > 20 || kappa.size() > 20) throw InputError("vertex too large to split");
    const int genus = g.vertices[v].genus;
    for (int g1 = 0; g1 <= genus; ++g1) {
      for (unsigned long hmask = 0; hmask < (1UL << hs.size()); ++hmask) {
        for (unsigned long kmask = 0; kmask < (1UL << kappa.size()); ++kmask) {
          DecoratedGraph s = g;
          std::vector<int> k1;
          std::vector<int> k2;
          for (std::size_t t = 0; t < kappa.size(); ++t) ((kmask >> t) & 1 ? k2 : k1).push_back(kappa[t]);
          s.vertices[v] = Vertex{g1, k1};
          const int w = s.add_vertex(genus - g1, k2);
          for (std::size_t t = 0; t < hs.size(); ++t)
            if ((hmask >> t) & 1) s.half_edges[hs[t]].vertex = w;
          for (int m = 0; m < l; ++m) {
            DecoratedGraph r = s;
            r.add_leg(v, i, l - 1 - m);
            r.add_leg(w, j, m);
            add_if_valid(out, r, half_sign(m + 1));
          }
        }
      }
    }
  }
  return out;
}

FormalSum apply_r(const DecoratedGraph& g, int l, int i, int j) {
  FormalSum out = cut_edges(g, l, i, j);
  out += reduce_genus(g, l, i, j);
  out += split_vertices(g, l, i, j);
  return out;
}

namespace {

template <class Coeff>
Ambient ambient_of_terms(const Combination<Coeff>& e) {
  if (e.is_zero()) throw InputError("empty sum has no ambient");
  std::optional<Ambient> a;
  for (const auto& [k, c] : e) {
    const DecoratedGraph g = to_graph(k);
    Ambient b{total_genus(g), g.external_labels()};
    if (!a)
      a = b;
    else if (*a != b)
      throw InputError("terms live on different moduli spaces");
  }
  return *a;
}

template <class Coeff>
Combination<Coeff> apply_r_terms(const Combination<Coeff>& e, int l) {
  if (l < 1) throw InputError("r_l needs l >= 1, got " + std::to_string(l));
  if (e.is_zero()) return {};
  const auto [i, j] = fresh_labels(ambient_of_terms(e));
  return linear_extension(e, [&](const CanonicalForm& k) { return apply_r(to_graph(k), l, i, j); });
}

}  // namespace

Ambient ambient_of(const FormalSum& e) { return ambient_of_terms(e); }
Ambient ambient_of(const SymbolicSum& e) { return ambient_of_terms(e); }

std::pair<int, int> fresh_labels(const Ambient& a) {
  std::vector<int> free;
  for (int x = 1; free.size() < 2; ++x)
    if (!std::binary_search(a.labels.begin(), a.labels.end(), x)) free.push_back(x);
  return {free[0], free[1]};
}

FormalSum apply_r(const FormalSum& e, int l) { return apply_r_terms(e, l); }
SymbolicSum apply_r(const SymbolicSum& e, int l) { return apply_r_terms(e, l); }

}  // namespace taut

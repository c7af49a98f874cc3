#include "taut/relations.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <tuple>
#include <stdexcept>

#include "taut/enumerate.hpp"
#include "taut/errors.hpp"
#include "taut/gwi.hpp"
#include "taut/linalg.hpp"

namespace taut {
namespace {

// Labels of points created while eliminating kappa classes; pushed forward
// before anything leaves reduce_to_strata.
constexpr int kForgetBase = 1000000;

std::vector<std::pair<std::vector<int>, std::vector<int>>> kappa_distributions(const std::vector<int>& kappa) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (unsigned long mask = 0; mask < (1UL << kappa.size()); ++mask) {
    std::vector<int> stay;
    std::vector<int> moved;
    for (std::size_t t = 0; t < kappa.size(); ++t) ((mask >> t) & 1 ? moved : stay).push_back(kappa[t]);
    out.emplace_back(std::move(stay), std::move(moved));
  }
  return out;
}

// Moves half-edges `moved` of vertex v onto a new genus-0 (or `new_genus`)
// vertex joined to v by a new edge. Returns the new vertex.
int split_off(DecoratedGraph& g, int v, const std::vector<int>& moved, int new_genus, std::vector<int> kappa_stay,
              std::vector<int> kappa_moved) {
  std::sort(kappa_stay.begin(), kappa_stay.end());
  g.vertices[v].kappa = std::move(kappa_stay);
  const int w = g.add_vertex(new_genus, std::move(kappa_moved));
  for (int h : moved) g.half_edges[h].vertex = w;
  g.add_edge(v, w);
  return w;
}

void add_if_valid(FormalSum& out, const DecoratedGraph& g, const Rational& c) {
  if (is_valid(g)) out.add(g, c);
}

int vertex_of(const DecoratedGraph& g, int h) {
  if (h < 0 || h >= static_cast<int>(g.half_edges.size())) throw InputError("half-edge index out of range");
  return g.half_edges[h].vertex;
}

// Half-edges at v ordered legs-by-label first, then edges by internal id.
std::vector<int> ordered_half_edges(const DecoratedGraph& g, int v) {
  std::vector<int> hs = g.incidence()[v];
  std::sort(hs.begin(), hs.end(), [&](int x, int y) {
    const auto& a = g.half_edges[x];
    const auto& b = g.half_edges[y];
    return std::tuple(a.label.is_internal(), a.label.id, x) < std::tuple(b.label.is_internal(), b.label.id, y);
  });
  return hs;
}

// Sum over splittings of vertex v: the half-edges `fixed_new` go to the new
// vertex, `fixed_old` stay, the rest in every way.
FormalSum splittings(const DecoratedGraph& g, int v, const std::vector<int>& fixed_new, const std::vector<int>& fixed_old,
                     int genus_old, int genus_new) {
  const auto incidence = g.incidence();
  std::vector<int> free;
  for (int h : incidence[v])
    if (std::find(fixed_new.begin(), fixed_new.end(), h) == fixed_new.end() &&
        std::find(fixed_old.begin(), fixed_old.end(), h) == fixed_old.end())
      free.push_back(h);
  FormalSum out;
  const auto kds = kappa_distributions(g.vertices[v].kappa);
  for (unsigned long mask = 0; mask < (1UL << free.size()); ++mask) {
    std::vector<int> moved = fixed_new;
    for (std::size_t t = 0; t < free.size(); ++t)
      if ((mask >> t) & 1) moved.push_back(free[t]);
    for (const auto& [stay, go] : kds) {
      DecoratedGraph s = g;
      s.vertices[v].genus = genus_old;
      split_off(s, v, moved, genus_new, stay, go);
      add_if_valid(out, s, Rational(1));
    }
  }
  return out;
}

std::optional<DecoratedGraph> forget_point(const DecoratedGraph& g, int label) {
  const int hp = g.find_leg(label);
  if (hp < 0) throw std::logic_error("forget_point: label not present");
  const int v = g.half_edges[hp].vertex;
  const auto incidence = g.incidence();
  if (g.vertices[v].genus != 0 || incidence[v].size() != 3 || !g.vertices[v].kappa.empty()) return std::nullopt;
  std::vector<int> rest;
  for (int h : incidence[v])
    if (h != hp) rest.push_back(h);
  const auto partner = g.partners();
  const int x = rest[0];
  const int y = rest[1];
  DecoratedGraph out = g;
  if (partner[x] == y) throw std::logic_error("forget_point: unstable result");
  if (g.half_edges[x].label.is_external() && g.half_edges[y].label.is_external())
    throw std::logic_error("forget_point: unstable result");
  if (g.half_edges[x].label.is_external()) {
    out.half_edges[partner[y]].label = g.half_edges[x].label;
    out.half_edges[partner[y]].psi += g.half_edges[x].psi;
  } else if (g.half_edges[y].label.is_external()) {
    out.half_edges[partner[x]].label = g.half_edges[y].label;
    out.half_edges[partner[x]].psi += g.half_edges[y].psi;
  } else {
    out.half_edges[partner[y]].label = g.half_edges[x].label;
  }
  std::vector<int> drop = {hp, x, y};
  std::sort(drop.rbegin(), drop.rend());
  for (int h : drop) out.half_edges.erase(out.half_edges.begin() + h);
  return drop_vertex(out, v);
}

bool is_pure(const DecoratedGraph& g) { return g.psi_degree() == 0 && g.kappa_degree() == 0; }

class StrataReducer {
 public:
  FormalSum reduce(const DecoratedGraph& input) {
    const CanonicalForm key = canonicalize(input);
    {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    FormalSum out = compute(to_graph(key));
    std::lock_guard lock(mutex_);
    memo_.emplace(key, out);
    return out;
  }

 private:
  FormalSum reduce_all(const FormalSum& s) {
    FormalSum out;
    for (const auto& [k, c] : s) accumulate(out, reduce(to_graph(k)), c);
    return out;
  }

  FormalSum compute(const DecoratedGraph& g) {
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
      const auto& kappa = g.vertices[v].kappa;
      if (kappa.empty()) continue;
      if (g.vertices[v].genus >= 2) throw InductiveDataMissing(g.vertices[v].genus, 0, g.kappa_degree());
      // kappa_a kappa_K = sum_{T in K} (-1)^|T| pi_*(psi_p^(a+1+|T|) kappa_{K\T})
      const int a = kappa.front();
      const std::vector<int> rest(kappa.begin() + 1, kappa.end());
      const int p = std::max(g.max_external_label() + 1, kForgetBase);
      FormalSum out;
      for (unsigned long mask = 0; mask < (1UL << rest.size()); ++mask) {
        DecoratedGraph t = g;
        t.vertices[v].kappa.clear();
        int exponent = a + 1;
        for (std::size_t i = 0; i < rest.size(); ++i) {
          if ((mask >> i) & 1)
            exponent += rest[i];
          else
            t.vertices[v].kappa.push_back(rest[i]);
        }
        t.add_leg(v, p, exponent);
        if (!is_valid(t)) continue;
        const Rational sign = std::popcount(mask) % 2 == 0 ? 1 : -1;
        for (const auto& [k, c] : reduce(t))
          if (auto f = forget_point(to_graph(k), p)) out.add(*f, sign * c);
      }
      return out;
    }
    for (int h = 0; h < static_cast<int>(g.half_edges.size()); ++h) {
      if (g.half_edges[h].psi == 0) continue;
      const int v = g.half_edges[h].vertex;
      const int genus = g.vertices[v].genus;
      if (genus == 0) {
        std::vector<int> refs;
        for (int x : ordered_half_edges(g, v))
          if (x != h) refs.push_back(x);
        return reduce_all(trr_genus0_step(g, h, refs[0], refs[1]));
      }
      if (genus == 1) return reduce_all(trr_genus1_step(g, h));
      int psi = 0;
      int valence = 0;
      for (const auto& e : g.half_edges)
        if (e.vertex == v) {
          psi += e.psi;
          ++valence;
        }
      throw InductiveDataMissing(genus, valence, psi);
    }
    return FormalSum::of(g, Rational(1));
  }

  std::mutex mutex_;
  std::map<CanonicalForm, FormalSum> memo_;
};

StrataReducer& strata_reducer() {
  static StrataReducer r;
  return r;
}

template <class Pick>
FormalSum rewrite_until(const FormalSum& e, Pick&& pick) {
  FormalSum out;
  std::vector<std::pair<CanonicalForm, Rational>> work(e.begin(), e.end());
  while (!work.empty()) {
    auto [k, c] = std::move(work.back());
    work.pop_back();
    const DecoratedGraph g = to_graph(k);
    const auto step = pick(g);
    if (!step) {
      out.add(k, c);
      continue;
    }
    for (const auto& [k2, c2] : *step) work.emplace_back(k2, c * c2);
  }
  return out;
}

std::optional<FormalSum> genus0_step(const DecoratedGraph& g) {
  for (int h = 0; h < static_cast<int>(g.half_edges.size()); ++h) {
    if (g.half_edges[h].psi == 0) continue;
    const int v = g.half_edges[h].vertex;
    if (g.vertices[v].genus != 0) continue;
    std::vector<int> refs;
    for (int x : ordered_half_edges(g, v))
      if (x != h) refs.push_back(x);
    return trr_genus0_step(g, h, refs[0], refs[1]);
  }
  return std::nullopt;
}

}  // namespace

FormalSum trr_genus0_step(const DecoratedGraph& g, int a, int b, int c) {
  const int v = vertex_of(g, a);
  if (vertex_of(g, b) != v || vertex_of(g, c) != v) throw InputError("TRR references must share the vertex");
  if (a == b || a == c || b == c) throw InputError("TRR half-edges must be distinct");
  if (g.vertices[v].genus != 0) throw InputError("genus-0 TRR on a vertex of positive genus");
  if (g.half_edges[a].psi < 1) throw InputError("genus-0 TRR needs psi on the half-edge");
  DecoratedGraph lowered = g;
  --lowered.half_edges[a].psi;
  // Sides with a alone are unstable and dropped by validity.
  return splittings(lowered, v, {a}, {b, c}, 0, 0);
}

FormalSum trr_genus1_step(const DecoratedGraph& g, int a) {
  const int v = vertex_of(g, a);
  if (g.vertices[v].genus != 1) throw InputError("genus-1 TRR on a vertex of genus other than 1");
  if (g.half_edges[a].psi < 1) throw InputError("genus-1 TRR needs psi on the half-edge");
  DecoratedGraph lowered = g;
  --lowered.half_edges[a].psi;
  FormalSum out;
  DecoratedGraph loop = lowered;
  loop.vertices[v].genus = 0;
  loop.add_edge(v, v);
  add_if_valid(out, loop, make_rational(1, 24));
  // The genus-0 side gets a and at least one more half-edge; a alone is
  // unstable and dropped by validity. The genus-1 side is old vertex v.
  out += splittings(lowered, v, {a}, {}, 1, 0);
  return out;
}

FormalSum genus0_trr_rewrite(const FormalSum& e) { return rewrite_until(e, genus0_step); }

FormalSum genus1_trr_rewrite(const FormalSum& e) {
  return rewrite_until(e, [](const DecoratedGraph& g) -> std::optional<FormalSum> {
    if (auto s = genus0_step(g)) return s;
    for (int h = 0; h < static_cast<int>(g.half_edges.size()); ++h)
      if (g.half_edges[h].psi > 0 && g.vertices[g.half_edges[h].vertex].genus == 1) return trr_genus1_step(g, h);
    return std::nullopt;
  });
}

std::vector<FormalSum> wdvv_relations(const DecoratedGraph& host, int vertex) {
  if (vertex < 0 || vertex >= static_cast<int>(host.vertices.size())) throw InputError("no such vertex");
  if (host.vertices[vertex].genus != 0) throw InputError("WDVV needs a genus-0 vertex");
  const auto hs = host.incidence()[vertex];
  if (hs.size() < 4) throw InputError("WDVV needs valence at least 4");
  std::vector<FormalSum> out;
  const int n = static_cast<int>(hs.size());
  auto r = [&](int x, int y, int z, int w) { return splittings(host, vertex, {hs[x], hs[y]}, {hs[z], hs[w]}, 0, 0); };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const FormalSum ab = r(a, b, c, d);
          out.push_back(ab - r(a, c, b, d));
          out.push_back(ab - r(a, d, b, c));
        }
  return out;
}

FormalSum induce_by_gluing(const FormalSum& rel, int a, int b) {
  if (a == b) throw InputError("cannot glue a point to itself");
  FormalSum out;
  for (const auto& [k, c] : rel) {
    DecoratedGraph g = to_graph(k);
    const int ha = g.find_leg(a);
    const int hb = g.find_leg(b);
    if (ha < 0 || hb < 0) throw InputError("gluing: label " + std::to_string(ha < 0 ? a : b) + " missing");
    const int id = g.next_internal_id();
    g.half_edges[ha].label = Label::internal(id);
    g.half_edges[hb].label = Label::internal(id);
    out.add(g, c);
  }
  return out;
}

FormalSum induce_by_forgetful(const FormalSum& rel, int label) {
  FormalSum out;
  for (const auto& [k, c] : rel) {
    const DecoratedGraph g = to_graph(k);
    if (g.find_leg(label) >= 0) throw InputError("forgetful pullback: label " + std::to_string(label) + " in use");
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
      // kappa_c -> kappa_c - psi_p^c
      const auto& kappa = g.vertices[v].kappa;
      for (unsigned long mask = 0; mask < (1UL << kappa.size()); ++mask) {
        DecoratedGraph t = g;
        t.vertices[v].kappa.clear();
        int exponent = 0;
        for (std::size_t i = 0; i < kappa.size(); ++i) {
          if ((mask >> i) & 1)
            exponent += kappa[i];
          else
            t.vertices[v].kappa.push_back(kappa[i]);
        }
        t.add_leg(v, label, exponent);
        add_if_valid(out, t, std::popcount(mask) % 2 == 0 ? c : Rational(-c));
      }
      // psi_h^m -> psi_h^m - (h and p on a bubble, psi^(m-1) at the node)
      for (int h = 0; h < static_cast<int>(g.half_edges.size()); ++h) {
        const auto& he = g.half_edges[h];
        if (he.vertex != v || he.psi == 0) continue;
        DecoratedGraph t = g;
        const int m = he.psi;
        t.half_edges[h].psi = 0;
        const int w = t.add_vertex(0);
        t.half_edges[h].vertex = w;
        t.add_leg(w, label);
        t.add_edge(v, w, m - 1, 0);
        add_if_valid(out, t, Rational(-c));
      }
    }
  }
  return out;
}

FormalSum induce_by_forgetful(const FormalSum& rel) {
  int top = 0;
  for (const auto& [k, c] : rel) top = std::max(top, to_graph(k).max_external_label());
  return induce_by_forgetful(rel, top + 1);
}

FormalSum reduce_to_strata(const FormalSum& e) {
  FormalSum out;
  for (const auto& [k, c] : e) {
    const DecoratedGraph g = to_graph(k);
    if (is_pure(g)) {
      out.add(k, c);
      continue;
    }
    // Components reduce independently; recombine by disjoint union.
    FormalSum product = FormalSum::of(DecoratedGraph{}, Rational(1));
    for (const auto& comp : split_components(g)) {
      const FormalSum r = strata_reducer().reduce(comp);
      FormalSum next;
      for (const auto& [k1, c1] : product)
        for (const auto& [k2, c2] : r) next.add(disjoint_union(to_graph(k1), to_graph(k2)), c1 * c2);
      product = std::move(next);
    }
    accumulate(out, product, c);
  }
  return out;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Generated:
      return "generated";
    case Provenance::Imported:
      return "imported";
    case Provenance::Induced:
      return "induced";
  }
  return "unknown";
}

std::filesystem::path relation_file_path(const std::filesystem::path& root, int g, int n, int k) {
  return root / ("g" + std::to_string(g) + "n" + std::to_string(n) + "k" + std::to_string(k) + ".gwi");
}

std::vector<FormalSum> read_relation_file(const std::filesystem::path& path) {
  const auto doc = read_gwi_file(path);
  Convention convention = Convention::GluedHalfEdges;
  if (auto it = doc.headers.find("convention"); it != doc.headers.end()) {
    if (it->second == "glued-half-edges")
      convention = Convention::GluedHalfEdges;
    else if (it->second == "automorphism-weighted")
      convention = Convention::AutomorphismWeighted;
    else
      throw InputError(path.string() + ": unknown convention '" + it->second + "'");
  }
  std::vector<FormalSum> out;
  for (const auto& line : doc.lines) {
    FormalSum rel = parse_sum(line);
    if (convention == Convention::AutomorphismWeighted) rel = from_automorphism_weighted(rel);
    out.push_back(std::move(rel));
  }
  return out;
}

struct RelationRegistry::Built {
  RelationBasis info;
  std::map<CanonicalForm, int> index;
  RowReducer reducer;
};

RelationRegistry::RelationRegistry() = default;

RelationRegistry::RelationRegistry(const std::filesystem::path& root) : root_(root) {
  if (!std::filesystem::is_directory(root)) throw InputError("registry directory " + root.string() + " does not exist");
}

RelationRegistry::~RelationRegistry() = default;

bool RelationRegistry::has_imported(int g, int n, int k) const {
  return root_ && std::filesystem::exists(relation_file_path(*root_, g, n, k));
}

bool RelationRegistry::is_complete(int g, int n, int k) const {
  if (k > 3 * g - 3 + n) return true;
  if (g == 0) return true;
  if (g == 1 && (n <= 3 || k <= 1)) return true;
  return has_imported(g, n, k);
}

const RelationRegistry::Built& RelationRegistry::built(int g, int n, int k) const {
  std::lock_guard lock(mutex_);
  const Ambient key{g, n, k};
  if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
  auto b = build(g, n, k);
  return *cache_.emplace(key, std::move(b)).first->second;
}

std::unique_ptr<RelationRegistry::Built> RelationRegistry::build(int g, int n, int k) const {
  auto b = std::make_unique<Built>();
  RelationBasis& info = b->info;
  info.genus = g;
  info.points = n;
  info.codim = k;
  info.complete = is_complete(g, n, k);
  if (k < 0 || k > 3 * g - 3 + n) return b;
  info.strata = enumerate_pure_strata(g, n, k);
  for (std::size_t i = 0; i < info.strata.size(); ++i) b->index.emplace(info.strata[i], static_cast<int>(i));

  auto insert = [&](const FormalSum& rel, Provenance p) {
    SparseVector row;
    for (const auto& [key, c] : rel) {
      auto it = b->index.find(key);
      if (it == b->index.end())
        throw std::logic_error("relation term " + to_gwi(key) + " outside ambient (" + std::to_string(g) + "," +
                               std::to_string(n) + "," + std::to_string(k) + ")");
      row[it->second] = c;
    }
    if (b->reducer.insert(std::move(row))) info.relations.push_back({rel, p});
  };

  if (k >= 1) {
    for (const auto& host_form : enumerate_pure_strata(g, n, k - 1)) {
      const DecoratedGraph host = to_graph(host_form);
      const auto val = host.valences();
      for (int v = 0; v < static_cast<int>(host.vertices.size()); ++v)
        if (host.vertices[v].genus == 0 && val[v] >= 4)
          for (const auto& rel : wdvv_relations(host, v)) insert(rel, Provenance::Generated);
    }
  }

  if (has_imported(g, n, k)) {
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    for (const auto& rel : read_relation_file(relation_file_path(*root_, g, n, k))) {
      const FormalSum pure = reduce_to_strata(rel);
      for (const auto& [key, c] : pure) {
        const DecoratedGraph t = to_graph(key);
        if (total_genus(t) != g || t.external_labels() != labels || t.edge_count() != k || component_count(t) != 1)
          throw InputError("imported relation term " + to_gwi(key) + " does not live in (g,n,k)=(" +
                           std::to_string(g) + "," + std::to_string(n) + "," + std::to_string(k) + ")");
      }
      std::vector<int> image = labels;
      do {
        std::map<int, int> mapping;
        for (int i = 0; i < n; ++i) mapping[labels[i]] = image[i];
        insert(relabel(pure, mapping), Provenance::Imported);
      } while (std::next_permutation(image.begin(), image.end()));
    }
  }

  bool imported_below = false;
  for (int m = 0; m < n; ++m) imported_below = imported_below || has_imported(g, m, k);
  if (imported_below && 2 * g - 2 + (n - 1) > 0) {
    const Built& lower = built(g, n - 1, k);
    for (const auto& record : lower.info.relations) {
      for (int q = 1; q <= n; ++q) {
        std::map<int, int> mapping;
        for (int i = 1; i < n; ++i) mapping[i] = i < q ? i : i + 1;
        insert(reduce_to_strata(induce_by_forgetful(relabel(record.relation, mapping), q)), Provenance::Induced);
      }
    }
  }

  for (std::size_t i = 0; i < info.strata.size(); ++i)
    if (!b->reducer.is_pivot(static_cast<int>(i))) info.basis.push_back(info.strata[i]);
  return b;
}

const RelationBasis& RelationRegistry::relation_basis(int g, int n, int k, bool require_complete) const {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw InputError("unstable ambient");
  if (require_complete && !is_complete(g, n, k)) throw InductiveDataMissing(g, n, k);
  return built(g, n, k).info;
}

FormalSum RelationRegistry::stratum_normal_form(const CanonicalForm& stratum, bool require_complete) const {
  const DecoratedGraph g = to_graph(stratum);
  const auto labels = g.external_labels();
  std::map<int, int> forward;
  std::map<int, int> back;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    forward[labels[i]] = static_cast<int>(i) + 1;
    back[static_cast<int>(i) + 1] = labels[i];
  }
  const int genus = total_genus(g);
  const int n = static_cast<int>(labels.size());
  const int k = g.edge_count();
  if (require_complete && !is_complete(genus, n, k)) throw InductiveDataMissing(genus, n, k);
  const Built& b = built(genus, n, k);
  auto it = b.index.find(canonicalize(relabel(g, forward)));
  if (it == b.index.end()) throw std::logic_error("stratum " + to_gwi(stratum) + " missing from its ambient");
  FormalSum out;
  for (const auto& [col, c] : b.reducer.reduce(SparseVector{{it->second, Rational(1)}}))
    out.add(relabel(to_graph(b.info.strata[col]), back), c);
  return out;
}

FormalSum RelationRegistry::component_normal_form(const DecoratedGraph& connected, bool require_complete) const {
  const auto key = std::make_pair(canonicalize(connected), require_complete);
  {
    std::lock_guard lock(mutex_);
    if (auto it = component_cache_.find(key); it != component_cache_.end()) return it->second;
  }
  FormalSum out;
  for (const auto& [k, c] : reduce_to_strata(FormalSum::of(connected, Rational(1))))
    accumulate(out, stratum_normal_form(k, require_complete), c);
  std::lock_guard lock(mutex_);
  component_cache_.emplace(key, out);
  return out;
}

FormalSum RelationRegistry::normal_form(const FormalSum& e, bool require_complete) const {
  FormalSum out;
  for (const auto& [k, c] : e) {
    FormalSum product = FormalSum::of(DecoratedGraph{}, Rational(1));
    for (const auto& comp : split_components(to_graph(k))) {
      const FormalSum r = component_normal_form(comp, require_complete);
      FormalSum next;
      for (const auto& [k1, c1] : product)
        for (const auto& [k2, c2] : r) next.add(disjoint_union(to_graph(k1), to_graph(k2)), c1 * c2);
      product = std::move(next);
      if (product.is_zero()) break;
    }
    accumulate(out, product, c);
  }
  return out;
}

SymbolicSum RelationRegistry::normal_form(const SymbolicSum& e, bool require_complete) const {
  SymbolicSum out;
  for (const auto& [k, form] : e) accumulate(out, normal_form(FormalSum::of(to_graph(k), Rational(1)), require_complete), form);
  return out;
}

bool RelationRegistry::is_zero_modulo(const FormalSum& e, bool require_complete) const {
  return normal_form(e, require_complete).is_zero();
}

}  // namespace taut

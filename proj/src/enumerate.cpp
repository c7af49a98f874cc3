#include "taut/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <bit>
#include <map>
#include <optional>
#include <set>

#include "taut/errors.hpp"

namespace taut {
namespace {

void check_ambient(int g, int n) {
  if (g < 0 || n < 0) throw InputError("genus and number of points must be non-negative");
  if (2 * g - 2 + n <= 0)
    throw InputError("M_{" + std::to_string(g) + "," + std::to_string(n) + "} is unstable");
}

std::vector<DecoratedGraph> degenerations(const DecoratedGraph& g) {
  std::vector<DecoratedGraph> out;
  const auto incidence = g.incidence();
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    const int genus = g.vertices[v].genus;
    if (genus >= 1) {
      DecoratedGraph d = g;
      --d.vertices[v].genus;
      d.add_edge(v, v);
      out.push_back(std::move(d));
    }
    const auto& hs = incidence[v];
    for (int g1 = 0; g1 <= genus; ++g1) {
      for (unsigned long mask = 0; mask < (1UL << hs.size()); ++mask) {
        const int moved = std::popcount(mask);
        const int stay = static_cast<int>(hs.size()) - moved;
        if (2 * g1 - 2 + stay + 1 <= 0 || 2 * (genus - g1) - 2 + moved + 1 <= 0) continue;
        DecoratedGraph d = g;
        d.vertices[v].genus = g1;
        const int w = d.add_vertex(genus - g1);
        for (std::size_t t = 0; t < hs.size(); ++t)
          if ((mask >> t) & 1) d.half_edges[hs[t]].vertex = w;
        d.add_edge(v, w);
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

// Integer partitions of s into parts >= 1, parts non-increasing.
void partitions(int s, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (s == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(s, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(s - p, p, cur, out);
    cur.pop_back();
  }
}

void decorate(const DecoratedGraph& pure, int degree, bool kappa, std::set<CanonicalForm>& out) {
  const int nh = static_cast<int>(pure.half_edges.size());
  const int nv = static_cast<int>(pure.vertices.size());
  std::vector<int> budget(nv);
  for (int v = 0; v < nv; ++v) budget[v] = vertex_dimension(pure, v);
  DecoratedGraph g = pure;
  std::function<void(int, int)> place_kappa = [&](int v, int left) {
    if (v == nv) {
      if (left == 0) out.insert(canonicalize(g));
      return;
    }
    for (int s = 0; s <= std::min(left, budget[v]); ++s) {
      std::vector<std::vector<int>> parts;
      std::vector<int> cur;
      partitions(s, s, cur, parts);
      for (auto& p : parts) {
        std::sort(p.begin(), p.end());
        g.vertices[v].kappa = p;
        budget[v] -= s;
        place_kappa(v + 1, left - s);
        budget[v] += s;
      }
      g.vertices[v].kappa.clear();
    }
  };
  std::function<void(int, int)> place_psi = [&](int h, int left) {
    if (h == nh) {
      if (kappa)
        place_kappa(0, left);
      else if (left == 0)
        out.insert(canonicalize(g));
      return;
    }
    const int v = g.half_edges[h].vertex;
    for (int p = 0; p <= std::min(left, budget[v]); ++p) {
      g.half_edges[h].psi = p;
      budget[v] -= p;
      place_psi(h + 1, left - p);
      budget[v] += p;
    }
    g.half_edges[h].psi = 0;
  };
  place_psi(0, degree);
}

}  // namespace

std::vector<CanonicalForm> enumerate_pure_strata(int g, int n, int edges) {
  check_ambient(g, n);
  std::set<CanonicalForm> level;
  DecoratedGraph start;
  start.add_vertex(g);
  for (int i = 1; i <= n; ++i) start.add_leg(0, i);
  level.insert(canonicalize(start));
  for (int e = 0; e < edges && !level.empty(); ++e) {
    std::set<CanonicalForm> next;
    for (const auto& form : level)
      for (const auto& d : degenerations(to_graph(form))) next.insert(canonicalize(d));
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

int decoration_degree(const CanonicalForm& form) {
  const DecoratedGraph g = to_graph(form);
  return g.psi_degree() + g.kappa_degree();
}

CanonicalForm orbit_representative(const DecoratedGraph& g, const std::vector<int>& points) {
  std::vector<int> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> image = sorted;
  std::optional<CanonicalForm> best;
  do {
    std::map<int, int> mapping;
    for (std::size_t i = 0; i < sorted.size(); ++i) mapping[sorted[i]] = image[i];
    auto form = canonicalize(relabel(g, mapping));
    if (!best || form < *best) best = std::move(form);
  } while (std::next_permutation(image.begin(), image.end()));
  return *best;
}

std::vector<CanonicalForm> enumerate(int g, int n, int k, const EnumerateOptions& options) {
  check_ambient(g, n);
  if (k < 0) throw InputError("codimension must be non-negative");
  for (int p : options.symmetrize_points)
    if (p < 1 || p > n) throw InputError("symmetrization point " + std::to_string(p) + " is not a label");
  std::vector<CanonicalForm> out;
  if (k > 3 * g - 3 + n) return out;
  const int lowest_edges = options.decorations == Decorations::None ? k : 0;
  // Pure strata first: edges descending means decoration degree ascending.
  for (int edges = k; edges >= lowest_edges; --edges) {
    std::set<CanonicalForm> found;
    for (const auto& form : enumerate_pure_strata(g, n, edges))
      decorate(to_graph(form), k - edges, options.decorations == Decorations::PsiKappa, found);
    if (options.symmetrize_points.empty()) {
      out.insert(out.end(), found.begin(), found.end());
    } else {
      std::set<CanonicalForm> reps;
      for (const auto& form : found) reps.insert(orbit_representative(to_graph(form), options.symmetrize_points));
      out.insert(out.end(), reps.begin(), reps.end());
    }
  }
  return out;
}

}  // namespace taut

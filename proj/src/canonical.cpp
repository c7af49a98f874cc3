#include "taut/canonical.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <tuple>

#include "taut/errors.hpp"

namespace taut {
namespace {

struct Adjacent {
  int psi_here;
  int psi_there;
  int other;
};

// Colour refinement followed by individualisation over remaining ties. All
// colours are ranks of sorted signatures, so they depend only on the
// isomorphism class of the graph.
class Canonizer {
 public:
  explicit Canonizer(const DecoratedGraph& g) : g_(g), nv_(static_cast<int>(g.vertices.size())) {
    adj_.resize(nv_);
    for (auto [a, b] : g.edges()) {
      const auto& ha = g.half_edges[a];
      const auto& hb = g.half_edges[b];
      adj_[ha.vertex].push_back({ha.psi, hb.psi, hb.vertex});
      adj_[hb.vertex].push_back({hb.psi, ha.psi, ha.vertex});
    }
    std::vector<std::vector<int>> sig(nv_);
    for (int v = 0; v < nv_; ++v) {
      const auto& vx = g.vertices[v];
      sig[v].push_back(vx.genus);
      sig[v].push_back(static_cast<int>(vx.kappa.size()));
      sig[v].insert(sig[v].end(), vx.kappa.begin(), vx.kappa.end());
      std::vector<std::pair<int, int>> legs;
      for (const auto& h : g.half_edges)
        if (h.vertex == v && h.label.is_external()) legs.emplace_back(h.label.id, h.psi);
      std::sort(legs.begin(), legs.end());
      sig[v].push_back(static_cast<int>(legs.size()));
      for (auto [l, p] : legs) {
        sig[v].push_back(l);
        sig[v].push_back(p);
      }
      sig[v].push_back(static_cast<int>(adj_[v].size()));
    }
    initial_ = rank(sig);
  }

  void run() {
    if (nv_ == 0) {
      best_ = encode({});
      best_count_ = 1;
      return;
    }
    search(refine(initial_));
  }

  const std::vector<int>& best() const { return *best_; }
  std::uint64_t best_count() const { return best_count_; }

 private:
  static std::vector<int> rank(const std::vector<std::vector<int>>& sig) {
    std::vector<std::vector<int>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(sig.size());
    for (std::size_t v = 0; v < sig.size(); ++v)
      out[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    return out;
  }

  static int distinct(const std::vector<int>& colors) {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  std::vector<int> refine(std::vector<int> colors) const {
    int classes = distinct(colors);
    while (true) {
      std::vector<std::vector<int>> sig(nv_);
      for (int v = 0; v < nv_; ++v) {
        std::vector<std::tuple<int, int, int>> nb;
        nb.reserve(adj_[v].size());
        for (const auto& a : adj_[v]) nb.emplace_back(a.psi_here, a.psi_there, colors[a.other]);
        std::sort(nb.begin(), nb.end());
        sig[v].push_back(colors[v]);
        for (auto [x, y, z] : nb) {
          sig[v].push_back(x);
          sig[v].push_back(y);
          sig[v].push_back(z);
        }
      }
      auto next = rank(sig);
      const int next_classes = distinct(next);
      if (next_classes == classes) return next;
      colors = std::move(next);
      classes = next_classes;
    }
  }

  void search(const std::vector<int>& colors) {
    if (distinct(colors) == nv_) {
      auto code = encode(colors);
      if (!best_ || code < *best_) {
        best_ = std::move(code);
        best_count_ = 1;
      } else if (code == *best_) {
        ++best_count_;
      }
      return;
    }
    // First colour class with more than one vertex.
    std::vector<int> size(nv_, 0);
    for (int c : colors) ++size[c];
    int target = 0;
    while (size[target] < 2) ++target;
    for (int v = 0; v < nv_; ++v) {
      if (colors[v] != target) continue;
      std::vector<int> split(nv_);
      for (int u = 0; u < nv_; ++u) split[u] = 2 * colors[u] + ((colors[u] == target && u != v) ? 1 : 0);
      // Re-rank to consecutive integers before refining.
      std::vector<std::vector<int>> sig(nv_);
      for (int u = 0; u < nv_; ++u) sig[u] = {split[u]};
      search(refine(rank(sig)));
    }
  }

  std::vector<int> encode(const std::vector<int>& pos) const {
    std::vector<int> code;
    const auto ext = g_.external_labels();
    const auto edges = g_.edges();
    code.push_back(nv_);
    code.push_back(static_cast<int>(ext.size()));
    code.push_back(static_cast<int>(edges.size()));
    std::vector<int> order(nv_);
    for (int v = 0; v < nv_; ++v) order[pos[v]] = v;
    for (int p = 0; p < nv_; ++p) {
      const auto& vx = g_.vertices[order[p]];
      code.push_back(vx.genus);
      code.push_back(static_cast<int>(vx.kappa.size()));
      code.insert(code.end(), vx.kappa.begin(), vx.kappa.end());
    }
    std::vector<std::tuple<int, int, int>> legs;
    for (const auto& h : g_.half_edges)
      if (h.label.is_external()) legs.emplace_back(h.label.id, pos[h.vertex], h.psi);
    std::sort(legs.begin(), legs.end());
    for (auto [l, v, p] : legs) {
      code.push_back(l);
      code.push_back(v);
      code.push_back(p);
    }
    std::vector<std::array<int, 4>> es;
    for (auto [a, b] : edges) {
      std::pair<int, int> x{pos[g_.half_edges[a].vertex], g_.half_edges[a].psi};
      std::pair<int, int> y{pos[g_.half_edges[b].vertex], g_.half_edges[b].psi};
      if (y < x) std::swap(x, y);
      es.push_back({x.first, x.second, y.first, y.second});
    }
    std::sort(es.begin(), es.end());
    for (const auto& e : es) code.insert(code.end(), e.begin(), e.end());
    return code;
  }

  const DecoratedGraph& g_;
  int nv_;
  std::vector<std::vector<Adjacent>> adj_;
  std::vector<int> initial_;
  std::optional<std::vector<int>> best_;
  std::uint64_t best_count_ = 0;
};

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

CanonicalForm canonicalize(const DecoratedGraph& g) {
  Canonizer c(g);
  c.run();
  return CanonicalForm{c.best()};
}

DecoratedGraph to_graph(const CanonicalForm& form) {
  const auto& c = form.code;
  if (c.size() < 3) throw InputError("malformed canonical form");
  std::size_t at = 0;
  const int nv = c[at++];
  const int nl = c[at++];
  const int ne = c[at++];
  DecoratedGraph g;
  for (int v = 0; v < nv; ++v) {
    const int genus = c[at++];
    const int nk = c[at++];
    std::vector<int> kappa(c.begin() + static_cast<long>(at), c.begin() + static_cast<long>(at + nk));
    at += static_cast<std::size_t>(nk);
    g.add_vertex(genus, std::move(kappa));
  }
  for (int i = 0; i < nl; ++i) {
    const int label = c[at];
    const int v = c[at + 1];
    const int psi = c[at + 2];
    at += 3;
    g.add_leg(v, label, psi);
  }
  for (int i = 0; i < ne; ++i) {
    g.add_edge(c[at], c[at + 2], c[at + 1], c[at + 3]);
    at += 4;
  }
  return g;
}

bool is_isomorphic(const DecoratedGraph& a, const DecoratedGraph& b) { return canonicalize(a) == canonicalize(b); }

std::uint64_t automorphism_count(const DecoratedGraph& g) {
  Canonizer c(g);
  c.run();
  // Automorphisms fixing every vertex: permutations of identical parallel
  // edges, and end swaps of loops whose two ends carry equal psi.
  std::map<std::array<int, 4>, int> groups;
  int symmetric_loops = 0;
  for (auto [a, b] : g.edges()) {
    std::pair<int, int> x{g.half_edges[a].vertex, g.half_edges[a].psi};
    std::pair<int, int> y{g.half_edges[b].vertex, g.half_edges[b].psi};
    if (y < x) std::swap(x, y);
    ++groups[{x.first, x.second, y.first, y.second}];
    if (x == y) ++symmetric_loops;
  }
  std::uint64_t fixed = 1;
  for (const auto& [key, n] : groups) fixed *= factorial(n);
  fixed <<= symmetric_loops;
  return c.best_count() * fixed;
}

int leg_count(const CanonicalForm& form) { return form.code.size() > 1 ? form.code[1] : 0; }

}  // namespace taut

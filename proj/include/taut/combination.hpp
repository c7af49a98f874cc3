#pragma once

#include <map>
#include <vector>

#include "taut/canonical.hpp"
#include "taut/rational.hpp"

namespace taut {

/// Homogeneous linear form sum_i q_i c_i over unknowns c_i (i >= 1).
class LinearForm {
 public:
  LinearForm() = default;
  static LinearForm unknown(int index, const Rational& coefficient = 1);

  LinearForm& operator+=(const LinearForm& other);
  LinearForm& operator-=(const LinearForm& other);
  LinearForm& operator*=(const Rational& r);

  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(LinearForm a, const Rational& r) { return a *= r; }
  friend LinearForm operator*(const Rational& r, LinearForm a) { return a *= r; }

  bool operator==(const LinearForm& other) const { return terms_ == other.terms_; }

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, Rational>& terms() const { return terms_; }
  Rational coefficient(int index) const;
  /// Throws InputError when an unknown is missing from the assignment.
  Rational evaluate(const std::map<int, Rational>& assignment) const;

 private:
  std::map<int, Rational> terms_;
};

inline bool is_zero(const LinearForm& f) { return f.is_zero(); }

namespace detail {
inline bool coefficient_is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool coefficient_is_zero(const LinearForm& f) { return f.is_zero(); }
}  // namespace detail

/// Finite linear combination of canonical graphs with coefficients in Coeff.
/// Zero coefficients are never stored; iteration follows canonical order.
template <class Coeff>
class Combination {
 public:
  using Terms = std::map<CanonicalForm, Coeff>;

  Combination() = default;

  static Combination of(const DecoratedGraph& g, const Coeff& c) {
    Combination out;
    out.add(g, c);
    return out;
  }

  void add(const CanonicalForm& key, const Coeff& c) {
    if (detail::coefficient_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (detail::coefficient_is_zero(it->second)) terms_.erase(it);
    }
  }
  void add(const DecoratedGraph& g, const Coeff& c) { add(canonicalize(g), c); }

  Combination& operator+=(const Combination& other) {
    for (const auto& [k, c] : other.terms_) add(k, c);
    return *this;
  }
  Combination& operator-=(const Combination& other) {
    for (const auto& [k, c] : other.terms_) add(k, c * Rational(-1));
    return *this;
  }
  Combination& operator*=(const Rational& r) {
    if (sgn(r) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= r;
    return *this;
  }

  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend Combination operator-(Combination a, const Combination& b) { return a -= b; }
  friend Combination operator*(Combination a, const Rational& r) { return a *= r; }
  friend Combination operator*(const Rational& r, Combination a) { return a *= r; }

  bool operator==(const Combination& other) const { return terms_ == other.terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Coeff coefficient(const CanonicalForm& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Coeff{} : it->second;
  }

 private:
  Terms terms_;
};

using FormalSum = Combination<Rational>;
using SymbolicSum = Combination<LinearForm>;

inline bool equals(const FormalSum& a, const FormalSum& b) { return a == b; }
inline bool is_zero(const FormalSum& a) { return a.is_zero(); }

/// out += c * f, term by term.
template <class Coeff>
void accumulate(Combination<Coeff>& out, const FormalSum& f, const Coeff& c) {
  for (const auto& [k, q] : f) out.add(k, c * q);
}

/// Maps a formal sum through a per-graph linear map, with caching left to
/// the callee.
template <class Coeff, class Fn>
Combination<Coeff> linear_extension(const Combination<Coeff>& in, Fn&& per_graph) {
  Combination<Coeff> out;
  for (const auto& [k, c] : in) accumulate(out, per_graph(k), c);
  return out;
}

/// Evaluates every linear form; throws InputError if an unknown is unassigned.
FormalSum specialize(const SymbolicSum& s, const std::map<int, Rational>& assignment);

/// Sum over all permutations of `points` applied to the external labels of g.
/// Throws InputError if some point is not an external label of g.
FormalSum symmetrize(const DecoratedGraph& g, const std::vector<int>& points);
FormalSum symmetrize(const FormalSum& f, const std::vector<int>& points);

/// Renames external labels in every term.
FormalSum relabel(const FormalSum& f, const std::map<int, int>& mapping);

/// Glued-half-edge coefficients to coefficients against the reduced stratum
/// classes [Gamma]/|Aut|, and back.
FormalSum to_automorphism_weighted(const FormalSum& f);
FormalSum from_automorphism_weighted(const FormalSum& f);

}  // namespace taut

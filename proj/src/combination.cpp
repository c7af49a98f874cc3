#include "taut/combination.hpp"

#include <algorithm>

#include "taut/errors.hpp"

namespace taut {

LinearForm LinearForm::unknown(int index, const Rational& coefficient) {
  LinearForm f;
  if (sgn(coefficient) != 0) f.terms_.emplace(index, coefficient);
  return f;
}

LinearForm& LinearForm::operator+=(const LinearForm& other) {
  for (const auto& [i, q] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(i, q);
    if (!inserted) {
      it->second += q;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& other) {
  LinearForm neg = other;
  neg *= Rational(-1);
  return *this += neg;
}

LinearForm& LinearForm::operator*=(const Rational& r) {
  if (sgn(r) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, q] : terms_) q *= r;
  return *this;
}

Rational LinearForm::coefficient(int index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational LinearForm::evaluate(const std::map<int, Rational>& assignment) const {
  Rational total = 0;
  for (const auto& [i, q] : terms_) {
    auto it = assignment.find(i);
    if (it == assignment.end()) throw InputError("no value assigned to unknown c" + std::to_string(i));
    total += q * it->second;
  }
  return total;
}

FormalSum specialize(const SymbolicSum& s, const std::map<int, Rational>& assignment) {
  FormalSum out;
  for (const auto& [k, form] : s) out.add(k, form.evaluate(assignment));
  return out;
}

FormalSum symmetrize(const DecoratedGraph& g, const std::vector<int>& points) {
  const auto labels = g.external_labels();
  for (int p : points)
    if (!std::binary_search(labels.begin(), labels.end(), p))
      throw InputError("symmetrize: label " + std::to_string(p) + " is not an external label of the graph");
  std::vector<int> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> image = sorted;
  FormalSum out;
  do {
    std::map<int, int> mapping;
    for (std::size_t i = 0; i < sorted.size(); ++i) mapping[sorted[i]] = image[i];
    out.add(relabel(g, mapping), Rational(1));
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

FormalSum symmetrize(const FormalSum& f, const std::vector<int>& points) {
  FormalSum out;
  for (const auto& [k, c] : f) accumulate(out, symmetrize(to_graph(k), points), c);
  return out;
}

FormalSum relabel(const FormalSum& f, const std::map<int, int>& mapping) {
  FormalSum out;
  for (const auto& [k, c] : f) out.add(relabel(to_graph(k), mapping), c);
  return out;
}

FormalSum to_automorphism_weighted(const FormalSum& f) {
  FormalSum out;
  for (const auto& [k, c] : f) {
    Rational aut(static_cast<unsigned long>(automorphism_count(to_graph(k))));
    out.add(k, c * aut);
  }
  return out;
}

FormalSum from_automorphism_weighted(const FormalSum& f) {
  FormalSum out;
  for (const auto& [k, c] : f) {
    Rational aut(static_cast<unsigned long>(automorphism_count(to_graph(k))));
    out.add(k, c / aut);
  }
  return out;
}

}  // namespace taut

#include "taut/linalg.hpp"

#include <limits>

namespace taut {

void axpy(SparseVector& a, const Rational& c, const SparseVector& b) {
  if (sgn(c) == 0) return;
  for (const auto& [col, x] : b) {
    auto [it, inserted] = a.try_emplace(col, c * x);
    if (!inserted) {
      it->second += c * x;
      if (sgn(it->second) == 0) a.erase(it);
    }
  }
}

int RowReducer::pivot_of(const SparseVector& v) const {
  return order_ == PivotOrder::Leftmost ? v.begin()->first : v.rbegin()->first;
}

SparseVector RowReducer::reduce(SparseVector v) const {
  // Eliminate pivots in the order in which rows can only introduce later ones.
  if (order_ == PivotOrder::Leftmost) {
    auto it = v.begin();
    while (it != v.end()) {
      const int col = it->first;
      auto row = rows_.find(col);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const Rational c = -it->second;
      axpy(v, c, row->second);
      it = v.upper_bound(col);
    }
  } else {
    int upper = std::numeric_limits<int>::max();
    while (true) {
      auto it = v.lower_bound(upper);
      if (it == v.begin()) break;
      --it;
      const int col = it->first;
      if (auto row = rows_.find(col); row != rows_.end()) {
        const Rational c = -it->second;
        axpy(v, c, row->second);
      }
      upper = col;
    }
  }
  return v;
}

bool RowReducer::insert(SparseVector row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  const int p = pivot_of(row);
  const Rational inv = 1 / row.at(p);
  for (auto& [col, x] : row) x *= inv;
  rows_.emplace(p, std::move(row));
  return true;
}

std::vector<int> RowReducer::pivots() const {
  std::vector<int> out;
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

std::map<int, SparseVector> RowReducer::reduced_rows() const {
  std::map<int, SparseVector> out;
  for (const auto& [p, row] : rows_) {
    SparseVector r = row;
    // Clear the other pivots; the own pivot entry stays 1.
    SparseVector rest = r;
    rest.erase(p);
    r = reduce(rest);
    r[p] = 1;
    out.emplace(p, std::move(r));
  }
  return out;
}

int rank(const std::vector<SparseVector>& rows) {
  RowReducer r;
  for (const auto& row : rows) r.insert(row);
  return r.rank();
}

std::vector<SparseVector> nullspace(const std::vector<SparseVector>& rows, int columns) {
  RowReducer r;
  for (const auto& row : rows) r.insert(row);
  const auto rref = r.reduced_rows();
  std::vector<SparseVector> out;
  for (int f = 0; f < columns; ++f) {
    if (rref.count(f)) continue;
    SparseVector x;
    x[f] = 1;
    for (const auto& [p, row] : rref)
      if (auto it = row.find(f); it != row.end()) x[p] = -it->second;
    out.push_back(std::move(x));
  }
  return out;
}

Rational dot(const SparseVector& a, const SparseVector& b) {
  Rational s = 0;
  for (const auto& [col, x] : a)
    if (auto it = b.find(col); it != b.end()) s += x * it->second;
  return s;
}

SparseVector primitive(const SparseVector& v) {
  if (v.empty()) return v;
  mpz_class lcm_den = 1;
  for (const auto& [col, x] : v) lcm_den = lcm(lcm_den, x.get_den());
  mpz_class gcd_num = 0;
  for (const auto& [col, x] : v) gcd_num = gcd(gcd_num, mpz_class(x.get_num() * (lcm_den / x.get_den())));
  Rational scale(lcm_den, gcd_num);
  scale.canonicalize();
  if (sgn(v.begin()->second) < 0) scale = -scale;
  SparseVector out;
  for (const auto& [col, x] : v) out[col] = x * scale;
  return out;
}

}  // namespace taut

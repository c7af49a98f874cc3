#pragma once

#include <map>
#include <vector>

#include "taut/rational.hpp"

namespace taut {

/// Column index -> nonzero entry.
using SparseVector = std::map<int, Rational>;

enum class PivotOrder { Leftmost, Rightmost };

/// Incremental exact row echelon form. Each stored row has pivot entry 1 at
/// its leftmost (or rightmost) nonzero column, and no two rows share a pivot.
class RowReducer {
 public:
  explicit RowReducer(PivotOrder order = PivotOrder::Leftmost) : order_(order) {}

  /// Returns true if the row was independent of the rows inserted so far.
  bool insert(SparseVector row);

  /// Remainder of v modulo the row span; zero on every pivot column. Equal
  /// vectors modulo the span give equal remainders.
  SparseVector reduce(SparseVector v) const;

  bool in_span(const SparseVector& v) const { return reduce(v).empty(); }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool is_pivot(int column) const { return rows_.count(column) > 0; }
  /// Pivot columns in increasing order.
  std::vector<int> pivots() const;
  /// Reduced row echelon form: rows keyed by pivot, each pivot column zero in
  /// every other row.
  std::map<int, SparseVector> reduced_rows() const;

 private:
  int pivot_of(const SparseVector& v) const;

  PivotOrder order_;
  std::map<int, SparseVector> rows_;
};

/// a += c * b.
void axpy(SparseVector& a, const Rational& c, const SparseVector& b);

int rank(const std::vector<SparseVector>& rows);

/// Basis of {x in Q^columns : row . x = 0 for every row}, one vector per free
/// column (leftmost pivots, so the highest-index unknowns are free), each with
/// entry 1 at its free column. Ordered by free column.
std::vector<SparseVector> nullspace(const std::vector<SparseVector>& rows, int columns);

Rational dot(const SparseVector& a, const SparseVector& b);

/// Scales to a primitive integer vector whose first nonzero entry is positive.
SparseVector primitive(const SparseVector& v);

}  // namespace taut

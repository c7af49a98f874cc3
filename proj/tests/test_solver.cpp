#include <gtest/gtest.h>

#include <random>

#include "taut/enumerate.hpp"
#include "taut/errors.hpp"
#include "taut/gwi.hpp"
#include "taut/linalg.hpp"
#include "taut/solver.hpp"

using namespace taut;

namespace {

const std::filesystem::path kData = TAUT_DATA_DIR;

// Rank by dense Gaussian elimination, written independently of RowReducer.
int dense_rank(std::vector<std::vector<Rational>> m) {
  int r = 0;
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    int p = r;
    while (p < static_cast<int>(m.size()) && m[p][c] == 0) ++p;
    if (p == static_cast<int>(m.size())) continue;
    std::swap(m[p], m[r]);
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (int k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

std::vector<FormalSum> getzler_classes() {
  std::vector<FormalSum> out;
  for (const auto& line : read_gwi_file(kData / "getzler_strata.gwi").lines)
    out.push_back(symmetrize(parse_graph(line.substr(line.find(':') + 1)), {1, 2, 3, 4}));
  return out;
}

SparseVector vec(std::initializer_list<std::pair<int, Rational>> entries) {
  SparseVector v;
  for (const auto& [i, q] : entries)
    if (q != 0) v[i] = q;
  return v;
}

// Getzler's coefficients and the WDVV combination T, in the c1..c9 order.
const SparseVector kGetzler = vec({{1, -3}, {2, 4}, {3, 1}, {4, -2}, {5, Rational(-1, 6)}, {6, Rational(-1, 24)}, {7, Rational(1, 4)}});
const SparseVector kT = vec({{5, -1}, {6, Rational(-1, 2)}, {7, 1}, {8, Rational(-1, 2)}, {9, 1}});

}  // namespace

TEST(Linalg, NullspaceRandomSystems) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> entry(-3, 3), size(1, 7);
  for (int t = 0; t < 300; ++t) {
    const int rows = size(rng), cols = size(rng);
    std::vector<SparseVector> sparse;
    std::vector<std::vector<Rational>> dense;
    for (int r = 0; r < rows; ++r) {
      SparseVector row;
      std::vector<Rational> d(cols);
      for (int c = 0; c < cols; ++c) {
        const int x = entry(rng) * (entry(rng) > 0 ? 1 : 0);
        d[c] = x;
        if (x) row[c] = x;
      }
      sparse.push_back(row);
      dense.push_back(d);
    }
    const auto kernel = nullspace(sparse, cols);
    EXPECT_EQ(static_cast<int>(kernel.size()), cols - dense_rank(dense));
    EXPECT_EQ(rank(sparse), dense_rank(dense));
    for (const auto& v : kernel)
      for (const auto& row : sparse) EXPECT_EQ(dot(row, v), 0);
    std::vector<std::vector<Rational>> kd;
    for (const auto& v : kernel) {
      std::vector<Rational> d(cols);
      for (const auto& [c, q] : v) d[c] = q;
      kd.push_back(d);
    }
    EXPECT_EQ(dense_rank(kd), static_cast<int>(kernel.size()));
  }
}

TEST(Linalg, SmallSystems) {
  LinearSystem s;
  s.unknowns = 2;
  s.rows = {vec({{1, 1}, {2, -1}})};
  const auto sol = solve_nullspace(s);
  ASSERT_EQ(sol.size(), 1u);
  EXPECT_EQ(sol[0], vec({{1, 1}, {2, 1}}));
  s.rows.push_back(vec({{2, 1}}));
  EXPECT_TRUE(solve_nullspace(s).empty());
  EXPECT_EQ(primitive(vec({{0, Rational(-1, 6)}, {3, Rational(1, 4)}})), vec({{0, 2}, {3, -3}}));
}

TEST(Solver, GeneralElement) {
  const auto a = parse_sum("<1 2 e0>_0 <3 4 e0>_0");
  const auto b = parse_sum("<1 3 e0>_0 <2 4 e0>_0");
  const auto e = general_element({a, b, a});
  EXPECT_EQ(e, parse_symbolic_sum("c1*<1 2 e0>_0 <3 4 e0>_0 + c2*<1 3 e0>_0 <2 4 e0>_0"));
  EXPECT_TRUE(general_element({}).is_zero());
}

TEST(Solver, IndependentClassesDropDependentOnes) {
  RelationRegistry reg;
  std::vector<FormalSum> classes;
  for (const auto& k : enumerate(0, 4, 1, {Decorations::Psi, {}})) classes.push_back(FormalSum::of(to_graph(k), Rational(1)));
  EXPECT_EQ(classes.size(), 7u);
  EXPECT_EQ(independent_classes(classes, reg).size(), 1u);
}

TEST(Solver, GetzlerSystem) {
  RelationRegistry reg;
  const auto classes = getzler_classes();
  ASSERT_EQ(classes.size(), 9u);
  const auto e = general_element(classes);
  const auto sys = invariance_system(e, 1, lemma1_bound(1, 4, 2), reg);
  EXPECT_EQ(sys.unknowns, 9);
  EXPECT_GT(sys.rows.size(), 7u);
  EXPECT_EQ(rank(sys.rows), 7);
  for (const auto& row : sys.rows) {
    EXPECT_EQ(dot(row, kGetzler), 0);
    EXPECT_EQ(dot(row, kT), 0);
  }
  for (const auto& p : sys.provenance) EXPECT_TRUE(p.l == 1 || p.l == 2);

  const auto solutions = solve_nullspace(sys);
  ASSERT_EQ(solutions.size(), 2u);
  const auto candidates = filter_trivial(solutions, classes, reg);
  ASSERT_EQ(candidates.size(), 2u);
  EXPECT_FALSE(candidates[0].trivial);
  EXPECT_TRUE(candidates[1].trivial);
  EXPECT_EQ(candidates[0].coefficients, primitive(kGetzler));
  EXPECT_EQ(candidates[1].coefficients, primitive(kT));
  EXPECT_TRUE(reg.is_zero_modulo(candidates[1].equation, false));
  EXPECT_FALSE(reg.is_zero_modulo(candidates[0].equation, false));
}

TEST(Solver, FilterRejectsZeroVector) {
  RelationRegistry reg;
  EXPECT_THROW(filter_trivial({SparseVector{}}, getzler_classes(), reg), InputError);
}

TEST(Solver, CheckInvariance) {
  RelationRegistry reg;
  const auto getzler = read_sum_file(kData / "getzler.gwi");
  EXPECT_EQ(codimension_of(getzler), 2);
  for (const auto& r : check_invariance(getzler, 1, 2, reg)) {
    EXPECT_TRUE(r.zero) << "l=" << r.l;
    EXPECT_FALSE(r.vacuous);
  }
  const auto perturbed = check_invariance(read_sum_file(kData / "perturbed.gwi"), 1, 1, reg);
  EXPECT_FALSE(perturbed[0].zero);
  EXPECT_FALSE(perturbed[0].residual.empty());
  const auto trr = check_invariance(read_sum_file(kData / "g1trr.gwi"), 1, 3, reg);
  for (const auto& r : trr) EXPECT_TRUE(r.zero && r.vacuous);
}

TEST(Solver, PerturbationViolatesARow) {
  // Changing c1 alone breaks every row with a c1 entry; one of them is
  // -c1 - c2 + c3.
  RelationRegistry reg;
  const auto sys = invariance_system(general_element(getzler_classes()), 1, 1, reg);
  SparseVector perturbed = kGetzler;
  perturbed[1] = -2;
  bool violated = false;
  for (const auto& row : sys.rows) violated = violated || dot(row, perturbed) != 0;
  EXPECT_TRUE(violated);
}

TEST(Solver, CandidatesPassEveryL) {
  RelationRegistry reg;
  for (auto [g, n, k] : {std::tuple{0, 5, 1}, std::tuple{0, 6, 1}, std::tuple{1, 3, 1}, std::tuple{1, 4, 2}}) {
    std::vector<FormalSum> classes;
    std::vector<int> points;
    for (int i = 1; i <= n; ++i) points.push_back(i);
    for (const auto& c : enumerate(g, n, k, {Decorations::Psi, points})) classes.push_back(symmetrize(to_graph(c), points));
    const int bound = lemma1_bound(g, n, k);
    const auto sys = invariance_system(general_element(classes), 1, bound, reg);
    int nontrivial = 0;
    for (const auto& c : filter_trivial(solve_nullspace(sys), classes, reg)) {
      for (const auto& r : check_invariance(c.equation, 1, bound, reg)) EXPECT_TRUE(r.zero);
      nontrivial += !c.trivial;
    }
    EXPECT_EQ(nontrivial, g == 1 && n == 4 ? 1 : 0) << g << " " << n << " " << k;
  }
}

TEST(Solver, Idempotent) {
  RelationRegistry a, b;
  const auto classes = getzler_classes();
  const auto s1 = invariance_system(general_element(classes), 1, 2, a);
  const auto s2 = invariance_system(general_element(classes), 1, 2, b);
  EXPECT_EQ(s1.rows, s2.rows);
  EXPECT_EQ(filter_trivial(solve_nullspace(s1), classes, a)[0].equation,
            filter_trivial(solve_nullspace(s2), classes, b)[0].equation);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qalat/dinv.hpp"
#include "qalat/graph.hpp"
#include "qalat/linalg.hpp"
#include "qalat/plumbing.hpp"

using namespace qalat;

namespace {

IntMat from_rows(const std::vector<std::vector<long>>& rows) {
  IntMat m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; i++)
    for (int j = 0; j < m.cols; j++) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return m;
}

std::string residue_key(const std::vector<Int>& r) {
  std::string s;
  for (const Int& x : r) s += x.get_str() + ",";
  return s;
}

// Independent oracle: enumerate every characteristic vector in a box that
// safely contains all class maxima (any maximizer fits in |xi_i| <= |Q_ii|),
// group by class residue, and take the largest square in each group.
std::map<std::string, Rat> brute_force_class_maxima(const IntMat& q) {
  int k = q.rows;
  long half = 0;
  for (int i = 0; i < k; i++) half = std::max(half, 3 * std::abs(q(i, i).get_si()));
  std::map<std::string, Rat> best;
  std::vector<Int> xi(static_cast<size_t>(k));
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      Rat val = rational_quadratic_eval(q, xi);
      std::string key = residue_key(char_class_residue(q, xi));
      auto it = best.find(key);
      if (it == best.end() || val > it->second) best[key] = val;
      return;
    }
    long start = -half + ((q(i, i).get_si() - (-half)) % 2 + 2) % 2;
    for (long v = start; v <= half; v += 2) {
      xi[static_cast<size_t>(i)] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return best;
}

void check_table_against_brute_force(const WeightedGraph& g) {
  IntMat q = gram_matrix(g);
  CorrectionTable table = correction_terms(g, false);
  std::map<std::string, Rat> oracle = brute_force_class_maxima(q);
  REQUIRE(table.entries.size() == oracle.size());
  for (const CorrectionEntry& e : table.entries) {
    auto it = oracle.find(residue_key(e.residue));
    REQUIRE(it != oracle.end());
    CHECK(e.max_sq == it->second);
    CHECK(e.d == (e.max_sq + table.rank) / 4);
  }
}

std::vector<Rat> sorted_d_values(const CorrectionTable& t) {
  std::vector<Rat> d;
  for (const CorrectionEntry& e : t.entries) d.push_back(e.d);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("characteristic vector predicate") {
  IntMat q = from_rows({{-2, 1}, {1, -2}});
  CHECK(is_characteristic(q, {Int(0), Int(0)}));
  CHECK(is_characteristic(q, {Int(2), Int(-4)}));
  CHECK_FALSE(is_characteristic(q, {Int(1), Int(0)}));
  CHECK_THROWS_WITH_AS(char_class_residue(q, {Int(1), Int(0)}),
                       "vector is not characteristic for the form", std::invalid_argument);
}

TEST_CASE("class representatives cover the discriminant exactly once") {
  for (const IntMat& q : {from_rows({{-1}}), from_rows({{-2}}), from_rows({{-3}}),
                          from_rows({{-2, 1}, {1, -2}}), from_rows({{-1, 0}, {0, -3}})}) {
    std::vector<CharVector> reps = char_representatives(q);
    CHECK(Int(static_cast<long>(reps.size())) == abs(det(q)));
    std::vector<std::string> residues;
    for (const CharVector& xi : reps) {
      CHECK(is_characteristic(q, xi));
      residues.push_back(residue_key(char_class_residue(q, xi)));
    }
    std::vector<std::string> sorted = residues;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    CHECK(sorted.size() == residues.size());  // distinct classes
  }
}

TEST_CASE("class maxima of rank-one forms") {
  IntMat m2 = from_rows({{-2}});
  CHECK(max_square(m2, {Int(0)}) == 0);
  CHECK(max_square(m2, {Int(2)}) == -2);
  CHECK(max_square(m2, {Int(6)}) == -2);  // same class as 2
  IntMat m1 = from_rows({{-1}});
  CHECK(max_square(m1, {Int(1)}) == -1);
  CHECK_THROWS_WITH_AS(max_square(from_rows({{2}}), {Int(0)}),
                       "max_square requires a negative definite form", std::runtime_error);
}

TEST_CASE("correction tables match the brute-force box oracle") {
  check_table_against_brute_force(make_graph({Int(-1)}, {}));
  check_table_against_brute_force(make_graph({Int(-2)}, {}));
  check_table_against_brute_force(make_graph({Int(-3)}, {}));
  check_table_against_brute_force(make_graph({Int(-2), Int(-2)}, {{0, 1}}));
  check_table_against_brute_force(make_graph({Int(-1), Int(-3)}, {}));
  check_table_against_brute_force(make_graph({Int(-2), Int(-3)}, {{0, 1}}));
}

TEST_CASE("pinned correction values for small plumbings") {
  SUBCASE("unimodular boundaries have a single d = 0") {
    for (int k = 1; k <= 3; k++) {
      CorrectionTable t = correction_terms(make_graph(std::vector<Int>(k, Int(-1)), {}), false);
      REQUIRE(t.entries.size() == 1);
      CHECK(t.entries[0].d == 0);
    }
  }
  SUBCASE("the -2 vertex") {
    CorrectionTable t = correction_terms(make_graph({Int(-2)}, {}), false);
    REQUIRE(t.entries.size() == 2);
    CHECK(sorted_d_values(t) == std::vector<Rat>{Rat(-1, 4), Rat(1, 4)});
  }
  SUBCASE("the -3 vertex") {
    CorrectionTable t = correction_terms(make_graph({Int(-3)}, {}), false);
    REQUIRE(t.entries.size() == 3);
    CHECK(sorted_d_values(t) == std::vector<Rat>{Rat(-1, 2), Rat(1, 6), Rat(1, 6)});
  }
  SUBCASE("the hexagonal form") {
    CorrectionTable t = correction_terms(make_graph({Int(-2), Int(-2)}, {{0, 1}}), false);
    REQUIRE(t.entries.size() == 3);
    CHECK(sorted_d_values(t) == std::vector<Rat>{Rat(-1, 6), Rat(-1, 6), Rat(1, 2)});
  }
}

TEST_CASE("table metadata and mirroring") {
  WeightedGraph g = make_graph({Int(-2), Int(-2)}, {{0, 1}});
  CorrectionTable plain = correction_terms(g, false);
  CorrectionTable mirrored = correction_terms(g, true);
  CHECK_FALSE(plain.mirror);
  CHECK(mirrored.mirror);
  CHECK(plain.rank == 2);
  CHECK(plain.discriminant == 3);
  CHECK_FALSE(plain.caveat.empty());
  REQUIRE(plain.entries.size() == mirrored.entries.size());
  for (size_t i = 0; i < plain.entries.size(); i++) {
    CHECK(plain.entries[i].residue == mirrored.entries[i].residue);
    CHECK(plain.entries[i].max_sq == mirrored.entries[i].max_sq);
    CHECK(plain.entries[i].d == -mirrored.entries[i].d);
  }
  // entries are sorted by residue label
  for (size_t i = 0; i + 1 < plain.entries.size(); i++)
    CHECK(plain.entries[i].residue < plain.entries[i + 1].residue);
  // every entry is internally consistent
  IntMat q = gram_matrix(g);
  for (const CorrectionEntry& e : plain.entries) {
    CHECK(is_characteristic(q, e.rep));
    CHECK(char_class_residue(q, e.rep) == e.residue);
    CHECK(char_class_residue(q, e.argmax) == e.residue);
    CHECK(rational_quadratic_eval(q, e.argmax) == e.max_sq);
  }
}

TEST_CASE("the 11n50 correction table") {
  WeightedGraph g = graph_11n50();
  CorrectionTable t = correction_terms(g, true);
  REQUIRE(t.entries.size() == 25);
  CHECK(t.rank == 7);
  CHECK(t.discriminant == 25);
  // the first six invariant factors are 1, so residues are (0,...,0,t)
  for (int tt = 0; tt < 25; tt++) {
    REQUIRE(t.entries[static_cast<size_t>(tt)].residue.size() == 7);
    for (int i = 0; i < 6; i++) CHECK(t.entries[static_cast<size_t>(tt)].residue[static_cast<size_t>(i)] == 0);
    CHECK(t.entries[static_cast<size_t>(tt)].residue[6] == tt);
  }
  auto d_at = [&](int tt) { return t.entries[static_cast<size_t>(tt)].d; };
  CHECK(max_correction_term(t) == Rat(8, 25));
  CHECK(d_at(9) == Rat(8, 25));
  CHECK(d_at(10) == Rat(8, 25));
  CHECK(d_at(0) == Rat(-12, 25));
  CHECK(d_at(1) == Rat(-38, 25));
  for (int tt : {2, 7, 12, 17, 22}) CHECK(d_at(tt) == 0);
  // conjugation symmetry: negating a representative lands in a class with the
  // same correction term (the label map is affine, not t -> -t)
  IntMat q = gram_matrix(g);
  std::map<std::vector<Int>, Rat> by_residue;
  for (const CorrectionEntry& e : t.entries) by_residue[e.residue] = e.d;
  for (const CorrectionEntry& e : t.entries) {
    CharVector negated = e.rep;
    for (Int& x : negated) x = -x;
    CHECK(by_residue.at(char_class_residue(q, negated)) == e.d);
  }
  // the maximizing class achieves square -207/25
  CHECK(t.entries[9].max_sq == Rat(-207, 25));
  // denominators divide 4 * discriminant
  for (const CorrectionEntry& e : t.entries)
    CHECK(Int(4) * t.discriminant % e.d.get_den() == 0);
  CHECK(owens_strle_quarter_test(t));
}

TEST_CASE("quarter test preconditions and strictness") {
  WeightedGraph m2 = make_graph({Int(-2)}, {});
  CorrectionTable plain = correction_terms(m2, false);
  CHECK_THROWS_WITH_AS(owens_strle_quarter_test(plain),
                       "quarter test expects a mirrored correction table", std::invalid_argument);
  CorrectionTable mirrored = correction_terms(m2, true);
  CHECK(max_correction_term(mirrored) == Rat(1, 4));
  CHECK_FALSE(owens_strle_quarter_test(mirrored));  // 1/4 is not > 1/4
  CHECK_THROWS_WITH_AS(max_correction_term(CorrectionTable{}), "empty correction table",
                       std::invalid_argument);
}

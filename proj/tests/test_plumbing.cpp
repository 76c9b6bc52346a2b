#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "qalat/graph.hpp"
#include "qalat/linalg.hpp"
#include "qalat/plumbing.hpp"

using namespace qalat;

namespace {

WeightedGraph minus_two_chain(int length) {
  std::vector<Int> w(length, Int(-2));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < length; i++) edges.push_back({i, i + 1});
  return make_graph(w, edges);
}

// determinant formula value p1...pn * q1...qm * (e + sum 1/p - sum 1/q),
// evaluated directly so boundary parameters (q < 3) can be cross-checked too
Rat raw_pretzel_det(int e, const std::vector<int>& p, const std::vector<int>& q) {
  Rat sum(e);
  Rat prod(1);
  for (int v : p) {
    sum += Rat(1, v);
    prod *= v;
  }
  for (int v : q) {
    sum -= Rat(1, v);
    prod *= v;
  }
  return prod * sum;
}

}  // namespace

TEST_CASE("the 11n50 plumbing tree") {
  WeightedGraph g = graph_11n50();
  CHECK(g.size() == 7);
  CHECK(g.edges.size() == 6);
  CHECK(is_connected(g));  // 7 vertices, 6 edges, connected => tree
  std::vector<Int> expected{Int(-2), Int(-3), Int(-2), Int(-2), Int(-3), Int(-2), Int(-2)};
  CHECK(g.weights == expected);
  IntMat q = gram_matrix(g);
  CHECK(abs(det(q)) == 25);
  CHECK(is_negative_definite(q));
}

TEST_CASE("pretzel plumbing construction") {
  SUBCASE("p = (2,2), q = 3") {
    WeightedGraph g = pretzel_plumbing({2, 2}, 3);
    // 2 + sum(p_i - 1) vertices: center, one -2 per ray, the -q leaf
    CHECK(g.size() == 4);
    CHECK(g.weights[0] == -2);  // center weight -n with n = 2
    CHECK(g.weights[1] == -2);
    CHECK(g.weights[2] == -2);
    CHECK(g.weights[3] == -3);  // the -q leaf comes last
    for (int v = 1; v < 4; v++) CHECK(degree(g, v) == 1);
    CHECK(degree(g, 0) == 3);
    CHECK(abs(det(gram_matrix(g))) == 8);  // = det P(2,2,-3)
  }
  SUBCASE("p = (3,3), q = 1") {
    WeightedGraph g = pretzel_plumbing({3, 3}, 1);
    CHECK(g.size() == 6);
    CHECK(g.weights[0] == -2);
    CHECK(g.weights[5] == -1);  // the -q leaf
    for (int v = 1; v < 5; v++) CHECK(g.weights[v] == -2);
    CHECK(is_connected(g));
  }
  SUBCASE("p = (2,2), q = 1 boundary case agrees with the determinant formula") {
    WeightedGraph g = pretzel_plumbing({2, 2}, 1);
    CHECK(g.size() == 4);
    CHECK(Rat(det(gram_matrix(g))) == raw_pretzel_det(0, {2, 2}, {1}));  // both are 0
  }
  SUBCASE("rays are paths (p_i > 2 gives interior vertices)") {
    WeightedGraph g = pretzel_plumbing({3, 2}, 5);
    // center, 2-vertex ray, 1-vertex ray, -5 leaf
    CHECK(g.size() == 5);
    CHECK(g.weights[0] == -2);
    CHECK(degree(g, 0) == 3);
    CHECK(degree(g, 1) == 2);  // ray vertex adjacent to the center on the long ray
    CHECK(g.weights[4] == -5);
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS(pretzel_plumbing({2}, 3));
    CHECK_THROWS(pretzel_plumbing({1, 2}, 3));
    CHECK_THROWS(pretzel_plumbing({2, 2}, 0));
  }
}

TEST_CASE("mirror pretzel plumbing construction") {
  SUBCASE("p = (2,3), q = 2") {
    WeightedGraph g = mirror_pretzel_plumbing({2, 3}, 2);
    CHECK(g.size() == 4);  // center + 2 leaves + (q-1) chain vertices
    CHECK(g.weights[0] == -1);
    CHECK(g.weights[1] == -2);
    CHECK(g.weights[2] == -3);
    CHECK(g.weights[3] == -2);
    CHECK(degree(g, 0) == 3);
  }
  SUBCASE("p = (3,3,3), q = 2 has center degree 4") {
    WeightedGraph g = mirror_pretzel_plumbing({3, 3, 3}, 2);
    CHECK(g.weights[0] == -1);
    CHECK(degree(g, 0) == 4);
  }
  SUBCASE("gram determinant matches +-det P(2,2,-3)") {
    WeightedGraph g = mirror_pretzel_plumbing({2, 2}, 3);
    CHECK(abs(det(gram_matrix(g))) == 8);
  }
  SUBCASE("parameter validation") { CHECK_THROWS(mirror_pretzel_plumbing({2, 2}, 1)); }
}

TEST_CASE("negative definiteness criterion for the pretzel star") {
  CHECK(seifert_negdef_criterion({2, 2}, 3));
  CHECK(seifert_negdef_criterion({3, 3}, 2));
  CHECK_FALSE(seifert_negdef_criterion({2, 2}, 1));  // 1/2+1/2-1 = 0, not > 0

  // exhaustive agreement with the Sylvester test on the plumbing gram matrix
  std::vector<std::vector<int>> plists;
  for (int a = 2; a <= 5; a++)
    for (int b = 2; b <= 5; b++) {
      plists.push_back({a, b});
      for (int c = 2; c <= 5; c++) plists.push_back({a, b, c});
    }
  for (const auto& p : plists)
    for (int q = 1; q <= 7; q++)
      CHECK(seifert_negdef_criterion(p, q) ==
            is_negative_definite(gram_matrix(pretzel_plumbing(p, q))));
}

TEST_CASE("fundamental cycle by Laufer iteration") {
  SUBCASE("single -2 vertex") {
    Cycle z = fundamental_cycle(make_graph({Int(-2)}, {}));
    REQUIRE(z.size() == 1);
    CHECK(z[0] == 1);
  }
  SUBCASE("chain of two -2 vertices") {
    Cycle z = fundamental_cycle(minus_two_chain(2));
    CHECK(z == Cycle{Int(1), Int(1)});
  }
  SUBCASE("star of -2 vertices (center plus three rays)") {
    WeightedGraph g = make_graph({Int(-2), Int(-2), Int(-2), Int(-2)},
                                 {{0, 1}, {0, 2}, {0, 3}});
    Cycle z = fundamental_cycle(g);
    CHECK(z == Cycle{Int(2), Int(1), Int(1), Int(1)});
  }
  SUBCASE("rejects the indefinite mirror star instead of iterating") {
    WeightedGraph g = mirror_pretzel_plumbing({2, 2, 2}, 2);
    CHECK_FALSE(is_negative_definite(gram_matrix(g)));
    CHECK_THROWS_WITH(fundamental_cycle(g), "Laufer requires negative definite");
  }
  SUBCASE("rejects disconnected graphs") {
    WeightedGraph g = make_graph({Int(-2), Int(-2)}, {});
    CHECK_THROWS_WITH(fundamental_cycle(g), "Laufer requires a connected graph");
  }
}

TEST_CASE("cycle euler characteristic") {
  // single -2 vertex: K.v = 0, Z = (1), chi = -((-2) + 0)/2 = 1
  WeightedGraph a1 = make_graph({Int(-2)}, {});
  CHECK(cycle_chi(a1, {Int(1)}) == 1);
  // single -3 vertex: K.v = 1, Z = (1), chi = -((-3) + 1)/2 = 1
  WeightedGraph a_cusp = make_graph({Int(-3)}, {});
  CHECK(cycle_chi(a_cusp, {Int(1)}) == 1);
  // doubled cycle on the -2 vertex: Z.Z = -8, Z.K = 0, chi = 4
  CHECK(cycle_chi(a1, {Int(2)}) == Rat(4));
}

TEST_CASE("rationality via the Artin criterion") {
  SUBCASE("-2 chains of length up to 5 are rational") {
    for (int len = 1; len <= 5; len++) {
      WeightedGraph g = minus_two_chain(len);
      CHECK(is_rational(g));
      Cycle z = fundamental_cycle(g);
      CHECK(z == Cycle(len, Int(1)));
      CHECK(cycle_chi(g, z) == 1);
    }
  }
  SUBCASE("mirror stars with -1 center of degree >= 3 are never rational") {
    for (int a = 2; a <= 3; a++)
      for (int b = 2; b <= 3; b++)
        for (int c = 2; c <= 3; c++) {
          WeightedGraph g = mirror_pretzel_plumbing({a, b, c}, 2);
          CHECK(g.weights[0] == -1);
          CHECK(degree(g, 0) == 4);
          CHECK_FALSE(is_rational(g));
        }
    // the degree test fires before any definiteness check, so even the
    // indefinite stars answer false instead of throwing
    CHECK_FALSE(is_rational(mirror_pretzel_plumbing({2, 2, 2}, 2)));
  }
  SUBCASE("negative definite plumbings without the -1 shortcut use chi(Z_min)") {
    CHECK(is_rational(pretzel_plumbing({2, 2}, 3)));
    CHECK(is_rational(graph_11n50()));
  }
}

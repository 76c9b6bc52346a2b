#include "qalat/plumbing.hpp"

#include <numeric>
#include <stdexcept>

#include "qalat/check.hpp"
#include "qalat/linalg.hpp"

namespace qalat {

WeightedGraph graph_11n50() {
  return make_graph({-2, -3, -2, -2, -3, -2, -2},
                    {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}});
}

static void check_pretzel_params(const std::vector<int>& p, int q_single, int q_min) {
  if (p.size() < 2) throw std::runtime_error("need at least two p parameters");
  for (int pi : p)
    if (pi < 2) throw std::runtime_error("every p parameter must be at least 2");
  if (q_single < q_min)
    throw std::runtime_error("q must be at least " + std::to_string(q_min));
}

WeightedGraph pretzel_plumbing(const std::vector<int>& p, int q_single) {
  check_pretzel_params(p, q_single, 1);
  int n = static_cast<int>(p.size());
  std::vector<Int> weights{Int(-n)};
  std::vector<std::pair<int, int>> edges;
  for (int pi : p) {
    int prev = 0;
    for (int j = 0; j < pi - 1; j++) {
      weights.push_back(-2);
      edges.emplace_back(prev, static_cast<int>(weights.size()) - 1);
      prev = static_cast<int>(weights.size()) - 1;
    }
  }
  weights.push_back(Int(-q_single));
  edges.emplace_back(0, static_cast<int>(weights.size()) - 1);
  return make_graph(std::move(weights), std::move(edges));
}

WeightedGraph mirror_pretzel_plumbing(const std::vector<int>& p, int q_single) {
  check_pretzel_params(p, q_single, 2);
  std::vector<Int> weights{Int(-1)};
  std::vector<std::pair<int, int>> edges;
  for (int pi : p) {
    weights.push_back(Int(-pi));
    edges.emplace_back(0, static_cast<int>(weights.size()) - 1);
  }
  int prev = 0;
  for (int j = 0; j < q_single - 1; j++) {
    weights.push_back(-2);
    edges.emplace_back(prev, static_cast<int>(weights.size()) - 1);
    prev = static_cast<int>(weights.size()) - 1;
  }
  return make_graph(std::move(weights), std::move(edges));
}

bool seifert_negdef_criterion(const std::vector<int>& p, int q_single) {
  if (q_single < 1) throw std::runtime_error("q must be at least 1");
  for (int pi : p)
    if (pi < 2) throw std::runtime_error("every p parameter must be at least 2");
  Rat s(0);
  for (int pi : p) s += Rat(1, pi);
  s -= Rat(1, q_single);
  return s > 0;
}

static Cycle laufer_from(const IntMat& q, int start) {
  int k = q.rows;
  Cycle z(k, Int(0));
  z[start] = 1;
  std::vector<Int> qz(k);  // running value of Q*z
  for (int i = 0; i < k; i++) qz[i] = q(i, start);
  while (true) {
    int u = -1;
    for (int i = 0; i < k; i++)
      if (qz[i] > 0) {
        u = i;
        break;
      }
    if (u < 0) return z;
    z[u] += 1;
    for (int i = 0; i < k; i++) qz[i] += q(i, u);
  }
}

Cycle fundamental_cycle(const WeightedGraph& g) {
  if (g.size() == 0 || !is_connected(g))
    throw std::runtime_error("Laufer requires a connected graph");
  IntMat q = gram_matrix(g);
  if (!is_negative_definite(q)) throw std::runtime_error("Laufer requires negative definite");
  Cycle z = laufer_from(q, 0);
  for (int start = 1; start < g.size(); start++)
    internal_check(laufer_from(q, start) == z, "fundamental cycle depends on the start vertex");
  return z;
}

Rat cycle_chi(const WeightedGraph& g, const Cycle& z) {
  IntMat q = gram_matrix(g);
  int k = q.rows;
  if (static_cast<int>(z.size()) != k) throw std::runtime_error("cycle/graph size mismatch");
  // Z.K = Z^T Q K with (QK)_v = -Q[v][v] - 2, so Z.K = sum_v z_v (-Q[v][v] - 2);
  // the rational solve for K itself cancels out.
  Int zqz(0), zk(0);
  for (int i = 0; i < k; i++) {
    for (int j = 0; j < k; j++) zqz += z[i] * q(i, j) * z[j];
    zk += z[i] * (-q(i, i) - 2);
  }
  Rat chi(-(zqz + zk));
  chi /= 2;
  return chi;
}

bool is_rational(const WeightedGraph& g) {
  for (int v = 0; v < g.size(); v++)
    if (g.weights[v] == -1 && degree(g, v) >= 3) return false;
  Cycle z = fundamental_cycle(g);
  return cycle_chi(g, z) == 1;
}

}  // namespace qalat

#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "qalat/linalg.hpp"

namespace qalat {

// Simple weighted graph. Vertex ids are dense 0..k-1 and their order fixes the
// basis order of the Gram matrix, so matrices are reproducible from files.
struct WeightedGraph {
  std::vector<Int> weights;                 // weights[i] = weight of vertex i
  std::vector<std::pair<int, int>> edges;   // normalized a < b, sorted, no duplicates

  int size() const { return static_cast<int>(weights.size()); }
};

// Normalizes edge order and rejects loops, duplicate edges, and out-of-range ids.
WeightedGraph make_graph(std::vector<Int> weights, std::vector<std::pair<int, int>> edges);

// Text format: one `v <id> <weight>` line per vertex, one `e <id> <id>` line per
// edge, `#` starts a comment. Ids must cover 0..k-1 exactly once.
// Parse errors carry 1-based line numbers.
WeightedGraph parse_graph(std::istream& in);
WeightedGraph parse_graph_text(const std::string& text);
std::string graph_to_text(const WeightedGraph& g);

// Q[i][i] = weight(v_i); Q[i][j] = 1 if {v_i, v_j} is an edge, else 0.
IntMat gram_matrix(const WeightedGraph& g);

int degree(const WeightedGraph& g, int v);
bool is_connected(const WeightedGraph& g);

}  // namespace qalat

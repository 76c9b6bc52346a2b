#pragma once

#include <vector>

#include "qalat/graph.hpp"

namespace qalat {

// Coefficient vector of a cycle Z = sum z_v * v, indexed by vertex id.
using Cycle = std::vector<Int>;

// The 7-vertex negative-definite plumbing tree whose boundary is the branched
// double cover of 11n50: weights (-2,-3,-2,-2,-3,-2,-2), a 5-vertex chain with
// a 2-vertex tail hanging off the middle vertex.
WeightedGraph graph_11n50();

// Star-shaped plumbing for the double branched cover of P(p_1,...,p_n, -q):
// center of weight -n, one path of p_i - 1 vertices of weight -2 per p_i, and
// a single extra leaf of weight -q.  Vertex 0 is the center; ray vertices are
// appended path by path (center-adjacent vertex first), the -q leaf last.
// Requires n >= 2, all p_i >= 2, q >= 1.
WeightedGraph pretzel_plumbing(const std::vector<int>& p, int q_single);

// Star-shaped plumbing for the mirror: center of weight -1, one leaf of weight
// -p_i per p_i, and one path of q - 1 vertices of weight -2.  Vertex 0 is the
// center; the -p_i leaves come next, then the -2 path outward from the center.
// Requires n >= 2, all p_i >= 2, q >= 2.
WeightedGraph mirror_pretzel_plumbing(const std::vector<int>& p, int q_single);

// Exact rational test sum(1/p_i) - 1/q > 0, which holds exactly when
// gram_matrix(pretzel_plumbing(p, q)) is negative definite.
bool seifert_negdef_criterion(const std::vector<int>& p, int q_single);

// Laufer iteration: start from Z = e_v, and while some vertex u has
// (QZ)_u > 0, replace Z by Z + e_u.  Returns the fundamental cycle Z_min,
// which is independent of the start vertex (asserted by running every start).
// Requires a connected graph with negative-definite Gram matrix; throws
// "Laufer requires negative definite" otherwise.
Cycle fundamental_cycle(const WeightedGraph& g);

// Euler characteristic chi(Z) = -(Z.Z + Z.K)/2 of a cycle, where K is the
// canonical cycle determined by adjunction K.v = -v.v - 2.  Exact rational.
Rat cycle_chi(const WeightedGraph& g, const Cycle& z);

// Rationality of the surface singularity with resolution graph g.  A vertex of
// weight -1 and degree >= 3 settles the question negatively before any
// definiteness check; otherwise the graph must be connected and negative
// definite, and the answer is Artin's criterion chi(Z_min) = 1.
bool is_rational(const WeightedGraph& g);

}  // namespace qalat

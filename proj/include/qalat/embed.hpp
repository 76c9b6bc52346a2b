#pragma once

#include <functional>
#include <vector>

#include "qalat/linalg.hpp"

namespace qalat {

// An isometric embedding of a negative definite form Q into -Z^n: column j of
// `matrix` holds the coordinates of the image of the j-th basis vector, so
// matrix^T * matrix = -Q under the standard dot product.
struct Embedding {
  int ambient_rank = 0;
  IntMat matrix;  // ambient_rank rows, rank(Q) columns
};

struct SearchBudget {
  int max_ambient_rank = 0;             // 0 = no cap (use the completeness bound)
  long long node_limit = 100000000;     // backtracking nodes before giving up
  long long solution_limit = 1000000;   // raw solutions before giving up
};

// Outcome of an embedding search.  `complete` is false exactly when a budget
// limit fired, in which case `embeddings` may be missing classes.
struct SearchResult {
  bool complete = true;
  long long nodes = 0;
  long long leaves = 0;  // solutions encountered before deduplication
  std::vector<Embedding> embeddings;
};

// All v in Z^n with sum v_i^2 = m, in lexicographic order.  Requires m >= 1.
std::vector<std::vector<int>> vectors_of_norm(long m, int n);

// Sum of |Q[i][i]|.  Any embedded image vector has at most |Q[i][i]| nonzero
// coordinates, so every embedding of Q into some -Z^n fits (up to symmetry of
// the target) inside -Z^bound: searching ambient ranks up to this bound is
// exhaustive over all ambient ranks.
Int completeness_bound(const IntMat& q);

// Exhaustive backtracking search for embeddings of Q into -Z^n.  Columns are
// placed in order of descending |Q[i][i]|, ties broken by descending degree
// (number of off-diagonal nonzeros) then index.  With up_to_symmetry, the
// signed-permutation symmetry of -Z^n is quotiented out: each class is
// returned once, as the lexicographically minimal matrix in its orbit (rows
// sign-normalized and sorted), and the search prunes non-minimal branches by
// requiring fresh coordinates to be allocated in increasing row order with
// positive first occurrence.  Without it, every solution matrix is returned.
// Throws if Q is not negative definite.
SearchResult find_embeddings(const IntMat& q, int n, const SearchBudget& budget,
                             bool up_to_symmetry);

// Streaming variant: invokes `sink` on each symmetry class as it is first
// discovered; a false return aborts the search (result marked incomplete).
SearchResult find_embeddings_streaming(const IntMat& q, int n, const SearchBudget& budget,
                                       const std::function<bool(const Embedding&)>& sink);

// Orbit-minimal representative under signed row permutations: each row is
// replaced by the lexicographically smaller of itself and its negation, then
// rows are sorted; this is the row-major minimum of the whole orbit because
// the group acts on rows independently.
IntMat canonical_embedding_matrix(const IntMat& m);

}  // namespace qalat

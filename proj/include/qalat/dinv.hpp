#pragma once

#include <string>
#include <vector>

#include "qalat/graph.hpp"
#include "qalat/linalg.hpp"

namespace qalat {

// Characteristic vector: xi_i = Q[i][i] (mod 2) for all i.
using CharVector = std::vector<Int>;

bool is_characteristic(const IntMat& q, const CharVector& xi);

// One representative per class of Char(Q) / 2*Q*Z^k; there are |det Q| classes
// (they index the spin-c structures of the boundary).  Classes are labeled by
// the Smith-reduced residue of (xi - diag)/2 in Z^k / Q*Z^k and returned in
// lexicographic residue order; representatives are lattice-reduced to be small.
std::vector<CharVector> char_representatives(const IntMat& q);

// Smith-reduced label of the class of xi (length-k vector, entry i reduced
// modulo the i-th invariant factor of Q).
std::vector<Int> char_class_residue(const IntMat& q, const CharVector& xi);

// max over the class of xi of xi^T Q^{-1} xi (negative rational; the maximum
// exists by negative definiteness).  The sweep starts from the component box
// Q[i][i] <= xi_i <= -Q[i][i] and provably covers the global maximum: any xi
// with xi^T Q^{-1} xi >= t satisfies xi_i^2 <= (-t)*|Q[i][i]| (Cauchy-Schwarz
// in the -Q^{-1} inner product), so the box grows until it contains that
// ellipsoid's bounding box.  Local maximality under all moves xi +- 2*Q*e_i is
// checked on the result.
Rat max_square(const IntMat& q, const CharVector& class_rep);

struct CorrectionEntry {
  std::vector<Int> residue;  // spin-c class label
  CharVector rep;            // a characteristic vector in the class
  CharVector argmax;         // a maximizer of the square within the class
  Rat max_sq;                // max of xi^T Q^{-1} xi over the class
  Rat d;                     // (max_sq + rank)/4, negated when mirrored
};

struct CorrectionTable {
  bool mirror = false;
  int rank = 0;
  Int discriminant;
  std::string caveat;
  std::vector<CorrectionEntry> entries;  // sorted by residue
};

// Correction terms of the boundary of the plumbing on g: one entry per spin-c
// class, d = (max_square + rank)/4; with mirror, every d is negated (the
// boundary with reversed orientation).  The table's caveat records that these
// equal the Heegaard Floer correction terms when the plumbing is sharp.
CorrectionTable correction_terms(const WeightedGraph& g, bool mirror);

Rat max_correction_term(const CorrectionTable& table);

// Strict comparison max d > 1/4 on a mirrored table: "true" means the
// obstruction of Owens-Strle passes (is inconclusive for sliceness-type
// conclusions), exactly the comparison used for the 11n50 boundary.
bool owens_strle_quarter_test(const CorrectionTable& table);

}  // namespace qalat

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qalat/embed.hpp"
#include "qalat/graph.hpp"

namespace qalat {

// A violation of the minor-unimodularity condition: |S| columns whose nonzero
// entries sit in exactly |S| rows, with induced minor determinant != +-1.
struct AdmissibilityWitness {
  std::vector<int> columns;  // column subset S
  std::vector<int> rows;     // union of the columns' row supports
  Int minor_det;
};

struct AdmissibilityReport {
  bool admissible = true;
  std::optional<AdmissibilityWitness> witness;
};

// Minor-unimodularity test on an embedding matrix: every nonempty column
// subset whose combined row support has size exactly equal to the subset must
// induce a square minor of determinant +-1; a definite sublattice of -Z^n that
// is a direct summand over those rows forces this.  For up to 20 columns every
// subset is enumerated, largest first, and the first violation is reported.
// Beyond 20 columns, only connected subsets of the column support-intersection
// graph are enumerated (a minimal violator is connected; see the code).
AdmissibilityReport check_admissible(const Embedding& emb);

// Specialized check for a chain of columns E_{i1}-E_{i2}, ..., E_{i_{p-1}}-E_{i_p}
// plus the closing column E_{i1}+...+E_{i_p}: the induced p x p minor has
// determinant +-p.  Throws "shape mismatch" if the columns are not of this form.
AdmissibilityReport chain_minor_check(const Embedding& emb, const std::vector<int>& chain_columns,
                                      int closing_column);

enum class ObstructionStatus { OBSTRUCTED, NOT_OBSTRUCTED, INCONCLUSIVE };

std::string to_string(ObstructionStatus s);

// Per-ambient-rank summary: how many embedding classes exist into -Z^n and how
// many of them pass the admissibility test.
struct RankEvidence {
  int ambient_rank = 0;
  long long classes = 0;
  long long admissible = 0;
};

// One embedding class found at the top ambient rank searched.  A class whose
// matrix touches r nonzero rows is an embedding class at every ambient rank
// >= r (zero rows are padding), so one search at the completeness bound covers
// all smaller ambient ranks at once.
struct ClassEvidence {
  Embedding emb;
  int nonzero_rows = 0;
  bool admissible = false;
};

struct ObstructionVerdict {
  ObstructionStatus status = ObstructionStatus::INCONCLUSIVE;
  Int discriminant;  // |det| of the Gram form
  int rank = 0;
  Int bound;          // completeness bound on the ambient rank
  std::string reason;  // set for INCONCLUSIVE
  std::vector<RankEvidence> evidence;          // rank..searched ambient rank
  std::vector<ClassEvidence> classes;          // discovery order
  std::optional<Embedding> admissible_embedding;  // present for NOT_OBSTRUCTED
  std::optional<AdmissibilityWitness> witness;    // sample violation
  bool search_complete = false;
  long long nodes = 0;
};

// Donaldson-based quasi-alternating obstruction.  The input is a negative
// definite plumbing X with boundary Y = Sigma(L); OBSTRUCTED means no
// embedding of the Gram lattice into any -Z^n is admissible, so -Y bounds no
// negative definite 4-manifold with torsion-free H1, and the link with
// branched double cover -Y (the mirror of L) is not quasi-alternating.
// NOT_OBSTRUCTED only means this obstruction is silent.  INCONCLUSIVE covers
// indefinite input and exhausted budgets.
ObstructionVerdict qa_obstruction(const WeightedGraph& g, const SearchBudget& budget);

// Drops all-zero trailing rows of a canonical embedding down to ambient rank
// n; throws if rows >= n are not all zero.
Embedding restrict_ambient(const Embedding& emb, int n);

}  // namespace qalat

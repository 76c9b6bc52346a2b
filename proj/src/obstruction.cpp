#include "qalat/obstruction.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "qalat/check.hpp"

namespace qalat {

std::string to_string(ObstructionStatus s) {
  switch (s) {
    case ObstructionStatus::OBSTRUCTED: return "OBSTRUCTED";
    case ObstructionStatus::NOT_OBSTRUCTED: return "NOT_OBSTRUCTED";
    case ObstructionStatus::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

std::vector<std::vector<int>> column_supports(const IntMat& m) {
  std::vector<std::vector<int>> sup(m.cols);
  for (int c = 0; c < m.cols; c++)
    for (int r = 0; r < m.rows; r++)
      if (m(r, c) != 0) sup[c].push_back(r);
  return sup;
}

Int minor_det(const IntMat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  IntMat sub(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); i++)
    for (size_t j = 0; j < cols.size(); j++) sub(static_cast<int>(i), static_cast<int>(j)) = m(rows[i], cols[j]);
  return det(sub);
}

// Tests one column subset; fills the report and returns true on a violation.
bool test_subset(const IntMat& m, const std::vector<std::vector<int>>& sup,
                 const std::vector<int>& subset, AdmissibilityReport& report) {
  std::vector<int> rows;
  for (int c : subset) {
    std::vector<int> merged;
    std::set_union(rows.begin(), rows.end(), sup[c].begin(), sup[c].end(),
                   std::back_inserter(merged));
    rows = std::move(merged);
    if (rows.size() > subset.size()) return false;  // support already too wide
  }
  if (rows.size() != subset.size()) return false;
  Int d = minor_det(m, rows, subset);
  if (d == 1 || d == -1) return false;
  report.admissible = false;
  report.witness = AdmissibilityWitness{subset, rows, d};
  return true;
}

// All subsets, largest first (Gosper's hack walks fixed-popcount masks in
// increasing numeric order).
bool full_enumeration(const IntMat& m, const std::vector<std::vector<int>>& sup,
                      AdmissibilityReport& report) {
  int k = m.cols;
  for (int s = k; s >= 1; s--) {
    uint32_t sub = (s == 32 ? ~0u : (1u << s) - 1);
    const uint32_t limit = 1u << k;
    while (sub < limit) {
      std::vector<int> subset;
      for (int c = 0; c < k; c++)
        if (sub & (1u << c)) subset.push_back(c);
      if (test_subset(m, sup, subset, report)) return true;
      uint32_t c = sub & (~sub + 1), r = sub + c;
      if (r >= limit) break;
      sub = (((r ^ sub) >> 2) / c) | r;
    }
  }
  return false;
}

// Connected-subset enumeration for wide matrices.  Why connectivity suffices:
// the embedding's columns are linearly independent (the form is definite), so
// every column subset T has |row support| >= |T| -- fewer rows than columns
// would force a linear dependence supported on those rows.  If a violating
// subset S (|supp S| = |S|, |minor det| != 1) splits into parts with disjoint
// row supports, the support sizes of the parts must each achieve equality, the
// minor is block diagonal, and det = det_1 * det_2 forces some part to violate
// on its own.  A minimal violator is therefore connected in the graph whose
// vertices are columns and whose edges join columns with intersecting
// supports, and enumerating connected subsets finds a violator iff one exists.
struct ConnectedEnum {
  const IntMat* m = nullptr;
  const std::vector<std::vector<int>>* sup = nullptr;
  std::vector<std::vector<int>> adj;
  AdmissibilityReport* report = nullptr;

  bool intersects(const std::vector<int>& a, const std::vector<int>& b) const {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return true;
      if (a[i] < b[j]) i++; else j++;
    }
    return false;
  }

  bool run(const IntMat& mat, const std::vector<std::vector<int>>& supports,
           AdmissibilityReport& rep) {
    m = &mat;
    sup = &supports;
    report = &rep;
    int k = mat.cols;
    adj.assign(k, {});
    for (int a = 0; a < k; a++)
      for (int b = a + 1; b < k; b++)
        if (intersects(supports[a], supports[b])) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
    for (int root = 0; root < k; root++) {
      std::vector<char> in(k, 0), banned(k, 0);
      for (int b = 0; b < root; b++) banned[b] = 1;  // smaller roots own those subsets
      std::vector<int> subset{root};
      in[root] = 1;
      if (grow(subset, in, banned)) return true;
    }
    return false;
  }

  bool grow(std::vector<int>& subset, std::vector<char>& in, std::vector<char>& banned) {
    {
      std::vector<int> sorted = subset;
      std::sort(sorted.begin(), sorted.end());
      if (test_subset(*m, *sup, sorted, *report)) return true;
    }
    std::vector<int> ext;
    for (int c : subset)
      for (int nb : adj[c])
        if (!in[nb] && !banned[nb]) ext.push_back(nb);
    std::sort(ext.begin(), ext.end());
    ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
    // each branch takes one extension; subsequent branches at this level ban
    // it, so every connected superset is generated exactly once
    bool hit = false;
    size_t banned_here = 0;
    for (int nb : ext) {
      subset.push_back(nb);
      in[nb] = 1;
      hit = grow(subset, in, banned);
      in[nb] = 0;
      subset.pop_back();
      if (hit) break;
      banned[nb] = 1;
      banned_here++;
    }
    for (size_t i = 0; i < banned_here; i++) banned[ext[i]] = 0;
    return hit;
  }
};

}  // namespace

AdmissibilityReport check_admissible(const Embedding& emb) {
  AdmissibilityReport report;
  const IntMat& m = emb.matrix;
  auto sup = column_supports(m);
  if (m.cols <= 20) {
    full_enumeration(m, sup, report);
  } else {
    ConnectedEnum ce;
    ce.run(m, sup, report);
  }
  return report;
}

AdmissibilityReport chain_minor_check(const Embedding& emb, const std::vector<int>& chain_columns,
                                      int closing_column) {
  const IntMat& m = emb.matrix;
  auto bad = [] { throw std::runtime_error("shape mismatch"); };
  auto in_range = [&](int c) { return c >= 0 && c < m.cols; };
  if (!in_range(closing_column)) bad();
  for (int c : chain_columns)
    if (!in_range(c) || c == closing_column) bad();
  // closing column: all entries 0 or +1; its support is the row set
  std::vector<int> rows;
  for (int r = 0; r < m.rows; r++) {
    const Int& v = m(r, closing_column);
    if (v == 1)
      rows.push_back(r);
    else if (v != 0)
      bad();
  }
  size_t p = chain_columns.size() + 1;
  if (rows.size() != p) bad();
  // chain columns: exactly one +1 and one -1, supported inside the row set,
  // and together they form a path through all p rows
  std::vector<int> degree(m.rows, 0);
  int edges = 0;
  for (int c : chain_columns) {
    int plus = -1, minus = -1;
    for (int r = 0; r < m.rows; r++) {
      const Int& v = m(r, c);
      if (v == 0) continue;
      if (v == 1 && plus < 0)
        plus = r;
      else if (v == -1 && minus < 0)
        minus = r;
      else
        bad();
    }
    if (plus < 0 || minus < 0) bad();
    if (!std::binary_search(rows.begin(), rows.end(), plus) ||
        !std::binary_search(rows.begin(), rows.end(), minus))
      bad();
    degree[plus]++;
    degree[minus]++;
    edges++;
  }
  if (edges != static_cast<int>(p) - 1) bad();
  for (int r : rows)
    if (degree[r] > 2 || (p > 1 && degree[r] == 0)) bad();
  // p-1 edges with max degree 2 covering all p rows: a path iff connected;
  // the resulting minor has determinant +-p (sum the rows: only the closing
  // column survives, contributing p, with a unimodular chain minor as cofactor)
  std::vector<int> cols = chain_columns;
  cols.push_back(closing_column);
  Int d = minor_det(m, rows, cols);
  internal_check(abs(d) == p, "chain-plus-sum minor must have determinant +-p");
  AdmissibilityReport report;
  report.admissible = (p == 1);
  if (!report.admissible) {
    std::sort(cols.begin(), cols.end());
    report.witness = AdmissibilityWitness{cols, rows, d};
  }
  return report;
}

Embedding restrict_ambient(const Embedding& emb, int n) {
  IntMat canon = canonical_embedding_matrix(emb.matrix);
  for (int r = n; r < canon.rows; r++)
    for (int c = 0; c < canon.cols; c++)
      if (canon(r, c) != 0)
        throw std::invalid_argument("embedding uses more rows than the requested ambient rank");
  Embedding out;
  out.ambient_rank = n;
  out.matrix = IntMat(n, canon.cols);
  for (int r = 0; r < n && r < canon.rows; r++)
    for (int c = 0; c < canon.cols; c++) out.matrix(r, c) = canon(r, c);
  return out;
}

ObstructionVerdict qa_obstruction(const WeightedGraph& g, const SearchBudget& budget) {
  ObstructionVerdict v;
  IntMat q = gram_matrix(g);
  v.rank = q.rows;
  v.discriminant = abs(det(q));
  if (!is_negative_definite(q)) {
    v.status = ObstructionStatus::INCONCLUSIVE;
    v.reason = "not definite; see rationality branch";
    return v;
  }
  v.bound = completeness_bound(q);
  if (!v.bound.fits_sint_p())
    throw std::runtime_error("completeness bound too large for the embedding search");
  int bound = static_cast<int>(v.bound.get_si());
  int search_n = bound;
  bool capped = false;
  if (budget.max_ambient_rank > 0 && budget.max_ambient_rank < bound) {
    search_n = budget.max_ambient_rank;
    capped = true;
  }
  auto sink = [&](const Embedding& emb) -> bool {
    ClassEvidence ev;
    ev.emb = emb;
    for (int r = 0; r < emb.matrix.rows; r++)
      for (int c = 0; c < emb.matrix.cols; c++)
        if (emb.matrix(r, c) != 0) {
          ev.nonzero_rows++;
          break;
        }
    AdmissibilityReport rep = check_admissible(emb);
    ev.admissible = rep.admissible;
    if (ev.nonzero_rows == v.rank && v.rank > 0) {
      // a full-support embedding B satisfies B^T B = -Q, so det(B)^2 = |det Q|
      std::vector<int> rows, cols;
      for (int r = 0; r < emb.matrix.rows; r++) {
        for (int c = 0; c < emb.matrix.cols; c++)
          if (emb.matrix(r, c) != 0) {
            rows.push_back(r);
            break;
          }
      }
      for (int c = 0; c < emb.matrix.cols; c++) cols.push_back(c);
      Int b = minor_det(emb.matrix, rows, cols);
      internal_check(b * b == v.discriminant,
                     "full-support minor must square to the discriminant");
    }
    if (!v.witness && rep.witness) v.witness = rep.witness;
    v.classes.push_back(std::move(ev));
    if (rep.admissible) {
      v.admissible_embedding = emb;
      return false;  // one admissible embedding settles the verdict
    }
    return true;
  };
  SearchResult sr = find_embeddings_streaming(q, search_n, budget, sink);
  v.nodes = sr.nodes;
  v.search_complete = sr.complete;
  for (int n = v.rank; n <= search_n; n++) {
    RankEvidence re;
    re.ambient_rank = n;
    for (const auto& c : v.classes) {
      if (c.nonzero_rows <= n) {
        re.classes++;
        if (c.admissible) re.admissible++;
      }
    }
    v.evidence.push_back(re);
  }
  if (v.admissible_embedding) {
    v.status = ObstructionStatus::NOT_OBSTRUCTED;
  } else if (!sr.complete) {
    v.status = ObstructionStatus::INCONCLUSIVE;
    v.reason = "search budget exhausted";
  } else if (capped) {
    v.status = ObstructionStatus::INCONCLUSIVE;
    v.reason = "ambient rank capped below the completeness bound";
  } else {
    v.status = ObstructionStatus::OBSTRUCTED;
  }
  return v;
}

}  // namespace qalat

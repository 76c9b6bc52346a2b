#include "qalat/embed.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qalat/check.hpp"

namespace qalat {

std::vector<std::vector<int>> vectors_of_norm(long m, int n) {
  if (m < 1) throw std::invalid_argument("norm must be positive");
  if (n < 0) throw std::invalid_argument("dimension must be non-negative");
  std::vector<std::vector<int>> out;
  std::vector<int> v(n, 0);
  auto rec = [&](auto&& self, int i, long rem) -> void {
    if (i == n) {
      if (rem == 0) out.push_back(v);
      return;
    }
    int b = 0;
    while (static_cast<long>(b + 1) * (b + 1) <= rem) b++;
    for (int val = -b; val <= b; val++) {
      v[i] = val;
      self(self, i + 1, rem - static_cast<long>(val) * val);
    }
    v[i] = 0;
  };
  rec(rec, 0, m);
  return out;
}

Int completeness_bound(const IntMat& q) {
  if (q.rows != q.cols) throw std::invalid_argument("completeness bound needs a square matrix");
  Int s = 0;
  for (int i = 0; i < q.rows; i++) s += abs(q(i, i));
  return s;
}

IntMat canonical_embedding_matrix(const IntMat& m) {
  std::vector<std::vector<Int>> rows(m.rows, std::vector<Int>(m.cols));
  for (int r = 0; r < m.rows; r++)
    for (int c = 0; c < m.cols; c++) rows[r][c] = m(r, c);
  for (auto& row : rows) {
    for (const Int& x : row) {
      if (x == 0) continue;
      if (x > 0)
        for (Int& y : row) y = -y;
      break;
    }
  }
  std::sort(rows.begin(), rows.end());
  IntMat out(m.rows, m.cols);
  for (int r = 0; r < m.rows; r++)
    for (int c = 0; c < m.cols; c++) out(r, c) = rows[r][c];
  return out;
}

namespace {

int isqrt_ll(long long x) {
  int b = 0;
  while (static_cast<long long>(b + 1) * (b + 1) <= x) b++;
  return b;
}

long long to_ll(const Int& z) {
  if (!z.fits_slong_p()) throw std::runtime_error("Gram entry too large for the embedding search");
  return z.get_si();
}

struct Engine {
  // problem
  int k = 0, n = 0;
  bool canonical = true;
  std::vector<int> order;                 // search position -> original column index
  std::vector<std::vector<long long>> w;  // w[a][b] = -Q(order[a], order[b])
  const IntMat* q = nullptr;
  // budget
  long long node_limit = 0, solution_limit = 0;
  // optional class consumer (canonical mode)
  const std::function<bool(const Embedding&)>* sink = nullptr;
  // state
  std::vector<std::vector<int>> cols;  // placed columns, in search order
  std::set<std::vector<int>> out;      // flattened n x k result matrices
  long long nodes = 0, leaves = 0;
  bool budget_hit = false, sink_stop = false;

  void setup(const IntMat& qq, int nn, bool canon) {
    q = &qq;
    n = nn;
    k = qq.rows;
    canonical = canon;
    std::vector<long long> diag(k);
    std::vector<int> deg(k, 0);
    for (int i = 0; i < k; i++) {
      diag[i] = -to_ll(qq(i, i));
      for (int j = 0; j < k; j++)
        if (j != i && qq(i, j) != 0) deg[i]++;
    }
    order.resize(k);
    for (int i = 0; i < k; i++) order[i] = i;
    // high-norm, high-degree columns first: fewest candidates, fail fast
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (diag[a] != diag[b]) return diag[a] > diag[b];
      if (deg[a] != deg[b]) return deg[a] > deg[b];
      return a < b;
    });
    w.assign(k, std::vector<long long>(k));
    for (int a = 0; a < k; a++)
      for (int b = 0; b < k; b++) w[a][b] = -to_ll(qq(order[a], order[b]));
  }

  bool halted() const { return budget_hit || sink_stop; }

  bool tick() {
    if (++nodes > node_limit) {
      budget_hit = true;
      return false;
    }
    return true;
  }

  void run() {
    cols.clear();
    cols.reserve(k);
    place(0, canonical ? 0 : n);
  }

  void place(int ci, int used) {
    if (halted()) return;
    if (ci == k) {
      leaf();
      return;
    }
    // suffix sums of squares of each placed column over rows r..used-1, for
    // the Cauchy-Schwarz feasibility prune below
    std::vector<std::vector<long long>> sufsq(ci, std::vector<long long>(used + 1, 0));
    for (int t = 0; t < ci; t++)
      for (int r = used - 1; r >= 0; r--) {
        long long v = r < static_cast<int>(cols[t].size()) ? cols[t][r] : 0;
        sufsq[t][r] = sufsq[t][r + 1] + v * v;
      }
    std::vector<int> vec;
    vec.reserve(n);
    std::vector<long long> dots(ci, 0);
    cand(ci, used, 0, w[ci][ci], vec, dots, sufsq);
  }

  // Enumerate the next column's values on the rows already in use.  Placed
  // columns vanish on rows >= used, so their inner products with the new
  // column are fully determined by this segment.
  void cand(int ci, int used, int row, long long rem, std::vector<int>& vec,
            std::vector<long long>& dots, const std::vector<std::vector<long long>>& sufsq) {
    if (halted()) return;
    if (row == used) {
      for (int t = 0; t < ci; t++)
        if (dots[t] != w[ci][t]) return;
      if (canonical)
        fresh(ci, used, rem, 1, vec);
      else if (rem == 0)
        commit(ci, used, vec);
      return;
    }
    int b = isqrt_ll(rem);
    for (int val = -b; val <= b; val++) {
      if (!tick()) return;
      long long nrem = rem - static_cast<long long>(val) * val;
      bool ok = true;
      for (int t = 0; t < ci; t++) {
        long long pv = row < static_cast<int>(cols[t].size()) ? cols[t][row] : 0;
        dots[t] += static_cast<long long>(val) * pv;
        // remaining achievable inner product is bounded by Cauchy-Schwarz:
        // need^2 <= (norm left) * (suffix square sum of the placed column)
        long long need = w[ci][t] - dots[t];
        if (need * need > nrem * sufsq[t][row + 1]) ok = false;
      }
      if (ok) {
        vec.push_back(val);
        cand(ci, used, row + 1, nrem, vec, dots, sufsq);
        vec.pop_back();
      }
      for (int t = 0; t < ci; t++) {
        long long pv = row < static_cast<int>(cols[t].size()) ? cols[t][row] : 0;
        dots[t] -= static_cast<long long>(val) * pv;
      }
      if (halted()) return;
    }
  }

  // Distribute the leftover norm onto previously untouched rows.  Fresh rows
  // are interchangeable and sign-flippable without disturbing earlier columns,
  // so demanding a positive, non-decreasing block allocated at the smallest
  // unused indices keeps exactly one representative of each such choice.
  void fresh(int ci, int used, long long rem, int minv, std::vector<int>& vec) {
    if (halted()) return;
    if (rem == 0) {
      commit(ci, used, vec);
      return;
    }
    if (static_cast<int>(vec.size()) >= n) return;
    for (int v = minv; static_cast<long long>(v) * v <= rem; v++) {
      if (!tick()) return;
      vec.push_back(v);
      fresh(ci, used, rem - static_cast<long long>(v) * v, v, vec);
      vec.pop_back();
      if (halted()) return;
    }
  }

  void commit(int ci, int used, const std::vector<int>& vec) {
    cols.push_back(vec);
    place(ci + 1, std::max(used, static_cast<int>(vec.size())));
    cols.pop_back();
  }

  void leaf() {
    if (leaves == solution_limit) {
      budget_hit = true;
      return;
    }
    leaves++;
    // assemble the n x k matrix with columns back in original order
    std::vector<std::vector<int>> mat(n, std::vector<int>(k, 0));
    for (int t = 0; t < k; t++)
      for (int r = 0; r < static_cast<int>(cols[t].size()); r++) mat[r][order[t]] = cols[t][r];
    for (int i = 0; i < k; i++)
      for (int j = i; j < k; j++) {
        long long dot = 0;
        for (int r = 0; r < n; r++) dot += static_cast<long long>(mat[r][i]) * mat[r][j];
        internal_check((*q)(i, j) == Int(static_cast<long>(-dot)),
                       "embedding violates the Gram constraints");
      }
    if (canonical) {
      for (auto& row : mat) {
        for (int x : row) {
          if (x == 0) continue;
          if (x > 0)
            for (int& y : row) y = -y;
          break;
        }
      }
      std::sort(mat.begin(), mat.end());
    }
    std::vector<int> flat;
    flat.reserve(static_cast<size_t>(n) * k);
    for (const auto& row : mat) flat.insert(flat.end(), row.begin(), row.end());
    auto [it, inserted] = out.insert(std::move(flat));
    if (inserted && sink && !(*sink)(to_embedding(*it))) sink_stop = true;
  }

  Embedding to_embedding(const std::vector<int>& flat) const {
    Embedding emb;
    emb.ambient_rank = n;
    emb.matrix = IntMat(n, k);
    for (size_t i = 0; i < flat.size(); i++) emb.matrix.a[i] = flat[i];
    return emb;
  }
};

SearchResult run_engine(const IntMat& q, int n, const SearchBudget& budget, bool canonical,
                        const std::function<bool(const Embedding&)>* sink) {
  if (n < 0) throw std::invalid_argument("ambient rank must be non-negative");
  if (budget.node_limit <= 0 || budget.solution_limit <= 0)
    throw std::invalid_argument("budget limits must be positive");
  if (!is_negative_definite(q))
    throw std::runtime_error("embedding search requires a negative definite form");
  Engine e;
  e.setup(q, n, canonical);
  e.node_limit = budget.node_limit;
  e.solution_limit = budget.solution_limit;
  e.sink = sink;
  e.run();
  SearchResult res;
  res.complete = !e.budget_hit && !e.sink_stop;
  res.nodes = e.nodes;
  res.leaves = e.leaves;
  res.embeddings.reserve(e.out.size());
  for (const auto& flat : e.out) res.embeddings.push_back(e.to_embedding(flat));
  return res;
}

}  // namespace

SearchResult find_embeddings(const IntMat& q, int n, const SearchBudget& budget,
                             bool up_to_symmetry) {
  return run_engine(q, n, budget, up_to_symmetry, nullptr);
}

SearchResult find_embeddings_streaming(const IntMat& q, int n, const SearchBudget& budget,
                                       const std::function<bool(const Embedding&)>& sink) {
  return run_engine(q, n, budget, true, &sink);
}

}  // namespace qalat

#include "qalat/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace qalat {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; i++) m(i, i) = 1;
  return m;
}

IntMat transpose(const IntMat& m) {
  IntMat t(m.cols, m.rows);
  for (int r = 0; r < m.rows; r++)
    for (int c = 0; c < m.cols; c++) t(c, r) = m(r, c);
  return t;
}

IntMat mul(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix product shape mismatch");
  IntMat z(x.rows, y.cols);
  for (int r = 0; r < x.rows; r++)
    for (int k = 0; k < x.cols; k++) {
      const Int& xv = x(r, k);
      if (xv == 0) continue;
      for (int c = 0; c < y.cols; c++) z(r, c) += xv * y(k, c);
    }
  return z;
}

bool is_symmetric(const IntMat& m) {
  if (m.rows != m.cols) return false;
  for (int r = 0; r < m.rows; r++)
    for (int c = r + 1; c < m.cols; c++)
      if (m(r, c) != m(c, r)) return false;
  return true;
}

std::string to_string(const IntMat& m) {
  std::ostringstream os;
  for (int r = 0; r < m.rows; r++) {
    os << (r ? "; " : "[");
    for (int c = 0; c < m.cols; c++) os << (c ? " " : "") << m(r, c).get_str();
  }
  os << "]";
  return os.str();
}

namespace {

Int det_cofactor(const IntMat& m) {
  int n = m.rows;
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int acc = 0;
  for (int c = 0; c < n; c++) {
    if (m(0, c) == 0) continue;
    IntMat sub(n - 1, n - 1);
    for (int r = 1; r < n; r++) {
      int cc = 0;
      for (int c2 = 0; c2 < n; c2++) {
        if (c2 == c) continue;
        sub(r - 1, cc++) = m(r, c2);
      }
    }
    Int term = m(0, c) * det_cofactor(sub);
    if (c % 2)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

Int det_bareiss(IntMat m) {
  int n = m.rows;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; k++) {
    if (m(k, k) == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; r++)
        if (m(r, k) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      for (int c = k; c < n; c++) swap(m(k, c), m(piv, c));
      sign = -sign;
    }
    for (int r = k + 1; r < n; r++) {
      for (int c = k + 1; c < n; c++) {
        Int num = m(r, c) * m(k, k) - m(r, k) * m(k, c);
        // Exact division: Bareiss guarantees divisibility by the previous pivot.
        mpz_divexact(m(r, c).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(r, k) = 0;
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

}  // namespace

Int det(const IntMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
  if (m.rows <= 4) return det_cofactor(m);
  return det_bareiss(m);
}

namespace {

// Smallest-magnitude nonzero entry of m restricted to [t.., t..]; {-1,-1} if none.
std::pair<int, int> min_pivot(const IntMat& m, int t) {
  int pr = -1, pc = -1;
  Int best;
  for (int r = t; r < m.rows; r++)
    for (int c = t; c < m.cols; c++) {
      if (m(r, c) == 0) continue;
      Int mag = abs(m(r, c));
      if (pr < 0 || mag < best) {
        best = mag;
        pr = r;
        pc = c;
      }
    }
  return {pr, pc};
}

}  // namespace

SmithForm smith_normal_form(const IntMat& m) {
  int rows = m.rows, cols = m.cols;
  SmithForm s{m, IntMat::identity(rows), IntMat::identity(cols)};
  IntMat& d = s.d;
  IntMat& u = s.u;
  IntMat& v = s.v;

  auto row_op = [&](int dst, int src, const Int& f) {  // row dst -= f * row src
    for (int c = 0; c < cols; c++) d(dst, c) -= f * d(src, c);
    for (int c = 0; c < rows; c++) u(dst, c) -= f * u(src, c);
  };
  auto col_op = [&](int dst, int src, const Int& f) {
    for (int r = 0; r < rows; r++) d(r, dst) -= f * d(r, src);
    for (int r = 0; r < cols; r++) v(r, dst) -= f * v(r, src);
  };
  auto row_swap = [&](int x, int y) {
    if (x == y) return;
    for (int c = 0; c < cols; c++) swap(d(x, c), d(y, c));
    for (int c = 0; c < rows; c++) swap(u(x, c), u(y, c));
  };
  auto col_swap = [&](int x, int y) {
    if (x == y) return;
    for (int r = 0; r < rows; r++) swap(d(r, x), d(r, y));
    for (int r = 0; r < cols; r++) swap(v(r, x), v(r, y));
  };

  int steps = std::min(rows, cols);
  for (int t = 0; t < steps; t++) {
    for (;;) {
      auto [pr, pc] = min_pivot(d, t);
      if (pr < 0) break;  // submatrix is zero
      row_swap(t, pr);
      col_swap(t, pc);
      // Kill the pivot row and column by Euclidean steps; magnitude-minimizing
      // pivot selection keeps quotients honest.
      bool clean = true;
      for (int r = t + 1; r < rows; r++) {
        if (d(r, t) == 0) continue;
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), d(r, t).get_mpz_t(), d(t, t).get_mpz_t());
        row_op(r, t, f);
        if (d(r, t) != 0) clean = false;
      }
      for (int c = t + 1; c < cols; c++) {
        if (d(t, c) == 0) continue;
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), d(t, c).get_mpz_t(), d(t, t).get_mpz_t());
        col_op(c, t, f);
        if (d(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility sweep: if the pivot misses an entry below-right, pull that
      // row up and restart this step.
      bool redo = false;
      for (int r = t + 1; r < rows && !redo; r++)
        for (int c = t + 1; c < cols && !redo; c++)
          if (d(r, c) % d(t, t) != 0) {
            row_op(t, r, Int(-1));
            redo = true;
          }
      if (!redo) break;
    }
    if (d(t, t) < 0) {
      for (int c = 0; c < cols; c++) d(t, c) = -d(t, c);
      for (int c = 0; c < rows; c++) u(t, c) = -u(t, c);
    }
  }
  return s;
}

std::vector<Int> invariant_factors(const IntMat& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<Int> out;
  int n = std::min(m.rows, m.cols);
  for (int i = 0; i < n; i++) out.push_back(s.d(i, i));
  return out;
}

bool is_negative_definite(const IntMat& q) {
  if (!is_symmetric(q)) throw std::invalid_argument("definiteness test needs a symmetric matrix");
  for (int k = 1; k <= q.rows; k++) {
    IntMat lead(k, k);
    for (int r = 0; r < k; r++)
      for (int c = 0; c < k; c++) lead(r, c) = q(r, c);
    Int dk = det(lead);
    if (k % 2 ? dk >= 0 : dk <= 0) return false;
  }
  return true;
}

std::vector<Rat> solve_rational(const IntMat& m, const std::vector<Rat>& b) {
  if (m.rows != m.cols || static_cast<int>(b.size()) != m.rows)
    throw std::invalid_argument("solve shape mismatch");
  int n = m.rows;
  std::vector<std::vector<Rat>> w(n, std::vector<Rat>(n + 1));
  for (int r = 0; r < n; r++) {
    for (int c = 0; c < n; c++) w[r][c] = Rat(m(r, c));
    w[r][n] = b[r];
  }
  for (int c = 0; c < n; c++) {
    int piv = -1;
    for (int r = c; r < n; r++)
      if (w[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("degenerate form");
    std::swap(w[c], w[piv]);
    for (int r = 0; r < n; r++) {
      if (r == c || w[r][c] == 0) continue;
      Rat f = w[r][c] / w[c][c];
      for (int c2 = c; c2 <= n; c2++) w[r][c2] -= f * w[c][c2];
    }
  }
  std::vector<Rat> y(n);
  for (int r = 0; r < n; r++) y[r] = w[r][n] / w[r][r];
  return y;
}

Rat rational_quadratic_eval(const IntMat& q, const std::vector<Int>& xi) {
  std::vector<Rat> b(xi.size());
  for (size_t i = 0; i < xi.size(); i++) b[i] = Rat(xi[i]);
  std::vector<Rat> y = solve_rational(q, b);
  Rat acc = 0;
  for (size_t i = 0; i < xi.size(); i++) acc += Rat(xi[i]) * y[i];
  return acc;
}

IntMat adjugate(const IntMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("adjugate of non-square matrix");
  int n = m.rows;
  Int dm = det(m);
  if (dm == 0) throw std::runtime_error("degenerate form");
  IntMat adj(n, n);
  // Column j of adj solves M y = det(M) e_j; the solution is integral (Cramer).
  for (int j = 0; j < n; j++) {
    std::vector<Rat> b(n);
    b[j] = Rat(dm);
    std::vector<Rat> y = solve_rational(m, b);
    for (int i = 0; i < n; i++) {
      if (y[i].get_den() != 1) throw std::logic_error("adjugate entry not integral");
      adj(i, j) = y[i].get_num();
    }
  }
  return adj;
}

IntMat inverse_unimodular(const IntMat& u) {
  Int du = det(u);
  if (du != 1 && du != -1) throw std::invalid_argument("matrix is not unimodular");
  IntMat adj = adjugate(u);
  if (du == -1)
    for (auto& x : adj.a) x = -x;
  return adj;
}

}  // namespace qalat

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace qalat {

using Int = mpz_class;
using Rat = mpq_class;

// Dense row-major integer matrix. Arbitrary precision throughout: Bareiss
// intermediates and Smith multipliers grow past any fixed word size.
struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Int& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  bool operator==(const IntMat&) const = default;

  static IntMat identity(int n);
};

IntMat transpose(const IntMat& m);
IntMat mul(const IntMat& x, const IntMat& y);
bool is_symmetric(const IntMat& m);
std::string to_string(const IntMat& m);

// Exact determinant. Cofactor expansion for n <= 4, fraction-free (Bareiss)
// elimination with pivoting above that.
Int det(const IntMat& m);

// U * M * V = D with U, V unimodular, D diagonal, d1 | d2 | ..., all di >= 0.
struct SmithForm {
  IntMat d, u, v;
};

SmithForm smith_normal_form(const IntMat& m);

// Diagonal of the Smith form, in divisibility order.
std::vector<Int> invariant_factors(const IntMat& m);

// Sylvester: Q is negative definite iff (-1)^k det(leading k x k) > 0 for all k.
// Throws if Q is not symmetric.
bool is_negative_definite(const IntMat& q);

// Solve M y = b over the rationals. Throws "degenerate form" if singular.
std::vector<Rat> solve_rational(const IntMat& m, const std::vector<Rat>& b);

// xi^T Q^{-1} xi, exact. Throws "degenerate form" if Q is singular.
Rat rational_quadratic_eval(const IntMat& q, const std::vector<Int>& xi);

// det(M) * M^{-1}, entries integral by Cramer. Throws on singular input.
IntMat adjugate(const IntMat& m);

// Exact inverse of a matrix with det = +-1.
IntMat inverse_unimodular(const IntMat& u);

}  // namespace qalat

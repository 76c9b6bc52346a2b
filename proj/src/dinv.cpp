#include "qalat/dinv.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "qalat/check.hpp"

namespace qalat {

bool is_characteristic(const IntMat& q, const CharVector& xi) {
  if (static_cast<int>(xi.size()) != q.rows) return false;
  for (int i = 0; i < q.rows; i++)
    if ((xi[i] - q(i, i)) % 2 != 0) return false;
  return true;
}

namespace {

Int mod_floor(const Int& x, const Int& d) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return r;
}

std::vector<Int> mat_vec(const IntMat& m, const std::vector<Int>& x) {
  std::vector<Int> y(m.rows, Int(0));
  for (int i = 0; i < m.rows; i++)
    for (int j = 0; j < m.cols; j++) y[i] += m(i, j) * x[j];
  return y;
}

// Coset arithmetic for Z^k / Q*Z^k via the Smith form U*Q*V = D: the label of
// a is (U*a) mod diag(D), and a = U^{-1} * t realizes the label t exactly.
struct CosetCtx {
  int k = 0;
  IntMat q;
  IntMat u, uinv;
  std::vector<Int> dd;

  explicit CosetCtx(const IntMat& qq) : k(qq.rows), q(qq) {
    SmithForm sf = smith_normal_form(qq);
    u = sf.u;
    uinv = inverse_unimodular(sf.u);
    dd.resize(k);
    for (int i = 0; i < k; i++) {
      dd[i] = sf.d(i, i);
      internal_check(dd[i] != 0, "definite form must have nonzero invariant factors");
    }
  }

  std::vector<Int> residue(const std::vector<Int>& a) const {
    std::vector<Int> t = mat_vec(u, a);
    for (int i = 0; i < k; i++) t[i] = mod_floor(t[i], dd[i]);
    return t;
  }

  std::vector<Int> char_to_a(const CharVector& xi) const {
    std::vector<Int> a(k);
    for (int i = 0; i < k; i++) a[i] = (xi[i] - q(i, i)) / 2;
    return a;
  }

  std::vector<Int> char_residue(const CharVector& xi) const { return residue(char_to_a(xi)); }
};

void require_negdef(const IntMat& q, const char* who) {
  if (!is_negative_definite(q))
    throw std::runtime_error(std::string(who) + " requires a negative definite form");
}

// One rounding step toward the closest lattice vector: a -> a - Q*round(Q^{-1}a)
// keeps the class of a while shrinking the representative.
std::vector<Int> lattice_reduce(const IntMat& q, std::vector<Int> a) {
  int k = q.rows;
  std::vector<Rat> rhs(k);
  for (int i = 0; i < k; i++) rhs[i] = Rat(a[i]);
  std::vector<Rat> y = solve_rational(q, rhs);
  std::vector<Int> z(k);
  for (int i = 0; i < k; i++) {
    Rat h = y[i] + Rat(1, 2);
    mpz_fdiv_q(z[i].get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  }
  std::vector<Int> qz = mat_vec(q, z);
  for (int i = 0; i < k; i++) a[i] -= qz[i];
  return a;
}

long to_long_checked(const Int& z) {
  if (!z.fits_slong_p()) throw std::runtime_error("characteristic vector entry out of range");
  return z.get_si();
}

struct ClassBest {
  Rat value;
  CharVector argmax;
};

// Enumerates every characteristic vector in the component box [lo, hi]
// (entries stepping by 2 to keep parity) and records the best square per
// spin-c class label.  The box is grown until, for every class, the bound
// xi_i^2 <= (-best)*|Q[i][i]| places all potentially-better vectors inside the
// box, which certifies each per-class maximum globally.
std::map<std::vector<Int>, ClassBest> sweep_class_maxima(const IntMat& q, const CosetCtx& ctx,
                                                         std::vector<long> lo,
                                                         std::vector<long> hi) {
  int k = q.rows;
  Int dq = det(q);
  IntMat adj = adjugate(q);
  std::map<std::vector<Int>, ClassBest> best;
  while (true) {
    best.clear();
    CharVector xi(k, Int(0));
    auto rec = [&](auto&& self, int i) -> void {
      if (i == k) {
        Int num = 0;
        for (int a = 0; a < k; a++)
          for (int b = 0; b < k; b++) num += adj(a, b) * xi[a] * xi[b];
        Rat val(num);
        val /= dq;
        auto label = ctx.char_residue(xi);
        auto it = best.find(label);
        if (it == best.end())
          best.emplace(std::move(label), ClassBest{val, xi});
        else if (val > it->second.value)
          it->second = ClassBest{val, xi};
        return;
      }
      long start = lo[i];
      long diag = to_long_checked(q(i, i));
      if (((start - diag) % 2 + 2) % 2 != 0) start++;
      for (long v = start; v <= hi[i]; v += 2) {
        xi[i] = v;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
    internal_check(!best.empty(), "characteristic box sweep found no vectors");
    // worst per-class best decides how wide the certified region must be
    Rat tmin = best.begin()->second.value;
    for (const auto& [label, cb] : best) tmin = std::min(tmin, cb.value);
    bool grew = false;
    for (int i = 0; i < k; i++) {
      // bound = floor(sqrt((-tmin) * |Q[i][i]|))
      Rat c = -tmin * abs(q(i, i));
      internal_check(c >= 0, "square bound must be non-negative");
      Int cfloor;
      mpz_fdiv_q(cfloor.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
      Int b;
      mpz_sqrt(b.get_mpz_t(), cfloor.get_mpz_t());
      long bl = to_long_checked(b);
      if (lo[i] > -bl) { lo[i] = -bl; grew = true; }
      if (hi[i] < bl) { hi[i] = bl; grew = true; }
    }
    if (!grew) return best;
  }
}

std::vector<long> default_lo(const IntMat& q) {
  std::vector<long> lo(q.rows);
  for (int i = 0; i < q.rows; i++) lo[i] = to_long_checked(q(i, i));
  return lo;
}

std::vector<long> default_hi(const IntMat& q) {
  std::vector<long> hi(q.rows);
  for (int i = 0; i < q.rows; i++) hi[i] = -to_long_checked(q(i, i));
  return hi;
}

void widen_to_include(std::vector<long>& lo, std::vector<long>& hi, const CharVector& xi) {
  for (size_t i = 0; i < xi.size(); i++) {
    long v = to_long_checked(xi[i]);
    lo[i] = std::min(lo[i], v);
    hi[i] = std::max(hi[i], v);
  }
}

void check_local_maximality(const IntMat& q, const CharVector& xi, const Rat& value,
                            const IntMat& adj, const Int& dq) {
  int k = q.rows;
  for (int i = 0; i < k; i++) {
    for (int sign : {1, -1}) {
      CharVector y = xi;
      for (int r = 0; r < k; r++) y[r] += 2 * sign * q(r, i);
      Int num = 0;
      for (int a = 0; a < k; a++)
        for (int b = 0; b < k; b++) num += adj(a, b) * y[a] * y[b];
      Rat val(num);
      val /= dq;
      internal_check(val <= value, "class maximum must not improve under moves xi +- 2*Q*e_i");
    }
  }
}

}  // namespace

std::vector<CharVector> char_representatives(const IntMat& q) {
  require_negdef(q, "characteristic class enumeration");
  int k = q.rows;
  CosetCtx ctx(q);
  std::vector<CharVector> reps;
  std::vector<Int> t(k, Int(0));
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      std::vector<Int> a = mat_vec(ctx.uinv, t);
      a = lattice_reduce(q, std::move(a));
      CharVector xi(k);
      for (int r = 0; r < k; r++) xi[r] = q(r, r) + 2 * a[r];
      internal_check(ctx.residue(a) == t, "representative must realize its residue label");
      reps.push_back(std::move(xi));
      return;
    }
    for (Int v = 0; v < abs(ctx.dd[i]); v++) {
      t[i] = v;
      self(self, i + 1);
    }
    t[i] = 0;
  };
  rec(rec, 0);
  return reps;
}

std::vector<Int> char_class_residue(const IntMat& q, const CharVector& xi) {
  if (!is_characteristic(q, xi))
    throw std::invalid_argument("vector is not characteristic for the form");
  CosetCtx ctx(q);
  return ctx.char_residue(xi);
}

Rat max_square(const IntMat& q, const CharVector& class_rep) {
  require_negdef(q, "max_square");
  if (!is_characteristic(q, class_rep))
    throw std::invalid_argument("vector is not characteristic for the form");
  CosetCtx ctx(q);
  auto lo = default_lo(q), hi = default_hi(q);
  CharVector rep = class_rep;
  {
    auto a = lattice_reduce(q, ctx.char_to_a(rep));
    for (int i = 0; i < q.rows; i++) rep[i] = q(i, i) + 2 * a[i];
  }
  widen_to_include(lo, hi, rep);
  auto best = sweep_class_maxima(q, ctx, lo, hi);
  auto it = best.find(ctx.char_residue(rep));
  internal_check(it != best.end(), "class of the representative must appear in the sweep");
  check_local_maximality(q, it->second.argmax, it->second.value, adjugate(q), det(q));
  return it->second.value;
}

CorrectionTable correction_terms(const WeightedGraph& g, bool mirror) {
  IntMat q = gram_matrix(g);
  require_negdef(q, "correction_terms");
  int k = q.rows;
  CosetCtx ctx(q);
  CorrectionTable table;
  table.mirror = mirror;
  table.rank = k;
  table.discriminant = abs(det(q));
  table.caveat =
      "d-values follow the negative definite plumbing formula; they equal the "
      "Heegaard Floer correction terms exactly when the plumbing is sharp";
  std::vector<CharVector> reps = char_representatives(q);
  auto lo = default_lo(q), hi = default_hi(q);
  for (const auto& rep : reps) widen_to_include(lo, hi, rep);
  auto best = sweep_class_maxima(q, ctx, lo, hi);
  internal_check(best.size() == reps.size(), "sweep must cover every spin-c class");
  IntMat adj = adjugate(q);
  Int dq = det(q);
  for (const auto& rep : reps) {
    auto label = ctx.char_residue(rep);
    auto it = best.find(label);
    internal_check(it != best.end(), "every class must have a sweep entry");
    check_local_maximality(q, it->second.argmax, it->second.value, adj, dq);
    CorrectionEntry entry;
    entry.residue = label;
    entry.rep = rep;
    entry.argmax = it->second.argmax;
    entry.max_sq = it->second.value;
    entry.d = (it->second.value + k) / 4;
    if (mirror) entry.d = -entry.d;
    table.entries.push_back(std::move(entry));
  }
  return table;
}

Rat max_correction_term(const CorrectionTable& table) {
  if (table.entries.empty()) throw std::invalid_argument("empty correction table");
  Rat m = table.entries[0].d;
  for (const auto& e : table.entries) m = std::max(m, e.d);
  return m;
}

bool owens_strle_quarter_test(const CorrectionTable& table) {
  if (!table.mirror)
    throw std::invalid_argument("quarter test expects a mirrored correction table");
  return max_correction_term(table) > Rat(1, 4);
}

}  // namespace qalat

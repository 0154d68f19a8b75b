#include "latt/exactla.hpp"

#include <algorithm>
#include <stdexcept>

namespace latt {

HnfResult hnf(const IntMat& m) {
  int rows = m.rows(), cols = m.cols();
  IntMat h = m;
  IntMat u = IntMat::identity(rows);
  int pr = 0;  // pivot row
  for (int pc = 0; pc < cols && pr < rows; ++pc) {
    // Clear the column below pr with extended-gcd row operations.
    for (int i = pr + 1; i < rows; ++i) {
      if (h(i, pc) == 0) continue;
      if (h(pr, pc) == 0) {
        h.swap_rows(pr, i);
        u.swap_rows(pr, i);
        continue;
      }
      Int a = h(pr, pc), b = h(i, pc), g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      Int p = a / g, q = b / g;
      // (row_pr, row_i) <- (s*row_pr + t*row_i, -q*row_pr + p*row_i)
      for (int j = 0; j < cols; ++j) {
        Int x = h(pr, j), y = h(i, j);
        h(pr, j) = s * x + t * y;
        h(i, j) = p * y - q * x;
      }
      for (int j = 0; j < rows; ++j) {
        Int x = u(pr, j), y = u(i, j);
        u(pr, j) = s * x + t * y;
        u(i, j) = p * y - q * x;
      }
    }
    if (h(pr, pc) == 0) continue;
    if (h(pr, pc) < 0) {
      for (int j = 0; j < cols; ++j) h(pr, j) = -h(pr, j);
      for (int j = 0; j < rows; ++j) u(pr, j) = -u(pr, j);
    }
    // Reduce entries above the pivot into [0, pivot).
    for (int i = 0; i < pr; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, pc).get_mpz_t(), h(pr, pc).get_mpz_t());
      if (q == 0) continue;
      for (int j = 0; j < cols; ++j) h(i, j) -= q * h(pr, j);
      for (int j = 0; j < rows; ++j) u(i, j) -= q * u(pr, j);
    }
    ++pr;
  }
  return {h, u};
}

SnfResult snf(const IntMat& m) {
  int rows = m.rows(), cols = m.cols();
  // HNF preprocessing keeps entries small through the diagonalization.
  HnfResult pre = hnf(m);
  IntMat d = pre.h;
  IntMat u = pre.u;
  IntMat v = IntMat::identity(cols);

  auto row_sub = [&](int dst, int src, const Int& q) {
    if (q == 0) return;
    for (int j = 0; j < cols; ++j) d(dst, j) -= q * d(src, j);
    for (int j = 0; j < rows; ++j) u(dst, j) -= q * u(src, j);
  };
  auto col_sub = [&](int dst, int src, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < rows; ++i) d(i, dst) -= q * d(i, src);
    for (int i = 0; i < cols; ++i) v(i, dst) -= q * v(i, src);
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < rows; ++i) std::swap(d(i, a), d(i, b));
    for (int i = 0; i < cols; ++i) std::swap(v(i, a), v(i, b));
  };
  auto round_quot = [](const Int& a, const Int& b) {
    // Nearest-integer quotient so remainders satisfy |r| <= |b|/2.
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * abs(r) > abs(b)) q += b > 0 ? 1 : -1;
    return q;
  };

  int t = 0;
  int n = std::min(rows, cols);
  while (t < n) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows && pi < 0; ++i)
      for (int j = t; j < cols; ++j)
        if (d(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != t) {
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
    }
    if (pj != t) col_swap(t, pj);

    // Euclidean clearing of column t and row t; every pass either finishes
    // or strictly shrinks |d(t,t)|, so this terminates.
    while (true) {
      bool col_dirty = true;
      while (col_dirty) {
        col_dirty = false;
        for (int i = t + 1; i < rows; ++i) {
          if (d(i, t) == 0) continue;
          row_sub(i, t, round_quot(d(i, t), d(t, t)));
          if (d(i, t) != 0) {
            d.swap_rows(t, i);  // strictly smaller pivot
            u.swap_rows(t, i);
            col_dirty = true;
          }
        }
      }
      bool row_refilled = false;
      for (int j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        col_sub(j, t, round_quot(d(t, j), d(t, t)));
        if (d(t, j) != 0) {
          col_swap(t, j);  // strictly smaller pivot
          row_refilled = true;
        }
      }
      if (!row_refilled) {
        bool col_clear = true;
        for (int i = t + 1; i < rows; ++i)
          if (d(i, t) != 0) col_clear = false;
        if (col_clear) break;
      }
    }

    // Divisibility: pivot must divide every later entry.
    bool restart = false;
    for (int i = t + 1; i < rows && !restart; ++i)
      for (int j = t + 1; j < cols; ++j)
        if (d(i, j) % d(t, t) != 0) {
          // Add row i to row t to pull the bad entry into the working row.
          for (int k = 0; k < cols; ++k) d(t, k) += d(i, k);
          for (int k = 0; k < rows; ++k) u(t, k) += u(i, k);
          restart = true;
          break;
        }
    if (restart) continue;
    if (d(t, t) < 0) {
      for (int j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (int j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
    ++t;
  }
  return {d, u, v};
}

std::vector<Int> invariant_factors(const IntMat& m) {
  SnfResult s = snf(m);
  std::vector<Int> r;
  for (int i = 0; i < std::min(s.d.rows(), s.d.cols()); ++i)
    if (s.d(i, i) > 1) r.push_back(s.d(i, i));
  return r;
}

Rat det(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square");
  RatMat a = m;
  int n = a.rows();
  Rat d = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      d = -d;
    }
    d *= a(c, c);
    Rat inv = 1 / a(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) * inv;
      for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

Int det(const IntMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square");
  // Bareiss fraction-free elimination.
  IntMat a = m;
  int n = a.rows();
  Int prev = 1;
  int sign = 1;
  for (int c = 0; c + 1 < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      sign = -sign;
    }
    for (int i = c + 1; i < n; ++i)
      for (int j = c + 1; j < n; ++j) {
        a(i, j) = (a(c, c) * a(i, j) - a(i, c) * a(c, j)) / prev;
      }
    prev = a(c, c);
  }
  return sign * a(n - 1, n - 1);
}

// Row echelon; returns pivot columns, modifies a in place.
static std::vector<int> echelon(RatMat& a) {
  std::vector<int> pivots;
  int pr = 0;
  for (int c = 0; c < a.cols() && pr < a.rows(); ++c) {
    int p = -1;
    for (int i = pr; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != pr) a.swap_rows(p, pr);
    Rat inv = 1 / a(pr, c);
    for (int j = c; j < a.cols(); ++j) a(pr, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == pr || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (int j = c; j < a.cols(); ++j) a(i, j) -= f * a(pr, j);
    }
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

int rank(const RatMat& m) {
  RatMat a = m;
  return int(echelon(a).size());
}

int rank(const IntMat& m) { return rank(to_rat(m)); }

RatMat left_kernel(const RatMat& m) {
  // Kernel of x -> x*m equals kernel of m^T acting on column vectors.
  RatMat a = m.transpose();
  std::vector<int> pivots = echelon(a);
  int n = m.rows();
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  RatMat k(n - int(pivots.size()), n);
  int kr = 0;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    k(kr, c) = 1;
    for (size_t i = 0; i < pivots.size(); ++i) k(kr, pivots[i]) = -a(int(i), c);
    ++kr;
  }
  return k;
}

IntMat left_kernel_saturated(const IntMat& m) {
  // Rows of u matching zero rows of the HNF form a saturated kernel basis.
  HnfResult r = hnf(m);
  int zero_from = r.h.rows();
  for (int i = r.h.rows() - 1; i >= 0; --i) {
    bool zero = true;
    for (int j = 0; j < r.h.cols(); ++j)
      if (r.h(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero)
      zero_from = i;
    else
      break;
  }
  IntMat k(r.h.rows() - zero_from, m.rows());
  for (int i = zero_from; i < r.h.rows(); ++i)
    for (int j = 0; j < m.rows(); ++j) k(i - zero_from, j) = r.u(i, j);
  return k;
}

std::optional<RatMat> solve_left(const RatMat& m, const RatMat& b) {
  // Solve x * m = b row by row: transpose to m^T x^T = b^T.
  RatMat a = m.transpose();  // cols x rows
  int nr = a.rows(), nc = a.cols();
  RatMat aug(nr, nc + b.rows());
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nc; ++j) aug(i, j) = a(i, j);
    for (int j = 0; j < b.rows(); ++j) aug(i, nc + j) = b(j, i);
  }
  std::vector<int> pivots = echelon(aug);
  RatMat x(b.rows(), nc);
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= nc) return std::nullopt;  // inconsistent
    for (int j = 0; j < b.rows(); ++j) x(j, pivots[i]) = aug(int(i), nc + j);
  }
  // Rows past the pivots must be all-zero in the augmented part.
  for (int i = int(pivots.size()); i < nr; ++i)
    for (int j = 0; j < b.rows(); ++j)
      if (aug(i, nc + j) != 0) return std::nullopt;
  return x;
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square");
  int n = m.rows();
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<int> pivots = echelon(aug);
  if (int(pivots.size()) != n || pivots.back() != n - 1)
    throw std::invalid_argument("inverse: singular matrix");
  return aug.submatrix(0, n, n, n);
}

IntMat saturate_rows(const IntMat& m) {
  IntMat k = left_kernel_saturated(m.transpose());  // v with m * v^T = 0 ... careful
  // k rows satisfy k * m^T = 0, i.e. they annihilate the row space of m under
  // the standard pairing.  The saturation of the row space is the integer
  // kernel of k^T.
  return left_kernel_saturated(k.transpose());
}

static Int round_nearest(const Rat& q) {
  Rat qh = q + Rat(1, 2);
  qh.canonicalize();
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), qh.get_num().get_mpz_t(), qh.get_den().get_mpz_t());
  return r;
}

IntMat lll_gram(const RatMat& gram, const Rat& delta) {
  int n = gram.rows();
  if (delta <= Rat(1, 4) || delta >= 1)
    throw std::invalid_argument("lll: delta out of (1/4, 1)");
  IntMat u = IntMat::identity(n);
  RatMat g = gram;  // current Gram = u * gram * u^T

  // Gram-Schmidt data over the Gram matrix: B[i] = |b_i*|^2, mu(i,j).
  std::vector<Rat> B(n);
  RatMat mu(n, n);
  auto compute_gs_row = [&](int i) {
    for (int j = 0; j < i; ++j) {
      Rat s = g(i, j);
      for (int k = 0; k < j; ++k) s -= mu(i, k) * mu(j, k) * B[k];
      if (B[j] == 0) throw std::invalid_argument("lll: dependent rows");
      mu(i, j) = s / B[j];
    }
    Rat s = g(i, i);
    for (int k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * B[k];
    B[i] = s;
  };
  for (int i = 0; i < n; ++i) {
    compute_gs_row(i);
    if (B[i] == 0) throw std::invalid_argument("lll: dependent rows");
  }

  auto size_reduce = [&](int i, int j) {
    Int q = round_nearest(mu(i, j));
    if (q == 0) return;
    Rat rq(q);
    for (int k = 0; k < n; ++k) u(i, k) -= q * u(j, k);
    // Gram update: row/column i of g (self term uses the old g(i,j)).
    Rat old_gij = g(i, j);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      g(i, k) -= rq * g(j, k);
      g(k, i) = g(i, k);
    }
    g(i, i) += rq * rq * g(j, j) - 2 * rq * old_gij;
    // mu update: mu(i,k) -= q * mu(j,k) for k <= j.
    for (int k = 0; k < j; ++k) mu(i, k) -= rq * mu(j, k);
    mu(i, j) -= rq;
  };

  // The in-place g(i,i) update above is order-sensitive; rebuild row i of g
  // from the transform to stay safe (row-local, cheap).
  auto rebuild_g_row = [&](int i) {
    for (int k = 0; k < n; ++k) {
      Rat s = 0;
      for (int a = 0; a < n; ++a) {
        if (u(i, a) == 0) continue;
        Rat t = 0;
        for (int b = 0; b < n; ++b)
          if (u(k, b) != 0) t += Rat(u(k, b)) * gram(a, b);
        s += Rat(u(i, a)) * t;
      }
      g(i, k) = s;
      g(k, i) = s;
    }
  };

  int k = 1;
  while (k < n) {
    size_reduce(k, k - 1);
    if (B[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * B[k - 1]) {
      for (int j = k - 2; j >= 0; --j) size_reduce(k, j);
      ++k;
    } else {
      u.swap_rows(k, k - 1);
      rebuild_g_row(k - 1);
      rebuild_g_row(k);
      for (int i = k - 1; i < n; ++i) compute_gs_row(i);
      k = std::max(k - 1, 1);
    }
  }
  // Final full size reduction sweep.
  for (int i = 1; i < n; ++i)
    for (int j = i - 1; j >= 0; --j) size_reduce(i, j);
  return u;
}

RatMat lll(const RatMat& basis, const Rat& delta) {
  RatMat gram = basis * basis.transpose();
  IntMat u = lll_gram(gram, delta);
  return to_rat(u) * basis;
}

std::vector<Rat> char_poly(const RatMat& m) {
  // Power sums of eigenvalues plus Newton's identities; exact over Q.
  int n = m.rows();
  std::vector<Rat> c(n + 1);
  std::vector<Rat> p(n + 1);
  RatMat mp = RatMat::identity(n);
  for (int k = 1; k <= n; ++k) {
    mp = m * mp;
    Rat tr = 0;
    for (int i = 0; i < n; ++i) tr += mp(i, i);
    p[k] = tr;
  }
  // e_k elementary symmetric of eigenvalues: k*e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i.
  std::vector<Rat> e(n + 1);
  e[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rat s = 0;
    int sign = 1;
    for (int i = 1; i <= k; ++i) {
      s += Rat(sign) * e[k - i] * p[i];
      sign = -sign;
    }
    e[k] = s / k;
  }
  // char_poly(x) = sum_k (-1)^k e_k x^{n-k}
  for (int k = 0; k <= n; ++k) c[n - k] = Rat((k % 2) ? -1 : 1) * e[k];
  return c;
}

}  // namespace latt

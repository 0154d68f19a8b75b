#include "latt/shortvec.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace latt {

namespace {

// Fincke-Pohst data: d[i] = q(i,i) pivots, mu[i][j] for j > i, so that
// norm(x) = sum_i d[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2.
struct Cholesky {
  int n;
  RatMat q;
};

Cholesky cholesky(const RatMat& g) {
  int n = g.rows();
  RatMat q = g;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) {
      const Rat& dk = q(k, k);
      for (int j = n - 1; j >= i; --j) q(i, j) -= dk * q(k, i) * q(k, j);
    }
    if (q(i, i) <= 0) throw std::invalid_argument("form not positive definite");
    for (int j = i + 1; j < n; ++j) q(i, j) /= q(i, i);
  }
  return Cholesky{n, std::move(q)};
}

// Largest s >= -1 with s^2 <= k (s = -1 when k < 0).
Int floor_sqrt(const Int& k) {
  if (k < 0) return -1;
  Int s;
  mpz_sqrt(s.get_mpz_t(), k.get_mpz_t());
  return s;
}

struct Enumerator {
  const Cholesky& ch;
  Rat bound;
  std::vector<Int> x;
  std::vector<std::vector<Int>>& out;
  std::vector<Rat>& out_norms;

  void run() {
    x.assign(ch.n, 0);
    descend(ch.n - 1, bound, Rat(0), true);
  }

  void descend(int i, const Rat& t, const Rat& acc, bool zero_above) {
    if (i < 0) {
      if (acc > 0) {
        out.push_back(x);
        out_norms.push_back(acc);
      }
      return;
    }
    Rat c(0);
    for (int j = i + 1; j < ch.n; ++j)
      if (x[j] != 0) c += ch.q(i, j) * Rat(x[j]);
    // Integer range for x_i with d_i (x_i + c)^2 <= t: with c = cn/cd,
    // y = x_i cd + cn must satisfy y^2 <= floor(t cd^2 / d_i).
    Rat b = t / ch.q(i, i);
    Int cn = c.get_num(), cd = c.get_den();
    Rat k = b * Rat(cd * cd);
    Int kf;
    mpz_fdiv_q(kf.get_mpz_t(), k.get_num().get_mpz_t(),
               k.get_den().get_mpz_t());
    Int s = floor_sqrt(kf);
    if (s < 0) return;
    Int lo, hi, tmp;
    tmp = -s - cn;
    mpz_cdiv_q(lo.get_mpz_t(), tmp.get_mpz_t(), cd.get_mpz_t());
    tmp = s - cn;
    mpz_fdiv_q(hi.get_mpz_t(), tmp.get_mpz_t(), cd.get_mpz_t());
    if (zero_above && lo < 0) lo = 0;
    for (Int v = lo; v <= hi; ++v) {
      x[i] = v;
      Rat y = Rat(v) + c;
      Rat term = ch.q(i, i) * y * y;
      if (term > t) continue;  // guards rounding at the interval edges
      descend(i - 1, t - term, acc + term, zero_above && v == 0);
    }
    x[i] = 0;
  }
};

void sign_normalize(std::vector<Int>& v) {
  for (auto& e : v) {
    if (e == 0) continue;
    if (e < 0)
      for (auto& f : v) f = -f;
    return;
  }
}

Rat inner(const RatMat& gram, const std::vector<Int>& a,
          const std::vector<Int>& b) {
  int n = gram.rows();
  Rat r(0);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    Rat row(0);
    for (int j = 0; j < n; ++j)
      if (b[j] != 0) row += gram(i, j) * Rat(b[j]);
    r += Rat(a[i]) * row;
  }
  return r;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

ShortVectorSet short_vectors(const Lattice& l, const Rat& bound) {
  ShortVectorSet res;
  res.bound = bound;
  int n = l.rank();
  if (n == 0 || bound <= 0) return res;

  IntMat u = lll_gram(l.gram);
  RatMat ur = to_rat(u);
  Cholesky ch = cholesky(ur * l.gram * ur.transpose());

  std::vector<std::vector<Int>> raw;
  std::vector<Rat> norms;
  Enumerator en{ch, bound, {}, raw, norms};
  en.run();

  // Map from reduced to original basis coordinates and canonicalize signs.
  res.vectors.reserve(raw.size());
  for (auto& xv : raw) {
    std::vector<Int> v(n, 0);
    for (int i = 0; i < n; ++i) {
      if (xv[i] == 0) continue;
      for (int j = 0; j < n; ++j) v[j] += xv[i] * u(i, j);
    }
    sign_normalize(v);
    res.vectors.push_back(std::move(v));
  }
  std::vector<size_t> idx(res.vectors.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return res.vectors[a] < res.vectors[b];
  });
  std::vector<std::vector<Int>> sv;
  std::vector<Rat> sn;
  sv.reserve(idx.size());
  sn.reserve(idx.size());
  for (size_t i : idx) {
    sv.push_back(std::move(res.vectors[i]));
    sn.push_back(norms[i]);
  }
  res.vectors = std::move(sv);
  res.norms = std::move(sn);
  return res;
}

ShortVectorSet roots(const Lattice& l) {
  ShortVectorSet all = short_vectors(l, 2);
  ShortVectorSet r;
  r.bound = 2;
  for (size_t i = 0; i < all.vectors.size(); ++i)
    if (all.norms[i] == 2) {
      r.vectors.push_back(all.vectors[i]);
      r.norms.push_back(all.norms[i]);
    }
  return r;
}

long root_count(const Lattice& l) { return roots(l).count(); }

std::vector<Int> theta_coefficients(const Lattice& l, long max_norm) {
  if (max_norm < 0) throw std::invalid_argument("negative norm bound");
  if (!is_even(l)) throw std::invalid_argument("theta requires an even lattice");
  std::vector<Int> counts(size_t(max_norm / 2) + 1, 0);
  counts[0] = 1;
  ShortVectorSet sv = short_vectors(l, max_norm);
  for (size_t i = 0; i < sv.vectors.size(); ++i) {
    Rat nm = sv.norms[i];
    if (nm.get_den() != 1) throw std::logic_error("odd norm in even lattice");
    long k = long(nm.get_num().get_si());
    if (k % 2 != 0) throw std::logic_error("odd norm in even lattice");
    counts[size_t(k / 2)] += 2;
  }
  return counts;
}

std::vector<std::string> root_system_type(const Lattice& l) {
  ShortVectorSet rt = roots(l);
  int m = int(rt.vectors.size());
  UnionFind uf(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (inner(l.gram, rt.vectors[i], rt.vectors[j]) != 0) uf.unite(i, j);

  std::vector<std::vector<int>> comps;
  std::vector<int> comp_of(m, -1);
  for (int i = 0; i < m; ++i) {
    int r = uf.find(i);
    if (comp_of[r] < 0) {
      comp_of[r] = int(comps.size());
      comps.emplace_back();
    }
    comps[comp_of[r]].push_back(i);
  }

  std::vector<std::pair<char, int>> types;
  for (auto& comp : comps) {
    RatMat rows(int(comp.size()), l.rank());
    for (int i = 0; i < int(comp.size()); ++i)
      for (int j = 0; j < l.rank(); ++j)
        rows(i, j) = Rat(rt.vectors[comp[i]][j]);
    int r = rank(rows);
    long c = 2 * long(comp.size());
    if (c == long(r) * (r + 1))
      types.emplace_back('A', r);
    else if (r >= 4 && c == 2L * r * (r - 1))
      types.emplace_back('D', r);
    else if (r == 6 && c == 72)
      types.emplace_back('E', 6);
    else if (r == 7 && c == 126)
      types.emplace_back('E', 7);
    else if (r == 8 && c == 240)
      types.emplace_back('E', 8);
    else
      throw std::runtime_error("unrecognized root system component");
  }
  std::sort(types.begin(), types.end());
  std::vector<std::string> names;
  for (auto& [ch, r] : types) names.push_back(std::string(1, ch) + std::to_string(r));
  return names;
}

}  // namespace latt

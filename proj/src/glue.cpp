#include "latt/glue.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace latt {

namespace {

Rat mod1(const Rat& r) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return r - Rat(f);
}

Rat mod2(const Rat& r) { return mod1(r / 2) * 2; }

Int modp(const Int& x, const Int& p) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return r;
}

IntMat nonzero_rows(const IntMat& m) {
  int nz = 0;
  for (int i = 0; i < m.rows(); ++i) {
    bool zero = true;
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) zero = false;
    if (!zero) nz = i + 1;
  }
  return m.submatrix(0, 0, nz, m.cols());
}

// Order of the subgroup of prod Z/factors generated by the tuple rows.
Int subgroup_order_of(const std::vector<std::vector<Int>>& gens,
                      const std::vector<Int>& factors) {
  int k = int(factors.size());
  Int total = 1;
  for (auto& f : factors) total *= f;
  if (gens.empty()) return 1;
  IntMat stack(int(gens.size()) + k, k);
  for (int i = 0; i < int(gens.size()); ++i)
    for (int j = 0; j < k; ++j) stack(i, j) = gens[i][j];
  for (int j = 0; j < k; ++j) stack(int(gens.size()) + j, j) = factors[j];
  IntMat h = nonzero_rows(hnf(stack).h);
  if (h.rows() != k) throw std::logic_error("degenerate modulus stack");
  Int d = 1;
  for (int j = 0; j < k; ++j) d *= h(j, j);
  return total / d;
}

}  // namespace

Int DiscriminantGroup::order() const {
  Int o = 1;
  for (auto& f : factors) o *= f;
  return o;
}

std::vector<Int> DiscriminantGroup::reduce(std::vector<Int> t) const {
  for (size_t i = 0; i < t.size(); ++i) t[i] = modp(t[i], factors[i]);
  return t;
}

RatMat DiscriminantGroup::lift(const std::vector<Int>& t) const {
  RatMat v(1, lattice.rank());
  for (size_t i = 0; i < t.size(); ++i)
    for (int j = 0; j < lattice.rank(); ++j)
      v(0, j) += Rat(t[i]) * lifts(int(i), j);
  return v;
}

std::vector<Int> DiscriminantGroup::element_of(const RatMat& dual_vec) const {
  RatMat x = dual_vec * lattice.gram;
  if (!is_integral(x))
    throw std::invalid_argument("vector is not in the dual lattice");
  IntMat xv = to_int(x) * snf_v;
  std::vector<Int> t;
  t.reserve(nontrivial_idx.size());
  for (int i : nontrivial_idx) t.push_back(modp(xv(0, i), all_factors[i]));
  return t;
}

Rat DiscriminantGroup::bilinear(const std::vector<Int>& x,
                                const std::vector<Int>& y) const {
  RatMat v = lift(x) * lattice.gram * lift(y).transpose();
  return mod1(v(0, 0));
}

Rat DiscriminantGroup::quadratic(const std::vector<Int>& x) const {
  RatMat v = lift(x) * lattice.gram * lift(x).transpose();
  return mod2(v(0, 0));
}

DiscriminantGroup discriminant_group(const Lattice& l) {
  if (!is_integral(l)) throw std::invalid_argument("lattice must be integral");
  IntMat g = to_int(l.gram);
  SnfResult s = snf(g);
  DiscriminantGroup d;
  d.lattice = l;
  d.snf_v = s.v;
  for (int i = 0; i < s.d.rows(); ++i) {
    d.all_factors.push_back(s.d(i, i));
    if (s.d(i, i) > 1) d.nontrivial_idx.push_back(i);
  }
  for (int i : d.nontrivial_idx) d.factors.push_back(s.d(i, i));
  RatMat gv_inv = inverse(to_rat(g * s.v));
  d.lifts = RatMat(int(d.nontrivial_idx.size()), l.rank());
  for (size_t r = 0; r < d.nontrivial_idx.size(); ++r)
    for (int j = 0; j < l.rank(); ++j)
      d.lifts(int(r), j) = gv_inv(d.nontrivial_idx[r], j);
  return d;
}

Int GlueMap::subgroup_order() const {
  return subgroup_order_of(a_gens, source.factors);
}

GlueMap trivial_glue(const DiscriminantGroup& dq, const DiscriminantGroup& dr) {
  return GlueMap{dq, dr, {}, {}};
}

GlueMap canonical_glue(const GlueMap& g) {
  int k1 = int(g.source.factors.size());
  int k2 = int(g.target.factors.size());
  int ng = int(g.a_gens.size());
  IntMat stack(ng + k1 + k2, k1 + k2);
  for (int i = 0; i < ng; ++i) {
    for (int j = 0; j < k1; ++j) stack(i, j) = g.a_gens[i][j];
    for (int j = 0; j < k2; ++j) stack(i, k1 + j) = g.b_gens[i][j];
  }
  for (int j = 0; j < k1; ++j) stack(ng + j, j) = g.source.factors[j];
  for (int j = 0; j < k2; ++j)
    stack(ng + k1 + j, k1 + j) = g.target.factors[j];
  IntMat h = nonzero_rows(hnf(stack).h);
  GlueMap out{g.source, g.target, {}, {}};
  for (int i = 0; i < h.rows(); ++i) {
    std::vector<Int> a(k1), b(k2);
    bool zero = true;
    for (int j = 0; j < k1; ++j) {
      a[j] = modp(h(i, j), g.source.factors[j]);
      if (a[j] != 0) zero = false;
    }
    for (int j = 0; j < k2; ++j) {
      b[j] = modp(h(i, k1 + j), g.target.factors[j]);
      if (b[j] != 0) zero = false;
    }
    if (zero) continue;
    out.a_gens.push_back(std::move(a));
    out.b_gens.push_back(std::move(b));
  }
  return out;
}

bool glue_equal(const GlueMap& a, const GlueMap& b) {
  GlueMap ca = canonical_glue(a), cb = canonical_glue(b);
  return ca.source.factors == cb.source.factors &&
         ca.target.factors == cb.target.factors && ca.a_gens == cb.a_gens &&
         ca.b_gens == cb.b_gens;
}

Overlattice glue_overlattice(const Lattice& l1, const Lattice& l2,
                             const GlueMap& g) {
  int n1 = l1.rank(), n2 = l2.rank(), n = n1 + n2;
  Lattice sum = direct_sum(l1, l2);
  RatMat rows(n + int(g.a_gens.size()), n);
  for (int i = 0; i < n; ++i) rows(i, i) = 1;
  for (size_t i = 0; i < g.a_gens.size(); ++i) {
    RatMat la = g.source.lift(g.a_gens[i]);
    RatMat lb = g.target.lift(g.b_gens[i]);
    for (int j = 0; j < n1; ++j) rows(n + int(i), j) = la(0, j);
    for (int j = 0; j < n2; ++j) rows(n + int(i), n1 + j) = lb(0, j);
  }
  RatMat basis = rational_hnf(rows);
  if (basis.rows() != n) throw std::logic_error("overlattice basis degenerate");
  Lattice over =
      Lattice::from_basis_form(l1.name + "+" + l2.name + "~glue", basis,
                               sum.gram);
  auto part = [&](int offset, int r) {
    RatMat units(r, n);
    for (int i = 0; i < r; ++i) units(i, offset + i) = 1;
    auto coords = solve_left(basis, units);
    if (!coords || !is_integral(*coords))
      throw std::logic_error("glued parts not contained in overlattice");
    return Sublattice{over, to_int(*coords)};
  };
  Sublattice p1 = part(0, n1), p2 = part(n1, n2);
  return Overlattice{over, std::move(p1), std::move(p2)};
}

GlueMap glue_of_overlattice(const Lattice& l, const Sublattice& sub1,
                            const Sublattice& sub2) {
  int n = l.rank(), r1 = sub1.rank(), r2 = sub2.rank();
  if (r1 + r2 != n) throw std::invalid_argument("ranks do not fill the space");
  RatMat cross = to_rat(sub1.rows) * l.gram * to_rat(sub2.rows).transpose();
  if (!cross.is_zero())
    throw std::invalid_argument("sublattices are not orthogonal");
  if (!is_primitive(sub1) || !is_primitive(sub2))
    throw std::invalid_argument("sublattices must be primitive");

  DiscriminantGroup d1 = discriminant_group(sub1.lattice());
  DiscriminantGroup d2 = discriminant_group(sub2.lattice());

  RatMat split = inverse(to_rat(IntMat::vstack(sub1.rows, sub2.rows)));
  GlueMap g{d1, d2, {}, {}};
  for (int i = 0; i < n; ++i) {
    RatMat x1(1, r1), x2(1, r2);
    for (int j = 0; j < r1; ++j) x1(0, j) = split(i, j);
    for (int j = 0; j < r2; ++j) x2(0, j) = split(i, r1 + j);
    g.a_gens.push_back(d1.element_of(x1));
    g.b_gens.push_back(d2.element_of(x2));
  }
  GlueMap c = canonical_glue(g);
  for (size_t i = 0; i < c.a_gens.size(); ++i) {
    bool a0 = std::all_of(c.a_gens[i].begin(), c.a_gens[i].end(),
                          [](const Int& x) { return x == 0; });
    if (a0) throw std::logic_error("glue is not the graph of a map");
  }
  if (subgroup_order_of(c.a_gens, d1.factors) !=
      subgroup_order_of(c.b_gens, d2.factors))
    throw std::logic_error("glue subgroup orders differ");
  return c;
}

bool is_totally_singular(const GlueMap& g) {
  for (size_t i = 0; i < g.a_gens.size(); ++i)
    for (size_t j = i; j < g.a_gens.size(); ++j) {
      Rat s = g.source.bilinear(g.a_gens[i], g.a_gens[j]) +
              g.target.bilinear(g.b_gens[i], g.b_gens[j]);
      if (mod1(s) != 0) return false;
    }
  return true;
}

bool is_even_glue(const GlueMap& g) {
  if (!is_totally_singular(g)) return false;
  for (size_t i = 0; i < g.a_gens.size(); ++i) {
    Rat s = g.source.quadratic(g.a_gens[i]) + g.target.quadratic(g.b_gens[i]);
    if (mod2(s) != 0) return false;
  }
  return true;
}

IntMat discriminant_action(const DiscriminantGroup& d, const IntMat& g) {
  int k = int(d.factors.size());
  IntMat m(k, k);
  for (int i = 0; i < k; ++i) {
    RatMat img(1, d.lattice.rank());
    for (int j = 0; j < d.lattice.rank(); ++j) img(0, j) = d.lifts(i, j);
    img = img * to_rat(g);
    std::vector<Int> t = d.element_of(img);
    for (int j = 0; j < k; ++j) m(i, j) = t[j];
  }
  return m;
}

GlueMap twist(const GlueMap& g, const IntMat& gq, const IntMat& gr) {
  GlueMap out{g.source, g.target, {}, {}};
  int k1 = int(g.source.factors.size()), k2 = int(g.target.factors.size());
  for (size_t i = 0; i < g.a_gens.size(); ++i) {
    std::vector<Int> a(k1), b(k2);
    for (int c = 0; c < k1; ++c)
      for (int r = 0; r < k1; ++r) a[c] += g.a_gens[i][r] * gq(r, c);
    for (int c = 0; c < k2; ++c)
      for (int r = 0; r < k2; ++r) b[c] += g.b_gens[i][r] * gr(r, c);
    out.a_gens.push_back(out.source.reduce(std::move(a)));
    out.b_gens.push_back(out.target.reduce(std::move(b)));
  }
  return canonical_glue(out);
}

Int similitude_scale(const DiscriminantGroup& d, const IntMat& m) {
  int k = int(d.factors.size());
  if (k == 0) return 1;
  Int expo = d.factors.back();
  std::vector<std::vector<Int>> units(k), images(k);
  for (int i = 0; i < k; ++i) {
    units[i].assign(k, 0);
    units[i][i] = 1;
    std::vector<Int> img(k, 0);
    for (int c = 0; c < k; ++c) img[c] = m(i, c);
    images[i] = d.reduce(std::move(img));
  }
  for (Int lam = 1; lam < expo; ++lam) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = 0; j < k && ok; ++j) {
        Rat lhs = d.bilinear(images[i], images[j]);
        Rat rhs = mod1(Rat(lam) * d.bilinear(units[i], units[j]));
        if (lhs != rhs) ok = false;
      }
    if (ok) return lam;
  }
  throw std::invalid_argument("map is not a similitude");
}

// ---- F3 helpers ----

IntMat mod3_reduce(const IntMat& m) {
  IntMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = modp(m(i, j), 3);
  return r;
}

namespace {

// Row echelon over F3; returns pivot columns.
std::vector<int> mod3_echelon(IntMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    m.swap_rows(row, p);
    Int inv = m(row, col);  // 1 and 2 are self-inverse mod 3
    for (int j = 0; j < m.cols(); ++j) m(row, j) = modp(m(row, j) * inv, 3);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Int c = m(i, col);
      for (int j = 0; j < m.cols(); ++j)
        m(i, j) = modp(m(i, j) - c * m(row, j), 3);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int mod3_rank(const IntMat& m) {
  IntMat w = mod3_reduce(m);
  return int(mod3_echelon(w).size());
}

IntMat mod3_inverse(const IntMat& m) {
  int n = m.rows();
  IntMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = modp(m(i, j), 3);
    aug(i, n + i) = 1;
  }
  auto pivots = mod3_echelon(aug);
  if (int(pivots.size()) != n || pivots.back() != n - 1)
    throw std::invalid_argument("singular matrix over F3");
  return aug.submatrix(0, n, n, n);
}

IntMat mod3_left_kernel(const IntMat& m) {
  // Equations (x m)_j = 0; variables are the entries of the row x.
  IntMat eq = mod3_reduce(m.transpose());
  auto pivots = mod3_echelon(eq);
  int vars = m.rows();
  std::vector<bool> is_pivot(vars, false);
  for (int c : pivots) is_pivot[c] = true;
  IntMat ker(vars - int(pivots.size()), vars);
  int kr = 0;
  for (int free = 0; free < vars; ++free) {
    if (is_pivot[free]) continue;
    ker(kr, free) = 1;
    for (int pi = 0; pi < int(pivots.size()); ++pi)
      ker(kr, pivots[pi]) = modp(-eq(pi, free), 3);
    ++kr;
  }
  return ker;
}

Mod3Space mod3_space(const DiscriminantGroup& d) {
  int k = int(d.factors.size());
  for (auto& f : d.factors)
    if (f != 3) throw std::invalid_argument("group is not 3-elementary");
  Mod3Space s{k, IntMat(k, k)};
  std::vector<std::vector<Int>> units(k);
  for (int i = 0; i < k; ++i) {
    units[i].assign(k, 0);
    units[i][i] = 1;
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      // Gram of the F3 quadratic form x -> (3/2) q(x): diagonal (3/2) q,
      // off-diagonal 2^{-1} * (3 b) = 2 * (3 b) in characteristic 3.
      Rat v = (i == j) ? Rat(d.quadratic(units[i]) * Rat(3, 2))
                       : Rat(d.bilinear(units[i], units[j]) * 3);
      if (v.get_den() != 1)
        throw std::invalid_argument("form does not reduce mod 3");
      s.form(i, j) = modp((i == j ? 1 : 2) * v.get_num(), 3);
    }
  return s;
}

IntMat mod3_matrix(const IntMat& g) { return mod3_reduce(g); }

Mod3FixedReport fixed_space_mod3(const Mod3Space& s,
                                 const std::vector<IntMat>& gens) {
  int n = s.dim;
  IntMat eqs(n, 0);
  for (auto& g : gens) {
    IntMat gi = mod3_reduce(g - IntMat::identity(n));
    eqs = IntMat::vstack(eqs.transpose(), gi.transpose()).transpose();
  }
  IntMat fixed = gens.empty() ? IntMat::identity(n) : mod3_left_kernel(eqs);
  Mod3FixedReport rep{};
  rep.fixed_dim = fixed.rows();
  IntMat ff = mod3_reduce(fixed * s.form * fixed.transpose());
  rep.fixed_nonsingular = mod3_rank(ff) == fixed.rows();
  IntMat comp = mod3_left_kernel(mod3_reduce(s.form * fixed.transpose()));
  rep.complement_dim = comp.rows();
  IntMat cf = mod3_reduce(comp * s.form * comp.transpose());
  rep.complement_nonsingular = mod3_rank(cf) == comp.rows();
  return rep;
}

namespace {

// U F U^T = diag for a nondegenerate symmetric form over F3.
void mod3_diagonalize(const IntMat& form, IntMat& u, std::vector<Int>& diag) {
  int n = form.rows();
  std::vector<IntMat> basis;  // current complement rows, 1 x n
  for (int i = 0; i < n; ++i) {
    IntMat e(1, n);
    e(0, i) = 1;
    basis.push_back(e);
  }
  u = IntMat(n, n);
  diag.clear();
  auto q = [&](const IntMat& v) {
    return modp((v * form * v.transpose())(0, 0), 3);
  };
  auto b = [&](const IntMat& v, const IntMat& w) {
    return modp((v * form * w.transpose())(0, 0), 3);
  };
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    IntMat v;
    for (size_t i = 0; i < basis.size() && pick < 0; ++i)
      if (q(basis[i]) != 0) {
        pick = int(i);
        v = basis[i];
      }
    if (pick < 0) {
      // All basis vectors isotropic; some pair sum is not.
      for (size_t i = 0; i < basis.size() && pick < 0; ++i)
        for (size_t j = i + 1; j < basis.size() && pick < 0; ++j) {
          IntMat w = mod3_reduce(basis[i] + basis[j]);
          if (q(w) != 0) {
            pick = int(i);
            v = w;
          }
        }
      if (pick < 0) throw std::invalid_argument("degenerate form over F3");
    }
    Int qv = q(v);
    for (int j = 0; j < n; ++j) u(step, j) = v(0, j);
    diag.push_back(qv);
    std::vector<IntMat> next;
    for (size_t i = 0; i < basis.size(); ++i) {
      if (int(i) == pick) continue;
      // qv is 1 or 2, hence self-inverse mod 3.
      IntMat w = mod3_reduce(basis[i] - v * (b(basis[i], v) * qv));
      next.push_back(w);
    }
    basis = std::move(next);
  }
}

// T with T diag(d) T^T = diag(1,...,1,delta), delta the det class.
IntMat mod3_normalize_diag(const std::vector<Int>& d) {
  int n = int(d.size());
  std::vector<int> ones, twos;
  for (int i = 0; i < n; ++i) (d[i] == 1 ? ones : twos).push_back(i);
  IntMat t(n, n);
  int row = 0;
  for (int i : ones) t(row++, i) = 1;
  // diag(2,2) -> diag(1,1) via [[1,1],[1,-1]].
  for (size_t k = 0; k + 1 < twos.size(); k += 2) {
    int i = twos[k], j = twos[k + 1];
    t(row, i) = 1;
    t(row, j) = 1;
    ++row;
    t(row, i) = 1;
    t(row, j) = 2;
    ++row;
  }
  if (twos.size() % 2 == 1) t(row++, twos.back()) = 1;
  return t;
}

}  // namespace

GlueMap random_valid_glue(const DiscriminantGroup& dq,
                          const DiscriminantGroup& dr, uint64_t seed) {
  Mod3Space sq = mod3_space(dq), sr = mod3_space(dr);
  if (sq.dim != sr.dim) throw std::invalid_argument("group orders differ");
  int n = sq.dim;
  IntMat a = mod3_reduce(-sq.form);  // target: S sr.form S^T = -sq.form
  IntMat ua, ub;
  std::vector<Int> da, db;
  mod3_diagonalize(a, ua, da);
  mod3_diagonalize(sr.form, ub, db);
  IntMat ta = mod3_normalize_diag(da), tb = mod3_normalize_diag(db);
  Int prod_a = 1, prod_b = 1;
  for (auto& x : da) prod_a = modp(prod_a * x, 3);
  for (auto& x : db) prod_b = modp(prod_b * x, 3);
  if (prod_a != prod_b)
    throw std::invalid_argument("forms are not anti-isometric");
  IntMat s = mod3_reduce(mod3_inverse(ua) * mod3_inverse(ta) * tb * ub);
  if (mod3_reduce(s * sr.form * s.transpose()) != a)
    throw std::logic_error("anti-isometry construction failed");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(0, 2);
  auto random_reflection = [&](const IntMat& form) {
    while (true) {
      IntMat v(1, n);
      bool nz = false;
      for (int j = 0; j < n; ++j) {
        v(0, j) = coef(rng);
        if (v(0, j) != 0) nz = true;
      }
      if (!nz) continue;
      Int qv = modp((v * form * v.transpose())(0, 0), 3);
      if (qv == 0) continue;
      // x -> x - 2 <x,v>/q(v) v; q(v) in {1,2} is self-inverse mod 3.
      IntMat r = IntMat::identity(n) - form * v.transpose() * v * (2 * qv);
      return mod3_reduce(r);
    }
  };
  for (int t = 0; t < 40; ++t) {
    if (t % 2 == 0)
      s = mod3_reduce(random_reflection(sq.form) * s);
    else
      s = mod3_reduce(s * random_reflection(sr.form));
  }

  GlueMap g{dq, dr, {}, {}};
  for (int i = 0; i < n; ++i) {
    std::vector<Int> ai(n, 0), bi(n);
    ai[i] = 1;
    for (int j = 0; j < n; ++j) bi[j] = s(i, j);
    g.a_gens.push_back(std::move(ai));
    g.b_gens.push_back(std::move(bi));
  }
  return canonical_glue(g);
}

}  // namespace latt

#include "latt/lattice.hpp"

#include <stdexcept>

namespace latt {

namespace {

std::optional<Rat> scalar_multiple_of_identity(const RatMat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return std::nullopt;
  Rat s = m(0, 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? s : Rat(0))) return std::nullopt;
  return s;
}

RatMat gram_from_embedding(const RatMat& basis, const RatMat& ambient) {
  return basis * ambient * basis.transpose();
}

}  // namespace

Lattice Lattice::from_gram(std::string name, RatMat gram) {
  if (!gram.is_symmetric()) throw std::invalid_argument("gram not symmetric");
  return Lattice{std::move(name), std::move(gram), std::nullopt};
}

Lattice Lattice::from_basis(std::string name, RatMat basis, Rat ambient_scale) {
  RatMat ambient = RatMat::identity(basis.cols()) * ambient_scale;
  RatMat g = gram_from_embedding(basis, ambient);
  return Lattice{std::move(name), std::move(g),
                 Embedding{std::move(basis), std::move(ambient), ambient_scale}};
}

Lattice Lattice::from_basis_form(std::string name, RatMat basis,
                                 RatMat ambient_gram) {
  if (!ambient_gram.is_symmetric())
    throw std::invalid_argument("ambient form not symmetric");
  RatMat g = gram_from_embedding(basis, ambient_gram);
  auto s = scalar_multiple_of_identity(ambient_gram);
  return Lattice{std::move(name), std::move(g),
                 Embedding{std::move(basis), std::move(ambient_gram), s}};
}

long Isometry::order() const {
  if (order_cache) return *order_cache;
  IntMat p = matrix;
  long k = 1;
  const long limit = 1000000;
  while (!p.is_identity()) {
    p = p * matrix;
    if (++k > limit) throw std::runtime_error("isometry order exceeds limit");
  }
  order_cache = k;
  return k;
}

bool is_isometry_of(const Lattice& l, const IntMat& m) {
  if (m.rows() != l.rank() || m.cols() != l.rank()) return false;
  RatMat mr = to_rat(m);
  return mr * l.gram * mr.transpose() == l.gram;
}

Isometry make_isometry(const Lattice& l, IntMat m) {
  if (!is_isometry_of(l, m))
    throw std::invalid_argument("matrix does not preserve the form");
  return Isometry{std::move(m), std::nullopt};
}

Lattice Sublattice::lattice() const {
  RatMat rows_r = to_rat(rows);
  RatMat g = rows_r * parent.gram * rows_r.transpose();
  Embedding e;
  if (parent.emb) {
    e.basis = rows_r * parent.emb->basis;
    e.ambient_gram = parent.emb->ambient_gram;
    e.scale = parent.emb->scale;
  } else {
    e.basis = rows_r;
    e.ambient_gram = parent.gram;
    e.scale = scalar_multiple_of_identity(parent.gram);
  }
  return Lattice{parent.name + ".sub", std::move(g), std::move(e)};
}

Lattice dual(const Lattice& l) {
  RatMat ginv = inverse(l.gram);
  Lattice r;
  r.name = l.name + "*";
  r.gram = ginv;
  if (l.emb) {
    Embedding e = *l.emb;
    e.basis = ginv * l.emb->basis;
    r.emb = std::move(e);
  }
  return r;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  Lattice r;
  r.name = a.name + "+" + b.name;
  r.gram = RatMat::block_diag(a.gram, b.gram);
  if (a.emb && b.emb) {
    Embedding e;
    e.basis = RatMat::block_diag(a.emb->basis, b.emb->basis);
    e.ambient_gram =
        RatMat::block_diag(a.emb->ambient_gram, b.emb->ambient_gram);
    e.scale = scalar_multiple_of_identity(e.ambient_gram);
    r.emb = std::move(e);
  }
  return r;
}

Lattice scale(const Lattice& l, const Rat& k) {
  if (k <= 0) throw std::invalid_argument("scale factor must be positive");
  Lattice r;
  r.name = l.name + "(" + to_string(k) + ")";
  r.gram = l.gram * k;
  if (l.emb) {
    Embedding e = *l.emb;
    e.ambient_gram = e.ambient_gram * k;
    if (e.scale) e.scale = *e.scale * k;
    r.emb = std::move(e);
  }
  return r;
}

Lattice tensor(const Lattice& a, const Lattice& b) {
  Lattice r;
  r.name = a.name + "x" + b.name;
  r.gram = RatMat::kronecker(a.gram, b.gram);
  if (a.emb && b.emb) {
    Embedding e;
    e.basis = RatMat::kronecker(a.emb->basis, b.emb->basis);
    e.ambient_gram =
        RatMat::kronecker(a.emb->ambient_gram, b.emb->ambient_gram);
    e.scale = scalar_multiple_of_identity(e.ambient_gram);
    r.emb = std::move(e);
  }
  return r;
}

bool is_integral(const Lattice& l) { return is_integral(l.gram); }

bool is_even(const Lattice& l) {
  if (!is_integral(l.gram)) return false;
  for (int i = 0; i < l.rank(); ++i)
    if (l.gram(i, i).get_num() % 2 != 0) return false;
  return true;
}

bool is_unimodular(const Lattice& l) {
  return is_integral(l.gram) && abs(det(l.gram)) == 1;
}

Rat determinant(const Lattice& l) { return det(l.gram); }

std::optional<RatMat> span_coords(const Lattice& l, const RatMat& v) {
  if (!l.emb) throw std::logic_error("span_coords requires an embedding");
  return solve_left(l.emb->basis, v);
}

bool contains(const Lattice& l, const RatMat& v) {
  auto c = span_coords(l, v);
  return c && is_integral(*c);
}

Sublattice sublattice(const Lattice& parent, IntMat generators) {
  if (generators.cols() != parent.rank())
    throw std::invalid_argument("generator width does not match parent rank");
  IntMat h = hnf(generators).h;
  int nz = 0;
  for (int i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (int j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) zero = false;
    if (!zero) nz = i + 1;
  }
  return Sublattice{parent, h.submatrix(0, 0, nz, h.cols())};
}

std::optional<Int> index(const Sublattice& sub) {
  if (sub.rank() < sub.parent.rank()) return std::nullopt;
  return abs(det(sub.rows));
}

bool is_primitive(const Sublattice& sub) {
  IntMat sat = saturate_rows(sub.rows);
  return hnf(sat).h == hnf(sub.rows).h;
}

Sublattice annihilator(const Lattice& l, const Sublattice& sub) {
  RatMat a = l.gram * to_rat(sub.rows).transpose();
  Int d = common_denominator(a);
  IntMat ai = to_int(a * Rat(d));
  return Sublattice{l, left_kernel_saturated(ai)};
}

Sublattice fixed_sublattice(const Lattice& l, const Isometry& g) {
  IntMat m = g.matrix - IntMat::identity(g.matrix.rows());
  return Sublattice{l, left_kernel_saturated(m)};
}

Sublattice cofixed_sublattice(const Lattice& l, const Isometry& g) {
  return annihilator(l, fixed_sublattice(l, g));
}

bool has_fixed_points(const Isometry& g) {
  auto c = char_poly(to_rat(g.matrix));
  Rat at1 = 0;
  for (size_t i = 0; i < c.size(); ++i) at1 += c[i];
  return at1 == 0;
}

std::vector<Rat> char_poly(const Isometry& g) {
  return char_poly(to_rat(g.matrix));
}

Int trace(const Isometry& g) {
  Int t = 0;
  for (int i = 0; i < g.matrix.rows(); ++i) t += g.matrix(i, i);
  return t;
}

std::optional<Isometry> extend_isometry(const Lattice& l, const Sublattice& sub,
                                        const Isometry& g_on_sub) {
  if (sub.rank() != l.rank())
    throw std::invalid_argument("extension needs a finite-index sublattice");
  RatMat b = to_rat(sub.rows);
  RatMat e = inverse(b) * to_rat(g_on_sub.matrix) * b;
  if (!is_integral(e)) return std::nullopt;
  IntMat ei = to_int(e);
  if (!is_isometry_of(l, ei)) return std::nullopt;
  return Isometry{std::move(ei), g_on_sub.order_cache};
}

RatMat rational_hnf(const RatMat& rows) {
  Int d = common_denominator(rows);
  IntMat h = hnf(to_int(rows * Rat(d))).h;
  int nz = 0;
  for (int i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (int j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) zero = false;
    if (!zero) nz = i + 1;
  }
  return to_rat(h.submatrix(0, 0, nz, h.cols())) * Rat(1, d);
}

RatMat canonical_basis(const Lattice& l) {
  if (!l.emb) throw std::logic_error("canonical_basis requires an embedding");
  return rational_hnf(l.emb->basis);
}

}  // namespace latt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "latt/lattice.hpp"

using namespace latt;

namespace {

RatMat a2_gram() { return RatMat{{2, -1}, {-1, 2}}; }

RatMat e8_gram() {
  RatMat g(8, 8);
  for (int i = 0; i < 8; ++i) g(i, i) = 2;
  auto link = [&](int i, int j) { g(i, j) = -1; g(j, i) = -1; };
  link(0, 1);
  link(1, 2);
  link(2, 3);
  link(3, 4);
  link(4, 5);
  link(5, 6);
  link(4, 7);
  return g;
}

// A2 as the zero-sum sublattice of Z^3.
Lattice a2_embedded() {
  return Lattice::from_basis("A2", RatMat{{1, -1, 0}, {0, 1, -1}}, 1);
}

}  // namespace

TEST_CASE("gram constructors and predicates") {
  Lattice e8 = Lattice::from_gram("E8", e8_gram());
  CHECK(e8.rank() == 8);
  CHECK(is_integral(e8));
  CHECK(is_even(e8));
  CHECK(is_unimodular(e8));
  CHECK(determinant(e8) == 1);

  Lattice a2 = a2_embedded();
  CHECK(a2.gram == a2_gram());
  CHECK(is_even(a2));
  CHECK(determinant(a2) == 3);
  CHECK(!is_unimodular(a2));

  Lattice odd = Lattice::from_gram("Z", RatMat{{1}});
  CHECK(is_integral(odd));
  CHECK(!is_even(odd));
}

TEST_CASE("dual determinant and involution") {
  Lattice a2 = a2_embedded();
  Lattice d = dual(a2);
  CHECK(determinant(d) == Rat(1, 3));
  Lattice dd = dual(d);
  CHECK(dd.gram == a2.gram);
  CHECK(canonical_basis(dd) == canonical_basis(a2));
  // Dual basis vectors pair integrally with the lattice.
  RatMat pairing = d.emb->basis * d.emb->ambient_gram * a2.emb->basis.transpose();
  CHECK(is_integral(pairing));
}

TEST_CASE("direct sum and tensor") {
  Lattice a2 = Lattice::from_gram("A2", a2_gram());
  Lattice e8 = Lattice::from_gram("E8", e8_gram());
  Lattice s = direct_sum(a2, e8);
  CHECK(s.rank() == 10);
  CHECK(determinant(s) == 3);

  Lattice t = tensor(a2, e8);
  CHECK(t.rank() == 16);
  CHECK(is_even(t));
  CHECK(determinant(t) == 6561);  // 3^8
}

TEST_CASE("scale") {
  Lattice a2 = a2_embedded();
  Lattice s = scale(a2, 3);
  CHECK(s.gram == a2.gram * Rat(3));
  CHECK(s.emb->scale == Rat(3));
  CHECK(determinant(s) == 27);
}

TEST_CASE("membership in embedded lattice") {
  Lattice a2 = a2_embedded();
  CHECK(contains(a2, RatMat{{1, -1, 0}}));
  CHECK(contains(a2, RatMat{{1, 0, -1}}));
  CHECK(!contains(a2, RatMat{{1, 0, 0}}));          // not in the span
  CHECK(!contains(a2, RatMat{{Rat(1, 3), Rat(1, 3), Rat(-2, 3)}}));
  CHECK(contains(dual(a2), RatMat{{Rat(2, 3), Rat(-1, 3), Rat(-1, 3)}}));
}

TEST_CASE("sublattice index and primitivity") {
  Lattice z2 = Lattice::from_gram("Z2", RatMat::identity(2));
  Sublattice two = sublattice(z2, IntMat{{2, 0}, {0, 2}});
  CHECK(index(two) == Int(4));
  CHECK(!is_primitive(two));

  Sublattice line = sublattice(z2, IntMat{{2, 4}});
  CHECK(!index(line).has_value());
  CHECK(!is_primitive(line));
  Sublattice pline = sublattice(z2, IntMat{{1, 2}});
  CHECK(is_primitive(pline));

  // Redundant generators collapse to a rank-2 canonical form.
  Sublattice red = sublattice(z2, IntMat{{1, 0}, {0, 1}, {1, 1}});
  CHECK(red.rank() == 2);
  CHECK(index(red) == Int(1));

  // index^2 * det(parent) = det(sub) for full-rank sublattices.
  Lattice sub_l = two.lattice();
  CHECK(determinant(sub_l) == Rat(4 * 4) * determinant(z2));
}

TEST_CASE("annihilator splits an orthogonal sum") {
  Lattice a2 = Lattice::from_gram("A2", a2_gram());
  Lattice s = direct_sum(a2, a2);
  Sublattice first = sublattice(s, IntMat{{1, 0, 0, 0}, {0, 1, 0, 0}});
  Sublattice ann = annihilator(s, first);
  CHECK(ann.rank() == 2);
  CHECK(is_primitive(ann));
  CHECK(ann.lattice().gram == a2.gram);
}

TEST_CASE("coxeter rotation on A2") {
  Lattice a2 = Lattice::from_gram("A2", a2_gram());
  Isometry h = make_isometry(a2, IntMat{{0, 1}, {-1, -1}});
  CHECK(h.order() == 3);
  CHECK(trace(h) == -1);
  CHECK(!has_fixed_points(h));
  auto c = char_poly(h);  // x^2 + x + 1
  CHECK(c[2] == 1);
  CHECK(c[1] == 1);
  CHECK(c[0] == 1);
  CHECK(fixed_sublattice(a2, h).rank() == 0);

  CHECK_THROWS(make_isometry(a2, IntMat{{1, 1}, {0, 1}}));
}

TEST_CASE("fixed and cofixed of a swap") {
  Lattice z2 = Lattice::from_gram("Z2", RatMat::identity(2));
  Isometry s = make_isometry(z2, IntMat{{0, 1}, {1, 0}});
  Sublattice fix = fixed_sublattice(z2, s);
  REQUIRE(fix.rank() == 1);
  CHECK(fix.lattice().gram == RatMat{{2}});
  CHECK(is_primitive(fix));
  Sublattice co = cofixed_sublattice(z2, s);
  REQUIRE(co.rank() == 1);
  CHECK(co.lattice().gram == RatMat{{2}});
  CHECK(has_fixed_points(s));
}

TEST_CASE("cycle on three E8 factors") {
  Lattice e8 = Lattice::from_gram("E8", e8_gram());
  Lattice l = direct_sum(direct_sum(e8, e8), e8);
  IntMat c(24, 24);
  for (int i = 0; i < 24; ++i) c(i, (i + 8) % 24) = 1;
  Isometry g = make_isometry(l, c);
  CHECK(g.order() == 3);

  Sublattice fix = fixed_sublattice(l, g);
  REQUIRE(fix.rank() == 8);
  RatMat fg = fix.lattice().gram;
  CHECK(det(fg) == 6561);  // 3^8, the diagonal E8 rescaled by 3
  auto inv = invariant_factors(to_int(fg));
  REQUIRE(inv.size() == 8);
  for (auto& x : inv) CHECK(x == 3);

  Sublattice co = cofixed_sublattice(l, g);
  CHECK(co.rank() == 16);
  CHECK(is_even(co.lattice()));
  CHECK(is_primitive(co));
}

TEST_CASE("isometry extension from a sublattice") {
  Lattice z2 = Lattice::from_gram("Z2", RatMat::identity(2));
  // Orthogonal norm-5 frame; its generator swap does not preserve Z^2.
  Sublattice frame{z2, IntMat{{2, 1}, {-1, 2}}};
  Lattice fl = frame.lattice();
  CHECK(fl.gram == RatMat::identity(2) * Rat(5));
  Isometry swap = make_isometry(fl, IntMat{{0, 1}, {1, 0}});
  CHECK(!extend_isometry(z2, frame, swap).has_value());
  Isometry neg = make_isometry(fl, IntMat{{-1, 0}, {0, -1}});
  auto ext = extend_isometry(z2, frame, neg);
  REQUIRE(ext.has_value());
  CHECK(ext->matrix == IntMat{{-1, 0}, {0, -1}});
}

TEST_CASE("rational hnf canonicalizes row spans") {
  std::mt19937_64 rng(5);
  RatMat basis{{Rat(1, 2), Rat(1, 3), 0}, {0, 1, Rat(5, 7)}};
  RatMat canon = rational_hnf(basis);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 10; ++t) {
    // Unimodular scramble of the rows.
    RatMat b = basis;
    for (int s = 0; s < 6; ++s) {
      int i = rng() % 2, j = 1 - i;
      Rat c = coef(rng);
      for (int k = 0; k < 3; ++k) b(i, k) += c * b(j, k);
    }
    CHECK(rational_hnf(b) == canon);
  }
  CHECK(rational_hnf(canon) == canon);
}

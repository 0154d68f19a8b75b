#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "latt/glue.hpp"
#include "latt/shortvec.hpp"

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

RatMat e6_gram() {
  // Chain 0-1-2-3-4 with node 5 attached to 2.
  RatMat g(6, 6);
  for (int i = 0; i < 6; ++i) g(i, i) = 2;
  auto link = [&](int i, int j) { g(i, j) = -1; g(j, i) = -1; };
  link(0, 1);
  link(1, 2);
  link(2, 3);
  link(3, 4);
  link(2, 5);
  return g;
}

Lattice q_lattice() {
  return tensor(Lattice::from_gram("A2", a2_gram()),
                Lattice::from_gram("E8", e8_gram()));
}

Lattice r_lattice() {
  return scale(Lattice::from_gram("E8", e8_gram()), 3);
}

}  // namespace

TEST_CASE("discriminant group basics") {
  Lattice e8 = Lattice::from_gram("E8", e8_gram());
  DiscriminantGroup trivial = discriminant_group(e8);
  CHECK(trivial.order() == 1);
  CHECK(trivial.factors.empty());

  Lattice a2 = Lattice::from_gram("A2", a2_gram());
  DiscriminantGroup d = discriminant_group(a2);
  REQUIRE(d.factors == std::vector<Int>{3});
  CHECK(d.order() == 3);
  std::vector<Int> one{1}, two{2};
  // Generator lift lies in the dual: pairings with the lattice are integral.
  RatMat pair = d.lift(one) * a2.gram;
  CHECK(is_integral(pair));
  CHECK(d.element_of(d.lift(one)) == one);
  CHECK(d.element_of(d.lift(two)) == two);
  // Nontrivial classes of A2*/A2 have quadratic value 2/3 mod 2.
  CHECK(d.quadratic(one) == Rat(2, 3));
  CHECK(d.quadratic(two) == Rat(2, 3));
  CHECK(d.bilinear(one, one) == d.bilinear(one, one));
  // q(x+y) - q(x) - q(y) = 2 b(x,y) mod 2.
  Rat lhs = d.quadratic(d.reduce({3})) - d.quadratic(one) - d.quadratic(two);
  Rat rhs = 2 * d.bilinear(one, two);
  Rat diff = lhs - rhs;
  Int num_floor;
  mpz_fdiv_q(num_floor.get_mpz_t(), diff.get_num().get_mpz_t(),
             diff.get_den().get_mpz_t());
  CHECK(diff == Rat(num_floor));  // difference is an even integer
  CHECK(num_floor % 2 == 0);
}

TEST_CASE("Q and R are 3-elementary of order 3^8") {
  DiscriminantGroup dq = discriminant_group(q_lattice());
  DiscriminantGroup dr = discriminant_group(r_lattice());
  REQUIRE(dq.factors.size() == 8);
  REQUIRE(dr.factors.size() == 8);
  for (auto& f : dq.factors) CHECK(f == 3);
  for (auto& f : dr.factors) CHECK(f == 3);
  Mod3Space sq = mod3_space(dq), sr = mod3_space(dr);
  CHECK(mod3_rank(sq.form) == 8);
  CHECK(mod3_rank(sr.form) == 8);
}

TEST_CASE("trivial glue reproduces the orthogonal sum") {
  Lattice a2 = Lattice::from_gram("A2", a2_gram());
  Lattice e8 = Lattice::from_gram("E8", e8_gram());
  GlueMap g = trivial_glue(discriminant_group(a2), discriminant_group(e8));
  CHECK(is_totally_singular(g));
  CHECK(is_even_glue(g));
  CHECK(g.subgroup_order() == 1);
  Overlattice over = glue_overlattice(a2, e8, g);
  CHECK(over.lattice.rank() == 10);
  CHECK(determinant(over.lattice) == 3);
  CHECK(over.lattice.gram == direct_sum(a2, e8).gram);
}

TEST_CASE("gluing A2 to E6 yields E8") {
  Lattice a2 = Lattice::from_gram("A2", a2_gram());
  Lattice e6 = Lattice::from_gram("E6", e6_gram());
  DiscriminantGroup da = discriminant_group(a2);
  DiscriminantGroup de = discriminant_group(e6);
  REQUIRE(de.factors == std::vector<Int>{3});
  // Both classes of each discriminant group carry the same quadratic value,
  // so both pairings are even glues and both overlattices are copies of E8.
  for (int k = 1; k <= 2; ++k) {
    GlueMap g{da, de, {{Int(1)}}, {{Int(k)}}};
    CHECK(is_even_glue(g));
    Overlattice over = glue_overlattice(a2, e6, g);
    CHECK(is_even(over.lattice));
    CHECK(determinant(over.lattice) == 1);
    CHECK(root_count(over.lattice) == 240);
    Sublattice both =
        sublattice(over.lattice, IntMat::vstack(over.part1.rows, over.part2.rows));
    CHECK(index(both) == Int(3));
  }
}

TEST_CASE("non-singular glue detected") {
  Lattice a2 = Lattice::from_gram("A2", a2_gram());
  DiscriminantGroup da = discriminant_group(a2);
  // q + q = 4/3 on both pairings: no even glue between two A2 factors.
  for (int k = 1; k <= 2; ++k) {
    GlueMap g{da, da, {{Int(1)}}, {{Int(k)}}};
    CHECK(!is_even_glue(g));
  }
}

TEST_CASE("random glue gives an even unimodular rank-24 lattice") {
  Lattice q = q_lattice(), r = r_lattice();
  DiscriminantGroup dq = discriminant_group(q), dr = discriminant_group(r);
  GlueMap g = random_valid_glue(dq, dr, 42);
  CHECK(is_totally_singular(g));
  CHECK(is_even_glue(g));
  CHECK(g.subgroup_order() == 6561);
  Overlattice over = glue_overlattice(q, r, g);
  CHECK(is_even(over.lattice));
  CHECK(determinant(over.lattice) == 1);
  // det(over) * |A|^2 = det(Q) * det(R)
  CHECK(determinant(over.lattice) * Rat(6561) * Rat(6561) ==
        determinant(q) * determinant(r));
  Sublattice both =
      sublattice(over.lattice, IntMat::vstack(over.part1.rows, over.part2.rows));
  CHECK(index(both) == Int(6561));
  CHECK(is_primitive(over.part1));
  CHECK(is_primitive(over.part2));

  // Determinism and seed sensitivity.
  GlueMap g2 = random_valid_glue(dq, dr, 42);
  CHECK(glue_equal(g, g2));
  GlueMap g3 = random_valid_glue(dq, dr, 43);
  CHECK(!glue_equal(g, g3));
}

TEST_CASE("glue round trip through the overlattice") {
  Lattice q = q_lattice(), r = r_lattice();
  DiscriminantGroup dq = discriminant_group(q), dr = discriminant_group(r);
  for (uint64_t seed : {7u, 8u}) {
    GlueMap g = random_valid_glue(dq, dr, seed);
    Overlattice over = glue_overlattice(q, r, g);
    GlueMap back = glue_of_overlattice(over.lattice, over.part1, over.part2);
    CHECK(glue_equal(g, back));
  }
}

TEST_CASE("sampled overlattice root counts are Niemeier-compatible") {
  Lattice q = q_lattice(), r = r_lattice();
  DiscriminantGroup dq = discriminant_group(q), dr = discriminant_group(r);
  std::vector<long> allowed{0, 48, 72, 144, 216, 336, 720};
  for (uint64_t seed : {1u, 2u, 3u}) {
    GlueMap g = random_valid_glue(dq, dr, seed);
    Overlattice over = glue_overlattice(q, r, g);
    long rc = root_count(over.lattice);
    CHECK(std::count(allowed.begin(), allowed.end(), rc) == 1);
  }
}

TEST_CASE("twist is a group action and preserves glue classes") {
  Lattice q = q_lattice(), r = r_lattice();
  DiscriminantGroup dq = discriminant_group(q), dr = discriminant_group(r);
  GlueMap g = random_valid_glue(dq, dr, 5);

  // Isometries: Coxeter rotation on the A2 tensor factor, reflection swap on R.
  IntMat hq = IntMat::kronecker(IntMat{{0, 1}, {-1, -1}}, IntMat::identity(8));
  Isometry hq_iso = make_isometry(q, hq);
  IntMat mq = discriminant_action(dq, hq);

  IntMat wr(8, 8);  // diagram symmetry of E8 acts trivially; use -1 instead
  for (int i = 0; i < 8; ++i) wr(i, i) = -1;
  Isometry wr_iso = make_isometry(r, wr);
  IntMat mr = discriminant_action(dr, wr);

  CHECK(glue_equal(twist(g, IntMat::identity(8), IntMat::identity(8)), g));

  GlueMap t1 = twist(twist(g, mq, mr), mq, mr);
  GlueMap t2 = twist(g, mq * mq, mr * mr);
  CHECK(glue_equal(t1, t2));

  // Twisting by discriminant actions of isometries keeps the glue valid.
  GlueMap t = twist(g, mq, mr);
  CHECK(is_even_glue(t));
  CHECK(t.subgroup_order() == 6561);
}

TEST_CASE("similitude scales") {
  Lattice a2 = Lattice::from_gram("A2", a2_gram());
  DiscriminantGroup d = discriminant_group(a2);
  CHECK(similitude_scale(d, IntMat::identity(1)) == 1);
  CHECK(similitude_scale(d, IntMat{{-1}}) == 1);  // b(-x,-y) = b(x,y)
  CHECK(similitude_scale(d, IntMat{{2}}) == 1);   // 4 = 1 mod 3

  Lattice z9 = Lattice::from_gram("Z9", RatMat{{9}});
  DiscriminantGroup d9 = discriminant_group(z9);
  REQUIRE(d9.factors == std::vector<Int>{9});
  CHECK(similitude_scale(d9, IntMat{{4}}) == 7);  // 16 = 7 mod 9
  CHECK_THROWS(similitude_scale(d9, IntMat{{3}}));
}

TEST_CASE("F3 linear algebra helpers") {
  IntMat m{{1, 2, 0}, {2, 1, 1}, {0, 1, 2}};
  IntMat mi = mod3_inverse(m);
  CHECK(mod3_reduce(m * mi).is_identity());
  CHECK(mod3_rank(m) == 3);

  IntMat sing{{1, 2}, {2, 4}};
  CHECK(mod3_rank(sing) == 1);
  IntMat k = mod3_left_kernel(sing);
  REQUIRE(k.rows() == 1);
  CHECK(mod3_reduce(k * sing).is_zero());
  CHECK_THROWS(mod3_inverse(sing));
}

TEST_CASE("mod3 fixed spaces on E8") {
  Lattice e8 = Lattice::from_gram("E8", e8_gram());
  Mod3Space s{8, mod3_reduce(to_int(e8.gram))};
  CHECK(mod3_rank(s.form) == 8);

  auto rep = fixed_space_mod3(s, {});
  CHECK(rep.fixed_dim == 8);
  CHECK(rep.fixed_nonsingular);
  CHECK(rep.complement_dim == 0);

  // A simple reflection fixes a 7-dim space; its complement is the root line.
  IntMat refl = IntMat::identity(8);
  // s_0: x -> x - <x, a_0> a_0 in the root basis.
  IntMat g = to_int(e8.gram);
  for (int j = 0; j < 8; ++j) refl(0, j) -= g(0, j);
  // refl row i: e_i - <e_i, a_0> a_0 means column update; build directly.
  IntMat sr(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      sr(i, j) = (i == j ? 1 : 0) - (j == 0 ? g(i, 0) : 0);
  Isometry si = make_isometry(e8, sr);
  auto r2 = fixed_space_mod3(s, {mod3_matrix(sr)});
  CHECK(r2.fixed_dim == 7);
  CHECK(r2.fixed_nonsingular);
  CHECK(r2.complement_dim == 1);
  CHECK(r2.complement_nonsingular);
}

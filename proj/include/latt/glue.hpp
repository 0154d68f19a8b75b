#pragma once

#include <cstdint>
#include <vector>

#include "latt/lattice.hpp"

namespace latt {

// L*/L presented through the Smith normal form of the Gram matrix.
// Elements are integer tuples modulo the nontrivial invariant factors;
// each generator has a fixed rational lift (coordinates in L's basis).
struct DiscriminantGroup {
  Lattice lattice;
  std::vector<Int> factors;  // nontrivial invariant factors, d[i] | d[i+1]
  RatMat lifts;              // one row per factor, in L-basis coordinates

  // Full SNF data, kept so dual vectors can be mapped back to tuples.
  IntMat snf_v;
  std::vector<Int> all_factors;
  std::vector<int> nontrivial_idx;

  Int order() const;
  std::vector<Int> reduce(std::vector<Int> t) const;
  RatMat lift(const std::vector<Int>& t) const;  // 1 x rank rational row
  // Tuple of a dual vector given in L-basis coordinates.
  std::vector<Int> element_of(const RatMat& dual_vec) const;

  Rat bilinear(const std::vector<Int>& x, const std::vector<Int>& y) const;  // in [0,1)
  Rat quadratic(const std::vector<Int>& x) const;                            // in [0,2)
};

DiscriminantGroup discriminant_group(const Lattice& l);

// Graph of an isomorphism psi between subgroups A <= source and B <= target,
// stored as parallel generator tuples psi(a_gens[i]) = b_gens[i].
struct GlueMap {
  DiscriminantGroup source, target;
  std::vector<std::vector<Int>> a_gens, b_gens;

  Int subgroup_order() const;  // |A| = |B|
};

GlueMap trivial_glue(const DiscriminantGroup& dq, const DiscriminantGroup& dr);
// Canonical generator normalization (HNF of the stacked graph tuples).
GlueMap canonical_glue(const GlueMap& g);
bool glue_equal(const GlueMap& a, const GlueMap& b);

struct Overlattice {
  Lattice lattice;       // coordinates relative to the L1 perp L2 frame
  Sublattice part1, part2;  // the images of L1 and L2, primitive
};

Overlattice glue_overlattice(const Lattice& l1, const Lattice& l2,
                             const GlueMap& g);
// Inverse: read the glue of an overlattice of sub1 perp sub2 (both primitive,
// mutually orthogonal, ranks adding up to rank L).
GlueMap glue_of_overlattice(const Lattice& l, const Sublattice& sub1,
                            const Sublattice& sub2);

bool is_totally_singular(const GlueMap& g);  // overlattice integral
bool is_even_glue(const GlueMap& g);         // overlattice even

// Action of an isometry of the underlying lattice on discriminant tuples.
IntMat discriminant_action(const DiscriminantGroup& d, const IntMat& g);

// New glue with graph {(gq(a), gr(psi a))}; gq, gr act on tuples as x -> x*m.
GlueMap twist(const GlueMap& g, const IntMat& gq, const IntMat& gr);

// The unique lambda with b(xm, ym) = lambda b(x,y); throws if none exists.
Int similitude_scale(const DiscriminantGroup& d, const IntMat& m);

// Uniform-ish random even totally singular full glue between two
// 3-elementary groups of equal order; deterministic in the seed.
GlueMap random_valid_glue(const DiscriminantGroup& dq,
                          const DiscriminantGroup& dr, uint64_t seed);

// ---- quadratic spaces over the 3-element field ----

struct Mod3Space {
  int dim;
  IntMat form;  // symmetric, entries in {0,1,2}
};

// Requires every invariant factor equal to 3; form value of x is
// quadratic(x) * 3/2 mod 3 (consistent with bilinear * 3 off the diagonal).
Mod3Space mod3_space(const DiscriminantGroup& d);

IntMat mod3_matrix(const IntMat& g);

struct Mod3FixedReport {
  int fixed_dim;
  bool fixed_nonsingular;
  int complement_dim;  // orthogonal complement of the fixed space
  bool complement_nonsingular;
};

// Common fixed space of the generators acting on the quadratic space.
Mod3FixedReport fixed_space_mod3(const Mod3Space& s,
                                 const std::vector<IntMat>& gens);

// F3 linear algebra helpers (entries reduced into {0,1,2}).
IntMat mod3_reduce(const IntMat& m);
int mod3_rank(const IntMat& m);
IntMat mod3_inverse(const IntMat& m);          // throws on singular input
IntMat mod3_left_kernel(const IntMat& m);      // rows x with x m = 0

}  // namespace latt

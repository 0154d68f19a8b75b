#pragma once

#include <optional>
#include <string>

#include "latt/exactla.hpp"
#include "latt/mat.hpp"

namespace latt {

// Optional coordinate realization: basis rows in an ambient rational
// quadratic space.  ambient_gram is s * Identity for serializable lattices
// but arbitrary symmetric forms are allowed internally (direct sums of
// differently scaled pieces, overlattice coordinates relative to a frame).
struct Embedding {
  RatMat basis;         // rank x ambient_dim
  RatMat ambient_gram;  // ambient_dim x ambient_dim, symmetric
  std::optional<Rat> scale;  // set iff ambient_gram == scale * I
};

struct Lattice {
  std::string name;
  RatMat gram;  // rank x rank, symmetric positive definite
  std::optional<Embedding> emb;

  int rank() const { return gram.rows(); }

  static Lattice from_gram(std::string name, RatMat gram);
  static Lattice from_basis(std::string name, RatMat basis, Rat ambient_scale);
  static Lattice from_basis_form(std::string name, RatMat basis,
                                 RatMat ambient_gram);
};

// Integer matrix acting on basis coordinates (rows): v -> v * matrix.
struct Isometry {
  IntMat matrix;
  mutable std::optional<long> order_cache;

  long order() const;  // computed on demand, cached
};

Isometry make_isometry(const Lattice& l, IntMat m);  // verifies m G m^T = G
bool is_isometry_of(const Lattice& l, const IntMat& m);

struct Sublattice {
  Lattice parent;
  IntMat rows;  // generators in parent basis coordinates, full row rank

  int rank() const { return rows.rows(); }
  // The sublattice as a lattice embedded in the parent's coordinate space.
  Lattice lattice() const;
};

// ---- structural operations ----

Lattice dual(const Lattice& l);
Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice scale(const Lattice& l, const Rat& k);  // Gram multiplied by k
Lattice tensor(const Lattice& a, const Lattice& b);

bool is_integral(const Lattice& l);
bool is_even(const Lattice& l);
bool is_unimodular(const Lattice& l);
Rat determinant(const Lattice& l);

// Coordinates of an ambient-space vector with respect to l's basis
// (requires embedding); nullopt if v is not in the rational span.
std::optional<RatMat> span_coords(const Lattice& l, const RatMat& v);
// Membership of v (ambient coordinates) in the lattice.
bool contains(const Lattice& l, const RatMat& v);

Sublattice sublattice(const Lattice& parent, IntMat generators);
// Index [parent : sub]; nullopt when the sublattice has lower rank.
std::optional<Int> index(const Sublattice& sub);
bool is_primitive(const Sublattice& sub);

// {v in parent : <v, s> = 0 for all generators s of sub}; always primitive.
Sublattice annihilator(const Lattice& l, const Sublattice& sub);

Sublattice fixed_sublattice(const Lattice& l, const Isometry& g);   // L^+(g)
Sublattice cofixed_sublattice(const Lattice& l, const Isometry& g); // L_+(g)

bool has_fixed_points(const Isometry& g);
std::vector<Rat> char_poly(const Isometry& g);
Int trace(const Isometry& g);

// Unique linear extension of g (an isometry of a finite-index sublattice)
// to the whole lattice, if it preserves the lattice; nullopt otherwise.
std::optional<Isometry> extend_isometry(const Lattice& l, const Sublattice& sub,
                                        const Isometry& g_on_sub);

// Gram-preserving change of basis from l1 to l2 (rows of the result are the
// images of l1's basis vectors in l2 coordinates), or nullopt.
// Implemented by short-vector backtracking; see isom.cpp.
std::optional<IntMat> isometric(const Lattice& l1, const Lattice& l2);

// Canonical HNF form of the basis of an embedded lattice (rational rows).
RatMat canonical_basis(const Lattice& l);
// HNF canonicalization of arbitrary rational rows (row space preserved).
RatMat rational_hnf(const RatMat& rows);

}  // namespace latt

#pragma once

#include <string>
#include <vector>

#include "latt/lattice.hpp"

namespace latt {

// Nonzero vectors of norm <= bound, one representative per +-pair
// (first nonzero coordinate positive), lex-sorted; counts include both signs.
struct ShortVectorSet {
  Rat bound;
  std::vector<std::vector<Int>> vectors;  // basis coordinates of L
  std::vector<Rat> norms;                 // parallel to vectors
  long count() const { return 2 * long(vectors.size()); }
};

ShortVectorSet short_vectors(const Lattice& l, const Rat& bound);

ShortVectorSet roots(const Lattice& l);  // norm-2 vectors
long root_count(const Lattice& l);

// counts[k/2] = #{v : norm(v) = k} for even k in [0, max_norm]; L must be even.
std::vector<Int> theta_coefficients(const Lattice& l, long max_norm);

// Irreducible components of the norm-2 root system, e.g. {"A8","A8","A8"};
// empty for rootless lattices.
std::vector<std::string> root_system_type(const Lattice& l);

}  // namespace latt

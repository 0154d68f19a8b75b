#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "latt/shortvec.hpp"

namespace latt {

using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_mul(const Perm& a, const Perm& b);  // apply a first, then b
Perm perm_inverse(const Perm& a);
long perm_order(const Perm& a);
int perm_fixed_points(const Perm& a);
bool is_perm_identity(const Perm& a);

// Group element: permutation plus an optional matrix payload that is
// composed alongside (used to lift permutation words back to isometries).
struct GElem {
  Perm p;
  std::optional<IntMat> mat;
};

GElem gelem_mul(const GElem& a, const GElem& b);
GElem gelem_inverse(const GElem& a);

// Indexed point set: full +- expansion of a short vector set.
struct PermAction {
  std::vector<std::vector<Int>> points;  // sorted, both signs present
  std::map<std::vector<Int>, int> index;

  int degree() const { return int(points.size()); }
};

PermAction action_on_vectors(const ShortVectorSet& sv);
// Throws (with the witness vector in the message) if some image is absent.
Perm perm_from_isometry(const PermAction& a, const IntMat& g);

// Stabilizer chain built by seeded random Schreier-Sims.  Transversals are
// stored as Schreier vectors so large orbits stay cheap in memory.
class Bsgs {
 public:
  Bsgs() : n_(0) {}

  Int order() const;
  bool contains(const Perm& p) const;
  // Residue of sifting; identity permutation residue means membership.
  GElem sift(const GElem& g) const;
  const std::vector<GElem>& strong_generators() const { return sgens_; }
  const std::vector<int>& base() const { return base_; }
  int degree() const { return n_; }

  // Transversal element mapping base point of the level to beta.
  GElem transversal(int level, int beta) const;
  const std::vector<int>& level_orbit(int level) const;
  int levels() const { return int(base_.size()); }

  friend Bsgs bsgs(const std::vector<GElem>& gens, int n,
                   const std::vector<int>& preferred_base, uint64_t seed);

 private:
  struct Level {
    int base_point;
    std::vector<int> gen_idx;  // indices into sgens_ fixing earlier base points
    std::vector<int> orbit;
    std::vector<int> sv_gen;   // per point: strong generator used to reach it
    std::vector<int> sv_from;  // per point: predecessor point
    std::vector<char> in_orbit;
  };

  void extend_orbit(int level);
  bool add_generator(const GElem& g, int level);
  GElem strip(const GElem& g, int* drop_level) const;

  int n_;
  std::vector<int> base_;
  std::vector<GElem> sgens_;
  std::vector<Level> levels_;
};

Bsgs bsgs(const std::vector<GElem>& gens, int n,
          const std::vector<int>& preferred_base = {}, uint64_t seed = 1);

Int order(const Bsgs& b);
bool contains(const Bsgs& b, const Perm& p);
Int derived_subgroup_order(const Bsgs& b, int n);
std::vector<int> orbit_of(const std::vector<GElem>& gens, int point, int n);
Int point_stabilizer_order(const std::vector<GElem>& gens, int point, int n);

// Random-product search for an element of the given order and number of
// fixed points; deterministic in the seed; nullopt when the budget runs out.
std::optional<Perm> find_element(const std::vector<Perm>& gens, long order_wanted,
                                 int fixed_points_wanted, uint64_t seed,
                                 int budget = 20000);

}  // namespace latt

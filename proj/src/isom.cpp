#include <algorithm>

#include "latt/lattice.hpp"
#include "latt/shortvec.hpp"

namespace latt {

namespace {

Rat gram_inner(const RatMat& g, const std::vector<Int>& a,
               const std::vector<Int>& b) {
  Rat r(0);
  for (int i = 0; i < g.rows(); ++i) {
    if (a[i] == 0) continue;
    Rat row(0);
    for (int j = 0; j < g.cols(); ++j)
      if (b[j] != 0) row += g(i, j) * Rat(b[j]);
    r += Rat(a[i]) * row;
  }
  return r;
}

struct IsomSearch {
  const RatMat& g1;  // target Gram (of l1)
  const RatMat& g2;  // form on candidate coordinates (of l2)
  const std::vector<std::vector<Int>>& cands;  // short vectors of l2, +-expanded
  const std::vector<Rat>& cand_norms;
  std::vector<int> img;  // candidate index chosen for each basis vector

  bool extend(int i) {
    int n = g1.rows();
    if (i == n) return true;
    for (int c = 0; c < int(cands.size()); ++c) {
      if (cand_norms[c] != g1(i, i)) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        ok = gram_inner(g2, cands[c], cands[img[j]]) == g1(i, j);
      if (!ok) continue;
      img[i] = c;
      if (extend(i + 1)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<IntMat> isometric(const Lattice& l1, const Lattice& l2) {
  int n = l1.rank();
  if (n != l2.rank()) return std::nullopt;
  if (determinant(l1) != determinant(l2)) return std::nullopt;
  if (l1.gram == l2.gram) return IntMat::identity(n);
  if (n == 0) return IntMat(0, 0);

  Rat bound(0);
  for (int i = 0; i < n; ++i) bound = std::max(bound, l1.gram(i, i));

  ShortVectorSet s1 = short_vectors(l1, bound);
  ShortVectorSet s2 = short_vectors(l2, bound);
  // Norm histograms are isometry invariants; a mismatch certifies failure.
  auto hist = [](const ShortVectorSet& s) {
    std::vector<Rat> h = s.norms;
    std::sort(h.begin(), h.end());
    return h;
  };
  if (hist(s1) != hist(s2)) return std::nullopt;

  std::vector<std::vector<Int>> cands;
  std::vector<Rat> norms;
  cands.reserve(2 * s2.vectors.size());
  for (size_t i = 0; i < s2.vectors.size(); ++i) {
    cands.push_back(s2.vectors[i]);
    norms.push_back(s2.norms[i]);
    std::vector<Int> neg(n);
    for (int j = 0; j < n; ++j) neg[j] = -s2.vectors[i][j];
    cands.push_back(std::move(neg));
    norms.push_back(s2.norms[i]);
  }

  IsomSearch search{l1.gram, l2.gram, cands, norms,
                    std::vector<int>(size_t(n), -1)};
  if (!search.extend(0)) return std::nullopt;
  IntMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cands[search.img[i]][j];
  // Gram(m rows) = l1.gram with equal determinants, so m is a full basis.
  return m;
}

}  // namespace latt

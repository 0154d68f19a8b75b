#pragma once

#include <optional>

#include "latt/mat.hpp"

namespace latt {

struct HnfResult {
  IntMat h;  // row Hermite normal form
  IntMat u;  // unimodular, u * input = h
};

struct SnfResult {
  IntMat d;  // diagonal, d[i] | d[i+1]
  IntMat u;  // unimodular left transform
  IntMat v;  // unimodular right transform, u * input * v = d
};

// Row HNF: pivot entries positive, entries above pivots reduced into [0, pivot).
HnfResult hnf(const IntMat& m);

SnfResult snf(const IntMat& m);

std::vector<Int> invariant_factors(const IntMat& m);  // nontrivial (> 1) only

Rat det(const RatMat& m);
Int det(const IntMat& m);  // fraction-free (Bareiss)

int rank(const RatMat& m);
int rank(const IntMat& m);

// Basis of {x : x * m = 0} as rows; rational coefficients.
RatMat left_kernel(const RatMat& m);

// Saturated integer left kernel: all integer x with x * m = 0.
IntMat left_kernel_saturated(const IntMat& m);

// One particular x with x * m = b, if the system is solvable.
std::optional<RatMat> solve_left(const RatMat& m, const RatMat& b);

RatMat inverse(const RatMat& m);  // throws on singular input

// Integer row span saturation: {v in Z^n : v in Q-span(rows of m)}.
IntMat saturate_rows(const IntMat& m);

// LLL reduction driven by the Gram matrix alone.  Returns the unimodular
// transform u; the reduced lattice has Gram u * gram * u^T.  Exact rational
// arithmetic; default delta = 99/100.
IntMat lll_gram(const RatMat& gram, const Rat& delta = Rat(99, 100));

// LLL on explicit basis rows (standard inner product); rows must be
// linearly independent.
RatMat lll(const RatMat& basis, const Rat& delta = Rat(99, 100));

// Characteristic polynomial of a square matrix, coefficients of x^0..x^n.
std::vector<Rat> char_poly(const RatMat& m);

}  // namespace latt

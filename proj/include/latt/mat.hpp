#pragma once

#include <gmpxx.h>

#include <cassert>
#include <initializer_list>
#include <string>
#include <vector>

namespace latt {

using Int = mpz_class;
using Rat = mpq_class;

// Dense matrix over an exact scalar type.  Row-major storage; lattice
// vectors are rows throughout, forms act as v * G * w^T.
template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}
  Mat(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = int(init.size());
    cols_ = rows_ ? int(init.begin()->size()) : 0;
    e_.reserve(size_t(rows_) * cols_);
    for (auto& r : init) {
      assert(int(r.size()) == cols_);
      for (auto& x : r) e_.push_back(x);
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return e_[size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator+(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
  }
  Mat operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }
  Mat operator*(const T& s) const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
    return r;
  }
  Mat operator-() const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
  bool is_zero() const {
    for (auto& x : e_)
      if (x != 0) return false;
    return true;
  }
  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  std::vector<T> row(int i) const {
    return std::vector<T>(e_.begin() + size_t(i) * cols_,
                          e_.begin() + size_t(i + 1) * cols_);
  }
  void set_row(int i, const std::vector<T>& v) {
    assert(int(v.size()) == cols_);
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  void swap_rows(int i, int j) {
    for (int k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }

  Mat submatrix(int r0, int c0, int nr, int nc) const {
    Mat r(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }

  // Rows of `top` followed by rows of `bottom`.
  static Mat vstack(const Mat& top, const Mat& bottom) {
    assert(top.cols() == bottom.cols() || top.rows() == 0 || bottom.rows() == 0);
    int cols = top.rows() ? top.cols() : bottom.cols();
    Mat r(top.rows() + bottom.rows(), cols);
    for (int i = 0; i < top.rows(); ++i)
      for (int j = 0; j < cols; ++j) r(i, j) = top(i, j);
    for (int i = 0; i < bottom.rows(); ++i)
      for (int j = 0; j < cols; ++j) r(top.rows() + i, j) = bottom(i, j);
    return r;
  }

  static Mat block_diag(const Mat& a, const Mat& b) {
    Mat r(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
    return r;
  }

  static Mat kronecker(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        for (int k = 0; k < b.rows(); ++k)
          for (int l = 0; l < b.cols(); ++l)
            r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
  }

 private:
  int rows_, cols_;
  std::vector<T> e_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

IntMat to_int(const RatMat& m);  // requires all entries integral
RatMat to_rat(const IntMat& m);

// Smallest positive integer clearing all denominators.
Int common_denominator(const RatMat& m);
bool is_integral(const RatMat& m);

std::string to_string(const Rat& x);
std::string to_string(const IntMat& m);
std::string to_string(const RatMat& m);

}  // namespace latt

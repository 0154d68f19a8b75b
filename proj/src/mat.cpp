#include "latt/mat.hpp"

#include <sstream>
#include <stdexcept>

namespace latt {

IntMat to_int(const RatMat& m) {
  IntMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const Rat& x = m(i, j);
      if (x.get_den() != 1) throw std::invalid_argument("to_int: non-integral entry");
      r(i, j) = x.get_num();
    }
  return r;
}

RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

Int common_denominator(const RatMat& m) {
  Int d = 1;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Int den = m(i, j).get_den();
      d = lcm(d, den);
    }
  return d;
}

bool is_integral(const RatMat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

std::string to_string(const Rat& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

template <class T>
static std::string mat_str(const Mat<T>& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows(); ++i) {
    os << (i ? " [" : "[");
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]" << (i + 1 < m.rows() ? "\n" : "");
  }
  os << "]";
  return os.str();
}

std::string to_string(const IntMat& m) { return mat_str(m); }
std::string to_string(const RatMat& m) { return mat_str(m); }

}  // namespace latt

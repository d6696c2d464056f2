#ifndef CHARVAR_EXACT_HPP
#define CHARVAR_EXACT_HPP

#include <charvar/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace charvar {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix; used with BigInt, BigRational and uint8_t.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using Mod2Matrix = Matrix<std::uint8_t>;

inline bool is_antisymmetric(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != -a(j, i)) return false;
  return true;
}

/// Fraction-free (Bareiss) elimination. Every intermediate division is
/// exact, so the result is the exact integer determinant.
inline BigInt bareiss_determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::invalid_argument, "determinant needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Exact Pfaffian by skew-symmetric elimination over the rationals:
/// Pf(A) = a_{01} Pf(D + C^T B^{-1} C) for the leading 2x2 block B.
inline BigInt pfaffian(const IntMatrix& a) {
  if (!is_antisymmetric(a)) throw Error(ErrorCode::invalid_argument, "Pfaffian needs an antisymmetric matrix");
  const std::size_t n = a.rows();
  if (n % 2 != 0) return 0;
  Matrix<BigRational> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = BigRational(a(i, j));

  BigRational pf = 1;
  for (std::size_t k = 0; k < n; k += 2) {
    std::size_t p = k + 1;
    while (p < n && m(k, p) == 0) ++p;
    if (p == n) return 0;
    if (p != k + 1) {
      m.swap_rows(p, k + 1);
      m.swap_cols(p, k + 1);
      pf = -pf;
    }
    const BigRational pivot = m(k, k + 1);
    pf *= pivot;
    for (std::size_t i = k + 2; i < n; ++i)
      for (std::size_t j = k + 2; j < n; ++j)
        m(i, j) += (m(k + 1, i) * m(k, j) - m(k, i) * m(k + 1, j)) / pivot;
  }
  if (denominator(pf) != 1) throw Error(ErrorCode::internal_inconsistency, "non-integral Pfaffian");
  return numerator(pf);
}

inline Mod2Matrix reduce_mod2(const IntMatrix& a) {
  Mod2Matrix b(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = static_cast<std::uint8_t>(a(i, j) % 2 != 0 ? 1 : 0);
  return b;
}

inline Mod2Matrix multiply_mod2(const Mod2Matrix& a, const Mod2Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::invalid_argument, "dimension mismatch");
  Mod2Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint8_t acc = 0;
      for (std::size_t l = 0; l < a.cols(); ++l) acc ^= static_cast<std::uint8_t>(a(i, l) & b(l, j));
      c(i, j) = acc;
    }
  return c;
}

inline bool is_identity(const Mod2Matrix& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace charvar

#endif  // CHARVAR_EXACT_HPP

#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "flagexp/rational.hpp"

namespace flagexp {

// 80 decimal digits (about 266 bits) on the stack; exponent range is wide
// enough that e^{60}-scaled products never overflow.
using HighFloat = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<80, boost::multiprecision::allocate_stack>,
    boost::multiprecision::et_off>;
using HighVec = std::vector<HighFloat>;
using IntVec = std::vector<mpz_class>;

HighFloat to_high(const Rational& q);
HighFloat to_high(const mpz_class& z);
// Exact for finite input; every binary float is a dyadic rational.
Rational to_rational(const HighFloat& x);
// x must hold an integer value.
mpz_class to_integer(const HighFloat& x);
HighFloat round_to_integer(const HighFloat& x);

HighFloat dot(std::span<const HighFloat> a, std::span<const HighFloat> b);
HighFloat norm2(std::span<const HighFloat> a);

// Row-major dense matrix of high-precision floats. Lattices use the columns as basis vectors.
class HighMatrix {
 public:
  HighMatrix() = default;
  HighMatrix(std::size_t rows, std::size_t cols);
  HighMatrix(std::initializer_list<std::initializer_list<double>> rows);
  explicit HighMatrix(const RatMatrix& m);

  static HighMatrix identity(std::size_t n);
  static HighMatrix diagonal(std::span<const HighFloat> diag);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  HighFloat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const HighFloat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] HighVec col(std::size_t j) const;
  [[nodiscard]] HighVec apply(std::span<const HighFloat> v) const;
  [[nodiscard]] HighVec apply(const IntVec& v) const;
  [[nodiscard]] HighMatrix transpose() const;
  // Gaussian elimination with partial pivoting.
  [[nodiscard]] HighFloat determinant() const;
  [[nodiscard]] HighMatrix inverse() const;

  friend HighMatrix operator*(const HighMatrix& a, const HighMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<HighFloat> data_;
};

}  // namespace flagexp

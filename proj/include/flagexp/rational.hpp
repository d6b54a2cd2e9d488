#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flagexp {

using Rational = mpq_class;
using RatVec = std::vector<Rational>;

// Integers print without a denominator, everything else as "p/q".
std::string to_string(const Rational& q);
// Accepts "p", "p/q" and plain decimals such as "-1.25" or "1e-3".
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

// num/den in canonical form; mpq arithmetic requires canonical operands.
Rational frac(long num, long den);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
RatVec add(std::span<const Rational> a, std::span<const Rational> b);
RatVec sub(std::span<const Rational> a, std::span<const Rational> b);
RatVec scale(const Rational& s, std::span<const Rational> a);
bool is_zero(std::span<const Rational> a);

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] RatVec row(std::size_t i) const;
  [[nodiscard]] RatVec col(std::size_t j) const;
  [[nodiscard]] RatMatrix transpose() const;
  [[nodiscard]] RatVec apply(std::span<const Rational> v) const;
  // Inverse by Gauss-Jordan elimination; throws std::domain_error when singular.
  [[nodiscard]] RatMatrix inverse() const;
  [[nodiscard]] Rational determinant() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Solves a x = b exactly; throws std::domain_error for singular systems.
RatVec solve(const RatMatrix& a, std::span<const Rational> b);

}  // namespace flagexp

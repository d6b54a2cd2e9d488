#include "flagexp/highprec.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace flagexp {

HighFloat to_high(const Rational& q) {
  HighFloat r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

HighFloat to_high(const mpz_class& z) {
  HighFloat r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Rational to_rational(const HighFloat& x) {
  if (!boost::multiprecision::isfinite(x)) throw std::domain_error("non-finite value has no rational form");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x.backend().data());
  return q;
}

mpz_class to_integer(const HighFloat& x) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), x.backend().data(), MPFR_RNDN);
  return z;
}

HighFloat round_to_integer(const HighFloat& x) {
  HighFloat r;
  mpfr_round(r.backend().data(), x.backend().data());
  return r;
}

HighFloat dot(std::span<const HighFloat> a, std::span<const HighFloat> b) {
  HighFloat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

HighFloat norm2(std::span<const HighFloat> a) { return dot(a, a); }

HighMatrix::HighMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

HighMatrix::HighMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix");
    for (double v : r) data_.emplace_back(v);
  }
}

HighMatrix::HighMatrix(const RatMatrix& m) : HighMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = to_high(m(i, j));
}

HighMatrix HighMatrix::identity(std::size_t n) {
  HighMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

HighMatrix HighMatrix::diagonal(std::span<const HighFloat> diag) {
  HighMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

HighVec HighMatrix::col(std::size_t j) const {
  HighVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

HighVec HighMatrix::apply(std::span<const HighFloat> v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch");
  HighVec out(rows_, HighFloat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

HighVec HighMatrix::apply(const IntVec& v) const {
  HighVec hv;
  hv.reserve(v.size());
  for (const auto& z : v) hv.push_back(to_high(z));
  return apply(hv);
}

HighMatrix HighMatrix::transpose() const {
  HighMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

HighFloat HighMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  HighMatrix a = *this;
  const std::size_t n = rows_;
  HighFloat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a(r, c)) > abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const HighFloat f = a(r, c) / a(c, c);
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

HighMatrix HighMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = rows_;
  HighMatrix a = *this;
  HighMatrix inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a(r, c)) > abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0) throw std::domain_error("singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(piv, j), a(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    const HighFloat p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const HighFloat f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

HighMatrix operator*(const HighMatrix& a, const HighMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
  HighMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

}  // namespace flagexp

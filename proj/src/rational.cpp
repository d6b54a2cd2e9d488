#include "flagexp/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace flagexp {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (std::isdigit(static_cast<unsigned char>(ch)) == 0) return false;
  }
  return true;
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1, p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
  bool negative = false;
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto bad = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw bad();
    const mpz_class d{std::string(den), 10};
    if (d == 0) throw bad();
    value = Rational(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    std::string_view mant = body;
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      mant = body.substr(0, e);
      auto ex = body.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6) throw bad();
      exponent = std::stol(std::string(ex));
      if (eneg) exponent = -exponent;
    }
    std::string digits;
    if (auto dot_pos = mant.find('.'); dot_pos != std::string_view::npos) {
      const auto ip = mant.substr(0, dot_pos);
      const auto fp = mant.substr(dot_pos + 1);
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) throw bad();
      digits = std::string(ip) + std::string(fp);
      exponent -= static_cast<long>(fp.size());
    } else {
      if (!all_digits(mant)) throw bad();
      digits = std::string(mant);
    }
    value = Rational(mpz_class(digits, 10)) * pow10(exponent);
  }
  return negative ? Rational(-value) : value;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational frac(long num, long den) {
  if (den == 0) throw std::domain_error("frac: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec add(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: size mismatch");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec sub(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: size mismatch");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec scale(const Rational& s, std::span<const Rational> a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

bool is_zero(std::span<const Rational> a) {
  for (const auto& x : a) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("RatMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatVec RatMatrix::row(std::size_t i) const {
  return RatVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RatVec RatMatrix::col(std::size_t j) const {
  RatVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatVec RatMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw std::invalid_argument("RatMatrix::apply: size mismatch");
  RatVec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& a = (*this)(i, j);
      if (sgn(a) != 0) s += a * v[j];
    }
    r[i] = s;
  }
  return r;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("RatMatrix product: size mismatch");
  RatMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

// Row-reduces [a | rhs] in place; returns the determinant of a.
Rational eliminate(RatMatrix& a, RatMatrix& rhs) {
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      for (std::size_t j = 0; j < rhs.cols(); ++j) std::swap(rhs(p, j), rhs(c, j));
      det = -det;
    }
    const Rational piv = a(c, c);
    det *= piv;
    for (std::size_t j = 0; j < n; ++j) a(c, j) /= piv;
    for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(c, j) /= piv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a(r, c)) == 0) continue;
      const Rational f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(c, j);
      for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(r, j) -= f * rhs(c, j);
    }
  }
  return det;
}

}  // namespace

RatMatrix RatMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse: matrix not square");
  RatMatrix a = *this;
  RatMatrix inv = identity(rows_);
  if (sgn(eliminate(a, inv)) == 0) throw std::domain_error("inverse: singular matrix");
  return inv;
}

Rational RatMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant: matrix not square");
  RatMatrix a = *this;
  RatMatrix none(rows_, 0);
  return eliminate(a, none);
}

RatVec solve(const RatMatrix& a, std::span<const Rational> b) {
  if (a.rows() != a.cols() || b.size() != a.rows()) throw std::invalid_argument("solve: size mismatch");
  RatMatrix m = a;
  RatMatrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  if (sgn(eliminate(m, rhs)) == 0) throw std::domain_error("solve: singular system");
  return rhs.col(0);
}

}  // namespace flagexp

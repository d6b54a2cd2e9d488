#include "flagexp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "flagexp/error.hpp"

namespace flagexp {

namespace {

std::vector<HighVec> columns_of(const HighMatrix& m) {
  std::vector<HighVec> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return cols;
}

HighMatrix from_columns(const std::vector<HighVec>& cols, std::size_t rows) {
  HighMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

void axpy(HighVec& y, const HighFloat& a, const HighVec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

struct GramSchmidt {
  std::vector<std::vector<HighFloat>> mu;
  std::vector<HighFloat> b2;
};

GramSchmidt gram_schmidt(const std::vector<HighVec>& b) {
  const std::size_t n = b.size();
  GramSchmidt gs{std::vector<std::vector<HighFloat>>(n, std::vector<HighFloat>(n)), std::vector<HighFloat>(n)};
  std::vector<HighVec> star(n);
  for (std::size_t i = 0; i < n; ++i) {
    star[i] = b[i];
    for (std::size_t j = 0; j < i; ++j) {
      gs.mu[i][j] = dot(b[i], star[j]) / gs.b2[j];
      axpy(star[i], -gs.mu[i][j], star[j]);
    }
    gs.b2[i] = norm2(star[i]);
    if (gs.b2[i] == 0) throw Error(ErrorCode::PreconditionViolated, "basis vectors are linearly dependent");
  }
  return gs;
}

void normalize_sign(LatticePoint& p) {
  for (const auto& c : p.coords) {
    if (c == 0) continue;
    if (c < 0) {
      for (auto& z : p.coords) z = -z;
      for (auto& v : p.vec) v = -v;
    }
    return;
  }
}

bool lex_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const mpz_class& x, const mpz_class& y) { return cmp(x, y) < 0; });
}

}  // namespace

bool shorter(const LatticePoint& a, const LatticePoint& b) {
  if (a.sqnorm != b.sqnorm) return a.sqnorm < b.sqnorm;
  return lex_less(a.coords, b.coords);
}

LatticeBasis::LatticeBasis(HighMatrix basis, Provenance p, std::optional<RatMatrix> exact)
    : basis_(std::move(basis)), provenance_(p), exact_(std::move(exact)) {
  if (basis_.rows() != basis_.cols() || basis_.rows() == 0)
    throw Error(ErrorCode::PreconditionViolated, "lattice basis must be square");
  if (exact_) {
    if (exact_->determinant() == 0) throw Error(ErrorCode::PreconditionViolated, "singular lattice basis");
  } else if (basis_.determinant() == 0) {
    throw Error(ErrorCode::PreconditionViolated, "singular lattice basis");
  }
}

LatticeBasis LatticeBasis::exact(const RatMatrix& columns) {
  return LatticeBasis(HighMatrix(columns), Provenance::Exact, columns);
}

LatticeBasis LatticeBasis::from_float(HighMatrix columns) {
  return LatticeBasis(std::move(columns), Provenance::Float, std::nullopt);
}

LatticeBasis LatticeBasis::standard(std::size_t d) { return exact(RatMatrix::identity(d)); }

HighFloat LatticeBasis::covolume() const {
  if (exact_) return to_high(abs(exact_->determinant()));
  return abs(basis_.determinant());
}

LatticeBasis LatticeBasis::transformed(const HighMatrix& g) const { return from_float(g * basis_); }

LatticeBasis LatticeBasis::transformed(const RatMatrix& g) const {
  if (exact_) return exact(g * *exact_);
  return from_float(HighMatrix(g) * basis_);
}

LllResult lll_reduce(const HighMatrix& columns, double delta) {
  auto b = columns_of(columns);
  const std::size_t n = b.size();
  auto u = columns_of(HighMatrix::identity(n));
  if (n <= 1) return {columns, HighMatrix::identity(n)};
  auto gs = gram_schmidt(b);
  auto& mu = gs.mu;
  auto& b2 = gs.b2;
  const HighFloat half("0.5");
  const HighFloat d(delta);

  auto reduce = [&](std::size_t k, std::size_t l) {
    if (abs(mu[k][l]) <= half) return;
    const HighFloat q = round_to_integer(mu[k][l]);
    axpy(b[k], -q, b[l]);
    axpy(u[k], -q, u[l]);
    for (std::size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
    mu[k][l] -= q;
  };

  std::size_t k = 1;
  while (k < n) {
    reduce(k, k - 1);
    if (b2[k] < (d - mu[k][k - 1] * mu[k][k - 1]) * b2[k - 1]) {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      const HighFloat m = mu[k][k - 1];
      const HighFloat bn = b2[k] + m * m * b2[k - 1];
      mu[k][k - 1] = m * b2[k - 1] / bn;
      b2[k] = b2[k - 1] * b2[k] / bn;
      b2[k - 1] = bn;
      for (std::size_t i = k + 1; i < n; ++i) {
        const HighFloat t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }
  return {from_columns(b, columns.rows()), from_columns(u, n)};
}

Enumerator::Enumerator(std::vector<HighVec> basis, std::vector<IntVec> coords)
    : basis_(std::move(basis)), coords_(std::move(coords)) {
  const std::size_t n = basis_.size();
  auto gs = gram_schmidt(basis_);
  (void)n;
  mu_ = std::move(gs.mu);
  bstar2_ = std::move(gs.b2);
}

LatticePoint Enumerator::point(std::span<const long long> x) const {
  const std::size_t n = basis_.size();
  LatticePoint p;
  p.vec.assign(basis_.front().size(), HighFloat(0));
  p.coords.assign(coords_.front().size(), mpz_class(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (x[j] == 0) continue;
    axpy(p.vec, HighFloat(x[j]), basis_[j]);
    const mpz_class zj(static_cast<long>(x[j]));
    for (std::size_t i = 0; i < p.coords.size(); ++i) p.coords[i] += zj * coords_[j][i];
  }
  p.sqnorm = norm2(p.vec);
  normalize_sign(p);
  return p;
}

void Enumerator::run(HighFloat& radius2, std::size_t first,
                     const std::function<void(std::span<const long long>)>& leaf,
                     const EnumerationBudget& budget) const {
  const std::size_t n = basis_.size();
  if (n == 0 || first >= n) return;
  const HighFloat slack("1e-60");
  std::vector<long long> x(n, 0);
  std::vector<HighFloat> partial(n + 1, HighFloat(0));
  std::size_t nodes = 0;
  // above_zero: every x_j with j > level is zero.
  std::function<void(std::size_t, bool)> visit = [&](std::size_t level, bool above_zero) {
    HighFloat c = 0;
    for (std::size_t j = level + 1; j < n; ++j)
      if (x[j] != 0) c -= HighFloat(x[j]) * mu_[j][level];
    const HighFloat center = round_to_integer(c);
    // Zig-zag from the nearest integer outward; each side stops once it leaves the ball.
    bool up_open = true;
    bool down_open = true;
    for (long long step = 0; up_open || down_open; ++step) {
      for (int side = 0; side < 2; ++side) {
        if (step == 0 && side == 1) continue;
        bool& open = side == 0 ? up_open : down_open;
        if (!open) continue;
        const HighFloat vh = side == 0 ? center + HighFloat(step) : center - HighFloat(step);
        const HighFloat dv = vh - c;
        const HighFloat here = partial[level + 1] + dv * dv * bstar2_[level];
        if (here > radius2 * (1 + slack)) {
          open = false;
          continue;
        }
        if (abs(vh) > HighFloat(9e18)) throw Error(ErrorCode::EnumerationBudgetExceeded, "coefficient overflow");
        const auto v = static_cast<long long>(vh);
        // Symmetry: the highest nonzero coordinate is positive. An all-zero top is only
        // allowed to continue below `first`.
        if (above_zero && v < 0) continue;
        if (above_zero && v == 0 && level <= first) continue;
        if (++nodes > budget.max_nodes)
          throw Error(ErrorCode::EnumerationBudgetExceeded, "enumeration node budget exhausted");
        x[level] = v;
        partial[level] = here;
        if (level == 0) leaf(x);
        else visit(level - 1, above_zero && v == 0);
      }
    }
    x[level] = 0;
  };
  visit(n - 1, true);
}

ReducedBasis::ReducedBasis(const HighMatrix& columns, double delta)
    : enumerator_([&] {
        const auto red = lll_reduce(columns, delta);
        const std::size_t n = columns.cols();
        std::vector<HighVec> b;
        std::vector<IntVec> coords;
        for (std::size_t j = 0; j < n; ++j) {
          b.push_back(red.reduced.col(j));
          IntVec c;
          for (std::size_t i = 0; i < n; ++i) c.push_back(to_integer(red.transform(i, j)));
          coords.push_back(std::move(c));
        }
        return Enumerator(std::move(b), std::move(coords));
      }()) {
  for (std::size_t j = 0; j < enumerator_.dim(); ++j) {
    std::vector<long long> e(enumerator_.dim(), 0);
    e[j] = 1;
    basis_.push_back(enumerator_.point(e));
  }
}

HighFloat ReducedBasis::max_sqnorm() const {
  HighFloat m = 0;
  for (const auto& p : basis_) m = std::max(m, p.sqnorm);
  return m;
}

HighFloat ReducedBasis::min_sqnorm() const {
  HighFloat m = basis_.front().sqnorm;
  for (const auto& p : basis_) m = std::min(m, p.sqnorm);
  return m;
}

std::vector<LatticePoint> ReducedBasis::short_vectors(const HighFloat& radius2,
                                                      const EnumerationBudget& budget) const {
  std::vector<LatticePoint> out;
  if (radius2 <= 0) return out;
  HighFloat r2 = radius2;
  enumerator_.run(r2, 0, [&](std::span<const long long> x) {
    auto p = enumerator_.point(x);
    if (p.sqnorm > radius2) return;
    out.push_back(std::move(p));
    if (out.size() > budget.max_points)
      throw Error(ErrorCode::EnumerationBudgetExceeded, "too many lattice points in the ball");
  }, budget);
  return out;
}

std::optional<LatticePoint> ReducedBasis::shortest_matching(
    const std::function<bool(const LatticePoint&)>& pred, HighFloat start_radius2, const HighFloat& max_radius2,
    const EnumerationBudget& budget) const {
  if (start_radius2 <= 0) start_radius2 = min_sqnorm();
  while (true) {
    const HighFloat cap = std::min(start_radius2, max_radius2);
    std::optional<LatticePoint> best;
    HighFloat r2 = cap;
    enumerator_.run(r2, 0, [&](std::span<const long long> x) {
      auto p = enumerator_.point(x);
      if (p.sqnorm > cap || !pred(p)) return;
      if (!best || shorter(p, *best)) {
        best = std::move(p);
        r2 = best->sqnorm;
      }
    }, budget);
    if (best || cap >= max_radius2) return best;
    start_radius2 *= 4;
  }
}

std::vector<IntVec> saturated_completion(const std::vector<IntVec>& cols, std::size_t d) {
  const std::size_t k = cols.size();
  // Rows of C, reduced in place by unimodular row operations V; vinv tracks V^{-1}.
  std::vector<IntVec> c(d, IntVec(k));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < d; ++i) c[i][j] = cols[j][i];
  std::vector<IntVec> vinv(d, IntVec(d, mpz_class(0)));  // vinv[col][row]
  for (std::size_t i = 0; i < d; ++i) vinv[i][i] = 1;
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t i = col + 1; i < d; ++i) {
      if (c[i][col] == 0) continue;
      mpz_class g, a, b;
      mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), c[col][col].get_mpz_t(), c[i][col].get_mpz_t());
      const mpz_class p = c[col][col] / g;
      const mpz_class q = c[i][col] / g;
      for (std::size_t j = 0; j < k; ++j) {
        const mpz_class r0 = c[col][j];
        const mpz_class r1 = c[i][j];
        c[col][j] = a * r0 + b * r1;
        c[i][j] = -q * r0 + p * r1;
      }
      // Row op [[a, b], [-q, p]] has inverse [[p, -b], [q, a]]; apply it to columns of vinv.
      for (std::size_t r = 0; r < d; ++r) {
        const mpz_class v0 = vinv[col][r];
        const mpz_class v1 = vinv[i][r];
        vinv[col][r] = v0 * p + v1 * q;
        vinv[i][r] = -v0 * b + v1 * a;
      }
    }
    if (c[col][col] == 0) throw Error(ErrorCode::PreconditionViolated, "vectors are dependent");
  }
  return vinv;
}

std::size_t integer_rank(const std::vector<IntVec>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<RatVec> rows;
  for (const auto& v : vectors) {
    RatVec r;
    for (const auto& z : v) r.emplace_back(z);
    rows.push_back(std::move(r));
  }
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

namespace {

// Orthogonal component of v against an orthogonal family with squared norms.
HighVec project_out(HighVec v, const std::vector<HighVec>& ortho, const std::vector<HighFloat>& ortho2) {
  for (std::size_t j = 0; j < ortho.size(); ++j) axpy(v, -dot(v, ortho[j]) / ortho2[j], ortho[j]);
  return v;
}

}  // namespace

Enumerator adapted_enumerator(const HighMatrix& basis, const std::vector<IntVec>& chosen) {
  const std::size_t d = basis.cols();
  const std::size_t k = chosen.size();
  const auto unimod = saturated_completion(chosen, d);
  std::vector<HighVec> vecs;
  for (const auto& u : unimod) vecs.push_back(basis.apply(u));
  std::vector<IntVec> coords = unimod;

  auto reduce_block = [&](std::size_t lo, std::size_t hi, const std::vector<HighVec>& ortho,
                          const std::vector<HighFloat>& ortho2) {
    if (hi - lo == 0) return;
    HighMatrix proj(basis.rows(), hi - lo);
    for (std::size_t j = lo; j < hi; ++j) {
      const auto p = project_out(vecs[j], ortho, ortho2);
      for (std::size_t i = 0; i < basis.rows(); ++i) proj(i, j - lo) = p[i];
    }
    const auto t = lll_reduce(proj).transform;
    std::vector<HighVec> nv;
    std::vector<IntVec> nc;
    for (std::size_t j = 0; j < hi - lo; ++j) {
      HighVec v(basis.rows(), HighFloat(0));
      IntVec c(d, mpz_class(0));
      for (std::size_t i = 0; i < hi - lo; ++i) {
        const mpz_class z = to_integer(t(i, j));
        if (z == 0) continue;
        axpy(v, to_high(z), vecs[lo + i]);
        for (std::size_t r = 0; r < d; ++r) c[r] += z * coords[lo + i][r];
      }
      nv.push_back(std::move(v));
      nc.push_back(std::move(c));
    }
    for (std::size_t j = lo; j < hi; ++j) {
      vecs[j] = std::move(nv[j - lo]);
      coords[j] = std::move(nc[j - lo]);
    }
  };

  reduce_block(0, k, {}, {});
  std::vector<HighVec> ortho;
  std::vector<HighFloat> ortho2;
  for (std::size_t j = 0; j < k; ++j) {
    ortho.push_back(project_out(vecs[j], ortho, ortho2));
    ortho2.push_back(norm2(ortho.back()));
  }
  reduce_block(k, d, ortho, ortho2);
  // Size-reduce the lifts against the chosen block.
  for (std::size_t j = k; j < d; ++j)
    for (std::size_t l = k; l-- > 0;) {
      const HighFloat q = round_to_integer(dot(vecs[j], ortho[l]) / ortho2[l]);
      if (q == 0) continue;
      axpy(vecs[j], -q, vecs[l]);
      const mpz_class z = to_integer(q);
      for (std::size_t r = 0; r < d; ++r) coords[j][r] -= z * coords[l][r];
    }
  return Enumerator(std::move(vecs), std::move(coords));
}

SuccessiveMinima successive_minima(const LatticeBasis& lattice, std::size_t upto, const EnumerationBudget& budget) {
  const std::size_t d = lattice.dim();
  if (upto == 0 || upto > d) upto = d;
  SuccessiveMinima out;
  for (std::size_t k = 0; k < upto; ++k) {
    const auto en = adapted_enumerator(lattice.basis(), out.vectors);
    std::optional<LatticePoint> best;
    for (std::size_t j = k; j < d; ++j) {
      std::vector<long long> e(d, 0);
      e[j] = 1;
      auto p = en.point(e);
      if (!best || shorter(p, *best)) best = std::move(p);
    }
    HighFloat r2 = best->sqnorm;
    en.run(r2, k, [&](std::span<const long long> x) {
      auto p = en.point(x);
      if (shorter(p, *best)) {
        best = std::move(p);
        r2 = best->sqnorm;
      }
    }, budget);
    out.vectors.push_back(best->coords);
    out.sqnorm.push_back(best->sqnorm);
    out.lambda.push_back(static_cast<double>(sqrt(best->sqnorm)));
  }
  return out;
}

double unit_ball_volume(std::size_t d) {
  const double h = static_cast<double>(d) / 2.0;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

MinkowskiReport minkowski_check(const LatticeBasis& lattice, const EnumerationBudget& budget) {
  const std::size_t d = lattice.dim();
  const auto m = successive_minima(lattice, d, budget);
  HighFloat prod = 1;
  for (const auto& s : m.sqnorm) prod *= sqrt(s);
  const HighFloat normalized = prod / lattice.covolume();
  MinkowskiReport r;
  r.product_over_covolume = static_cast<double>(normalized);
  r.ball_ratio = static_cast<double>(normalized * HighFloat(unit_ball_volume(d)));
  r.upper = std::ldexp(1.0, static_cast<int>(d));
  r.lower = r.upper / std::tgamma(static_cast<double>(d) + 1.0);
  // Relative slack for the double rounding of V_d.
  const double tol = 1e-12;
  r.holds = r.ball_ratio >= r.lower * (1 - tol) && r.ball_ratio <= r.upper * (1 + tol);
  return r;
}

}  // namespace flagexp

#include "flagexp/ambient.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "flagexp/covolume.hpp"
#include "flagexp/error.hpp"

namespace flagexp {

namespace {

std::size_t binomial(int n, int k) {
  std::size_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return out;
}

// Kernel of u -> u ^ w for a k-vector w in the e_I basis, as rational vectors.
std::vector<RatVec> wedge_kernel(const IntVec& w, int d, int k) {
  const auto lower = k_subsets(d, k);
  const auto upper = k_subsets(d, k + 1);
  // Row I' of the map, column i: sign(i, I) w_I where I' = I + {i}.
  RatMatrix m(upper.size(), static_cast<std::size_t>(d));
  for (std::size_t r = 0; r < upper.size(); ++r) {
    const auto& big = upper[r];
    for (std::size_t pos = 0; pos < big.size(); ++pos) {
      std::vector<int> rest;
      for (std::size_t q = 0; q < big.size(); ++q)
        if (q != pos) rest.push_back(big[q]);
      const auto it = std::find(lower.begin(), lower.end(), rest);
      const auto idx = static_cast<std::size_t>(it - lower.begin());
      // e_i ^ e_rest = (-1)^pos e_big.
      m(r, static_cast<std::size_t>(big[pos])) = (pos % 2 == 0 ? 1 : -1) * Rational(w[idx]);
    }
  }
  // Row echelon form, then read off the free columns.
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(p, j));
    const Rational inv = 1 / m(row, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  std::vector<RatVec> kernel;
  for (int free = 0; free < d; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    RatVec v(static_cast<std::size_t>(d));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      v[static_cast<std::size_t>(pivot_col[r])] = -m(r, static_cast<std::size_t>(free));
    kernel.push_back(std::move(v));
  }
  return kernel;
}

bool all_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& z) { return z == 0; });
}

IntVec slice(const IntVec& v, std::size_t from, std::size_t n) {
  return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + n)};
}

// Squarefree integer in the same square class as q != 0, plus its prime divisors.
mpz_class square_class(const Rational& q, std::vector<mpz_class>& primes) {
  mpz_class n = q.get_num() * q.get_den();
  mpz_class out = n < 0 ? -1 : 1;
  n = abs(n);
  if (n > mpz_class("1000000000000000000")) throw Error(ErrorCode::PreconditionViolated, "quadric coefficient too large to factor");
  for (mpz_class p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e == 0) continue;
    if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    if (e % 2 == 1) out *= p;
  }
  if (n > 1) {
    if (std::find(primes.begin(), primes.end(), n) == primes.end()) primes.push_back(n);
    out *= n;
  }
  return out;
}

// a = p^alpha u with u prime to p.
std::pair<int, mpz_class> split(mpz_class a, const mpz_class& p) {
  int alpha = 0;
  while (a % p == 0) {
    a /= p;
    ++alpha;
  }
  return {alpha, a};
}

int legendre(const mpz_class& u, const mpz_class& p) { return mpz_legendre(u.get_mpz_t(), p.get_mpz_t()); }

long mod8(const mpz_class& u) {
  mpz_class r = u % 8;
  if (r < 0) r += 8;
  return r.get_si();
}

bool is_padic_square(const mpz_class& a, const mpz_class& p) {
  if (p == 0) return a > 0;
  const auto [alpha, u] = split(a, p);
  if (alpha % 2 != 0) return false;
  if (p == 2) return mod8(u) == 1;
  return legendre(u, p) == 1;
}

}  // namespace

int hilbert_symbol(const mpz_class& a, const mpz_class& b, const mpz_class& p) {
  if (a == 0 || b == 0) throw Error(ErrorCode::PreconditionViolated, "Hilbert symbol of zero");
  if (p == 0) return a < 0 && b < 0 ? -1 : 1;
  const auto [alpha, u] = split(a, p);
  const auto [beta, v] = split(b, p);
  if (p == 2) {
    const long uu = mod8(u);
    const long vv = mod8(v);
    const long eps_u = ((uu - 1) / 2) % 2;
    const long eps_v = ((vv - 1) / 2) % 2;
    const long om_u = ((uu * uu - 1) / 8) % 2;
    const long om_v = ((vv * vv - 1) / 8) % 2;
    const long e = eps_u * eps_v + alpha * om_v + beta * om_u;
    return e % 2 == 0 ? 1 : -1;
  }
  int s = 1;
  const mpz_class half = (p - 1) / 2;
  if ((alpha * beta) % 2 == 1 && half % 2 == 1) s = -s;
  if (beta % 2 == 1) s *= legendre(u, p);
  if (alpha % 2 == 1) s *= legendre(v, p);
  return s;
}

IsotropyCertificate quadric_isotropy(const RatMatrix& q) {
  const std::size_t n = q.rows();
  if (n == 0 || q.cols() != n) throw Error(ErrorCode::PreconditionViolated, "quadric form must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (q(i, j) != q(j, i)) throw Error(ErrorCode::PreconditionViolated, "quadric form must be symmetric");
  // Congruence diagonalization by symmetric row and column operations.
  RatMatrix a = q;
  auto add_to = [&](std::size_t dst, std::size_t src, const Rational& f) {
    for (std::size_t j = 0; j < n; ++j) a(dst, j) += f * a(src, j);
    for (std::size_t i = 0; i < n; ++i) a(i, dst) += f * a(i, src);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (a(j, j) == 0) continue;
        for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
        for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
        break;
      }
    }
    // Every remaining diagonal entry is zero: a(i,i) becomes 2 a(i,j).
    for (std::size_t j = i + 1; j < n && a(i, i) == 0; ++j)
      if (a(i, j) != 0) add_to(i, j, 1);
    if (a(i, i) == 0) continue;
    for (std::size_t j = i + 1; j < n; ++j)
      if (a(j, i) != 0) add_to(j, i, -a(j, i) / a(i, i));
  }
  IsotropyCertificate cert;
  for (std::size_t i = 0; i < n; ++i) cert.diagonal.push_back(a(i, i));
  if (std::any_of(cert.diagonal.begin(), cert.diagonal.end(), [](const Rational& x) { return x == 0; })) {
    cert.isotropic = true;
    cert.reason = "degenerate";
    return cert;
  }
  std::vector<mpz_class> primes{2};
  std::vector<mpz_class> c;
  for (const auto& x : cert.diagonal) c.push_back(square_class(x, primes));
  const bool definite = std::all_of(c.begin(), c.end(), [](const mpz_class& z) { return z > 0; }) ||
                        std::all_of(c.begin(), c.end(), [](const mpz_class& z) { return z < 0; });
  if (n == 1 || definite) {
    cert.reason = "real place";
    return cert;
  }
  if (n == 2) {
    const mpz_class m = -c[0] * c[1];
    cert.isotropic = m > 0 && mpz_perfect_square_p(m.get_mpz_t()) != 0;
    if (!cert.isotropic) cert.reason = "discriminant";
    return cert;
  }
  if (n >= 5) {
    cert.isotropic = true;
    return cert;
  }
  mpz_class disc = 1;
  for (const auto& z : c) disc *= z;
  for (const auto& p : primes) {
    int eps = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) eps *= hilbert_symbol(c[i], c[j], p);
    bool local = true;
    if (n == 3) local = hilbert_symbol(-1, -disc, p) == eps;
    else local = !is_padic_square(disc, p) || eps == hilbert_symbol(-1, -1, p);
    if (!local) {
      cert.reason = p.get_str() + "-adic";
      return cert;
    }
  }
  cert.isotropic = true;
  return cert;
}

AmbientSpace AmbientSpace::projective(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidSpec, "projective space needs d >= 2");
  AmbientSpace s;
  s.kind_ = AmbientKind::Projective;
  s.d_ = d;
  s.rep_dim_ = static_cast<std::size_t>(d);
  s.plus_ = {0};
  return s;
}

AmbientSpace AmbientSpace::grassmann(int l, int d) {
  if (l < 1 || l >= d) throw Error(ErrorCode::InvalidSpec, "grassmannian needs 1 <= l < d");
  AmbientSpace s;
  s.kind_ = AmbientKind::Grassmann;
  s.d_ = d;
  s.l_ = l;
  s.rep_dim_ = binomial(d, l);
  s.plus_ = {0};
  return s;
}

AmbientSpace AmbientSpace::fullflag(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidSpec, "full flag needs d >= 2");
  AmbientSpace s;
  s.kind_ = AmbientKind::FullFlag;
  s.d_ = d;
  std::size_t offset = 0;
  for (int k = 1; k < d; ++k) {
    s.plus_.push_back(offset);
    offset += binomial(d, k);
  }
  s.rep_dim_ = offset;
  return s;
}

AmbientSpace AmbientSpace::quadric(RatMatrix q, std::vector<std::size_t> plus) {
  const auto cert = quadric_isotropy(q);
  AmbientSpace s;
  s.kind_ = AmbientKind::Quadric;
  s.d_ = static_cast<int>(q.rows());
  s.rep_dim_ = q.rows();
  for (const auto& x : cert.diagonal) {
    if (x > 0) ++s.signature_.first;
    if (x < 0) ++s.signature_.second;
  }
  s.q_ = std::move(q);
  std::sort(plus.begin(), plus.end());
  plus.erase(std::unique(plus.begin(), plus.end()), plus.end());
  if (plus.empty() || plus.back() >= s.rep_dim_) throw Error(ErrorCode::InvalidSpec, "plus coordinates out of range");
  s.plus_ = std::move(plus);
  return s;
}

std::string AmbientSpace::name() const {
  switch (kind_) {
    case AmbientKind::Projective: return "projective:" + std::to_string(d_);
    case AmbientKind::Grassmann: return "grassmannian:" + std::to_string(l_) + "," + std::to_string(d_);
    case AmbientKind::FullFlag: return "fullflag:" + std::to_string(d_);
    case AmbientKind::Quadric: return "quadric:" + std::to_string(d_);
  }
  return {};
}

AmbientSpace AmbientSpace::with_plus(std::vector<std::size_t> plus) const {
  if (kind_ == AmbientKind::FullFlag) throw Error(ErrorCode::PreconditionViolated, "full flag plus coordinates are fixed");
  std::sort(plus.begin(), plus.end());
  plus.erase(std::unique(plus.begin(), plus.end()), plus.end());
  if (plus.empty() || plus.back() >= rep_dim_) throw Error(ErrorCode::InvalidSpec, "plus coordinates out of range");
  AmbientSpace out = *this;
  out.plus_ = std::move(plus);
  return out;
}

bool AmbientSpace::in_cone(const IntVec& m) const {
  if (m.size() != rep_dim_) throw Error(ErrorCode::PreconditionViolated, "vector does not live in " + name());
  if (all_zero(m)) return false;
  switch (kind_) {
    case AmbientKind::Projective: return true;
    case AmbientKind::Grassmann: return is_decomposable(m, d_, l_);
    case AmbientKind::Quadric: {
      Rational value = 0;
      for (std::size_t i = 0; i < rep_dim_; ++i)
        for (std::size_t j = 0; j < rep_dim_; ++j) value += q_(i, j) * m[i] * m[j];
      return value == 0;
    }
    case AmbientKind::FullFlag: {
      std::vector<std::vector<RatVec>> spans;
      std::size_t offset = 0;
      for (int k = 1; k < d_; ++k) {
        const std::size_t n = binomial(d_, k);
        const IntVec w = slice(m, offset, n);
        offset += n;
        if (all_zero(w) || !is_decomposable(w, d_, k)) return false;
        spans.push_back(wedge_kernel(w, d_, k));
      }
      // V_k inside V_{k+1}: each basis vector of V_k wedges to zero with w_{k+1}.
      offset = 0;
      for (int k = 1; k + 1 < d_; ++k) {
        offset += binomial(d_, k);
        const IntVec next = slice(m, offset, binomial(d_, k + 1));
        const auto bigger = wedge_kernel(next, d_, k + 1);
        RatMatrix stacked(bigger.size() + 1, static_cast<std::size_t>(d_));
        for (const auto& u : spans[static_cast<std::size_t>(k - 1)]) {
          for (std::size_t r = 0; r < bigger.size(); ++r)
            for (std::size_t j = 0; j < stacked.cols(); ++j) stacked(r, j) = bigger[r][j];
          for (std::size_t j = 0; j < stacked.cols(); ++j) stacked(bigger.size(), j) = u[j];
          // Rank test by elimination: u in span(bigger) iff the stacked rank stays k+1.
          std::size_t rank = 0;
          RatMatrix e = stacked;
          for (std::size_t c = 0; c < e.cols() && rank < e.rows(); ++c) {
            std::size_t p = rank;
            while (p < e.rows() && e(p, c) == 0) ++p;
            if (p == e.rows()) continue;
            for (std::size_t j = 0; j < e.cols(); ++j) std::swap(e(rank, j), e(p, j));
            for (std::size_t i = rank + 1; i < e.rows(); ++i) {
              if (e(i, c) == 0) continue;
              const Rational f = e(i, c) / e(rank, c);
              for (std::size_t j = 0; j < e.cols(); ++j) e(i, j) -= f * e(rank, j);
            }
            ++rank;
          }
          if (rank != bigger.size()) return false;
        }
      }
      return true;
    }
  }
  return false;
}

HighVec AmbientSpace::plus_projection(const HighVec& v) const {
  if (v.size() != rep_dim_) throw Error(ErrorCode::PreconditionViolated, "vector does not live in " + name());
  HighVec out(v.size(), HighFloat(0));
  for (std::size_t i : plus_) out[i] = v[i];
  return out;
}

namespace {

HighFloat wedge_sqnorm(const std::vector<HighVec>& vs) {
  HighMatrix gram(vs.size(), vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) gram(i, j) = dot(vs[i], vs[j]);
  return gram.determinant();
}

// Coordinate of v_1 ^ ... ^ v_k on e_1 ^ ... ^ e_k.
HighFloat leading_minor(const std::vector<HighVec>& vs) {
  HighMatrix m(vs.size(), vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) m(i, j) = vs[j][i];
  return m.determinant();
}

RChi finish(const LatticePoint& p) {
  RChi out;
  out.log_value = static_cast<double>(log(p.sqnorm) / 2);
  out.value = std::exp(out.log_value);
  out.vector = p.coords;
  return out;
}

RChi fullflag_r_chi(const LatticeBasis& lattice, const AmbientSpace& space, double c_cone,
                    const EnumerationBudget& budget) {
  const auto d = static_cast<std::size_t>(space.d());
  const ReducedBasis reduced(lattice.basis());
  // Flags built from short vectors only: the search is an upper bound, flagged incomplete.
  const std::size_t keep = d <= 3 ? 40 : 20;
  auto pts = reduced.short_vectors(reduced.max_sqnorm() * 4, budget);
  std::sort(pts.begin(), pts.end(), shorter);
  if (pts.size() > keep) pts.resize(keep);
  const HighFloat c2 = HighFloat(c_cone) * HighFloat(c_cone);
  std::optional<HighFloat> best;
  std::vector<const LatticePoint*> chosen;
  std::vector<const LatticePoint*> best_flag;
  std::vector<HighVec> vs;
  // Partial products of |w_k|^2 and of the leading minors squared.
  std::function<void(HighFloat, HighFloat)> extend = [&](HighFloat norm2, HighFloat plus2) {
    if (best && norm2 >= *best) return;
    if (chosen.size() + 1 == d) {
      if (plus2 >= c2 * norm2) {
        best = norm2;
        best_flag = chosen;
      }
      return;
    }
    for (const auto& p : pts) {
      vs.push_back(p.vec);
      std::vector<IntVec> ints;
      for (const auto* q : chosen) ints.push_back(q->coords);
      ints.push_back(p.coords);
      if (integer_rank(ints) == ints.size()) {
        const HighFloat lead = leading_minor(vs);
        chosen.push_back(&p);
        extend(norm2 * wedge_sqnorm(vs), plus2 * lead * lead);
        chosen.pop_back();
      }
      vs.pop_back();
    }
  };
  extend(HighFloat(1), HighFloat(1));
  if (!best) throw Error(ErrorCode::EnumerationBudgetExceeded, "no flag of short vectors meets the plus condition");
  RChi out;
  out.log_value = static_cast<double>(log(*best) / 2);
  out.value = std::exp(out.log_value);
  out.complete = false;
  std::vector<IntVec> flag;
  for (const auto* p : best_flag) {
    flag.push_back(p->coords);
    const IntVec w = wedge(flag);
    out.vector.insert(out.vector.end(), w.begin(), w.end());
  }
  return out;
}

}  // namespace

RChi r_chi(const LatticeBasis& lattice, const AmbientSpace& space, double c_cone, std::optional<HighFloat> max_radius2,
           const EnumerationBudget& budget) {
  if (c_cone <= 0 || c_cone > 1) throw Error(ErrorCode::PreconditionViolated, "c_cone must lie in (0, 1]");
  if (space.kind() == AmbientKind::FullFlag) {
    if (lattice.dim() != static_cast<std::size_t>(space.d()))
      throw Error(ErrorCode::PreconditionViolated, "full flag r_chi takes a lattice in R^d");
    return fullflag_r_chi(lattice, space, c_cone, budget);
  }
  if (lattice.dim() != space.rep_dim()) throw Error(ErrorCode::PreconditionViolated, "lattice does not live in " + space.name());
  if (space.kind() == AmbientKind::Quadric && !quadric_isotropy(space.form()).isotropic) {
    RChi out;
    out.certified_infinite = true;
    out.log_value = INFINITY;
    return out;
  }
  const ReducedBasis reduced(lattice.basis());
  const HighFloat cap = max_radius2 ? *max_radius2 : reduced.max_sqnorm() * HighFloat(1'000'000);
  const HighFloat c2 = HighFloat(c_cone) * HighFloat(c_cone);
  auto pred = [&](const LatticePoint& p) {
    if (!space.in_cone(p.coords)) return false;
    return norm2(space.plus_projection(p.vec)) >= c2 * p.sqnorm;
  };
  const auto found = reduced.shortest_matching(pred, reduced.min_sqnorm(), cap, budget);
  if (!found) throw Error(ErrorCode::EnumerationBudgetExceeded, "no cone point within the search radius");
  return finish(*found);
}

}  // namespace flagexp

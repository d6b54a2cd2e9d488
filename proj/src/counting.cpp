#include "flagexp/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flagexp/covolume.hpp"
#include "flagexp/error.hpp"

namespace flagexp {

namespace {

Height primitive_height(const IntVec& point) {
  mpz_class g = 0;
  for (const auto& z : point) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  if (g == 0) throw Error(ErrorCode::ZeroVector, "height of the zero vector");
  Height h;
  h.primitive = point;
  const auto lead = std::find_if(point.begin(), point.end(), [](const mpz_class& z) { return z != 0; });
  if (*lead < 0) g = -g;
  for (auto& z : h.primitive) {
    z /= g;
    h.squared += z * z;
  }
  h.value = std::sqrt(h.squared.get_d());
  return h;
}

long long isqrt(long long n) {
  auto r = static_cast<long long>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

long long squared_limit(double T) {
  if (!(T >= 0) || T > 3e9) throw Error(ErrorCode::PreconditionViolated, "height bound out of range");
  return static_cast<long long>(std::floor(static_cast<long double>(T) * T + 1e-9L));
}

// Nonzero primitive vectors with |v|^2 <= limit, both signs.
std::uint64_t count_primitive(int dims, long long limit, long long g) {
  if (dims == 0) return g == 1 ? 1 : 0;
  std::uint64_t total = 0;
  const long long r = isqrt(limit);
  for (long long v = -r; v <= r; ++v) total += count_primitive(dims - 1, limit - v * v, std::gcd(g, std::llabs(v)));
  return total;
}

std::uint64_t count_grass_2_4(long long limit) {
  std::uint64_t total = 0;
  const long long r = isqrt(limit);
  for (long long a = -r; a <= r; ++a) {            // p12
    const long long la = limit - a * a;
    for (long long b = -isqrt(la); b * b <= la; ++b) {  // p13
      const long long lb = la - b * b;
      for (long long c = -isqrt(lb); c * c <= lb; ++c) {  // p14
        const long long lc = lb - c * c;
        for (long long e = -isqrt(lc); e * e <= lc; ++e) {  // p23
          const long long le = lc - e * e;
          for (long long f = -isqrt(le); f * f <= le; ++f) {  // p24
            const long long lf = le - f * f;
            const long long g5 = std::gcd(std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::gcd(std::llabs(c), std::llabs(e))), std::llabs(f));
            // p12 p34 - p13 p24 + p14 p23 = 0.
            const long long num = b * f - c * e;
            if (a != 0) {
              if (num % a != 0) continue;
              const long long p34 = num / a;
              if (p34 * p34 <= lf && std::gcd(g5, std::llabs(p34)) == 1) ++total;
            } else if (num == 0) {
              const long long m = isqrt(lf);
              for (long long p34 = -m; p34 <= m; ++p34)
                if (std::gcd(g5, std::llabs(p34)) == 1) ++total;
            }
          }
        }
      }
    }
  }
  return total;
}

}  // namespace

Height height(const IntVec& point, const AmbientSpace& space) {
  if (point.size() != space.rep_dim()) throw Error(ErrorCode::PreconditionViolated, "point does not live in " + space.name());
  if (space.kind() == AmbientKind::Grassmann && !space.in_cone(point)) {
    if (std::all_of(point.begin(), point.end(), [](const mpz_class& z) { return z == 0; }))
      throw Error(ErrorCode::ZeroVector, "height of the zero vector");
    throw Error(ErrorCode::PreconditionViolated, "Plucker vector is not decomposable");
  }
  if (space.kind() != AmbientKind::Projective && space.kind() != AmbientKind::Grassmann)
    throw Error(ErrorCode::PreconditionViolated, "heights are defined for projective spaces and Grassmannians");
  return primitive_height(point);
}

Height height_of_span(const std::vector<IntVec>& vectors) { return primitive_height(wedge(vectors)); }

std::uint64_t count_rational_points(const AmbientSpace& space, double T) {
  const long long limit = squared_limit(T);
  if (space.kind() == AmbientKind::Projective) return count_primitive(space.d(), limit, 0) / 2;
  if (space.kind() == AmbientKind::Grassmann && space.l() == 2 && space.d() == 4) return count_grass_2_4(limit) / 2;
  throw Error(ErrorCode::PreconditionViolated, "point counting supports projective spaces and Grass(2,4)");
}

double psi_value(const PsiParams& psi, double u) {
  const double l1 = std::max(1.0, std::log(u));
  const double l2 = std::max(1.0, std::log(l1));
  return to_double(psi.c) * std::pow(l1, -to_double(psi.gamma)) * std::pow(l2, -to_double(psi.delta));
}

double projective_distance(std::span<const HighFloat> x, const IntVec& v) {
  if (x.size() != v.size()) throw Error(ErrorCode::PreconditionViolated, "dimension mismatch");
  HighFloat wedge2 = 0;
  HighFloat x2 = 0;
  HighFloat v2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const HighFloat vi = to_high(v[i]);
    x2 += x[i] * x[i];
    v2 += vi * vi;
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const HighFloat m = x[i] * to_high(v[j]) - x[j] * vi;
      wedge2 += m * m;
    }
  }
  if (x2 == 0 || v2 == 0) throw Error(ErrorCode::ZeroVector, "distance to the zero vector");
  return static_cast<double>(sqrt(wedge2 / (x2 * v2)));
}

void for_each_approximation(std::span<const HighFloat> x, double T, const std::function<double(double)>& bound,
                            const std::function<void(const Approximation&)>& visit) {
  const std::size_t d = x.size();
  if (d < 2) throw Error(ErrorCode::PreconditionViolated, "x needs at least two coordinates");
  if (T > 1e9) throw Error(ErrorCode::PreconditionViolated, "T <= 1e9");
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < d; ++i)
    if (abs(x[i]) > abs(x[pivot])) pivot = i;
  if (x[pivot] == 0) throw Error(ErrorCode::ZeroVector, "x is the zero vector");
  std::vector<long double> w(d);
  long double xnorm2 = 0;
  for (std::size_t i = 0; i < d; ++i) {
    w[i] = static_cast<long double>(x[i] / x[pivot]);
    xnorm2 += w[i] * w[i];
  }
  const long double xnorm = std::sqrt(xnorm2);
  const long long limit = squared_limit(T);
  const auto top = static_cast<long long>(std::floor(T));

  std::vector<long long> v(d);
  std::vector<std::pair<long long, long long>> range(d);
  IntVec big(d);
  auto check = [&](long long h2) {
    long long g = 0;
    for (long long c : v) g = std::gcd(g, std::llabs(c));
    if (g != 1) return;
    const long double h = std::sqrt(static_cast<long double>(h2));
    // d(x, v) with x scaled so the pivot coordinate is 1.
    long double wedge2 = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        const long double m = w[i] * static_cast<long double>(v[j]) - w[j] * static_cast<long double>(v[i]);
        wedge2 += m * m;
      }
    long double dist = std::sqrt(wedge2) / (xnorm * h);
    const auto hd = static_cast<double>(h);
    const long double b = bound(hd);
    if (dist > b * (1 + 1e-12L)) return;
    for (std::size_t i = 0; i < d; ++i) big[i] = static_cast<long>(v[i]);
    if (dist > b * (1 - 1e-12L)) {
      dist = projective_distance(x, big);
      if (dist > b) return;
    }
    visit(Approximation{big, hd, static_cast<double>(dist)});
  };
  // Sign: v_pivot > 0, or v_pivot = 0 with the first nonzero coordinate positive.
  std::function<void(std::size_t, long long, bool)> fill = [&](std::size_t j, long long h2, bool positive) {
    if (h2 > limit) return;
    if (j == d) {
      if (positive) check(h2);
      return;
    }
    if (j == pivot) {
      fill(j + 1, h2 + v[j] * v[j], positive || v[j] > 0);
      return;
    }
    for (long long c = range[j].first; c <= range[j].second; ++c) {
      if (!positive && c < 0) continue;
      v[j] = c;
      fill(j + 1, h2 + c * c, positive || c > 0);
    }
  };
  for (long long a = 0; a <= top; ++a) {
    const auto h0 = static_cast<double>(std::max(1LL, a));
    // |v_j - w_j a| <= |x ^ v| / |x_pivot| <= bound(h) h |x| / |x_pivot|, and bound(h) h
    // does not increase for h >= |v| >= a.
    const long double window = static_cast<long double>(bound(h0)) * h0 * xnorm * (1 + 1e-9L) + 1e-9L;
    v[pivot] = a;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == pivot) continue;
      const long double centre = w[j] * static_cast<long double>(a);
      range[j] = {static_cast<long long>(std::ceil(centre - window)), static_cast<long long>(std::floor(centre + window))};
    }
    fill(0, 0, a > 0);
  }
}

std::vector<std::uint64_t> count_solutions(std::span<const HighFloat> x, const PsiParams& psi, std::span<const double> Ts) {
  if (psi.gamma < 0 || psi.delta < 0 || psi.c < 0)
    throw Error(ErrorCode::PreconditionViolated, "psi must be non-negative and non-increasing");
  for (std::size_t i = 1; i < Ts.size(); ++i)
    if (!(Ts[i] > Ts[i - 1])) throw Error(ErrorCode::PreconditionViolated, "thresholds must increase");
  std::vector<std::uint64_t> counts(Ts.size(), 0);
  if (Ts.empty() || psi.c == 0) return counts;
  const double beta = to_double(beta_almost_sure(FlagVarietySpec::projective(static_cast<int>(x.size()))));
  for_each_approximation(
      x, Ts.back(), [&](double h) { return std::pow(h, -beta) * psi_value(psi, h); },
      [&](const Approximation& a) {
        for (std::size_t i = 0; i < Ts.size(); ++i)
          if (a.height <= Ts[i]) ++counts[i];
      });
  return counts;
}

std::uint64_t count_solutions(std::span<const HighFloat> x, const PsiParams& psi, double T) {
  const double Ts[] = {T};
  return count_solutions(x, psi, Ts)[0];
}

}  // namespace flagexp

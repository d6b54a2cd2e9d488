#include "flagexp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "flagexp/counting.hpp"
#include "flagexp/covolume.hpp"
#include "flagexp/error.hpp"
#include "flagexp/parallel.hpp"

namespace flagexp {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::PreconditionViolated, "slope needs two or more points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw Error(ErrorCode::PreconditionViolated, "log-log slope needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

constexpr std::uint64_t kChunk = 4096;

// Shortest vector of a planar lattice by Lagrange-Gauss reduction.
double gauss_lambda1(double ax, double ay, double bx, double by) {
  double a2 = ax * ax + ay * ay;
  double b2 = bx * bx + by * by;
  if (a2 > b2) {
    std::swap(ax, bx);
    std::swap(ay, by);
    std::swap(a2, b2);
  }
  while (true) {
    const double mu = std::round((ax * bx + ay * by) / a2);
    bx -= mu * ax;
    by -= mu * ay;
    b2 = bx * bx + by * by;
    if (b2 >= a2) return std::sqrt(a2);
    std::swap(ax, bx);
    std::swap(ay, by);
    std::swap(a2, b2);
  }
}

}  // namespace

CuspFractions monte_carlo_cusp_fraction(std::span<const double> r_values, std::uint64_t n_samples, std::uint64_t seed,
                                        unsigned threads) {
  if (n_samples == 0 || n_samples > 1'000'000'000ULL) throw Error(ErrorCode::BadSampleCount, "need 1 <= n_samples <= 1e9");
  const std::size_t chunks = (n_samples + kChunk - 1) / kChunk;
  const double y_min = std::sqrt(3.0) / 2;
  auto per_chunk = parallel_map<std::vector<std::uint64_t>>(chunks, threads, [&](std::size_t c) {
    std::mt19937_64 rng(derive_seed(seed, c));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t n = std::min(kChunk, n_samples - begin);
    std::vector<std::uint64_t> hits(r_values.size(), 0);
    for (std::uint64_t i = 0; i < n; ++i) {
      // Density dx dy / y^2 on {|x| <= 1/2, y >= sqrt(3)/2}, restricted to |z| >= 1.
      double x = 0, y = 0;
      do {
        x = unit(rng) - 0.5;
        y = y_min / (1.0 - unit(rng));
      } while (x * x + y * y < 1);
      const double theta = std::numbers::pi * unit(rng);
      const double cs = std::cos(theta), sn = std::sin(theta);
      const double s = 1 / std::sqrt(y);
      // Basis (1, 0) and (x, y) of Z + zZ scaled to covolume one, then rotated.
      const double l1 = gauss_lambda1(cs * s, sn * s, cs * x * s - sn * y * s, sn * x * s + cs * y * s);
      for (std::size_t k = 0; k < r_values.size(); ++k)
        if (l1 <= r_values[k]) ++hits[k];
    }
    return hits;
  });
  CuspFractions out;
  out.r.assign(r_values.begin(), r_values.end());
  out.samples = n_samples;
  std::vector<std::uint64_t> total(r_values.size(), 0);
  for (const auto& h : per_chunk)
    for (std::size_t k = 0; k < h.size(); ++k) total[k] += h[k];
  for (auto t : total) out.fraction.push_back(static_cast<double>(t) / static_cast<double>(n_samples));
  return out;
}

namespace {

HighMatrix flowed(const HighMatrix& s, const RatVec& y, double t) {
  HighVec scale(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) scale[i] = exp(HighFloat(t) * to_high(y[i]));
  return HighMatrix::diagonal(scale) * s;
}

}  // namespace

OrbitLimit algebraic_orbit_limit(const HighMatrix& s, const RatVec& y_diag, double T, double step,
                                 const EnumerationBudget& budget) {
  if (s.rows() != s.cols() || s.rows() > 4 || s.rows() < 2) throw Error(ErrorCode::PreconditionViolated, "s must be d x d with d <= 4");
  if (y_diag.size() != s.rows()) throw Error(ErrorCode::PreconditionViolated, "Y must have d diagonal entries");
  if (!(T > 0) || !(step > 0)) throw Error(ErrorCode::PreconditionViolated, "T and step must be positive");
  OrbitLimit out;
  for (double t = 0; t < T - 1e-9; t += step) out.times.push_back(t);
  out.times.push_back(T);
  for (double t : out.times) out.c.push_back(c_of_lattice(flowed(s, y_diag, t), budget).c);
  for (double v : out.c.back()) out.limit.push_back(v / T);
  return out;
}

HighMatrix permutation_for(const RatVec& y_diag, const RatVec& target) {
  const std::size_t d = y_diag.size();
  if (target.size() != d) throw Error(ErrorCode::PreconditionViolated, "target must permute Y");
  HighMatrix p(d, d);
  std::vector<bool> used(d, false);
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t i = 0;
    while (i < d && (used[i] || y_diag[i] != target[j])) ++i;
    if (i == d) throw Error(ErrorCode::PreconditionViolated, "target must permute Y");
    used[i] = true;
    p(i, j) = 1;
  }
  return p;
}

CurveReport curve_experiment(const Curve& curve, const RatVec& y_diag, std::span<const double> times,
                             std::size_t n_samples, std::uint64_t seed, std::span<const double> epsilons,
                             unsigned threads, const EnumerationBudget& budget) {
  if (n_samples == 0) throw Error(ErrorCode::BadSampleCount, "need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<HighMatrix> points;
  for (std::size_t i = 0; i < n_samples; ++i) points.push_back(curve(HighFloat(unit(rng))));
  CurveReport out;
  out.times.assign(times.begin(), times.end());
  out.epsilons.assign(epsilons.begin(), epsilons.end());
  for (double t : times) {
    if (!(t > 0)) throw Error(ErrorCode::PreconditionViolated, "times must be positive");
    std::vector<HighMatrix> moved;
    for (const auto& s : points) moved.push_back(flowed(s, y_diag, t));
    const auto each = parallel_map<std::vector<double>>(moved.size(), threads, [&](std::size_t i) {
      return c_of_lattice(moved[i], budget).c;
    });
    const auto set = c_of_set(moved, budget).c;
    std::vector<double> dev;
    for (const auto& c : each) {
      std::vector<double> diff(c.size());
      for (std::size_t k = 0; k < c.size(); ++k) diff[k] = c[k] - set[k];
      dev.push_back(chamber_norm(diff) / t);
    }
    std::vector<double> exceed;
    for (double eps : epsilons) {
      const auto n = std::count_if(dev.begin(), dev.end(), [&](double v) { return v > eps; });
      exceed.push_back(static_cast<double>(n) / static_cast<double>(dev.size()));
    }
    out.set_position.push_back(set);
    out.deviation.push_back(std::move(dev));
    out.exceed.push_back(std::move(exceed));
  }
  return out;
}

double direct_exponent(std::span<const HighFloat> x, double T, double floor) {
  if (!(floor > 1)) throw Error(ErrorCode::PreconditionViolated, "floor must exceed 1");
  if (!(T > 0) || T / floor > 30) throw Error(ErrorCode::PreconditionViolated, "T / floor must lie in (0, 30]");
  double best = floor;
  for_each_approximation(
      x, std::exp(T / floor), [&](double h) { return std::pow(h, -floor); },
      [&](const Approximation& a) {
        const double depth = -std::log(a.distance);
        if (a.height < 2 || depth < T / 2 || depth > T) return;
        best = std::max(best, depth / std::log(a.height));
      });
  return best;
}

}  // namespace flagexp

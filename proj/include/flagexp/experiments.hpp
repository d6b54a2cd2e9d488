#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "flagexp/highprec.hpp"
#include "flagexp/lattice.hpp"
#include "flagexp/rational.hpp"

namespace flagexp {

// SplitMix64 step; per-task seeds are derive_seed(seed, task index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct CuspFractions {
  std::vector<double> r;
  std::vector<double> fraction;  // share of sampled lattices with lambda_1 <= r
  std::uint64_t samples = 0;
};

// Unimodular 2-lattices drawn from Haar measure through the modular fundamental domain,
// with a uniform fiber rotation. Deterministic in (seed, n_samples); threads only split
// work across fixed chunks. Throws BadSampleCount for n_samples == 0.
CuspFractions monte_carlo_cusp_fraction(std::span<const double> r_values, std::uint64_t n_samples,
                                        std::uint64_t seed, unsigned threads = 1);

struct OrbitLimit {
  std::vector<double> limit;  // c(a_T s) / T in eval coordinates
  std::vector<double> times;
  std::vector<std::vector<double>> c;  // c(a_t s) along the grid
};

// c(a_t s) on 0, step, ..., T with a_t = exp(t diag(y)); s in SL_d, d <= 4.
OrbitLimit algebraic_orbit_limit(const HighMatrix& s, const RatVec& y_diag, double T, double step = 5,
                                 const EnumerationBudget& budget = {});

// Permutation matrix P with P^-1 diag(y) P = diag(target); target must permute y.
HighMatrix permutation_for(const RatVec& y_diag, const RatVec& target);

using Curve = std::function<HighMatrix(const HighFloat&)>;

struct CurveReport {
  std::vector<double> times;
  std::vector<std::vector<double>> set_position;  // c(a_t S) for the sampled set S
  std::vector<std::vector<double>> deviation;     // |c(a_t s_i) - c(a_t S)| / t per sample
  std::vector<double> epsilons;
  std::vector<std::vector<double>> exceed;  // [time][eps] share of samples above eps
};

// Samples u_i ~ U[0,1] (seeded) and follows s_i = curve(u_i) and the set S of all s_i.
CurveReport curve_experiment(const Curve& curve, const RatVec& y_diag, std::span<const double> times,
                             std::size_t n_samples, std::uint64_t seed, std::span<const double> epsilons,
                             unsigned threads = 1, const EnumerationBudget& budget = {});

// Best exponent -log d(x, v) / log H(v) among primitive v with -log d(x, v) in [T/2, T],
// counting only exponents >= floor. A vector with exponent e is closest to the cone near
// t = e log H, so this window matches the [T/2, T] window of estimate_gamma. Heights up
// to e^(T/floor) are scanned. Returns floor when nothing qualifies.
double direct_exponent(std::span<const HighFloat> x, double T, double floor = 1.85);

}  // namespace flagexp

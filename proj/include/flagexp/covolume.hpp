#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "flagexp/highprec.hpp"
#include "flagexp/lattice.hpp"

namespace flagexp {

// k-subsets of {0..d-1} in lexicographic order; the basis e_I of the k-th exterior power.
std::vector<std::vector<int>> k_subsets(int d, int k);

// Matrix of the k-th exterior power in the e_I basis; entries are k x k minors.
HighMatrix exterior_power(const HighMatrix& g, int k);

// Integer k-vector v_1 ^ ... ^ v_k in the e_I basis.
IntVec wedge(const std::vector<IntVec>& vectors);

// Every Plucker relation, checked exactly.
bool is_decomposable(const IntVec& kvector, int d, int k);
bool is_primitive(const IntVec& v);

// Position of g Z^d in eval coordinates: omega_k(c0) = log mu_k(g), and c is the
// projection of c0 onto the negative chamber (the convex minorant in type A).
struct Position {
  std::vector<double> c0;
  std::vector<double> c;
  std::vector<IntVec> minimizers;  // primitive decomposable k-vectors realizing mu_k
};

// g must have |det g| = 1. d <= 6.
Position c_of_lattice(const HighMatrix& g, const EnumerationBudget& budget = {});

// mu_k(S) = min over primitive decomposable v of max over g in S of |g v|.
Position c_of_set(std::span<const HighMatrix> samples, const EnumerationBudget& budget = {});

// mu_k of a single lattice as high-precision values.
HighFloat covolume_minimum(const HighMatrix& g, int k, IntVec* minimizer = nullptr,
                           const EnumerationBudget& budget = {});

// Type-A helpers on eval coordinates c_1..c_{d-1} (partial sums of a traceless diagonal).
std::vector<double> eval_to_diagonal(std::span<const double> eval);
double chamber_norm(std::span<const double> eval);
// alpha_k(c) = 2 c_k - c_{k-1} - c_{k+1} with c_0 = c_d = 0.
std::vector<double> simple_root_values(std::span<const double> eval);
std::vector<double> project_eval_to_chamber(std::span<const double> eval);

struct FlagComponent {
  int k = 0;
  IntVec kvector;
  double root_value = 0;  // alpha_k(c(g))
  double certified_gap = 0;  // every other direction is at least this many times mu_k
};

// Directions forced by alpha_k(c(g)) <= -C0. Each one is certified by enumerating every
// decomposable vector up to gap_constant * e^{-alpha_k} mu_k; throws GapNotCertified when
// another direction shows up there or the enumeration budget runs out.
std::vector<FlagComponent> partial_flag_detect(const HighMatrix& g, double c0_threshold, double gap_constant = 0.5,
                                               const EnumerationBudget& budget = {});

}  // namespace flagexp

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flagexp/ambient.hpp"
#include "flagexp/highprec.hpp"
#include "flagexp/lattice.hpp"
#include "flagexp/rational.hpp"

namespace flagexp {

enum class RChiState { Found, Infinite, Missing };

struct OrbitSample {
  double t = 0;
  std::vector<double> log_lambda;
  RChiState r_state = RChiState::Missing;
  double log_r_chi = 0;  // meaningful when r_state == Found
  std::vector<double> c;  // eval coordinates of c(a_t s); empty when not computed
  std::string flags;      // detected partial flags as "k1 k2", or "uncertified" on a gap failure
};

struct OrbitTrace {
  std::string space;
  std::size_t rep_dim = 0;
  std::size_t group_dim = 0;  // d for SL_d; c has d - 1 eval coordinates
  double lipschitz = 0;  // max |weight(Y)| on the representation
  std::vector<OrbitSample> samples;
};

struct FlowOptions {
  double c_cone = 0.5;
  bool minima = true;
  bool position = true;
  double flag_threshold = 2.0;  // C0 for the partial-flag detection; <= 0 disables it
  unsigned threads = 1;
  EnumerationBudget budget{};
};

// Weights of Y on the basis of V: y_i on e_i, the sums over I on e_I for the Grassmannian.
// The full flag uses R^d itself.
RatVec representation_weights(const AmbientSpace& space, const RatVec& y_diag);

// Orbit of Delta = s V(Z) under a_t = exp(t Y), Y = diag(y_diag) on R^d and extended to V.
// s is d x d and the plus-projection is recomputed from Y. a_t s is formed in 266-bit
// floats, whose exponent range makes the log-domain bookkeeping unnecessary for |t| <= 60.
OrbitTrace flow_orbit(const HighMatrix& s, const RatVec& y_diag, std::span<const double> t_grid,
                      const AmbientSpace& space, const FlowOptions& options = {});

// Evenly spaced grid t0, t0 + step, ..., up to t1 inclusive.
std::vector<double> time_grid(double t0, double t1, double step);

void write_csv(std::ostream& out, const OrbitTrace& trace);
OrbitTrace read_csv(std::istream& in);

struct GammaEstimate {
  double sup = 0;  // max over the window of -log r_chi / t
  double inf = 0;  // min over the window; -infinity if a certified +infinity sample appears
  double t_lo = 0;
  double t_hi = 0;
  std::size_t used = 0;
  std::size_t missing = 0;
};

// Window [T/2, T] with T the last grid time. Throws AllInfinite when the window holds no
// finite r_chi sample.
GammaEstimate estimate_gamma(const OrbitTrace& trace);

// 1 / (-chi(Y) - gamma). Throws PoleOrBeyond for gamma > -chi(Y); +infinity at equality.
double beta_from_gamma(double gamma, const Rational& chi_y);

}  // namespace flagexp

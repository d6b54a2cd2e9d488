#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "flagexp/highprec.hpp"
#include "flagexp/rational.hpp"

namespace flagexp {

enum class Provenance { Exact, Float };

// A full-rank lattice in R^d; the columns of the basis matrix span it.
class LatticeBasis {
 public:
  // Throws PreconditionViolated for singular or non-square input.
  static LatticeBasis exact(const RatMatrix& columns);
  static LatticeBasis from_float(HighMatrix columns);
  static LatticeBasis standard(std::size_t d);

  [[nodiscard]] std::size_t dim() const noexcept { return basis_.rows(); }
  [[nodiscard]] const HighMatrix& basis() const noexcept { return basis_; }
  [[nodiscard]] Provenance provenance() const noexcept { return provenance_; }
  [[nodiscard]] const std::optional<RatMatrix>& exact_basis() const noexcept { return exact_; }
  [[nodiscard]] HighFloat covolume() const;
  // g applied to every basis vector; exact when both sides are.
  [[nodiscard]] LatticeBasis transformed(const HighMatrix& g) const;
  [[nodiscard]] LatticeBasis transformed(const RatMatrix& g) const;

 private:
  LatticeBasis(HighMatrix basis, Provenance p, std::optional<RatMatrix> exact);
  HighMatrix basis_;
  Provenance provenance_ = Provenance::Float;
  std::optional<RatMatrix> exact_;
};

struct EnumerationBudget {
  std::size_t max_nodes = 20'000'000;
  std::size_t max_points = 4'000'000;
};

struct LatticePoint {
  IntVec coords;  // integer coefficients on the input basis
  HighVec vec;
  HighFloat sqnorm;
};

// Orders by squared length, then coordinates; the tie-break used for minima.
bool shorter(const LatticePoint& a, const LatticePoint& b);

// Schnorr-Euchner enumeration over a fixed basis. Gram-Schmidt data stays in high
// precision: orbit lattices have Gram-Schmidt norms spread over e^{+-60}.
class Enumerator {
 public:
  // basis[j] has integer coordinates coords[j] on the caller's reference basis.
  Enumerator(std::vector<HighVec> basis, std::vector<IntVec> coords);

  [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
  [[nodiscard]] LatticePoint point(std::span<const long long> x) const;

  // Visits x with |sum x_j b_j|^2 <= radius2 (up to a 1e-60 relative slack) whose block
  // x_first.. is nonzero, one of each pair +-x. leaf may shrink radius2.
  void run(HighFloat& radius2, std::size_t first, const std::function<void(std::span<const long long>)>& leaf,
           const EnumerationBudget& budget) const;

 private:
  std::vector<HighVec> basis_;
  std::vector<IntVec> coords_;
  std::vector<std::vector<HighFloat>> mu_;
  std::vector<HighFloat> bstar2_;
};

// LLL-reduced copy of a basis, used only as enumeration preprocessing.
class ReducedBasis {
 public:
  explicit ReducedBasis(const HighMatrix& columns, double delta = 0.99);

  [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
  [[nodiscard]] const std::vector<LatticePoint>& basis() const noexcept { return basis_; }
  [[nodiscard]] HighFloat max_sqnorm() const;
  [[nodiscard]] HighFloat min_sqnorm() const;

  // Every nonzero lattice vector with |v|^2 <= radius2, one of each pair +-v, with the
  // first nonzero coordinate positive. Throws EnumerationBudgetExceeded.
  [[nodiscard]] std::vector<LatticePoint> short_vectors(const HighFloat& radius2,
                                                        const EnumerationBudget& budget = {}) const;

  // Shortest vector satisfying pred among |v|^2 <= max_radius2, searching outward from
  // start_radius2; nullopt when none exists in that ball.
  [[nodiscard]] std::optional<LatticePoint> shortest_matching(
      const std::function<bool(const LatticePoint&)>& pred, HighFloat start_radius2,
      const HighFloat& max_radius2, const EnumerationBudget& budget = {}) const;

  [[nodiscard]] const Enumerator& enumerator() const noexcept { return enumerator_; }

 private:
  std::vector<LatticePoint> basis_;
  Enumerator enumerator_;
};

// LLL on column vectors; returns the reduced columns and the unimodular transform U
// with reduced = columns * U.
struct LllResult {
  HighMatrix reduced;
  HighMatrix transform;
};
LllResult lll_reduce(const HighMatrix& columns, double delta = 0.99);

// Enumerator on a basis whose first chosen.size() vectors generate the saturation of
// span(chosen) and whose remaining vectors are reduced modulo it. Running it with
// first = chosen.size() visits exactly the vectors outside that span.
Enumerator adapted_enumerator(const HighMatrix& basis, const std::vector<IntVec>& chosen);

struct SuccessiveMinima {
  std::vector<HighFloat> sqnorm;
  std::vector<double> lambda;
  std::vector<IntVec> vectors;
};

// lambda_1..lambda_k. Step i minimizes (length, coordinates) over vectors outside the span
// of the previous choices, enumerating on a basis adapted to that span. The radius
// starts at a basis vector outside the span, so the search is exhaustive.
SuccessiveMinima successive_minima(const LatticeBasis& lattice, std::size_t upto = 0,
                                   const EnumerationBudget& budget = {});

struct MinkowskiReport {
  double product_over_covolume;  // lambda_1...lambda_d / covol
  double ball_ratio;             // V_d lambda_1...lambda_d / covol
  double lower;                  // 2^d / d!
  double upper;                  // 2^d
  bool holds;
};
// Second theorem of Minkowski with the unit-ball volume V_d.
MinkowskiReport minkowski_check(const LatticeBasis& lattice, const EnumerationBudget& budget = {});

double unit_ball_volume(std::size_t d);

// Rank of integer vectors, computed exactly.
std::size_t integer_rank(const std::vector<IntVec>& vectors);

// Unimodular d x d integer matrix (as columns) whose first k columns are a basis of
// span(cols) intersected with Z^d. cols must be independent.
std::vector<IntVec> saturated_completion(const std::vector<IntVec>& cols, std::size_t d);

}  // namespace flagexp

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flagexp/flags.hpp"
#include "flagexp/rational.hpp"
#include "flagexp/roots.hpp"

namespace flagexp {

// Exact exponent value; +infinity sorts above every rational.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(Rational value) : value_(std::move(value)) {}
  static Exponent infinity() {
    Exponent e;
    e.infinite_ = true;
    return e;
  }

  [[nodiscard]] bool is_infinite() const noexcept { return infinite_; }
  // Only meaningful when finite.
  [[nodiscard]] const Rational& value() const noexcept { return value_; }
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b);

 private:
  bool infinite_ = false;
  Rational value_;
};

struct CellAnalysis {
  WeylElement w;
  ChamberVector yw;
  ChamberVector pyw;
  Rational gamma;
  Exponent beta;
  bool unstable = false;
};

// Minimal-length representatives of the right cosets W_theta \ W, ordered by length.
std::vector<WeylElement> coset_reps(const FlagVarietySpec& fv, std::uint64_t cap = kDefaultWeylCap);
std::vector<WeylElement> coset_reps(const FlagVarietySpec& fv, const std::vector<WeylElement>& weyl);
// Minimal representative of W_theta w.
WeylElement minimal_coset_rep(const FlagVarietySpec& fv, const WeylElement& w);

// The analysis depends only on the coset of w.
CellAnalysis analyze_cell(const FlagVarietySpec& fv, const WeylElement& w);
bool is_unstable(const FlagVarietySpec& fv, const WeylElement& w);

struct SpectrumEntry {
  WeylElement w;
  Exponent beta;
};
// Sorted by beta, then length, then word.
std::vector<SpectrumEntry> exponent_spectrum(const FlagVarietySpec& fv);
// Minimum over the cells other than the identity coset.
Exponent min_beta(const FlagVarietySpec& fv);

ChamberVector stability_rate(const FlagVarietySpec& fv, const std::vector<WeylElement>& cells);

// Cells with <chi, Y^w> <= bound; no bound means every cell.
std::vector<WeylElement> cells_below_threshold(const FlagVarietySpec& fv, const std::optional<Rational>& bound);

struct GrassStep {
  int dim = 0;       // d_k
  int meet = 0;      // i_k
  friend bool operator==(const GrassStep&, const GrassStep&) = default;
};

// Flag 0 < V_{d_1} < ... < V_{d_r} = R^d with dim(x meet V_{d_k}) >= i_k.
struct GrassFlagData {
  int d = 0;
  int l = 0;
  std::vector<GrassStep> steps;
};

// Throws InvalidFlagData.
void validate(const GrassFlagData& data);
RatVec grass_c_values(const GrassFlagData& data);
// Keeps the steps at the vertices of the lower convex hull of (d_k, c_k).
GrassFlagData canonical_coarsening(const GrassFlagData& data);

struct GrassGamma {
  Rational gamma;      // over the canonical coarsening
  Rational raw_gamma;  // over the steps as given
  Exponent beta;       // beta_X / (1 - gamma), infinite at gamma = 1
};
GrassGamma grassmannian_gamma_detailed(const GrassFlagData& data);
Rational grassmannian_gamma(const GrassFlagData& data);
// Generic Schubert cell of the flag data inside Grass(l, d).
WeylElement grass_cell_representative(const GrassFlagData& data);

bool pencil_is_constraining(int d, int l, int dim_w, int r);
bool is_proper_pencil(int d, int l, int dim_w, int r);
GrassFlagData pencil_flag_data(int d, int l, int dim_w, int r);

// d_M = nullopt stands for no rational isotropic subspace.
Exponent quadric_point_exponent(std::optional<long> smallest_isotropic_dim);

}  // namespace flagexp

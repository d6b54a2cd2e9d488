#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flagexp/rational.hpp"

namespace flagexp {

enum class Family { A, B, C, D };

// Accepts "A".."D" (case-insensitive); E, F, G raise UnsupportedFamily.
Family parse_family(std::string_view text);
char family_letter(Family f) noexcept;

inline constexpr std::uint64_t kDefaultWeylCap = 1'000'000;

// Subset of the simple roots, indices 0..rank-1.
class SimpleRootSet {
 public:
  SimpleRootSet() = default;
  SimpleRootSet(std::initializer_list<int> indices);
  static SimpleRootSet from_indices(std::span<const int> indices);
  static SimpleRootSet all(int rank);

  [[nodiscard]] bool contains(int i) const noexcept { return (bits_ >> i) & 1U; }
  void insert(int i);
  [[nodiscard]] int size() const noexcept;
  [[nodiscard]] bool empty() const noexcept { return bits_ == 0; }
  [[nodiscard]] std::vector<int> indices() const;
  [[nodiscard]] SimpleRootSet complement(int rank) const;
  [[nodiscard]] std::uint32_t bits() const noexcept { return bits_; }

  friend bool operator==(SimpleRootSet, SimpleRootSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

// Split root system in the usual epsilon-coordinate realization:
// A_r in R^{r+1} (trace-zero hyperplane), B_r, C_r, D_r in R^r.
class RootSystem {
 public:
  [[nodiscard]] Family family() const noexcept { return family_; }
  [[nodiscard]] int rank() const noexcept { return rank_; }
  [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  [[nodiscard]] std::string name() const;

  [[nodiscard]] const RatVec& simple_root(int i) const { return simple_roots_.at(static_cast<std::size_t>(i)); }
  // Coefficient vectors over the simple roots, sorted by height.
  [[nodiscard]] const std::vector<std::vector<int>>& positive_roots() const noexcept { return positive_roots_; }
  [[nodiscard]] RatVec root_vector(std::span<const int> coeffs) const;

  // a(i,j) = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)
  [[nodiscard]] const RatMatrix& cartan() const noexcept { return cartan_; }
  [[nodiscard]] const RatMatrix& gram() const noexcept { return gram_; }
  [[nodiscard]] const RatMatrix& gram_inverse() const noexcept { return gram_inv_; }

  [[nodiscard]] const RatVec& fundamental_weight(int i) const { return weights_.at(static_cast<std::size_t>(i)); }
  // Dual basis of the simple roots: alpha_j(coweight_i) = delta_ij.
  [[nodiscard]] const RatVec& fundamental_coweight(int i) const { return coweights_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] int fw_multiplier(int i) const { return multipliers_.at(static_cast<std::size_t>(i)); }

  // <v, alpha_i^vee> for an ambient vector v.
  [[nodiscard]] Rational coroot_pairing(std::span<const Rational> v, int i) const;
  [[nodiscard]] RatVec ambient_from_root_coords(std::span<const Rational> t) const;
  // Orthogonal projection onto the span of the roots, in root coordinates.
  [[nodiscard]] RatVec root_coords_from_ambient(std::span<const Rational> v) const;
  [[nodiscard]] bool in_root_span(std::span<const Rational> v) const;

  // Sum of the coefficients on simple roots outside theta.
  [[nodiscard]] static int level(std::span<const int> coeffs, SimpleRootSet theta);

  [[nodiscard]] std::uint64_t weyl_order() const noexcept { return weyl_order_; }

  friend bool operator==(const RootSystem& a, const RootSystem& b) noexcept {
    return a.family_ == b.family_ && a.rank_ == b.rank_;
  }

 private:
  friend std::shared_ptr<const RootSystem> build_root_system(Family, int, std::uint64_t);
  RootSystem() = default;

  Family family_ = Family::A;
  int rank_ = 0;
  std::size_t ambient_dim_ = 0;
  std::vector<RatVec> simple_roots_;
  std::vector<std::vector<int>> positive_roots_;
  RatMatrix cartan_;
  RatMatrix gram_;
  RatMatrix gram_inv_;
  std::vector<RatVec> weights_;
  std::vector<RatVec> coweights_;
  std::vector<int> multipliers_;
  std::uint64_t weyl_order_ = 0;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

// Throws UnsupportedFamily for bad (family, rank) and RankTooLarge when |W| > weyl_cap.
RootSystemPtr build_root_system(Family family, int rank, std::uint64_t weyl_cap = kDefaultWeylCap);

std::uint64_t weyl_group_order(Family family, int rank);

// Element of the Cartan space, kept in root coordinates (Y = sum t_i alpha_i)
// together with its fundamental-weight evaluations.
class ChamberVector {
 public:
  static ChamberVector zero(RootSystemPtr rs);
  static ChamberVector from_root_coords(RootSystemPtr rs, RatVec t);
  static ChamberVector from_eval_coords(RootSystemPtr rs, std::span<const Rational> omega_values);
  // Values alpha_i(Y).
  static ChamberVector from_root_values(RootSystemPtr rs, std::span<const Rational> alpha_values);
  // Ambient vector; must lie in the span of the roots.
  static ChamberVector from_ambient(RootSystemPtr rs, std::span<const Rational> v);

  [[nodiscard]] const RootSystem& rs() const noexcept { return *rs_; }
  [[nodiscard]] const RootSystemPtr& rs_ptr() const noexcept { return rs_; }

  [[nodiscard]] const RatVec& root_coords() const noexcept { return root_coords_; }
  // omega_i(Y) = b_i <varpi_i, Y>.
  [[nodiscard]] const RatVec& eval_coords() const noexcept { return eval_coords_; }
  [[nodiscard]] const RatVec& ambient() const noexcept { return ambient_; }
  [[nodiscard]] RatVec root_values() const;
  // Type A only: the diagonal entries y_1..y_d.
  [[nodiscard]] const RatVec& diag_coords() const;

  [[nodiscard]] Rational pair(std::span<const Rational> ambient_weight) const;
  [[nodiscard]] Rational inner(const ChamberVector& other) const;
  [[nodiscard]] Rational norm2() const;
  [[nodiscard]] bool in_neg_chamber() const;
  [[nodiscard]] bool is_zero() const;
  // Y1 precedes Y2 when omega_i(Y1) <= omega_i(Y2) for every i.
  [[nodiscard]] bool precedes(const ChamberVector& other) const;

  friend ChamberVector operator+(const ChamberVector& a, const ChamberVector& b);
  friend ChamberVector operator-(const ChamberVector& a, const ChamberVector& b);
  friend ChamberVector operator*(const Rational& s, const ChamberVector& a);
  friend bool operator==(const ChamberVector& a, const ChamberVector& b);

 private:
  ChamberVector(RootSystemPtr rs, RatVec t);
  RootSystemPtr rs_;
  RatVec root_coords_;
  RatVec eval_coords_;
  RatVec ambient_;
};

void require_same_system(const RootSystem& a, const RootSystem& b);

class WeylElement {
 public:
  WeylElement(RootSystemPtr rs, std::vector<int> word, RatMatrix matrix);
  static WeylElement identity(RootSystemPtr rs);
  static WeylElement from_word(RootSystemPtr rs, std::span<const int> word);
  // Type A only; perm[j] is the image of position j (0-based).
  static WeylElement from_permutation(RootSystemPtr rs, std::span<const int> perm);
  // Recovers a reduced word from an exact Weyl group matrix.
  static WeylElement from_matrix(RootSystemPtr rs, RatMatrix matrix);

  [[nodiscard]] const RootSystem& rs() const noexcept { return *rs_; }
  [[nodiscard]] const RootSystemPtr& rs_ptr() const noexcept { return rs_; }
  [[nodiscard]] const std::vector<int>& word() const noexcept { return word_; }
  [[nodiscard]] const RatMatrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] int length() const noexcept { return static_cast<int>(word_.size()); }
  // Type A only; inverse of from_permutation.
  [[nodiscard]] std::vector<int> permutation() const;

  [[nodiscard]] RatVec apply(std::span<const Rational> v) const;
  [[nodiscard]] RatVec apply_inverse(std::span<const Rational> v) const;
  [[nodiscard]] WeylElement times_simple(int i) const;
  [[nodiscard]] WeylElement simple_times(int i) const;
  // True when w^{-1} alpha_i is a positive root.
  [[nodiscard]] bool inverse_keeps_positive(int i) const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.matrix_ == b.matrix_; }

 private:
  RootSystemPtr rs_;
  std::vector<int> word_;
  RatMatrix matrix_;
};

// Breadth-first closure under right multiplication by simple reflections;
// words are reduced and the list is ordered by length.
std::vector<WeylElement> enumerate_weyl(const RootSystemPtr& rs, std::uint64_t cap = kDefaultWeylCap);

// Y^w = (Ad w)^{-1} Y.
ChamberVector weyl_act(const WeylElement& w, const ChamberVector& y);
// chi^w = chi o Ad w, as an ambient vector.
RatVec weyl_act_weight(const WeylElement& w, std::span<const Rational> chi);

struct ProjectionResult {
  ChamberVector point;
  SimpleRootSet active;
  // y0 - point = sum_i coeffs[i] alpha_i, coeffs >= 0 and zero off the active set.
  RatVec coeffs;
  int iterations = 0;
};

ProjectionResult project_neg_chamber_detailed(const ChamberVector& y0);
ChamberVector project_neg_chamber(const ChamberVector& y0);

ChamberVector chamber_glb(std::span<const ChamberVector> family);
ChamberVector chamber_sup(std::span<const ChamberVector> family);

struct SeparatingRoot {
  int index = 0;
  Rational tau;
  Rational log_eps;  // equals -gap_bound
};

// tau = 1/(C1 C2 max |alpha|^2) with C1 >= sum |alpha_i| and
// C2 = max_j sum_k <coweight_k, coweight_j>.
Rational separation_constant(const RootSystem& rs);

// gap_bound plays the role of -log(eps) > 0.
SeparatingRoot find_separating_root(const ChamberVector& y1, const ChamberVector& y2, const Rational& gap_bound);
SeparatingRoot find_separating_root(const ChamberVector& y1, const ChamberVector& y2, double eps);

bool verify_stratification(const RootSystem& rs, SimpleRootSet theta);

// Greatest convex minorant of (i, v_i), i = 0..d, with v_0 = v_d = 0.
RatVec type_a_convex_minorant(std::span<const Rational> values);

}  // namespace flagexp

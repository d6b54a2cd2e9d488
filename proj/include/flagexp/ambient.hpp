#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flagexp/highprec.hpp"
#include "flagexp/lattice.hpp"
#include "flagexp/rational.hpp"

namespace flagexp {

enum class AmbientKind { Projective, Grassmann, FullFlag, Quadric };

// Representation space V with its highest-weight cone and the plus-projection.
// Cone membership is tested on integer coordinates: a lattice is read as g V(Z) for g
// in the group, which preserves the cone.
class AmbientSpace {
 public:
  static AmbientSpace projective(int d);
  static AmbientSpace grassmann(int l, int d);
  static AmbientSpace fullflag(int d);
  // Q symmetric rational; plus lists the coordinates of the top weight space.
  static AmbientSpace quadric(RatMatrix q, std::vector<std::size_t> plus);

  [[nodiscard]] AmbientKind kind() const noexcept { return kind_; }
  [[nodiscard]] int d() const noexcept { return d_; }
  [[nodiscard]] int l() const noexcept { return l_; }
  [[nodiscard]] const RatMatrix& form() const noexcept { return q_; }
  // (positive, negative) counts of the quadric form.
  [[nodiscard]] std::pair<int, int> signature() const noexcept { return signature_; }
  // Dimension of V. The full flag uses the sum of the k-th exterior powers, k < d, and a
  // cone point there is a nested flag of decomposable k-vectors.
  [[nodiscard]] std::size_t rep_dim() const noexcept { return rep_dim_; }
  [[nodiscard]] const std::vector<std::size_t>& plus() const noexcept { return plus_; }
  [[nodiscard]] std::string name() const;
  // Same space with another top weight space; not allowed for the full flag.
  [[nodiscard]] AmbientSpace with_plus(std::vector<std::size_t> plus) const;

  // Scale invariant; false for the zero vector.
  [[nodiscard]] bool in_cone(const IntVec& m) const;
  [[nodiscard]] HighVec plus_projection(const HighVec& v) const;

 private:
  AmbientKind kind_ = AmbientKind::Projective;
  int d_ = 0;
  int l_ = 1;
  RatMatrix q_;
  std::size_t rep_dim_ = 0;
  std::vector<std::size_t> plus_;
  std::pair<int, int> signature_{0, 0};
};

// Hilbert symbol (a, b)_p for nonzero integers; p = 0 stands for the real place.
int hilbert_symbol(const mpz_class& a, const mpz_class& b, const mpz_class& p);

struct IsotropyCertificate {
  bool isotropic = false;
  std::vector<Rational> diagonal;  // a congruent diagonal form
  std::string reason;              // the place that obstructs, when anisotropic
};
// Hasse-Minkowski on a rational diagonalization.
IsotropyCertificate quadric_isotropy(const RatMatrix& q);

struct RChi {
  std::optional<double> value;  // empty means certified +infinity
  double log_value = 0;         // log of the value, kept for norms far below double range
  IntVec vector;  // coordinates on the input basis; concatenated k-vectors for the full flag
  bool certified_infinite = false;
  bool complete = true;  // false for the full-flag search over short-vector flags
};

// inf{ |v| : v in the lattice, v on the cone, |pi+ v| >= c_cone |v| }. Searches balls up to
// max_radius2 (default: 10^6 times the longest reduced basis vector) and throws
// EnumerationBudgetExceeded when nothing is found there. For the full flag the lattice is
// g Z^d and the value is the product of the norms of g m_1 ^ ... ^ m_k over the flag.
RChi r_chi(const LatticeBasis& lattice, const AmbientSpace& space, double c_cone = 0.5,
           std::optional<HighFloat> max_radius2 = std::nullopt, const EnumerationBudget& budget = {});

}  // namespace flagexp

#pragma once

#include <string>
#include <vector>

#include "flagexp/rational.hpp"
#include "flagexp/roots.hpp"

namespace flagexp {

// X = P_theta \ G with the height attached to chi = sum n_i varpi_i.
class FlagVarietySpec {
 public:
  // Throws InvalidSpec unless n_i > 0 exactly off theta and theta is a proper subset.
  FlagVarietySpec(RootSystemPtr rs, SimpleRootSet theta, std::vector<long> chi);

  static FlagVarietySpec projective(int d);
  static FlagVarietySpec grassmannian(int l, int d);
  // theta together with its anticanonical weight.
  static FlagVarietySpec anticanonical(RootSystemPtr rs, SimpleRootSet theta);

  [[nodiscard]] const RootSystem& rs() const noexcept { return *rs_; }
  [[nodiscard]] const RootSystemPtr& rs_ptr() const noexcept { return rs_; }
  [[nodiscard]] SimpleRootSet theta() const noexcept { return theta_; }
  [[nodiscard]] const std::vector<long>& chi() const noexcept { return chi_; }
  // chi as an ambient vector.
  [[nodiscard]] const RatVec& chi_vector() const noexcept { return chi_vector_; }

  friend bool operator==(const FlagVarietySpec& a, const FlagVarietySpec& b) {
    return *a.rs_ == *b.rs_ && a.theta_ == b.theta_ && a.chi_ == b.chi_;
  }

 private:
  RootSystemPtr rs_;
  SimpleRootSet theta_;
  std::vector<long> chi_;
  RatVec chi_vector_;
};

struct KhintchineProfile {
  Rational a_chi;
  int b_chi = 0;
  Rational beta_X;
  Rational u_chi;
  int v_chi = 0;
};

enum class Integral { Convergent, Divergent };

struct PsiParams {
  Rational c = 1;
  Rational gamma = 0;
  Rational delta = 0;
};

// alpha_i(Y) = 0 on theta and -1 elsewhere.
ChamberVector flow_element(const FlagVarietySpec& fv);
Rational chi_of_flow(const FlagVarietySpec& fv);
Rational beta_almost_sure(const FlagVarietySpec& fv);

int cc_dimension(const RootSystem& rs, SimpleRootSet theta);
// Sum of the roots of the unipotent radical in the varpi basis.
std::vector<long> anticanonical_weight(const RootSystem& rs, SimpleRootSet theta);
// Same sum as an ambient vector.
RatVec radical_root_sum(const RootSystem& rs, SimpleRootSet theta);

struct KhintchineConstants {
  Rational a;
  int b = 0;
};
KhintchineConstants khintchine_constants(const FlagVarietySpec& fv);

struct CountingExponents {
  Rational u;
  int v = 0;
};
CountingExponents counting_exponents(const FlagVarietySpec& fv);

KhintchineProfile khintchine_profile(const FlagVarietySpec& fv);

// psi(u) = c (log u)^{-gamma} (log log u)^{-delta}.
Integral khintchine_classify(const KhintchineProfile& profile, const PsiParams& psi);
std::string to_string(Integral verdict);

struct QuadricProfile {
  Rational beta;
  int khintchine_power = 0;
  int loglog_power = 0;
};
QuadricProfile quadric_profile(int n, bool is_x0);

}  // namespace flagexp

namespace flagexp {

// Integral-test data of a quadric: a = n, b = 1 + loglog power, beta = 1.
// The counting fields are not modeled and stay zero.
KhintchineProfile quadric_khintchine_profile(int n, bool is_x0);

}  // namespace flagexp

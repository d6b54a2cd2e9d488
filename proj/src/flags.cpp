#include "flagexp/flags.hpp"

#include <stdexcept>

#include "flagexp/error.hpp"

namespace flagexp {

FlagVarietySpec::FlagVarietySpec(RootSystemPtr rs, SimpleRootSet theta, std::vector<long> chi)
    : rs_(std::move(rs)), theta_(theta), chi_(std::move(chi)) {
  if (!rs_) throw std::invalid_argument("FlagVarietySpec: null root system");
  const int r = rs_->rank();
  if (chi_.size() != static_cast<std::size_t>(r))
    throw Error(ErrorCode::InvalidSpec, "chi needs " + std::to_string(r) + " coefficients");
  for (int i : theta_.indices())
    if (i >= r) throw Error(ErrorCode::InvalidSpec, "theta index " + std::to_string(i + 1) + " exceeds the rank");
  if (theta_.size() == r) throw Error(ErrorCode::InvalidSpec, "theta must be a proper subset of the simple roots");
  chi_vector_.assign(rs_->ambient_dim(), Rational(0));
  for (int i = 0; i < r; ++i) {
    const long n = chi_[static_cast<std::size_t>(i)];
    if (n < 0) throw Error(ErrorCode::InvalidSpec, "chi coefficients must be nonnegative");
    if ((n > 0) == theta_.contains(i))
      throw Error(ErrorCode::InvalidSpec, "chi coefficient " + std::to_string(i + 1) +
                                              (n > 0 ? " must vanish on theta" : " must be positive off theta"));
    if (n > 0) chi_vector_ = add(chi_vector_, scale(Rational(n), rs_->fundamental_weight(i)));
  }
}

FlagVarietySpec FlagVarietySpec::projective(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidSpec, "projective space needs d >= 2");
  auto rs = build_root_system(Family::A, d - 1);
  std::vector<long> chi(static_cast<std::size_t>(d - 1), 0);
  chi[0] = 1;
  return FlagVarietySpec(rs, SimpleRootSet{0}.complement(d - 1), std::move(chi));
}

FlagVarietySpec FlagVarietySpec::grassmannian(int l, int d) {
  if (l < 1 || l >= d) throw Error(ErrorCode::InvalidSpec, "grassmannian needs 1 <= l < d");
  auto rs = build_root_system(Family::A, d - 1);
  std::vector<long> chi(static_cast<std::size_t>(d - 1), 0);
  chi[static_cast<std::size_t>(l - 1)] = 1;
  return FlagVarietySpec(rs, SimpleRootSet{l - 1}.complement(d - 1), std::move(chi));
}

FlagVarietySpec FlagVarietySpec::anticanonical(RootSystemPtr rs, SimpleRootSet theta) {
  auto chi = anticanonical_weight(*rs, theta);
  return FlagVarietySpec(std::move(rs), theta, std::move(chi));
}

ChamberVector flow_element(const FlagVarietySpec& fv) {
  RatVec values(static_cast<std::size_t>(fv.rs().rank()));
  for (int i = 0; i < fv.rs().rank(); ++i) values[static_cast<std::size_t>(i)] = fv.theta().contains(i) ? 0 : -1;
  return ChamberVector::from_root_values(fv.rs_ptr(), values);
}

Rational chi_of_flow(const FlagVarietySpec& fv) { return flow_element(fv).pair(fv.chi_vector()); }

Rational beta_almost_sure(const FlagVarietySpec& fv) {
  const Rational value = chi_of_flow(fv);
  if (sgn(value) >= 0) throw std::logic_error("chi(Y) must be negative");
  return -1 / value;
}

int cc_dimension(const RootSystem& rs, SimpleRootSet theta) {
  if (theta.size() >= rs.rank()) throw Error(ErrorCode::InvalidSpec, "theta must be a proper subset");
  int total = 0;
  for (const auto& c : rs.positive_roots()) total += RootSystem::level(c, theta);
  return total;
}

RatVec radical_root_sum(const RootSystem& rs, SimpleRootSet theta) {
  RatVec sum(rs.ambient_dim());
  for (const auto& c : rs.positive_roots())
    if (RootSystem::level(c, theta) > 0) sum = add(sum, rs.root_vector(c));
  return sum;
}

std::vector<long> anticanonical_weight(const RootSystem& rs, SimpleRootSet theta) {
  if (theta.size() >= rs.rank()) throw Error(ErrorCode::InvalidSpec, "theta must be a proper subset");
  const auto sum = radical_root_sum(rs, theta);
  std::vector<long> chi;
  for (int i = 0; i < rs.rank(); ++i) {
    const Rational c = rs.coroot_pairing(sum, i);
    if (c.get_den() != 1 || sgn(c) < 0 || (sgn(c) == 0) != theta.contains(i))
      throw Error(ErrorCode::NotAWeight, "radical root sum is not a dominant weight vanishing exactly on theta");
    chi.push_back(c.get_num().get_si());
  }
  return chi;
}

KhintchineConstants khintchine_constants(const FlagVarietySpec& fv) {
  const auto& rs = fv.rs();
  RatVec rho(rs.ambient_dim());
  for (const auto& c : rs.positive_roots()) rho = add(rho, rs.root_vector(c));
  KhintchineConstants out;
  bool any = false;
  for (int i = 0; i < rs.rank(); ++i) {
    const auto& coweight = rs.fundamental_coweight(i);
    const Rational chi_value = dot(fv.chi_vector(), coweight);
    if (sgn(chi_value) == 0) continue;
    const Rational ratio = dot(rho, coweight) / chi_value;
    if (!any || ratio < out.a) {
      out.a = ratio;
      out.b = 1;
      any = true;
    } else if (ratio == out.a) {
      ++out.b;
    }
  }
  return out;
}

CountingExponents counting_exponents(const FlagVarietySpec& fv) {
  const auto& rs = fv.rs();
  const auto rho_x = radical_root_sum(rs, fv.theta());
  CountingExponents out;
  bool any = false;
  for (int i = 0; i < rs.rank(); ++i) {
    if (fv.theta().contains(i)) continue;
    const Rational ratio = rs.coroot_pairing(rho_x, i) / fv.chi()[static_cast<std::size_t>(i)];
    if (!any || ratio > out.u) {
      out.u = ratio;
      out.v = 1;
      any = true;
    } else if (ratio == out.u) {
      ++out.v;
    }
  }
  return out;
}

KhintchineProfile khintchine_profile(const FlagVarietySpec& fv) {
  const auto k = khintchine_constants(fv);
  const auto c = counting_exponents(fv);
  return KhintchineProfile{k.a, k.b, beta_almost_sure(fv), c.u, c.v};
}

Integral khintchine_classify(const KhintchineProfile& profile, const PsiParams& psi) {
  if (sgn(psi.c) <= 0) throw Error(ErrorCode::PreconditionViolated, "psi needs c > 0");
  if (sgn(profile.a_chi) <= 0 || sgn(profile.beta_X) <= 0)
    throw Error(ErrorCode::PreconditionViolated, "profile needs a, beta > 0");
  const Rational gamma_star = profile.beta_X / profile.a_chi;
  if (psi.gamma < gamma_star) return Integral::Divergent;
  if (psi.gamma == gamma_star && psi.delta <= profile.b_chi * gamma_star) return Integral::Divergent;
  return Integral::Convergent;
}

std::string to_string(Integral verdict) { return verdict == Integral::Divergent ? "Divergent" : "Convergent"; }

QuadricProfile quadric_profile(int n, bool is_x0) {
  if (n < 1) throw Error(ErrorCode::InvalidSpec, "quadric dimension must be >= 1");
  return QuadricProfile{Rational(1), n, is_x0 ? 1 : 0};
}

}  // namespace flagexp

namespace flagexp {

KhintchineProfile quadric_khintchine_profile(int n, bool is_x0) {
  const auto q = quadric_profile(n, is_x0);
  return KhintchineProfile{Rational(q.khintchine_power) * q.beta, 1 + q.loglog_power, q.beta, Rational(0), 0};
}

}  // namespace flagexp

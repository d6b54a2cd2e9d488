#include "flagexp/schubert.hpp"

#include <algorithm>
#include <stdexcept>

#include "flagexp/error.hpp"

namespace flagexp {

std::string Exponent::str() const { return infinite_ ? "inf" : to_string(value_); }

std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  const int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

bool is_minimal_rep(const FlagVarietySpec& fv, const WeylElement& w) {
  for (int i : fv.theta().indices())
    if (!w.inverse_keeps_positive(i)) return false;
  return true;
}

}  // namespace

std::vector<WeylElement> coset_reps(const FlagVarietySpec& fv, const std::vector<WeylElement>& weyl) {
  std::vector<WeylElement> reps;
  for (const auto& w : weyl) {
    require_same_system(w.rs(), fv.rs());
    if (is_minimal_rep(fv, w)) reps.push_back(w);
  }
  return reps;
}

std::vector<WeylElement> coset_reps(const FlagVarietySpec& fv, std::uint64_t cap) {
  return coset_reps(fv, enumerate_weyl(fv.rs_ptr(), cap));
}

WeylElement minimal_coset_rep(const FlagVarietySpec& fv, const WeylElement& w) {
  require_same_system(w.rs(), fv.rs());
  WeylElement current = w;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i : fv.theta().indices()) {
      if (!current.inverse_keeps_positive(i)) {
        current = current.simple_times(i);
        changed = true;
      }
    }
  }
  return WeylElement::from_matrix(fv.rs_ptr(), current.matrix());
}

CellAnalysis analyze_cell(const FlagVarietySpec& fv, const WeylElement& w) {
  require_same_system(w.rs(), fv.rs());
  const auto y = flow_element(fv);
  auto yw = weyl_act(w, y);
  auto pyw = project_neg_chamber(yw);
  const auto chi_w = weyl_act_weight(w, fv.chi_vector());
  Rational gamma = -pyw.pair(chi_w);
  const Rational denom = -y.pair(fv.chi_vector()) - gamma;
  if (sgn(denom) < 0) throw std::logic_error("cell exponent beyond the pole");
  Exponent beta = sgn(denom) == 0 ? Exponent::infinity() : Exponent(Rational(1 / denom));
  const auto& ev = yw.eval_coords();
  const bool unstable = std::any_of(ev.begin(), ev.end(), [](const Rational& x) { return sgn(x) < 0; });
  if (unstable == pyw.is_zero()) throw std::logic_error("instability verdict disagrees with the projection");
  return CellAnalysis{w, std::move(yw), std::move(pyw), std::move(gamma), std::move(beta), unstable};
}

bool is_unstable(const FlagVarietySpec& fv, const WeylElement& w) {
  require_same_system(w.rs(), fv.rs());
  const auto yw = weyl_act(w, flow_element(fv));
  const auto& ev = yw.eval_coords();
  return std::any_of(ev.begin(), ev.end(), [](const Rational& x) { return sgn(x) < 0; });
}

std::vector<SpectrumEntry> exponent_spectrum(const FlagVarietySpec& fv) {
  std::vector<SpectrumEntry> out;
  for (const auto& w : coset_reps(fv)) out.push_back(SpectrumEntry{w, analyze_cell(fv, w).beta});
  std::stable_sort(out.begin(), out.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.beta != b.beta) return a.beta < b.beta;
    if (a.w.length() != b.w.length()) return a.w.length() < b.w.length();
    return a.w.word() < b.w.word();
  });
  return out;
}

Exponent min_beta(const FlagVarietySpec& fv) {
  std::optional<Exponent> best;
  for (const auto& w : coset_reps(fv)) {
    if (w.length() == 0) continue;
    auto b = analyze_cell(fv, w).beta;
    if (!best || b < *best) best = b;
  }
  if (!best) throw std::logic_error("flag variety with a single cell");
  return *best;
}

ChamberVector stability_rate(const FlagVarietySpec& fv, const std::vector<WeylElement>& cells) {
  if (cells.empty()) throw Error(ErrorCode::EmptyFamily, "stability rate needs at least one cell");
  std::vector<ChamberVector> limits;
  limits.reserve(cells.size());
  for (const auto& w : cells) limits.push_back(analyze_cell(fv, w).pyw);
  return chamber_glb(limits);
}

std::vector<WeylElement> cells_below_threshold(const FlagVarietySpec& fv, const std::optional<Rational>& bound) {
  const auto y = flow_element(fv);
  std::vector<WeylElement> out;
  for (const auto& w : coset_reps(fv)) {
    if (!bound || weyl_act(w, y).pair(fv.chi_vector()) <= *bound) out.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------

void validate(const GrassFlagData& data) {
  const auto bad = [](const std::string& why) { return Error(ErrorCode::InvalidFlagData, why); };
  if (data.d < 2 || data.l < 1 || data.l >= data.d) throw bad("need 1 <= l < d");
  if (data.steps.empty()) throw bad("no steps");
  int prev_dim = 0;
  int prev_meet = 0;
  for (const auto& s : data.steps) {
    if (s.dim <= prev_dim) throw bad("dimensions must increase strictly from 0");
    if (s.meet < prev_meet) throw bad("intersection dimensions must be nondecreasing");
    if (s.meet > std::min(data.l, s.dim)) throw bad("intersection dimension exceeds min(l, d_k)");
    if (s.dim - s.meet < prev_dim - prev_meet) throw bad("d_k - i_k must be nondecreasing");
    prev_dim = s.dim;
    prev_meet = s.meet;
  }
  if (prev_dim != data.d || prev_meet != data.l) throw bad("last step must be (d, l)");
}

RatVec grass_c_values(const GrassFlagData& data) {
  validate(data);
  RatVec c{Rational(0)};
  for (const auto& s : data.steps) c.push_back(frac(-s.meet, data.l) + frac(s.dim - s.meet, data.d - data.l));
  return c;
}

GrassFlagData canonical_coarsening(const GrassFlagData& data) {
  const auto c = grass_c_values(data);
  std::vector<std::size_t> hull{0};
  auto x = [&](std::size_t k) { return k == 0 ? 0 : data.steps[k - 1].dim; };
  for (std::size_t k = 1; k < c.size(); ++k) {
    while (hull.size() >= 2) {
      const auto a = hull[hull.size() - 2];
      const auto b = hull.back();
      const Rational cross = (c[b] - c[a]) * (x(k) - x(a)) - (c[k] - c[a]) * (x(b) - x(a));
      if (sgn(cross) >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(k);
  }
  GrassFlagData out{data.d, data.l, {}};
  for (std::size_t h = 1; h < hull.size(); ++h) out.steps.push_back(data.steps[hull[h] - 1]);
  return out;
}

namespace {

Rational gamma_step_form(const GrassFlagData& data) {
  Rational total = 0;
  int pd = 0;
  int pi = 0;
  for (const auto& s : data.steps) {
    const int dd = s.dim - pd;
    const int di = s.meet - pi;
    total += frac(di, dd) * (frac(di, data.l) - frac(dd - di, data.d - data.l));
    pd = s.dim;
    pi = s.meet;
  }
  return total;
}

Rational gamma_c_form(const GrassFlagData& data) {
  const auto c = grass_c_values(data);
  Rational total = 0;
  int pd = 0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const int dd = data.steps[k - 1].dim - pd;
    const Rational dc = c[k] - c[k - 1];
    total += dc * dc / dd;
    pd = data.steps[k - 1].dim;
  }
  return total * data.l * (data.d - data.l) / data.d;
}

Rational gamma_both_forms(const GrassFlagData& data) {
  const Rational a = gamma_step_form(data);
  const Rational b = gamma_c_form(data);
  if (a != b) throw std::logic_error("the two expressions of gamma_M disagree");
  return a;
}

}  // namespace

GrassGamma grassmannian_gamma_detailed(const GrassFlagData& data) {
  validate(data);
  GrassGamma out;
  out.raw_gamma = gamma_both_forms(data);
  out.gamma = gamma_both_forms(canonical_coarsening(data));
  const Rational beta_x = frac(1, data.l) + frac(1, data.d - data.l);
  out.beta = out.gamma == 1 ? Exponent::infinity() : Exponent(beta_x / (1 - out.gamma));
  return out;
}

Rational grassmannian_gamma(const GrassFlagData& data) { return grassmannian_gamma_detailed(data).gamma; }

WeylElement grass_cell_representative(const GrassFlagData& data) {
  validate(data);
  // Jump positions sit at the end of each block (d_{k-1}, d_k].
  std::vector<bool> jump(static_cast<std::size_t>(data.d), false);
  int pd = 0;
  int pi = 0;
  for (const auto& s : data.steps) {
    for (int j = s.dim - (s.meet - pi); j < s.dim; ++j) jump[static_cast<std::size_t>(j)] = true;
    pd = s.dim;
    pi = s.meet;
  }
  (void)pd;
  std::vector<int> perm(static_cast<std::size_t>(data.d));
  int low = 0;
  int high = data.l;
  for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = jump[j] ? low++ : high++;
  const auto fv = FlagVarietySpec::grassmannian(data.l, data.d);
  return minimal_coset_rep(fv, WeylElement::from_permutation(fv.rs_ptr(), perm));
}

bool pencil_is_constraining(int d, int l, int dim_w, int r) {
  if (d < 2 || l < 1 || l >= d || dim_w < 1 || dim_w >= d || r < 1 || r > std::min(l, dim_w))
    throw Error(ErrorCode::PreconditionViolated, "pencil needs 1 <= r <= min(l, dim W) and 0 < dim W < d");
  return static_cast<long>(r) * d > static_cast<long>(l) * dim_w;
}

bool is_proper_pencil(int d, int l, int dim_w, int r) {
  if (d < 2 || l < 1 || l >= d || dim_w < 1 || dim_w >= d || r < 1 || r > std::min(l, dim_w)) return false;
  // Every l-plane already meets W in dimension >= l + dim W - d.
  return r > l + dim_w - d;
}

GrassFlagData pencil_flag_data(int d, int l, int dim_w, int r) {
  if (!is_proper_pencil(d, l, dim_w, r)) throw Error(ErrorCode::InvalidFlagData, "not a proper pencil");
  GrassFlagData data{d, l, {{dim_w, r}, {d, l}}};
  validate(data);
  return data;
}

Exponent quadric_point_exponent(std::optional<long> smallest_isotropic_dim) {
  if (!smallest_isotropic_dim) return Exponent(Rational(1));
  if (*smallest_isotropic_dim < 1) throw Error(ErrorCode::PreconditionViolated, "d_M must be >= 1");
  return Exponent(1 + frac(1, *smallest_isotropic_dim));
}

}  // namespace flagexp

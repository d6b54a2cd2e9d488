#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "flagexp/error.hpp"
#include "flagexp/schubert.hpp"

using namespace flagexp;

namespace {

struct FamilyRank {
  Family family;
  int rank;
};

std::vector<FamilyRank> all_systems(int max_rank) {
  std::vector<FamilyRank> out;
  for (int r = 1; r <= max_rank; ++r) out.push_back({Family::A, r});
  for (int r = 2; r <= max_rank; ++r) out.push_back({Family::B, r});
  for (int r = 2; r <= max_rank; ++r) out.push_back({Family::C, r});
  for (int r = 3; r <= max_rank; ++r) out.push_back({Family::D, r});
  return out;
}

FlagVarietySpec maximal(const RootSystemPtr& rs, int j, long n) {
  std::vector<long> chi(static_cast<std::size_t>(rs->rank()), 0);
  chi[static_cast<std::size_t>(j)] = n;
  return FlagVarietySpec(rs, SimpleRootSet{j}.complement(rs->rank()), chi);
}

// 1-based tuple (w^{-1}(1), ..., w^{-1}(d)).
std::vector<int> inverse_images(const WeylElement& w) {
  const auto p = w.permutation();
  std::vector<int> inv(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) inv[static_cast<std::size_t>(p[j])] = static_cast<int>(j) + 1;
  return inv;
}

GrassFlagData random_flag_data(std::mt19937_64& rng, int d, int l) {
  std::vector<int> positions(static_cast<std::size_t>(d));
  std::iota(positions.begin(), positions.end(), 0);
  std::shuffle(positions.begin(), positions.end(), rng);
  std::vector<bool> jump(static_cast<std::size_t>(d), false);
  for (int k = 0; k < l; ++k) jump[static_cast<std::size_t>(positions[static_cast<std::size_t>(k)])] = true;
  std::bernoulli_distribution keep(0.5);
  GrassFlagData data{d, l, {}};
  int meet = 0;
  for (int m = 1; m <= d; ++m) {
    if (jump[static_cast<std::size_t>(m - 1)]) ++meet;
    if (m == d || keep(rng)) data.steps.push_back({m, meet});
  }
  return data;
}

}  // namespace

TEST(Exponent, Ordering) {
  EXPECT_LT(Exponent(Rational(3)), Exponent::infinity());
  EXPECT_LT(Exponent(frac(1, 3)), Exponent(frac(1, 2)));
  EXPECT_EQ(Exponent::infinity(), Exponent::infinity());
  EXPECT_EQ(Exponent::infinity().str(), "inf");
}

TEST(CosetReps, Counts) {
  auto a2 = build_root_system(Family::A, 2);
  EXPECT_EQ(coset_reps(FlagVarietySpec(a2, SimpleRootSet{}, {1, 1})).size(), 6U);
  for (int d = 2; d <= 6; ++d) EXPECT_EQ(coset_reps(FlagVarietySpec::projective(d)).size(), static_cast<std::size_t>(d));
  EXPECT_EQ(coset_reps(FlagVarietySpec::grassmannian(2, 4)).size(), 6U);
}

TEST(CosetReps, IndexMatchesStabilizerOfFlow) {
  for (auto [f, r] : all_systems(4)) {
    auto rs = build_root_system(f, r);
    const auto weyl = enumerate_weyl(rs);
    for (int j = 0; j < r; ++j) {
      const auto fv = maximal(rs, j, 1);
      const auto y = flow_element(fv);
      const auto stab = std::count_if(weyl.begin(), weyl.end(), [&](const WeylElement& w) { return weyl_act(w, y) == y; });
      const auto reps = coset_reps(fv, weyl);
      EXPECT_EQ(reps.size() * static_cast<std::size_t>(stab), weyl.size()) << rs->name();
      std::set<RatVec> images;
      for (const auto& w : reps) images.insert(weyl_act(w, y).root_coords());
      EXPECT_EQ(images.size(), reps.size());
      for (const auto& w : weyl) EXPECT_EQ(minimal_coset_rep(fv, w), *std::find_if(reps.begin(), reps.end(), [&](const WeylElement& v) {
        return weyl_act(v, y) == weyl_act(w, y);
      }));
    }
  }
}

TEST(AnalyzeCell, IdentityAndLongest) {
  for (auto [f, r] : all_systems(4)) {
    auto rs = build_root_system(f, r);
    const auto fv = FlagVarietySpec::anticanonical(rs, SimpleRootSet{});
    const auto weyl = enumerate_weyl(rs);
    const auto id = analyze_cell(fv, weyl.front());
    EXPECT_EQ(id.yw, flow_element(fv));
    EXPECT_EQ(id.gamma, -flow_element(fv).pair(fv.chi_vector()));
    EXPECT_TRUE(id.beta.is_infinite());
    EXPECT_TRUE(id.unstable);
    const auto longest = analyze_cell(fv, weyl.back());
    EXPECT_EQ(longest.w.length(), static_cast<int>(rs->positive_roots().size()));
    EXPECT_TRUE(longest.pyw.is_zero());
    EXPECT_EQ(longest.gamma, 0);
    EXPECT_EQ(longest.beta, Exponent(beta_almost_sure(fv)));
    EXPECT_FALSE(longest.unstable);
    EXPECT_FALSE(is_unstable(fv, weyl.back()));
  }
}

TEST(AnalyzeCell, ProjectiveLine) {
  const auto fv = FlagVarietySpec::projective(2);
  const auto reps = coset_reps(fv);
  ASSERT_EQ(reps.size(), 2U);
  EXPECT_EQ(analyze_cell(fv, reps[1]).beta, Exponent(Rational(2)));
  EXPECT_TRUE(analyze_cell(fv, reps[0]).beta.is_infinite());
}

TEST(Instability, FullFlagsOfR3) {
  auto rs = build_root_system(Family::A, 2);
  const FlagVarietySpec fv(rs, SimpleRootSet{}, {1, 1});
  EXPECT_EQ(flow_element(fv).diag_coords(), (RatVec{-1, 0, 1}));
  std::set<std::vector<int>> unstable;
  for (const auto& w : enumerate_weyl(rs))
    if (is_unstable(fv, w)) unstable.insert(w.permutation());
  const std::set<std::vector<int>> expected{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}};
  EXPECT_EQ(unstable, expected);
}

TEST(Instability, FullFlagsOfR4) {
  auto rs = build_root_system(Family::A, 3);
  const FlagVarietySpec fv(rs, SimpleRootSet{}, {1, 1, 1});
  int unstable_count = 0;
  for (const auto& w : enumerate_weyl(rs)) {
    const auto inv = inverse_images(w);
    bool expected = false;
    switch (inv[3]) {
      case 4: expected = true; break;
      case 3: expected = inv != std::vector<int>{4, 2, 1, 3}; break;
      case 2: expected = inv != std::vector<int>{4, 3, 1, 2} && inv != std::vector<int>{3, 4, 1, 2}; break;
      case 1: expected = inv == std::vector<int>{2, 3, 4, 1} || inv == std::vector<int>{3, 2, 4, 1}; break;
      default: FAIL();
    }
    EXPECT_EQ(is_unstable(fv, w), expected) << inv[0] << inv[1] << inv[2] << inv[3];
    unstable_count += expected ? 1 : 0;
  }
  EXPECT_EQ(unstable_count, 17);
}

TEST(Spectrum, VeryBadlyApproximableFamily) {
  auto rs = build_root_system(Family::A, 3);
  for (long k = 1; k <= 10; ++k) {
    const FlagVarietySpec fv(rs, SimpleRootSet{}, {1, 1, k});
    const Exponent generic(beta_almost_sure(fv));
    const auto m = min_beta(fv);
    if (k <= 3) {
      EXPECT_EQ(m, generic) << k;
    } else {
      EXPECT_LT(m, generic) << k;
    }
    // The cell through w = (1 4)(2 3 ...) fixing <e1, e2, e4>: gamma = (3 - k)/6.
    const auto w = minimal_coset_rep(fv, WeylElement::from_permutation(rs, std::vector<int>{3, 0, 1, 2}));
    EXPECT_EQ(analyze_cell(fv, w).gamma, frac(3 - k, 6)) << k;
  }
}

TEST(Spectrum, SortedWithInfinityLast) {
  const auto s = exponent_spectrum(FlagVarietySpec::grassmannian(2, 4));
  ASSERT_EQ(s.size(), 6U);
  EXPECT_TRUE(s.back().beta.is_infinite());
  EXPECT_EQ(s.back().w.length(), 0);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LE(s[i - 1].beta, s[i].beta);
}

TEST(CellMinimum, MaximalParabolics) {
  for (auto [f, r] : all_systems(4)) {
    auto rs = build_root_system(f, r);
    const auto weyl = enumerate_weyl(rs);
    for (int j = 0; j < r; ++j) {
      for (long n : {1L, 3L}) {
        const auto fv = maximal(rs, j, n);
        const Exponent generic(beta_almost_sure(fv));
        const Rational half_norm = rs->gram()(j, j) / 2;
        for (const auto& w : coset_reps(fv, weyl)) {
          const auto c = analyze_cell(fv, w);
          EXPECT_GE(c.gamma, 0);
          EXPECT_EQ(c.gamma, n * half_norm * c.pyw.norm2());
          EXPECT_EQ(sgn(c.gamma) == 0, !c.unstable);
          EXPECT_GE(c.beta, generic);
        }
        EXPECT_EQ(min_beta(fv), generic);
      }
    }
  }
}

TEST(CellMinimum, AnticanonicalMinimalParabolics) {
  for (auto [f, r] : all_systems(4)) {
    auto rs = build_root_system(f, r);
    const auto fv = FlagVarietySpec::anticanonical(rs, SimpleRootSet{});
    const bool simply_laced = f == Family::A || f == Family::D;
    for (const auto& w : coset_reps(fv)) {
      const auto c = analyze_cell(fv, w);
      EXPECT_GE(c.gamma, 0);
      if (!c.unstable) {
        EXPECT_EQ(c.gamma, 0);
      }
      if (simply_laced) {
        EXPECT_EQ(c.gamma, 2 * c.pyw.norm2());
        EXPECT_EQ(sgn(c.gamma) == 0, !c.unstable);
      }
    }
    EXPECT_EQ(min_beta(fv), Exponent(beta_almost_sure(fv)));
  }
}

TEST(CellMinimum, UnstableCellsWithZeroGammaInC3) {
  // Y^w = (1/2, 3/2, -5/2) projects to -(1/6)(1, 1, 1), orthogonal to chi^w = (-2, -4, 6).
  auto rs = build_root_system(Family::C, 3);
  const auto fv = FlagVarietySpec::anticanonical(rs, SimpleRootSet{});
  std::vector<std::vector<int>> words;
  for (const auto& w : coset_reps(fv)) {
    const auto c = analyze_cell(fv, w);
    if (c.unstable && sgn(c.gamma) == 0) words.push_back(w.word());
  }
  const std::vector<std::vector<int>> expected{{2, 1, 0, 2, 1}, {1, 2, 1, 0, 2, 1}};
  EXPECT_EQ(words, expected);
  const auto w = WeylElement::from_word(rs, expected.front());
  const auto c = analyze_cell(fv, w);
  EXPECT_EQ(c.yw.ambient(), (RatVec{frac(1, 2), frac(3, 2), frac(-5, 2)}));
  EXPECT_EQ(c.pyw.ambient(), (RatVec{frac(-1, 6), frac(-1, 6), frac(-1, 6)}));
  EXPECT_EQ(weyl_act_weight(w, fv.chi_vector()), (RatVec{-2, -4, 6}));
}

TEST(StabilityRate, Examples) {
  auto rs = build_root_system(Family::A, 2);
  const FlagVarietySpec fv(rs, SimpleRootSet{}, {1, 1});
  const auto weyl = enumerate_weyl(rs);
  EXPECT_TRUE(stability_rate(fv, {weyl.back()}).is_zero());
  const auto s12 = WeylElement::from_permutation(rs, std::vector<int>{1, 0, 2});
  EXPECT_EQ(stability_rate(fv, {s12}), analyze_cell(fv, s12).pyw);
  EXPECT_THROW(stability_rate(fv, {}), flagexp::Error);

  for (int d = 5; d <= 8; ++d) {
    for (int k = 1; 2 * k < d; ++k) {
      const auto data = pencil_flag_data(d, 2, k, 1);
      const auto fg = FlagVarietySpec::grassmannian(2, d);
      const auto rate = stability_rate(fg, {grass_cell_representative(data)});
      const Rational gamma = -rate.pair(weyl_act_weight(grass_cell_representative(data), fg.chi_vector()));
      EXPECT_EQ(gamma * beta_almost_sure(fg), grassmannian_gamma(data));
    }
  }
}

TEST(CellsBelowThreshold, Examples) {
  const auto p2 = FlagVarietySpec::projective(3);
  const auto y = flow_element(p2);
  const auto bottom = cells_below_threshold(p2, y.pair(p2.chi_vector()));
  ASSERT_EQ(bottom.size(), 1U);
  EXPECT_EQ(bottom.front().length(), 0);
  EXPECT_EQ(cells_below_threshold(p2, std::nullopt).size(), 3U);
  std::size_t brute = 0;
  for (const auto& w : coset_reps(p2))
    if (dot(weyl_act_weight(w, p2.chi_vector()), y.ambient()) <= 0) ++brute;
  EXPECT_EQ(cells_below_threshold(p2, Rational(0)).size(), brute);
  EXPECT_EQ(brute, 1U);
}

TEST(Grassmannian, TrivialFlagAndPencilFormula) {
  EXPECT_EQ(grassmannian_gamma(GrassFlagData{4, 2, {{4, 2}}}), 0);
  for (int d = 3; d <= 12; ++d)
    for (int k = 1; 2 * k < d; ++k) {
      const GrassFlagData data{d, 2, {{k, 1}, {d, 2}}};
      EXPECT_EQ(grassmannian_gamma(data), frac((d - 2 * k) * (d - 2 * k), 2 * (d - 2) * k * (d - k))) << d << "," << k;
    }
}

TEST(Grassmannian, RejectsInvalidData) {
  EXPECT_THROW(validate(GrassFlagData{4, 2, {{2, 1}}}), flagexp::Error);
  EXPECT_THROW(validate(GrassFlagData{4, 2, {{2, 3}, {4, 2}}}), flagexp::Error);
  EXPECT_THROW(validate(GrassFlagData{4, 2, {{3, 0}, {4, 2}}}), flagexp::Error);
  EXPECT_THROW(validate(GrassFlagData{4, 2, {{2, 1}, {2, 1}, {4, 2}}}), flagexp::Error);
}

TEST(Grassmannian, AgreesWithCellsOnRandomData) {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 150; ++n) {
    const int d = n < 50 ? 6 : 3 + n % 6;
    std::uniform_int_distribution<int> pick_l(1, d - 1);
    const int l = n < 50 ? 2 : pick_l(rng);
    const auto data = random_flag_data(rng, d, l);
    const auto fv = FlagVarietySpec::grassmannian(l, d);
    const auto detail = grassmannian_gamma_detailed(data);
    const auto cell = analyze_cell(fv, grass_cell_representative(data));
    EXPECT_EQ(cell.gamma * beta_almost_sure(fv), detail.gamma);
    EXPECT_EQ(cell.beta, detail.beta);
    EXPECT_GE(detail.gamma, 0);
  }
}

TEST(Grassmannian, CoarseningOnlyDropsNonConvexSteps) {
  // A non-constraining pencil: the canonical flag is trivial.
  const GrassFlagData loose{4, 2, {{2, 1}, {4, 2}}};
  EXPECT_EQ(canonical_coarsening(loose).steps.size(), 1U);
  const auto g = grassmannian_gamma_detailed(loose);
  EXPECT_EQ(g.gamma, 0);
  EXPECT_EQ(g.raw_gamma, 0);
  const GrassFlagData tight{4, 2, {{1, 1}, {4, 2}}};
  EXPECT_EQ(canonical_coarsening(tight).steps, tight.steps);
}

TEST(Pencils, Examples) {
  EXPECT_TRUE(pencil_is_constraining(4, 2, 1, 1));
  EXPECT_FALSE(pencil_is_constraining(4, 2, 2, 1));
  EXPECT_TRUE(pencil_is_constraining(6, 2, 2, 1));
  EXPECT_TRUE(is_proper_pencil(4, 2, 1, 1));
  EXPECT_FALSE(is_proper_pencil(4, 2, 3, 1));
  EXPECT_TRUE(is_proper_pencil(4, 2, 3, 2));
  EXPECT_THROW(pencil_is_constraining(4, 2, 1, 2), flagexp::Error);
}

TEST(Pencils, ConstrainingIffPositiveGamma) {
  for (int d = 2; d <= 8; ++d)
    for (int l = 1; l < d; ++l)
      for (int w = 1; w < d; ++w)
        for (int r = 1; r <= std::min(l, w); ++r) {
          if (!is_proper_pencil(d, l, w, r)) continue;
          const auto data = pencil_flag_data(d, l, w, r);
          EXPECT_EQ(sgn(grassmannian_gamma(data)) > 0, pencil_is_constraining(d, l, w, r));
        }
}

TEST(Quadrics, PointExponent) {
  EXPECT_EQ(quadric_point_exponent(std::nullopt), Exponent(Rational(1)));
  EXPECT_EQ(quadric_point_exponent(1), Exponent(Rational(2)));
  EXPECT_EQ(quadric_point_exponent(3), Exponent(frac(4, 3)));
}

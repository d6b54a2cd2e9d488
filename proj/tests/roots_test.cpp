#include <gtest/gtest.h>

#include <random>

#include "flagexp/error.hpp"
#include "flagexp/roots.hpp"
#include "oracles.hpp"

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

RatVec rv(std::initializer_list<Rational> xs) { return RatVec(xs); }

ChamberVector diag(const RootSystemPtr& rs, std::initializer_list<Rational> xs) {
  return ChamberVector::from_ambient(rs, rv(xs));
}

}  // namespace

TEST(BuildRootSystem, RankOneAndTwo) {
  auto a1 = build_root_system(Family::A, 1);
  EXPECT_EQ(a1->positive_roots().size(), 1U);
  EXPECT_EQ(a1->cartan(), (RatMatrix{{2}}));
  auto a2 = build_root_system(Family::A, 2);
  EXPECT_EQ(a2->positive_roots().size(), 3U);
  EXPECT_EQ(a2->cartan(), (RatMatrix{{2, -1}, {-1, 2}}));
}

TEST(BuildRootSystem, D4HasTwelvePositiveRoots) {
  EXPECT_EQ(build_root_system(Family::D, 4)->positive_roots().size(), 12U);
}

TEST(BuildRootSystem, NonSimplyLacedCartan) {
  auto b2 = build_root_system(Family::B, 2);
  EXPECT_EQ(b2->cartan(), (RatMatrix{{2, -1}, {-2, 2}}));
  auto c3 = build_root_system(Family::C, 3);
  EXPECT_EQ(c3->gram()(2, 2), 4);
}

TEST(BuildRootSystem, Errors) {
  EXPECT_THROW(parse_family("E"), flagexp::Error);
  try {
    parse_family("G");
  } catch (const flagexp::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedFamily);
  }
  EXPECT_THROW(build_root_system(Family::D, 2), flagexp::Error);
  EXPECT_THROW(build_root_system(Family::B, 1), flagexp::Error);
  try {
    build_root_system(Family::A, 10);
    FAIL() << "expected RankTooLarge";
  } catch (const flagexp::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankTooLarge);
  }
}

TEST(RootSystemInvariants, ReflectionClosureAndCounts) {
  for (auto [f, r] : all_systems(6)) {
    auto rs = build_root_system(f, r);
    SCOPED_TRACE(rs->name());
    EXPECT_EQ(rs->positive_roots().size(), oracle::positive_root_count_formula(f, r));
    const auto all = oracle::ambient_root_closure(*rs);
    EXPECT_EQ(all.size(), 2 * rs->positive_roots().size());
    for (const auto& c : rs->positive_roots()) {
      const auto v = rs->root_vector(c);
      EXPECT_TRUE(std::binary_search(all.begin(), all.end(), v));
    }
  }
}

TEST(RootSystemInvariants, WeightsGramCartan) {
  for (auto [f, r] : all_systems(6)) {
    auto rs = build_root_system(f, r);
    SCOPED_TRACE(rs->name());
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        EXPECT_EQ(rs->coroot_pairing(rs->fundamental_weight(i), j), i == j ? 1 : 0);
        EXPECT_EQ(dot(rs->simple_root(j), rs->fundamental_coweight(i)), i == j ? 1 : 0);
        EXPECT_EQ(rs->gram()(i, j), rs->gram()(j, i));
        if (i != j) {
          EXPECT_LE(rs->gram()(i, j), 0);
        }
      }
      EXPECT_EQ(rs->fw_multiplier(i), 1);
    }
    // Sylvester: every leading principal minor is positive.
    for (int k = 1; k <= r; ++k) {
      RatMatrix minor(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor(i, j) = rs->gram()(i, j);
      EXPECT_GT(minor.determinant(), 0);
    }
  }
}

TEST(ChamberVectorTest, CoordinateRoundTrips) {
  std::mt19937_64 rng(11);
  for (auto [f, r] : all_systems(5)) {
    auto rs = build_root_system(f, r);
    for (int n = 0; n < 20; ++n) {
      auto y = ChamberVector::from_root_coords(rs, oracle::random_rational_vector(rng, static_cast<std::size_t>(r)));
      EXPECT_EQ(ChamberVector::from_eval_coords(rs, y.eval_coords()), y);
      EXPECT_EQ(ChamberVector::from_root_values(rs, y.root_values()), y);
      EXPECT_EQ(ChamberVector::from_ambient(rs, y.ambient()), y);
    }
  }
}

TEST(ChamberVectorTest, TypeAPartialSums) {
  std::mt19937_64 rng(12);
  auto rs = build_root_system(Family::A, 4);
  for (int n = 0; n < 50; ++n) {
    auto y = ChamberVector::from_root_coords(rs, oracle::random_rational_vector(rng, 4));
    const auto& d = y.diag_coords();
    Rational total = 0;
    for (const auto& x : d) total += x;
    EXPECT_EQ(total, 0);
    Rational partial = 0;
    bool nondecreasing = true;
    for (int k = 0; k < 4; ++k) {
      partial += d[k];
      EXPECT_EQ(y.eval_coords()[k], partial);
      if (d[k] > d[k + 1]) nondecreasing = false;
    }
    EXPECT_EQ(y.in_neg_chamber(), nondecreasing);
  }
  EXPECT_THROW(ChamberVector::from_ambient(rs, rv({1, 0, 0, 0, 0})), flagexp::Error);
  EXPECT_THROW((void)ChamberVector::zero(build_root_system(Family::B, 2)).diag_coords(), flagexp::Error);
}

TEST(WeylGroup, Orders) {
  EXPECT_EQ(enumerate_weyl(build_root_system(Family::A, 1)).size(), 2U);
  EXPECT_EQ(enumerate_weyl(build_root_system(Family::A, 2)).size(), 6U);
  EXPECT_EQ(enumerate_weyl(build_root_system(Family::B, 3)).size(), 48U);
  EXPECT_EQ(enumerate_weyl(build_root_system(Family::D, 4)).size(), 192U);
  EXPECT_EQ(enumerate_weyl(build_root_system(Family::C, 4)).size(), 384U);
}

TEST(WeylGroup, CapIsEnforced) {
  try {
    enumerate_weyl(build_root_system(Family::A, 4), 100);
    FAIL() << "expected GroupTooLarge";
  } catch (const flagexp::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GroupTooLarge);
  }
}

TEST(WeylGroup, MatricesWordsLengths) {
  for (auto [f, r] : all_systems(4)) {
    auto rs = build_root_system(f, r);
    SCOPED_TRACE(rs->name());
    const auto ws = enumerate_weyl(rs);
    const auto n = rs->ambient_dim();
    EXPECT_EQ(ws.front().matrix(), RatMatrix::identity(n));
    EXPECT_EQ(ws.front().length(), 0);
    for (const auto& w : ws) {
      EXPECT_EQ(w.matrix().transpose() * w.matrix(), RatMatrix::identity(n));
      EXPECT_EQ(w.length(), oracle::inversion_count(*rs, w.matrix()));
      EXPECT_EQ(WeylElement::from_word(rs, w.word()), w);
      const auto back = WeylElement::from_matrix(rs, w.matrix());
      EXPECT_EQ(back.length(), w.length());
      EXPECT_EQ(back, w);
    }
  }
}

TEST(WeylGroup, PermutationsInTypeA) {
  auto rs = build_root_system(Family::A, 3);
  for (const auto& w : enumerate_weyl(rs)) {
    const auto p = w.permutation();
    const auto back = WeylElement::from_permutation(rs, p);
    EXPECT_EQ(back, w);
    EXPECT_EQ(back.length(), w.length());
  }
}

TEST(WeylAct, Examples) {
  auto a1 = build_root_system(Family::A, 1);
  auto y = ChamberVector::from_eval_coords(a1, rv({-1}));
  EXPECT_EQ(weyl_act(WeylElement::identity(a1), y), y);
  auto s = WeylElement::from_word(a1, std::vector<int>{0});
  EXPECT_EQ(weyl_act(s, y).eval_coords(), rv({1}));

  auto a3 = build_root_system(Family::A, 3);
  const std::vector<int> swap14{3, 1, 2, 0};
  auto w = WeylElement::from_permutation(a3, swap14);
  auto y4 = diag(a3, {frac(-3, 2), frac(-1, 2), frac(1, 2), frac(3, 2)});
  EXPECT_EQ(weyl_act(w, y4).diag_coords(), rv({frac(3, 2), frac(-1, 2), frac(1, 2), frac(-3, 2)}));

  auto b2 = build_root_system(Family::B, 2);
  EXPECT_THROW(weyl_act(WeylElement::identity(b2), y4), flagexp::Error);
}

TEST(WeylAct, NormInvariance) {
  std::mt19937_64 rng(5);
  for (auto [f, r] : all_systems(4)) {
    auto rs = build_root_system(f, r);
    const auto ws = enumerate_weyl(rs);
    for (int n = 0; n < 5; ++n) {
      auto y = ChamberVector::from_root_coords(rs, oracle::random_rational_vector(rng, static_cast<std::size_t>(r)));
      for (const auto& w : ws) EXPECT_EQ(weyl_act(w, y).norm2(), y.norm2());
    }
  }
}

TEST(Projection, Examples) {
  auto a2 = build_root_system(Family::A, 2);
  auto y0 = diag(a2, {1, -1, 0});
  EXPECT_TRUE(project_neg_chamber(y0).is_zero());
  EXPECT_TRUE(oracle::pava_nondecreasing(y0.diag_coords()) == rv({0, 0, 0}));

  auto a3 = build_root_system(Family::A, 3);
  auto z0 = ChamberVector::from_eval_coords(a3, rv({frac(-3, 10), 0, -2}));
  EXPECT_EQ(project_neg_chamber(z0).eval_coords(), rv({frac(-2, 3), frac(-4, 3), -2}));

  auto inside = diag(a3, {-3, -1, 1, 3});
  EXPECT_EQ(project_neg_chamber(inside), inside);
}

TEST(Projection, OptimalityAcrossFamilies) {
  std::mt19937_64 rng(2024);
  const auto systems = all_systems(5);
  for (int n = 0; n < 300; ++n) {
    const auto [f, r] = systems[static_cast<std::size_t>(n) % systems.size()];
    auto rs = build_root_system(f, r);
    auto y0 = ChamberVector::from_root_coords(rs, oracle::random_rational_vector(rng, static_cast<std::size_t>(r)));
    const auto res = project_neg_chamber_detailed(y0);
    const auto& p = res.point;
    ASSERT_TRUE(p.in_neg_chamber());
    ASSERT_TRUE(p.precedes(y0));
    for (const auto& t : res.coeffs) ASSERT_GE(t, 0);
    RatVec recon = p.root_coords();
    EXPECT_EQ(add(recon, res.coeffs), y0.root_coords());
    EXPECT_EQ(project_neg_chamber(p), p);
    const Rational best = (y0 - p).norm2();
    for (int k = 0; k < 20; ++k) {
      auto z = oracle::random_negative_chamber(rng, rs);
      ASSERT_GE((y0 - z).norm2(), best);
    }
  }
}

TEST(Projection, TypeATripleOracle) {
  std::mt19937_64 rng(77);
  for (int n = 0; n < 300; ++n) {
    const int r = 1 + n % 6;
    auto rs = build_root_system(Family::A, r);
    auto raw = oracle::random_rational_vector(rng, static_cast<std::size_t>(r + 1));
    Rational mean = 0;
    for (const auto& x : raw) mean += x;
    mean /= r + 1;
    for (auto& x : raw) x -= mean;
    auto y0 = ChamberVector::from_ambient(rs, raw);
    const auto p = project_neg_chamber(y0);
    EXPECT_EQ(p.diag_coords(), oracle::pava_nondecreasing(raw));
    RatVec partial{0};
    for (const auto& e : y0.eval_coords()) partial.push_back(e);
    partial.push_back(0);
    const auto minorant = type_a_convex_minorant(partial);
    EXPECT_EQ(minorant, oracle::convex_minorant_bruteforce(partial));
    RatVec expected(minorant.begin() + 1, minorant.end() - 1);
    EXPECT_EQ(p.eval_coords(), expected);
  }
}

TEST(Projection, GreatestMinorantLowerBound) {
  std::mt19937_64 rng(31);
  for (auto [f, r] : all_systems(4)) {
    auto rs = build_root_system(f, r);
    RatVec d(rs->ambient_dim());
    for (int i = 0; i < r; ++i) d = add(d, rs->fundamental_coweight(i));
    const auto dom = ChamberVector::from_ambient(rs, d);
    for (int n = 0; n < 10; ++n) {
      auto y0 = ChamberVector::from_root_coords(rs, oracle::random_rational_vector(rng, static_cast<std::size_t>(r)));
      const auto p = project_neg_chamber(y0);
      for (int k = 0; k < 10; ++k) {
        auto z = oracle::random_negative_chamber(rng, rs);
        Rational shift = 0;
        for (int i = 0; i < r; ++i) {
          const Rational need = (z.eval_coords()[i] - y0.eval_coords()[i]) / dom.eval_coords()[i];
          if (need > shift) shift = need;
        }
        auto below = z - shift * dom;
        ASSERT_TRUE(below.in_neg_chamber());
        ASSERT_TRUE(below.precedes(y0));
        EXPECT_TRUE(below.precedes(p));
      }
    }
  }
}

TEST(ChamberBounds, GlbSup) {
  auto a2 = build_root_system(Family::A, 2);
  auto y = diag(a2, {1, -3, 2});
  std::vector<ChamberVector> one{y};
  EXPECT_EQ(chamber_glb(one), y);
  EXPECT_THROW(chamber_glb(std::vector<ChamberVector>{}), flagexp::Error);

  std::mt19937_64 rng(8);
  for (int n = 0; n < 100; ++n) {
    std::vector<ChamberVector> two{oracle::random_negative_chamber(rng, a2), oracle::random_negative_chamber(rng, a2)};
    const auto s = chamber_sup(two);
    EXPECT_TRUE(s.in_neg_chamber());
    EXPECT_TRUE(two[0].precedes(s));
    EXPECT_TRUE(two[1].precedes(s));
    const auto g = chamber_glb(two);
    EXPECT_TRUE(g.precedes(two[0]));
    EXPECT_TRUE(g.precedes(two[1]));
  }
}

TEST(SeparatingRoot, Examples) {
  auto a1 = build_root_system(Family::A, 1);
  auto y2 = ChamberVector::zero(a1);
  auto y1 = ChamberVector::from_root_coords(a1, rv({-50}));
  EXPECT_EQ(find_separating_root(y1, y2, 0.001).index, 0);

  auto a2 = build_root_system(Family::A, 2);
  auto far = ChamberVector::from_root_coords(a2, rv({-1000, -1000}));
  const auto sep = find_separating_root(far, ChamberVector::zero(a2), Rational(20));
  const auto k = static_cast<std::size_t>(sep.index);
  EXPECT_LE(far.eval_coords()[k], -sep.tau * 20);
  EXPECT_LE(far.root_values()[k], -sep.tau * 20);

  EXPECT_THROW(find_separating_root(ChamberVector::from_root_coords(a2, rv({-1, -1})), ChamberVector::zero(a2), Rational(20)),
               flagexp::Error);
}

TEST(SeparatingRoot, RandomAdmissiblePairs) {
  std::mt19937_64 rng(99);
  for (auto [f, r] : all_systems(4)) {
    auto rs = build_root_system(f, r);
    int checked = 0;
    for (int n = 0; n < 200 && checked < 40; ++n) {
      auto y2 = oracle::random_negative_chamber(rng, rs);
      auto y1 = y2 + oracle::random_negative_chamber(rng, rs);
      if (!y1.in_neg_chamber() || !y1.precedes(y2)) continue;
      const Rational gap2 = (y2 - y1).norm2();
      if (sgn(gap2) == 0) continue;
      // Largest integer L with L^2 <= gap^2, at least 1.
      Rational gap_bound = 1;
      if (gap2 < 1) gap_bound = frac(1, 2) * gap2;
      const auto sep = find_separating_root(y1, y2, gap_bound);
      const auto k = static_cast<std::size_t>(sep.index);
      const Rational margin = sep.tau * gap_bound;
      EXPECT_LE(y1.eval_coords()[k], y2.eval_coords()[k] - margin);
      EXPECT_LE(y1.root_values()[k], -margin);
      ++checked;
    }
    EXPECT_GT(checked, 0) << rs->name();
  }
}

TEST(Stratification, AllSystemsAllTheta) {
  auto a2 = build_root_system(Family::A, 2);
  EXPECT_TRUE(verify_stratification(*a2, SimpleRootSet{}));
  auto a3 = build_root_system(Family::A, 3);
  EXPECT_TRUE(verify_stratification(*a3, SimpleRootSet{1}));
  auto b3 = build_root_system(Family::B, 3);
  EXPECT_TRUE(verify_stratification(*b3, SimpleRootSet{}));
  for (auto [f, r] : all_systems(5)) {
    auto rs = build_root_system(f, r);
    for (std::uint32_t mask = 0; mask < (1U << r); ++mask) {
      SimpleRootSet theta;
      for (int i = 0; i < r; ++i)
        if ((mask >> i) & 1U) theta.insert(i);
      EXPECT_TRUE(verify_stratification(*rs, theta)) << rs->name() << " mask " << mask;
    }
  }
}

TEST(ConvexMinorant, Examples) {
  EXPECT_EQ(type_a_convex_minorant(rv({0, -1, -1, 0})), rv({0, -1, -1, 0}));
  EXPECT_EQ(type_a_convex_minorant(rv({0, frac(-3, 10), 0, -2, 0})),
            rv({0, frac(-2, 3), frac(-4, 3), -2, 0}));
  EXPECT_EQ(type_a_convex_minorant(rv({0, 1, 0})), rv({0, 0, 0}));
  EXPECT_THROW(type_a_convex_minorant(rv({1, 0})), flagexp::Error);
}

TEST(RationalText, RoundTrip) {
  EXPECT_EQ(to_string(frac(3, 2)), "3/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_EQ(parse_rational("-6/4"), frac(-3, 2));
  EXPECT_EQ(parse_rational("1.01"), frac(101, 100));
  EXPECT_EQ(parse_rational("2e-2"), frac(1, 50));
  // Leading zeros are decimal, never octal.
  EXPECT_EQ(parse_rational("0.25"), frac(1, 4));
  EXPECT_EQ(parse_rational("0.618"), frac(309, 500));
  EXPECT_EQ(parse_rational("010/3"), frac(10, 3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "flagexp/error.hpp"
#include "flagexp/lattice.hpp"

using namespace flagexp;

namespace {

using Int3 = std::array<std::int64_t, 3>;
using Mat3 = std::array<Int3, 3>;  // rows

Mat3 random_integer_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-6, 6);
  while (true) {
    Mat3 m{};
    for (auto& r : m)
      for (auto& v : r) v = entry(rng);
    const auto det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (det != 0) return m;
  }
}

Int3 cross(const Int3& a, const Int3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Squared successive minima by scanning a coefficient box wide enough for the
// longest column, |x_i| <= |row_i(B^-1)| * R, with rank decided on integer vectors.
std::array<std::int64_t, 3> box_minima(const Mat3& b) {
  std::int64_t r2 = 0;
  for (int j = 0; j < 3; ++j) r2 = std::max(r2, b[0][j] * b[0][j] + b[1][j] * b[1][j] + b[2][j] * b[2][j]);
  const Int3 c0{b[0][0], b[1][0], b[2][0]};
  const Int3 c1{b[0][1], b[1][1], b[2][1]};
  const Int3 c2{b[0][2], b[1][2], b[2][2]};
  const auto cof0 = cross(c1, c2);
  const auto cof1 = cross(c2, c0);
  const auto cof2 = cross(c0, c1);
  const double det = std::abs(static_cast<double>(c0[0] * cof0[0] + c0[1] * cof0[1] + c0[2] * cof0[2]));
  auto len = [](const Int3& v) { return std::sqrt(static_cast<double>(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])); };
  const double r = std::sqrt(static_cast<double>(r2));
  const std::array<std::int64_t, 3> box{static_cast<std::int64_t>(len(cof0) * r / det) + 1,
                                        static_cast<std::int64_t>(len(cof1) * r / det) + 1,
                                        static_cast<std::int64_t>(len(cof2) * r / det) + 1};
  std::vector<std::pair<std::int64_t, Int3>> pts;
  for (std::int64_t x = -box[0]; x <= box[0]; ++x)
    for (std::int64_t y = -box[1]; y <= box[1]; ++y)
      for (std::int64_t z = -box[2]; z <= box[2]; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        Int3 v{};
        for (int i = 0; i < 3; ++i) v[i] = b[i][0] * x + b[i][1] * y + b[i][2] * z;
        const auto n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if (n2 <= r2) pts.push_back({n2, v});
      }
  std::sort(pts.begin(), pts.end());
  std::array<std::int64_t, 3> out{};
  std::vector<Int3> chosen;
  for (const auto& [n2, v] : pts) {
    bool independent = false;
    if (chosen.empty()) {
      independent = true;
    } else if (chosen.size() == 1) {
      const auto c = cross(chosen[0], v);
      independent = c[0] != 0 || c[1] != 0 || c[2] != 0;
    } else {
      const auto c = cross(chosen[0], chosen[1]);
      independent = c[0] * v[0] + c[1] * v[1] + c[2] * v[2] != 0;
    }
    if (!independent) continue;
    out[chosen.size()] = n2;
    chosen.push_back(v);
    if (chosen.size() == 3) break;
  }
  return out;
}

RatMatrix to_rat(const Mat3& m) {
  RatMatrix r(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = Rational(static_cast<long>(m[i][j]));
  return r;
}

RatMatrix random_unimodular(std::mt19937_64& rng, std::size_t d, int steps) {
  RatMatrix u = RatMatrix::identity(d);
  std::uniform_int_distribution<std::size_t> idx(0, d - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const auto i = idx(rng);
    const auto j = idx(rng);
    if (i == j) continue;
    const Rational m(mult(rng));
    for (std::size_t r = 0; r < d; ++r) u(r, j) += m * u(r, i);
  }
  return u;
}

}  // namespace

TEST(SuccessiveMinima, StandardLattice) {
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto m = successive_minima(LatticeBasis::standard(d));
    ASSERT_EQ(m.lambda.size(), d);
    for (const auto& s : m.sqnorm) EXPECT_EQ(s, 1);
  }
}

TEST(SuccessiveMinima, DiagonalLattice) {
  const auto m = successive_minima(LatticeBasis::exact(RatMatrix{{frac(1, 2), 0}, {0, 2}}));
  EXPECT_EQ(m.sqnorm[0], HighFloat("0.25"));
  EXPECT_EQ(m.sqnorm[1], 4);
}

TEST(SuccessiveMinima, MatchesBoxOracleOnRandomIntegerLattices) {
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 200; ++n) {
    const auto b = random_integer_matrix(rng);
    const auto expect = box_minima(b);
    const auto got = successive_minima(LatticeBasis::exact(to_rat(b)));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(got.sqnorm[i], HighFloat(expect[i])) << "instance " << n;
  }
}

TEST(SuccessiveMinima, InvariantUnderUnimodularChangeAndScalesLinearly) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 50; ++n) {
    const auto b = to_rat(random_integer_matrix(rng));
    const auto base = successive_minima(LatticeBasis::exact(b));
    const auto u = random_unimodular(rng, 3, 12);
    const auto moved = successive_minima(LatticeBasis::exact(b * u));
    EXPECT_EQ(base.sqnorm, moved.sqnorm);
    RatMatrix scaled = b;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) scaled(i, j) *= 3;
    const auto big = successive_minima(LatticeBasis::exact(scaled));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(big.sqnorm[i], 9 * base.sqnorm[i]);
  }
}

TEST(SuccessiveMinima, VectorsAreIndependentAndRealizeTheLengths) {
  std::mt19937_64 rng(8);
  const auto b = to_rat(random_integer_matrix(rng));
  const auto lat = LatticeBasis::exact(b);
  const auto m = successive_minima(lat);
  EXPECT_EQ(integer_rank(m.vectors), 3U);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(norm2(lat.basis().apply(m.vectors[i])), m.sqnorm[i]);
}

TEST(SuccessiveMinima, FourAndFiveDimensionalUnimodularImages) {
  std::mt19937_64 rng(9);
  for (std::size_t d : {4U, 5U}) {
    const auto lat = LatticeBasis::exact(random_unimodular(rng, d, 30));
    for (const auto& s : successive_minima(lat).sqnorm) EXPECT_EQ(s, 1);
  }
}

TEST(Lll, TransformIsUnimodularAndReproducesTheBasis) {
  std::mt19937_64 rng(10);
  const auto b = HighMatrix(to_rat(random_integer_matrix(rng)) * random_unimodular(rng, 3, 20));
  const auto r = lll_reduce(b);
  EXPECT_EQ(abs(r.transform.determinant()), 1);
  const auto prod = b * r.transform;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(prod(i, j), r.reduced(i, j));
}

TEST(Enumeration, CountsPointsOfTheStandardLattice) {
  const ReducedBasis rb(HighMatrix::identity(2));
  // Half of the 12 nonzero points with |v|^2 <= 2 plus the 4 at distance 2.
  EXPECT_EQ(rb.short_vectors(HighFloat(2)).size(), 4U);
  EXPECT_EQ(rb.short_vectors(HighFloat(4)).size(), 6U);
}

TEST(Enumeration, BudgetIsReported) {
  const ReducedBasis rb(HighMatrix::identity(4));
  EnumerationBudget tiny;
  tiny.max_nodes = 10;
  try {
    (void)rb.short_vectors(HighFloat(100), tiny);
    FAIL() << "expected a budget error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EnumerationBudgetExceeded);
  }
}

TEST(Minkowski, StandardLattices) {
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto r = minkowski_check(LatticeBasis::standard(d));
    EXPECT_DOUBLE_EQ(r.product_over_covolume, 1.0);
    EXPECT_TRUE(r.holds);
  }
  // Without V_d the lower bound 2^d/d! already fails for Z^2.
  const auto z2 = minkowski_check(LatticeBasis::standard(2));
  EXPECT_LT(z2.product_over_covolume, z2.lower);
}

TEST(Minkowski, RandomUnimodularAndSkewedLattices) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int n = 0; n < 40; ++n) {
    HighMatrix g(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) g(i, j) = gauss(rng);
    const HighFloat det = g.determinant();
    const HighFloat s = pow(abs(det), HighFloat(-0.25));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) g(i, j) *= s;
    EXPECT_TRUE(minkowski_check(LatticeBasis::from_float(g)).holds);
  }
  for (double eps : {1e-1, 1e-3, 1e-6, 1e-9}) {
    const HighMatrix g{{eps, 0.0}, {0.0, 1.0 / eps}};
    const auto r = minkowski_check(LatticeBasis::from_float(g));
    EXPECT_TRUE(r.holds) << eps;
  }
}

TEST(LatticeBasis, RejectsSingularInput) {
  EXPECT_THROW(LatticeBasis::exact(RatMatrix{{1, 2}, {2, 4}}), Error);
}

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "flagexp/ambient.hpp"
#include "flagexp/covolume.hpp"
#include "flagexp/error.hpp"

using namespace flagexp;

namespace {

IntVec ints(std::initializer_list<long> v) {
  IntVec out;
  for (long x : v) out.emplace_back(x);
  return out;
}

RatMatrix diagonal_form(std::initializer_list<long> a) {
  RatMatrix q(a.size(), a.size());
  std::size_t i = 0;
  for (long x : a) {
    q(i, i) = x;
    ++i;
  }
  return q;
}

// Exhaustive box search for a nonzero integer zero of a ternary form.
bool ternary_zero_in_box(const long f[3][3], long box) {
  for (long x = 0; x <= box; ++x)
    for (long y = -box; y <= box; ++y)
      for (long z = -box; z <= box; ++z) {
        if (x == 0 && (y < 0 || (y == 0 && z <= 0))) continue;
        const long v[3] = {x, y, z};
        long s = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) s += f[i][j] * v[i] * v[j];
        if (s == 0) return true;
      }
  return false;
}

std::vector<long> small_primes(long n) {
  std::vector<long> out;
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

TEST(Hilbert, SymbolIdentities) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> pick(-60, 60);
  for (int n = 0; n < 400; ++n) {
    const long a = pick(rng);
    const long b = pick(rng);
    if (a == 0 || b == 0) continue;
    for (long p : {0L, 2L, 3L, 5L, 7L, 11L}) {
      EXPECT_EQ(hilbert_symbol(a, b, p), hilbert_symbol(b, a, p));
      EXPECT_EQ(hilbert_symbol(a, -a, p), 1);
      EXPECT_EQ(hilbert_symbol(a, b * b, p), 1);
      if (a != 1) {
        EXPECT_EQ(hilbert_symbol(a, 1 - a, p), 1) << a << " " << p;
      }
    }
    // Product formula over all places.
    std::vector<long> places{0, 2};
    for (long p : small_primes(a * b))
      if (p != 2) places.push_back(p);
    int prod = 1;
    for (long p : places) prod *= hilbert_symbol(a, b, p);
    EXPECT_EQ(prod, 1) << a << " " << b;
  }
}

TEST(Isotropy, KnownForms) {
  EXPECT_FALSE(quadric_isotropy(diagonal_form({1, 1, -3})).isotropic);
  // Obstructed at 2 and at 3; the product formula pairs the two places.
  EXPECT_EQ(quadric_isotropy(diagonal_form({1, 1, -3})).reason, "2-adic");
  EXPECT_EQ(hilbert_symbol(-1, -3, 3), -1);
  EXPECT_TRUE(quadric_isotropy(diagonal_form({1, 1, -2})).isotropic);
  EXPECT_FALSE(quadric_isotropy(diagonal_form({1, 1, 1})).isotropic);
  EXPECT_FALSE(quadric_isotropy(diagonal_form({1, -2})).isotropic);
  EXPECT_TRUE(quadric_isotropy(diagonal_form({1, -4})).isotropic);
  EXPECT_TRUE(quadric_isotropy(diagonal_form({1, 1, 1, -1})).isotropic);
  EXPECT_FALSE(quadric_isotropy(diagonal_form({1, 1, 1, -7})).isotropic);
  EXPECT_FALSE(quadric_isotropy(diagonal_form({1, 1, -3, -3})).isotropic);
  EXPECT_TRUE(quadric_isotropy(diagonal_form({1, 1, 1, 1, -7})).isotropic);
  EXPECT_TRUE(quadric_isotropy(diagonal_form({1, 0, 5})).isotropic);
  const RatMatrix hyperbolic{{0, 1}, {1, 0}};
  EXPECT_TRUE(quadric_isotropy(hyperbolic).isotropic);
  EXPECT_THROW(quadric_isotropy(RatMatrix{{1, 2}, {0, 1}}), Error);
}

// Cassels: an isotropic integral ternary form has a zero with max |x_i| <= 3 * sum |f_ij|.
TEST(Isotropy, TernaryFormsMatchBoxSearch) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> entry(-2, 2);
  int anisotropic = 0;
  for (int n = 0; n < 40; ++n) {
    long f[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) f[i][j] = f[j][i] = entry(rng);
    RatMatrix q(3, 3);
    long h = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = f[i][j];
        h += std::labs(f[i][j]);
      }
    if (q.determinant() == 0) continue;
    const bool cert = quadric_isotropy(q).isotropic;
    EXPECT_EQ(cert, ternary_zero_in_box(f, 3 * h)) << n;
    anisotropic += cert ? 0 : 1;
  }
  EXPECT_GT(anisotropic, 0);
}

TEST(Isotropy, QuaternarySmallZerosAreSeen) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> entry(-7, 7);
  for (int n = 0; n < 40; ++n) {
    long a[4];
    for (auto& x : a)
      do x = entry(rng);
      while (x == 0);
    bool found = false;
    for (long x = 0; x <= 8 && !found; ++x)
      for (long y = -8; y <= 8 && !found; ++y)
        for (long z = -8; z <= 8 && !found; ++z)
          for (long w = -8; w <= 8 && !found; ++w)
            if ((x | y | z | w) != 0 && a[0] * x * x + a[1] * y * y + a[2] * z * z + a[3] * w * w == 0) found = true;
    const bool cert = quadric_isotropy(diagonal_form({a[0], a[1], a[2], a[3]})).isotropic;
    if (found) {
      EXPECT_TRUE(cert) << a[0] << a[1] << a[2] << a[3];
    }
  }
}

TEST(Ambient, ConeMembership) {
  const auto p = AmbientSpace::projective(3);
  EXPECT_TRUE(p.in_cone(ints({0, 2, 0})));
  EXPECT_FALSE(p.in_cone(ints({0, 0, 0})));
  const auto g = AmbientSpace::grassmann(2, 4);
  EXPECT_EQ(g.rep_dim(), 6U);
  EXPECT_TRUE(g.in_cone(ints({1, 0, 0, 0, 0, 0})));
  EXPECT_FALSE(g.in_cone(ints({1, 0, 0, 0, 0, 1})));
  EXPECT_TRUE(g.in_cone(ints({-3, 0, 0, 0, 0, 0})));
  const auto f = AmbientSpace::fullflag(3);
  EXPECT_EQ(f.rep_dim(), 6U);
  // (e1; e1^e2) is a flag, (e1; e2^e3) is not.
  EXPECT_TRUE(f.in_cone(ints({1, 0, 0, 1, 0, 0})));
  EXPECT_TRUE(f.in_cone(ints({2, 0, 0, -5, 0, 0})));
  EXPECT_FALSE(f.in_cone(ints({1, 0, 0, 0, 0, 1})));
  EXPECT_TRUE(f.in_cone(ints({0, 0, 1, 0, 1, 0})));  // e3 inside e1^e3
  const auto q = AmbientSpace::quadric(diagonal_form({1, 1, -2}), {0});
  EXPECT_TRUE(q.in_cone(ints({1, 1, 1})));
  EXPECT_TRUE(q.in_cone(ints({-4, 4, 4})));
  EXPECT_FALSE(q.in_cone(ints({1, 0, 1})));
  EXPECT_EQ(q.signature(), (std::pair<int, int>{2, 1}));
}

TEST(Ambient, ConeIsScaleInvariantAndPlusIsIdempotent) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<long> entry(-3, 3);
  const auto f = AmbientSpace::fullflag(4);
  const auto g = AmbientSpace::grassmann(2, 5);
  for (int n = 0; n < 30; ++n) {
    std::vector<IntVec> vs(3, IntVec(4));
    for (auto& v : vs)
      for (auto& z : v) z = entry(rng);
    IntVec flag;
    std::vector<IntVec> prefix;
    for (const auto& v : vs) {
      prefix.push_back(v);
      const auto w = wedge(prefix);
      flag.insert(flag.end(), w.begin(), w.end());
    }
    const bool in = f.in_cone(flag);
    EXPECT_EQ(in, integer_rank(vs) == 3);
    IntVec scaled = flag;
    for (auto& z : scaled) z *= -3;
    EXPECT_EQ(f.in_cone(scaled), in);
    IntVec w(10);
    for (auto& z : w) z = entry(rng);
    IntVec w2 = w;
    for (auto& z : w2) z *= 2;
    EXPECT_EQ(g.in_cone(w), g.in_cone(w2));
    HighVec hv(10);
    for (std::size_t i = 0; i < 10; ++i) hv[i] = HighFloat(w[i].get_si());
    const auto once = g.plus_projection(hv);
    EXPECT_EQ(g.plus_projection(once), once);
  }
}

TEST(RChi, StandardLattices) {
  for (int d = 2; d <= 5; ++d) {
    const auto r = r_chi(LatticeBasis::standard(static_cast<std::size_t>(d)), AmbientSpace::projective(d));
    ASSERT_TRUE(r.value);
    EXPECT_NEAR(*r.value, 1.0, 1e-15);
    EXPECT_EQ(r.vector[0], 1);
  }
  const auto g = r_chi(LatticeBasis::standard(6), AmbientSpace::grassmann(2, 4));
  ASSERT_TRUE(g.value);
  EXPECT_NEAR(*g.value, 1.0, 1e-15);
  EXPECT_EQ(g.vector, ints({1, 0, 0, 0, 0, 0}));
  const auto f = r_chi(LatticeBasis::standard(3), AmbientSpace::fullflag(3));
  ASSERT_TRUE(f.value);
  EXPECT_NEAR(*f.value, 1.0, 1e-15);
  EXPECT_FALSE(f.complete);
}

TEST(RChi, AnisotropicQuadricIsCertifiedInfinite) {
  const auto space = AmbientSpace::quadric(diagonal_form({1, 1, -3}), {0});
  const auto r = r_chi(LatticeBasis::standard(3), space);
  EXPECT_TRUE(r.certified_infinite);
  EXPECT_FALSE(r.value);
  // No nonzero integer zero with |v| <= 100.
  for (long x = 0; x <= 100; ++x)
    for (long y = 0; y * y <= 10000 - x * x; ++y)
      for (long z = 0; z * z <= 10000 - x * x - y * y; ++z)
        if (x + y + z > 0) {
          ASSERT_NE(x * x + y * y - 3 * z * z, 0);
        }
}

TEST(RChi, IsotropicQuadric) {
  // 2xz - y^2 with e1 isotropic and in the top weight space.
  const RatMatrix q{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}};
  const auto r = r_chi(LatticeBasis::standard(3), AmbientSpace::quadric(q, {0}));
  ASSERT_TRUE(r.value);
  EXPECT_NEAR(*r.value, 1.0, 1e-15);
  EXPECT_EQ(r.vector, ints({1, 0, 0}));
}

TEST(RChi, BoundedByTheFirstMinimum) {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double c_cone = 0.5;
  for (int n = 0; n < 30; ++n) {
    HighMatrix b(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) b(i, j) = HighFloat(gauss(rng)) + (i == j ? 2 : 0);
    const auto lattice = LatticeBasis::from_float(b);
    const auto r = r_chi(lattice, AmbientSpace::projective(3), c_cone);
    const auto sm = successive_minima(lattice, 1);
    ASSERT_TRUE(r.value);
    EXPECT_GE(*r.value, sm.lambda[0] * (1 - 1e-12));
    const HighVec v = b.apply(sm.vectors[0]);
    if (abs(v[0]) >= HighFloat(c_cone) * sqrt(norm2(v))) {
      EXPECT_LE(*r.value, sm.lambda[0] / c_cone);
    }
  }
}

TEST(RChi, BudgetIsNotInfinity) {
  const auto lattice = LatticeBasis::from_float(HighMatrix::diagonal(HighVec{HighFloat(100), HighFloat("0.01")}));
  try {
    (void)r_chi(lattice, AmbientSpace::projective(2), 0.5, HighFloat(1));
    FAIL() << "expected a budget error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EnumerationBudgetExceeded);
  }
  const auto r = r_chi(lattice, AmbientSpace::projective(2), 0.5);
  ASSERT_TRUE(r.value);
  EXPECT_NEAR(*r.value, 100.0, 1e-9);
}

#include "flagexp/covolume.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flagexp/error.hpp"
#include "flagexp/roots.hpp"

namespace flagexp {

namespace {

HighFloat minor_det(const HighMatrix& g, const std::vector<int>& rows, const std::vector<int>& cols) {
  const std::size_t k = rows.size();
  HighMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      m(i, j) = g(static_cast<std::size_t>(rows[i]), static_cast<std::size_t>(cols[j]));
  return m.determinant();
}

// Fraction-free elimination; exact for integer matrices.
mpz_class integer_det(std::vector<IntVec> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    if (a[c][c] == 0) {
      std::size_t r = c + 1;
      while (r < n && a[r][c] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[r], a[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[c][c];
  }
  return sign * a[n - 1][n - 1];
}

std::size_t subset_index(const std::vector<std::vector<int>>& subsets, const std::vector<int>& s) {
  const auto it = std::lower_bound(subsets.begin(), subsets.end(), s);
  return static_cast<std::size_t>(it - subsets.begin());
}

void require_unimodular(const HighMatrix& g) {
  if (g.rows() != g.cols() || g.rows() < 2) throw Error(ErrorCode::PreconditionViolated, "need a square matrix, d >= 2");
  if (g.rows() > 6) throw Error(ErrorCode::PreconditionViolated, "d <= 6 for full wedge enumeration");
  const HighFloat det = abs(g.determinant());
  if (abs(det - 1) > HighFloat("1e-40")) throw Error(ErrorCode::PreconditionViolated, "|det g| must be 1");
}

// Cholesky factor R (upper triangular) with Q = R^T R.
HighMatrix cholesky_upper(const HighMatrix& q) {
  const std::size_t n = q.rows();
  HighMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    HighFloat s = q(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= r(k, i) * r(k, i);
    if (s <= 0) throw Error(ErrorCode::PreconditionViolated, "quadratic form is not positive definite");
    r(i, i) = sqrt(s);
    for (std::size_t j = i + 1; j < n; ++j) {
      HighFloat t = q(i, j);
      for (std::size_t k = 0; k < i; ++k) t -= r(k, i) * r(k, j);
      r(i, j) = t / r(i, i);
    }
  }
  return r;
}

bool decomposable_primitive(const IntVec& m, int d, int k) { return is_primitive(m) && is_decomposable(m, d, k); }

}  // namespace

std::vector<std::vector<int>> k_subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > d) return out;
  std::vector<int> s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == d - k + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

HighMatrix exterior_power(const HighMatrix& g, int k) {
  const int d = static_cast<int>(g.rows());
  const auto subsets = k_subsets(d, k);
  HighMatrix out(subsets.size(), subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t j = 0; j < subsets.size(); ++j) out(i, j) = minor_det(g, subsets[i], subsets[j]);
  return out;
}

IntVec wedge(const std::vector<IntVec>& vectors) {
  if (vectors.empty()) return {mpz_class(1)};
  const int d = static_cast<int>(vectors.front().size());
  const int k = static_cast<int>(vectors.size());
  IntVec out;
  for (const auto& rows : k_subsets(d, k)) {
    std::vector<IntVec> m(static_cast<std::size_t>(k), IntVec(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            vectors[static_cast<std::size_t>(j)][static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])];
    out.push_back(integer_det(std::move(m)));
  }
  return out;
}

bool is_primitive(const IntVec& v) {
  mpz_class g = 0;
  for (const auto& z : v) g = gcd(g, z);
  return g == 1;
}

bool is_decomposable(const IntVec& p, int d, int k) {
  if (k <= 1 || k >= d - 1) return true;
  const auto subsets = k_subsets(d, k);
  if (p.size() != subsets.size()) throw Error(ErrorCode::PreconditionViolated, "k-vector has the wrong length");
  // Coordinate of an index sequence, antisymmetric in its entries.
  auto coord = [&](std::vector<int> idx) -> mpz_class {
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (idx[i] == idx[j]) return 0;
        if (idx[i] > idx[j]) {
          std::swap(idx[i], idx[j]);
          sign = -sign;
        }
      }
    return sign * p[subset_index(subsets, idx)];
  };
  for (const auto& a : k_subsets(d, k - 1))
    for (const auto& b : k_subsets(d, k + 1)) {
      mpz_class sum = 0;
      for (std::size_t l = 0; l < b.size(); ++l) {
        auto left = a;
        left.push_back(b[l]);
        auto right = b;
        right.erase(right.begin() + static_cast<std::ptrdiff_t>(l));
        const mpz_class term = coord(std::move(left)) * coord(std::move(right));
        if (l % 2 == 0) sum += term;
        else sum -= term;
      }
      if (sum != 0) return false;
    }
  return true;
}

HighFloat covolume_minimum(const HighMatrix& g, int k, IntVec* minimizer, const EnumerationBudget& budget) {
  const int d = static_cast<int>(g.rows());
  if (k < 1 || k >= d) throw Error(ErrorCode::PreconditionViolated, "need 1 <= k < d");
  const auto c = exterior_power(g, k);
  // Upper bound from wedges of reduced basis vectors; these are primitive.
  const ReducedBasis base(g);
  HighFloat bound = -1;
  for (const auto& s : k_subsets(d, k)) {
    std::vector<IntVec> vs;
    for (int i : s) vs.push_back(base.basis()[static_cast<std::size_t>(i)].coords);
    const HighFloat n2 = norm2(c.apply(wedge(vs)));
    if (bound < 0 || n2 < bound) bound = n2;
  }
  // Slack for the rounding between the two evaluations of the same vector.
  bound *= 1 + HighFloat("1e-30");
  const ReducedBasis rb(c);
  const auto best = rb.shortest_matching(
      [&](const LatticePoint& p) { return decomposable_primitive(p.coords, d, k); }, bound, bound, budget);
  if (!best) throw Error(ErrorCode::EnumerationBudgetExceeded, "no decomposable vector under the wedge bound");
  if (minimizer) *minimizer = best->coords;
  return sqrt(best->sqnorm);
}

std::vector<double> eval_to_diagonal(std::span<const double> eval) {
  std::vector<double> y(eval.size() + 1);
  double prev = 0;
  for (std::size_t k = 0; k < eval.size(); ++k) {
    y[k] = eval[k] - prev;
    prev = eval[k];
  }
  y.back() = -prev;
  return y;
}

double chamber_norm(std::span<const double> eval) {
  double s = 0;
  for (double v : eval_to_diagonal(eval)) s += v * v;
  return std::sqrt(s);
}

std::vector<double> simple_root_values(std::span<const double> eval) {
  const std::size_t r = eval.size();
  std::vector<double> out(r);
  for (std::size_t k = 0; k < r; ++k) {
    const double left = k == 0 ? 0.0 : eval[k - 1];
    const double right = k + 1 == r ? 0.0 : eval[k + 1];
    out[k] = 2 * eval[k] - left - right;
  }
  return out;
}

std::vector<double> project_eval_to_chamber(std::span<const double> eval) {
  // Doubles are dyadic rationals, so the exact hull applies verbatim.
  RatVec values{Rational(0)};
  for (double v : eval) values.emplace_back(v);
  values.emplace_back(0);
  const auto hull = type_a_convex_minorant(values);
  std::vector<double> out;
  for (std::size_t k = 1; k + 1 < hull.size(); ++k) out.push_back(to_double(hull[k]));
  return out;
}

Position c_of_lattice(const HighMatrix& g, const EnumerationBudget& budget) {
  require_unimodular(g);
  const int d = static_cast<int>(g.rows());
  Position pos;
  for (int k = 1; k < d; ++k) {
    IntVec m;
    const HighFloat mu = covolume_minimum(g, k, &m, budget);
    pos.c0.push_back(static_cast<double>(log(mu)));
    pos.minimizers.push_back(std::move(m));
  }
  pos.c = project_eval_to_chamber(pos.c0);
  return pos;
}

Position c_of_set(std::span<const HighMatrix> samples, const EnumerationBudget& budget) {
  if (samples.empty()) throw Error(ErrorCode::EmptyFamily, "c_of_set needs at least one sample");
  for (const auto& g : samples) require_unimodular(g);
  const int d = static_cast<int>(samples.front().rows());
  for (const auto& g : samples)
    if (static_cast<int>(g.rows()) != d) throw Error(ErrorCode::PreconditionViolated, "samples differ in dimension");
  Position pos;
  for (int k = 1; k < d; ++k) {
    std::vector<HighMatrix> powers;
    for (const auto& g : samples) powers.push_back(exterior_power(g, k));
    const std::size_t n = powers.front().rows();
    // Every v with max_g |g v| <= M has v^T Q v <= M^2 for the mean Gram form Q.
    HighMatrix q(n, n);
    for (const auto& c : powers) {
      const auto ct = c.transpose();
      const auto gram = ct * c;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q(i, j) += gram(i, j);
    }
    const HighFloat inv_count = HighFloat(1) / HighFloat(samples.size());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q(i, j) *= inv_count;
    const ReducedBasis rb(cholesky_upper(q));

    auto worst = [&](const IntVec& m) {
      HighFloat w = 0;
      for (const auto& c : powers) w = std::max(w, norm2(c.apply(m)));
      return w;
    };
    const auto start = rb.shortest_matching(
        [&](const LatticePoint& p) { return decomposable_primitive(p.coords, d, k); }, rb.min_sqnorm(),
        HighFloat("1e300"), budget);
    if (!start) throw Error(ErrorCode::EnumerationBudgetExceeded, "no decomposable vector found");
    IntVec best = start->coords;
    HighFloat best_value = worst(best);
    HighFloat r2 = best_value;
    rb.enumerator().run(r2, 0, [&](std::span<const long long> x) {
      const auto p = rb.enumerator().point(x);
      if (p.sqnorm > best_value || !decomposable_primitive(p.coords, d, k)) return;
      const HighFloat w = worst(p.coords);
      if (w < best_value) {
        best_value = w;
        best = p.coords;
        r2 = w;
      }
    }, budget);
    pos.c0.push_back(static_cast<double>(log(best_value) / 2));
    pos.minimizers.push_back(std::move(best));
  }
  pos.c = project_eval_to_chamber(pos.c0);
  return pos;
}

std::vector<FlagComponent> partial_flag_detect(const HighMatrix& g, double c0_threshold, double gap_constant,
                                               const EnumerationBudget& budget) {
  if (!(c0_threshold > 0)) throw Error(ErrorCode::PreconditionViolated, "C0 must be positive");
  const auto pos = c_of_lattice(g, budget);
  const auto alpha = simple_root_values(pos.c);
  const int d = static_cast<int>(g.rows());
  std::vector<FlagComponent> out;
  for (int k = 1; k < d; ++k) {
    const double a = alpha[static_cast<std::size_t>(k - 1)];
    if (a > -c0_threshold) continue;
    const auto c = exterior_power(g, k);
    const auto& m = pos.minimizers[static_cast<std::size_t>(k - 1)];
    const HighFloat mu2 = norm2(c.apply(m));
    const HighFloat factor = HighFloat(gap_constant) * exp(HighFloat(-a));
    const HighFloat radius2 = mu2 * factor * factor;
    // Only vectors off the line of m: its multiples would fill the whole ball.
    const auto en = adapted_enumerator(c, {m});
    HighFloat r2 = radius2;
    try {
      en.run(r2, 1, [&](std::span<const long long> x) {
        const auto p = en.point(x);
        if (p.sqnorm <= radius2 && decomposable_primitive(p.coords, d, k))
          throw Error(ErrorCode::GapNotCertified, "second decomposable direction inside the gap at k = " + std::to_string(k));
      }, budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EnumerationBudgetExceeded) throw;
      throw Error(ErrorCode::GapNotCertified, "enumeration budget exhausted at k = " + std::to_string(k));
    }
    out.push_back(FlagComponent{k, m, a, static_cast<double>(factor)});
  }
  return out;
}

}  // namespace flagexp

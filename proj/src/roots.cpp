#include "flagexp/roots.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "flagexp/error.hpp"

namespace flagexp {

Family parse_family(std::string_view text) {
  if (text.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(text.front()))) {
      case 'A': return Family::A;
      case 'B': return Family::B;
      case 'C': return Family::C;
      case 'D': return Family::D;
      default: break;
    }
  }
  throw Error(ErrorCode::UnsupportedFamily, "family '" + std::string(text) + "' is not one of A, B, C, D");
}

char family_letter(Family f) noexcept {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

SimpleRootSet::SimpleRootSet(std::initializer_list<int> indices) {
  for (int i : indices) insert(i);
}

SimpleRootSet SimpleRootSet::from_indices(std::span<const int> indices) {
  SimpleRootSet s;
  for (int i : indices) s.insert(i);
  return s;
}

SimpleRootSet SimpleRootSet::all(int rank) {
  SimpleRootSet s;
  for (int i = 0; i < rank; ++i) s.insert(i);
  return s;
}

void SimpleRootSet::insert(int i) {
  if (i < 0 || i >= 32) throw std::out_of_range("SimpleRootSet: index out of range");
  bits_ |= (1U << i);
}

int SimpleRootSet::size() const noexcept { return __builtin_popcount(bits_); }

std::vector<int> SimpleRootSet::indices() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

SimpleRootSet SimpleRootSet::complement(int rank) const {
  SimpleRootSet s;
  for (int i = 0; i < rank; ++i)
    if (!contains(i)) s.insert(i);
  return s;
}

std::uint64_t weyl_group_order(Family family, int rank) {
  auto fact = [](int n) {
    long double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  long double order = 0;
  switch (family) {
    case Family::A: order = fact(rank + 1); break;
    case Family::B:
    case Family::C: order = fact(rank) * std::pow(2.0L, rank); break;
    case Family::D: order = fact(rank) * std::pow(2.0L, rank - 1); break;
  }
  if (order > 1.8e19L) return UINT64_MAX;
  return static_cast<std::uint64_t>(order);
}

std::string RootSystem::name() const { return std::string(1, family_letter(family_)) + std::to_string(rank_); }

RatVec RootSystem::root_vector(std::span<const int> coeffs) const {
  RatVec v(ambient_dim_);
  for (int i = 0; i < rank_; ++i) {
    if (coeffs[static_cast<std::size_t>(i)] == 0) continue;
    const auto& a = simple_roots_[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < ambient_dim_; ++j) v[j] += coeffs[static_cast<std::size_t>(i)] * a[j];
  }
  return v;
}

Rational RootSystem::coroot_pairing(std::span<const Rational> v, int i) const {
  const auto idx = static_cast<std::size_t>(i);
  return 2 * dot(v, simple_roots_[idx]) / gram_(idx, idx);
}

RatVec RootSystem::ambient_from_root_coords(std::span<const Rational> t) const {
  RatVec v(ambient_dim_);
  for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
    if (sgn(t[i]) == 0) continue;
    for (std::size_t j = 0; j < ambient_dim_; ++j) v[j] += t[i] * simple_roots_[i][j];
  }
  return v;
}

RatVec RootSystem::root_coords_from_ambient(std::span<const Rational> v) const {
  RatVec pairings(simple_roots_.size());
  for (std::size_t i = 0; i < simple_roots_.size(); ++i) pairings[i] = dot(v, simple_roots_[i]);
  return gram_inv_.apply(pairings);
}

bool RootSystem::in_root_span(std::span<const Rational> v) const {
  const auto back = ambient_from_root_coords(root_coords_from_ambient(v));
  return std::equal(back.begin(), back.end(), v.begin(), v.end());
}

int RootSystem::level(std::span<const int> coeffs, SimpleRootSet theta) {
  int lvl = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!theta.contains(static_cast<int>(i))) lvl += coeffs[i];
  return lvl;
}

namespace {

std::vector<RatVec> epsilon_simple_roots(Family family, int rank, std::size_t dim) {
  std::vector<RatVec> roots;
  auto eps_diff = [dim](std::size_t i) {
    RatVec v(dim);
    v[i] = 1;
    v[i + 1] = -1;
    return v;
  };
  const auto r = static_cast<std::size_t>(rank);
  switch (family) {
    case Family::A:
      for (std::size_t i = 0; i < r; ++i) roots.push_back(eps_diff(i));
      break;
    case Family::B:
    case Family::C: {
      for (std::size_t i = 0; i + 1 < r; ++i) roots.push_back(eps_diff(i));
      RatVec last(dim);
      last[r - 1] = family == Family::B ? 1 : 2;
      roots.push_back(last);
      break;
    }
    case Family::D: {
      for (std::size_t i = 0; i + 1 < r; ++i) roots.push_back(eps_diff(i));
      RatVec last(dim);
      last[r - 2] = 1;
      last[r - 1] = 1;
      roots.push_back(last);
      break;
    }
  }
  return roots;
}

int to_int_exact(const Rational& q) {
  if (q.get_den() != 1) throw std::logic_error("expected an integral Cartan entry");
  return static_cast<int>(q.get_num().get_si());
}

}  // namespace

RootSystemPtr build_root_system(Family family, int rank, std::uint64_t weyl_cap) {
  const int min_rank = family == Family::A ? 1 : (family == Family::D ? 3 : 2);
  if (rank < min_rank)
    throw Error(ErrorCode::UnsupportedFamily,
                std::string(1, family_letter(family)) + std::to_string(rank) + " needs rank >= " + std::to_string(min_rank));
  if (rank > 30 || weyl_group_order(family, rank) > weyl_cap)
    throw Error(ErrorCode::RankTooLarge, std::string(1, family_letter(family)) + std::to_string(rank) +
                                             ": Weyl group exceeds the enumeration cap of " + std::to_string(weyl_cap));

  auto rs = std::shared_ptr<RootSystem>(new RootSystem());
  rs->family_ = family;
  rs->rank_ = rank;
  rs->ambient_dim_ = static_cast<std::size_t>(family == Family::A ? rank + 1 : rank);
  rs->simple_roots_ = epsilon_simple_roots(family, rank, rs->ambient_dim_);
  const auto r = static_cast<std::size_t>(rank);

  rs->gram_ = RatMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rs->gram_(i, j) = dot(rs->simple_roots_[i], rs->simple_roots_[j]);
  rs->cartan_ = RatMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rs->cartan_(i, j) = 2 * rs->gram_(i, j) / rs->gram_(i, i);
  rs->gram_inv_ = rs->gram_.inverse();

  // varpi_i = sum_k m_k alpha_k with sum_k m_k <alpha_k, alpha_j^vee> = delta_ij,
  // and <alpha_k, alpha_j^vee> = cartan(j, k).
  for (std::size_t i = 0; i < r; ++i) {
    RatVec e(r);
    e[i] = 1;
    rs->weights_.push_back(rs->ambient_from_root_coords(solve(rs->cartan_, e)));
    rs->coweights_.push_back(rs->ambient_from_root_coords(rs->gram_inv_.apply(e)));
  }
  rs->multipliers_.assign(r, 1);

  std::vector<std::vector<int>> cartan_int(r, std::vector<int>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) cartan_int[i][j] = to_int_exact(rs->cartan_(i, j));

  // Reflection closure in coefficient space: s_i(b) = b - <b, alpha_i^vee> alpha_i.
  std::set<std::vector<int>> roots;
  std::deque<std::vector<int>> queue;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<int> c(r, 0);
    c[i] = 1;
    roots.insert(c);
    queue.push_back(c);
  }
  while (!queue.empty()) {
    auto b = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      int pairing = 0;
      for (std::size_t k = 0; k < r; ++k) pairing += b[k] * cartan_int[i][k];
      if (pairing == 0) continue;
      auto img = b;
      img[i] -= pairing;
      if (roots.insert(img).second) queue.push_back(img);
    }
  }
  for (const auto& c : roots) {
    if (std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; })) rs->positive_roots_.push_back(c);
  }
  std::stable_sort(rs->positive_roots_.begin(), rs->positive_roots_.end(), [](const auto& a, const auto& b) {
    return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
  });
  rs->weyl_order_ = weyl_group_order(family, rank);
  return rs;
}

void require_same_system(const RootSystem& a, const RootSystem& b) {
  if (!(a == b)) throw Error(ErrorCode::MismatchedRootSystem, a.name() + " vs " + b.name());
}

// ---------------------------------------------------------------------------

ChamberVector::ChamberVector(RootSystemPtr rs, RatVec t) : rs_(std::move(rs)), root_coords_(std::move(t)) {
  if (!rs_) throw std::invalid_argument("ChamberVector: null root system");
  if (root_coords_.size() != static_cast<std::size_t>(rs_->rank()))
    throw std::invalid_argument("ChamberVector: wrong number of root coordinates");
  eval_coords_.resize(root_coords_.size());
  for (int i = 0; i < rs_->rank(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    eval_coords_[idx] = rs_->fw_multiplier(i) * root_coords_[idx] * rs_->gram()(idx, idx) / 2;
  }
  ambient_ = rs_->ambient_from_root_coords(root_coords_);
}

ChamberVector ChamberVector::zero(RootSystemPtr rs) {
  const auto r = static_cast<std::size_t>(rs->rank());
  return ChamberVector(std::move(rs), RatVec(r));
}

ChamberVector ChamberVector::from_root_coords(RootSystemPtr rs, RatVec t) { return ChamberVector(std::move(rs), std::move(t)); }

ChamberVector ChamberVector::from_eval_coords(RootSystemPtr rs, std::span<const Rational> omega_values) {
  if (omega_values.size() != static_cast<std::size_t>(rs->rank()))
    throw std::invalid_argument("ChamberVector: wrong number of evaluation coordinates");
  RatVec t(omega_values.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = 2 * omega_values[i] / (rs->fw_multiplier(static_cast<int>(i)) * rs->gram()(i, i));
  return ChamberVector(std::move(rs), std::move(t));
}

ChamberVector ChamberVector::from_root_values(RootSystemPtr rs, std::span<const Rational> alpha_values) {
  if (alpha_values.size() != static_cast<std::size_t>(rs->rank()))
    throw std::invalid_argument("ChamberVector: wrong number of root values");
  auto t = rs->gram_inverse().apply(alpha_values);
  return ChamberVector(std::move(rs), std::move(t));
}

ChamberVector ChamberVector::from_ambient(RootSystemPtr rs, std::span<const Rational> v) {
  if (v.size() != rs->ambient_dim()) throw std::invalid_argument("ChamberVector: wrong ambient dimension");
  if (!rs->in_root_span(v)) throw Error(ErrorCode::PreconditionViolated, "vector is not in the span of the roots");
  auto t = rs->root_coords_from_ambient(v);
  return ChamberVector(std::move(rs), std::move(t));
}

RatVec ChamberVector::root_values() const { return rs_->gram().apply(root_coords_); }

const RatVec& ChamberVector::diag_coords() const {
  if (rs_->family() != Family::A) throw Error(ErrorCode::PreconditionViolated, "diagonal coordinates exist in type A only");
  return ambient_;
}

Rational ChamberVector::pair(std::span<const Rational> ambient_weight) const { return dot(ambient_, ambient_weight); }

Rational ChamberVector::inner(const ChamberVector& other) const {
  require_same_system(*rs_, *other.rs_);
  return dot(ambient_, other.ambient_);
}

Rational ChamberVector::norm2() const { return dot(ambient_, ambient_); }

bool ChamberVector::in_neg_chamber() const {
  const auto vals = root_values();
  return std::all_of(vals.begin(), vals.end(), [](const Rational& x) { return sgn(x) <= 0; });
}

bool ChamberVector::is_zero() const { return flagexp::is_zero(root_coords_); }

bool ChamberVector::precedes(const ChamberVector& other) const {
  require_same_system(*rs_, *other.rs_);
  for (std::size_t i = 0; i < eval_coords_.size(); ++i)
    if (eval_coords_[i] > other.eval_coords_[i]) return false;
  return true;
}

ChamberVector operator+(const ChamberVector& a, const ChamberVector& b) {
  require_same_system(*a.rs_, *b.rs_);
  return ChamberVector(a.rs_, add(a.root_coords_, b.root_coords_));
}

ChamberVector operator-(const ChamberVector& a, const ChamberVector& b) {
  require_same_system(*a.rs_, *b.rs_);
  return ChamberVector(a.rs_, sub(a.root_coords_, b.root_coords_));
}

ChamberVector operator*(const Rational& s, const ChamberVector& a) { return ChamberVector(a.rs_, scale(s, a.root_coords_)); }

bool operator==(const ChamberVector& a, const ChamberVector& b) {
  return *a.rs_ == *b.rs_ && a.root_coords_ == b.root_coords_;
}

// ---------------------------------------------------------------------------

namespace {

RatMatrix reflection_matrix(const RootSystem& rs, int i) {
  const auto& a = rs.simple_root(i);
  const auto n = rs.ambient_dim();
  const Rational norm2 = rs.gram()(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
  RatMatrix m = RatMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) -= 2 * a[r] * a[c] / norm2;
  return m;
}

RatVec dominant_regular(const RootSystem& rs) {
  RatVec d(rs.ambient_dim());
  for (int i = 0; i < rs.rank(); ++i) d = add(d, rs.fundamental_coweight(i));
  return d;
}

}  // namespace

WeylElement::WeylElement(RootSystemPtr rs, std::vector<int> word, RatMatrix matrix)
    : rs_(std::move(rs)), word_(std::move(word)), matrix_(std::move(matrix)) {}

WeylElement WeylElement::identity(RootSystemPtr rs) {
  auto m = RatMatrix::identity(rs->ambient_dim());
  return WeylElement(std::move(rs), {}, std::move(m));
}

WeylElement WeylElement::from_word(RootSystemPtr rs, std::span<const int> word) {
  WeylElement w = identity(std::move(rs));
  for (int i : word) w = w.times_simple(i);
  return w;
}

WeylElement WeylElement::from_permutation(RootSystemPtr rs, std::span<const int> perm) {
  if (rs->family() != Family::A) throw Error(ErrorCode::PreconditionViolated, "permutations describe type A only");
  const auto n = rs->ambient_dim();
  if (perm.size() != n) throw std::invalid_argument("from_permutation: wrong size");
  std::vector<int> p(perm.begin(), perm.end());
  {
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
      if (sorted[i] != static_cast<int>(i)) throw std::invalid_argument("from_permutation: not a permutation");
  }
  RatMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m(static_cast<std::size_t>(p[j]), j) = 1;
  // Peel descents off the right: p = p' s_j when p(j) > p(j+1).
  std::vector<int> reversed_word;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (p[j] > p[j + 1]) {
        std::swap(p[j], p[j + 1]);
        reversed_word.push_back(static_cast<int>(j));
        changed = true;
        break;
      }
    }
  }
  return WeylElement(std::move(rs), std::vector<int>(reversed_word.rbegin(), reversed_word.rend()), std::move(m));
}

WeylElement WeylElement::from_matrix(RootSystemPtr rs, RatMatrix matrix) {
  if (matrix.rows() != rs->ambient_dim() || matrix.cols() != rs->ambient_dim())
    throw std::invalid_argument("from_matrix: wrong size");
  const auto regular = dominant_regular(*rs);
  // w = (w s_j) s_j whenever w alpha_j < 0; peel such right descents.
  RatMatrix m = matrix;
  std::vector<int> reversed_word;
  const auto limit = rs->positive_roots().size();
  for (;;) {
    const auto image = m.apply(regular);
    int descent = -1;
    for (int j = 0; j < rs->rank(); ++j) {
      if (sgn(dot(m.apply(rs->simple_root(j)), regular)) < 0) {
        descent = j;
        break;
      }
    }
    if (descent < 0) {
      if (image != regular) throw std::invalid_argument("from_matrix: not a Weyl group element");
      break;
    }
    m = m * reflection_matrix(*rs, descent);
    reversed_word.push_back(descent);
    if (reversed_word.size() > limit) throw std::invalid_argument("from_matrix: not a Weyl group element");
  }
  return WeylElement(std::move(rs), std::vector<int>(reversed_word.rbegin(), reversed_word.rend()), std::move(matrix));
}

std::vector<int> WeylElement::permutation() const {
  if (rs_->family() != Family::A) throw Error(ErrorCode::PreconditionViolated, "permutations describe type A only");
  const auto n = rs_->ambient_dim();
  std::vector<int> p(n, -1);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(matrix_(i, j)) != 0) p[j] = static_cast<int>(i);
  return p;
}

RatVec WeylElement::apply(std::span<const Rational> v) const { return matrix_.apply(v); }

RatVec WeylElement::apply_inverse(std::span<const Rational> v) const { return matrix_.transpose().apply(v); }

WeylElement WeylElement::times_simple(int i) const {
  auto word = word_;
  word.push_back(i);
  return WeylElement(rs_, std::move(word), matrix_ * reflection_matrix(*rs_, i));
}

WeylElement WeylElement::simple_times(int i) const {
  std::vector<int> word;
  word.reserve(word_.size() + 1);
  word.push_back(i);
  word.insert(word.end(), word_.begin(), word_.end());
  return WeylElement(rs_, std::move(word), reflection_matrix(*rs_, i) * matrix_);
}

bool WeylElement::inverse_keeps_positive(int i) const {
  // <w^{-1} alpha_i, D> = <alpha_i, w D> for a regular dominant D.
  const auto wd = apply(dominant_regular(*rs_));
  return sgn(dot(rs_->simple_root(i), wd)) > 0;
}

std::vector<WeylElement> enumerate_weyl(const RootSystemPtr& rs, std::uint64_t cap) {
  if (rs->weyl_order() > cap)
    throw Error(ErrorCode::GroupTooLarge, rs->name() + ": |W| = " + std::to_string(rs->weyl_order()) +
                                              " exceeds the cap " + std::to_string(cap));
  const auto regular = dominant_regular(*rs);
  std::vector<WeylElement> elements;
  std::map<RatVec, std::size_t> seen;
  elements.push_back(WeylElement::identity(rs));
  seen.emplace(regular, 0);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (int i = 0; i < rs->rank(); ++i) {
      auto next = elements[head].times_simple(i);
      auto key = next.apply(regular);
      if (seen.emplace(std::move(key), elements.size()).second) {
        if (elements.size() >= cap) throw Error(ErrorCode::GroupTooLarge, "Weyl enumeration exceeded the cap");
        elements.push_back(std::move(next));
      }
    }
  }
  if (elements.size() != rs->weyl_order()) throw std::logic_error("Weyl enumeration does not match the group order");
  return elements;
}

ChamberVector weyl_act(const WeylElement& w, const ChamberVector& y) {
  require_same_system(w.rs(), y.rs());
  return ChamberVector::from_ambient(y.rs_ptr(), w.apply_inverse(y.ambient()));
}

RatVec weyl_act_weight(const WeylElement& w, std::span<const Rational> chi) { return w.apply_inverse(chi); }

// ---------------------------------------------------------------------------

ProjectionResult project_neg_chamber_detailed(const ChamberVector& y0) {
  const auto& rs = y0.rs();
  const int r = rs.rank();
  RatVec y_coords = y0.root_coords();
  RatVec total(static_cast<std::size_t>(r));
  SimpleRootSet active;
  int iterations = 0;
  for (;;) {
    const auto values = rs.gram().apply(y_coords);
    SimpleRootSet next;
    for (int i = 0; i < r; ++i)
      if (sgn(values[static_cast<std::size_t>(i)]) >= 0) next.insert(i);
    if (next == active && iterations > 0) break;
    if (next.empty()) break;
    active = next;
    ++iterations;
    // Orthogonal projection onto the intersection of alpha_i^perp, i in active:
    // subtract sum s_i alpha_i with G_II s = alpha_I(Y).
    const auto idx = active.indices();
    RatMatrix sub_gram(idx.size(), idx.size());
    RatVec rhs(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      rhs[a] = values[static_cast<std::size_t>(idx[a])];
      for (std::size_t b = 0; b < idx.size(); ++b)
        sub_gram(a, b) = rs.gram()(static_cast<std::size_t>(idx[a]), static_cast<std::size_t>(idx[b]));
    }
    const auto s = solve(sub_gram, rhs);
    for (std::size_t a = 0; a < idx.size(); ++a) {
      y_coords[static_cast<std::size_t>(idx[a])] -= s[a];
      total[static_cast<std::size_t>(idx[a])] += s[a];
    }
    if (iterations > r + 1) throw std::logic_error("projection iteration did not stabilize");
  }
  for (const auto& t : total)
    if (sgn(t) < 0) throw std::logic_error("projection produced a negative coefficient");
  return ProjectionResult{ChamberVector::from_root_coords(y0.rs_ptr(), std::move(y_coords)), active, std::move(total),
                          iterations};
}

ChamberVector project_neg_chamber(const ChamberVector& y0) { return project_neg_chamber_detailed(y0).point; }

namespace {

template <class Pick>
ChamberVector componentwise(std::span<const ChamberVector> family, Pick pick) {
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "empty family of chamber vectors");
  RatVec best = family.front().eval_coords();
  for (const auto& y : family.subspan(1)) {
    require_same_system(family.front().rs(), y.rs());
    for (std::size_t i = 0; i < best.size(); ++i) best[i] = pick(best[i], y.eval_coords()[i]);
  }
  return ChamberVector::from_eval_coords(family.front().rs_ptr(), best);
}

}  // namespace

ChamberVector chamber_glb(std::span<const ChamberVector> family) {
  return componentwise(family, [](const Rational& a, const Rational& b) { return a < b ? a : b; });
}

ChamberVector chamber_sup(std::span<const ChamberVector> family) {
  for (const auto& y : family)
    if (!y.in_neg_chamber()) throw Error(ErrorCode::PreconditionViolated, "chamber_sup expects members of the negative chamber");
  auto s = componentwise(family, [](const Rational& a, const Rational& b) { return a < b ? b : a; });
  if (!s.in_neg_chamber()) throw std::logic_error("supremum left the negative chamber");
  return s;
}

// ---------------------------------------------------------------------------

namespace {

// Rational upper bound of sqrt(q) for q >= 0, within about 1e-6.
Rational sqrt_upper(const Rational& q) {
  const mpz_class scale = 1'000'000;
  mpz_class n = q.get_num() * q.get_den() * scale * scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  if (root * root != n) root += 1;
  Rational bound(root, q.get_den() * scale);
  bound.canonicalize();
  return bound;
}

}  // namespace

Rational separation_constant(const RootSystem& rs) {
  const auto r = static_cast<std::size_t>(rs.rank());
  Rational c1 = 0;
  Rational max_norm2 = 0;
  for (std::size_t i = 0; i < r; ++i) {
    c1 += sqrt_upper(rs.gram()(i, i));
    if (rs.gram()(i, i) > max_norm2) max_norm2 = rs.gram()(i, i);
  }
  Rational c2 = 0;
  for (std::size_t j = 0; j < r; ++j) {
    Rational col = 0;
    for (std::size_t k = 0; k < r; ++k) col += rs.gram_inverse()(k, j);
    if (col > c2) c2 = col;
  }
  return 1 / (c1 * c2 * max_norm2);
}

SeparatingRoot find_separating_root(const ChamberVector& y1, const ChamberVector& y2, const Rational& gap_bound) {
  require_same_system(y1.rs(), y2.rs());
  if (sgn(gap_bound) <= 0) throw Error(ErrorCode::PreconditionViolated, "-log(eps) must be positive");
  if (!y1.in_neg_chamber() || !y2.in_neg_chamber())
    throw Error(ErrorCode::PreconditionViolated, "both vectors must lie in the negative chamber");
  if (!y1.precedes(y2)) throw Error(ErrorCode::PreconditionViolated, "expected Y1 to precede Y2");
  const auto diff = y2 - y1;
  if (diff.norm2() < gap_bound * gap_bound)
    throw Error(ErrorCode::PreconditionViolated, "gap ||Y2 - Y1|| is smaller than -log(eps)");

  const Rational tau = separation_constant(y1.rs());
  const Rational margin = tau * gap_bound;
  const auto diff_values = diff.root_values();
  const auto y1_values = y1.root_values();
  std::vector<int> order(diff_values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return diff_values[static_cast<std::size_t>(a)] > diff_values[static_cast<std::size_t>(b)];
  });
  for (int k : order) {
    const auto kk = static_cast<std::size_t>(k);
    if (y1.eval_coords()[kk] <= y2.eval_coords()[kk] - margin && y1_values[kk] <= -margin)
      return SeparatingRoot{k, tau, -gap_bound};
  }
  throw std::logic_error("no separating root satisfies the certificates");
}

SeparatingRoot find_separating_root(const ChamberVector& y1, const ChamberVector& y2, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::PreconditionViolated, "eps must lie in (0, 1)");
  return find_separating_root(y1, y2, Rational(-std::log(eps)));
}

bool verify_stratification(const RootSystem& rs, SimpleRootSet theta) {
  std::map<int, std::set<std::vector<int>>> by_level;
  for (const auto& c : rs.positive_roots()) {
    const int lvl = RootSystem::level(c, theta);
    if (lvl > 0) by_level[lvl].insert(c);
  }
  if (by_level.empty()) return true;
  const auto& first = by_level[1];
  for (const auto& [lvl, roots] : by_level) {
    if (lvl == 1) continue;
    const auto below = by_level.find(lvl - 1);
    if (below == by_level.end()) return false;
    for (const auto& beta : roots) {
      bool found = false;
      for (const auto& g : first) {
        auto rest = beta;
        for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= g[i];
        if (below->second.count(rest) != 0) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

RatVec type_a_convex_minorant(std::span<const Rational> values) {
  if (values.size() < 2 || sgn(values.front()) != 0 || sgn(values.back()) != 0)
    throw Error(ErrorCode::BadEndpoints, "values must start and end with 0");
  // Lower hull by the monotone chain.
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < values.size(); ++i) {
    while (hull.size() >= 2) {
      const auto a = hull[hull.size() - 2];
      const auto b = hull.back();
      // Drop b when it lies on or above the segment a -> i.
      const Rational cross = (values[b] - values[a]) * static_cast<long>(i - a) -
                             (values[i] - values[a]) * static_cast<long>(b - a);
      if (sgn(cross) >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  RatVec out(values.size());
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const auto a = hull[h];
    const auto b = hull[h + 1];
    for (std::size_t i = a; i <= b; ++i)
      out[i] = values[a] + (values[b] - values[a]) * static_cast<long>(i - a) / Rational(static_cast<long>(b - a));
  }
  return out;
}

}  // namespace flagexp

#include "flagexp/spacespec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "flagexp/error.hpp"

namespace flagexp {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& expected) const {
    throw Error(ErrorCode::Syntax, "at position " + std::to_string(pos_) + " of \"" + std::string(text_) +
                                       "\": expected " + expected + "; grammar: " + std::string(kSpaceGrammar));
  }

  bool take(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(std::string_view word) {
    if (!take(word)) fail("\"" + std::string(word) + "\"");
  }

  long integer(bool allow_sign = false) {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (begin == end || !(std::isdigit(static_cast<unsigned char>(*begin)) || (allow_sign && *begin == '-')))
      fail("an integer");
    long value = 0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{}) fail("an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  // Possibly empty comma list, stopping at ':' or the end.
  std::vector<long> list(bool allow_sign) {
    std::vector<long> out;
    if (done() || peek() == ':') return out;
    out.push_back(integer(allow_sign));
    while (take(",")) out.push_back(integer(allow_sign));
    return out;
  }

  char peek() const { return text_[pos_]; }
  bool done() const { return pos_ == text_.size(); }
  void finish() const {
    if (!done()) fail("end of input");
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string join(const auto& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

}  // namespace

SpaceSpec parse_space(std::string_view text) {
  Cursor in(text);
  SpaceSpec s;
  if (in.take("projective:")) {
    s.kind = SpaceKind::Projective;
    const std::size_t at = in.pos();
    s.d = static_cast<int>(in.integer());
    in.finish();
    if (s.d < 2 || s.d > 9) throw Error(ErrorCode::InvalidSpec, "projective:d needs 2 <= d <= 9, got d at position " + std::to_string(at));
  } else if (in.take("grassmannian:")) {
    s.kind = SpaceKind::Grassmannian;
    s.l = static_cast<int>(in.integer());
    in.expect(",");
    s.d = static_cast<int>(in.integer());
    in.finish();
    if (s.l < 1 || s.l >= s.d || s.d > 9) throw Error(ErrorCode::InvalidSpec, "grassmannian:l,d needs 1 <= l < d <= 9");
  } else if (in.take("flag:")) {
    s.kind = SpaceKind::Flag;
    if (in.done()) in.fail("a family letter");
    const char letter = in.peek();
    if (!std::isalpha(static_cast<unsigned char>(letter))) in.fail("a family letter");
    s.family = parse_family(std::string_view(&letter, 1));
    in.take(std::string_view(&letter, 1));
    s.rank = static_cast<int>(in.integer());
    in.expect(":theta=");
    for (long i : in.list(false)) {
      if (i < 1 || i > s.rank) throw Error(ErrorCode::InvalidSpec, "theta index " + std::to_string(i) + " outside 1.." + std::to_string(s.rank));
      s.theta.push_back(static_cast<int>(i));
    }
    std::sort(s.theta.begin(), s.theta.end());
    if (std::adjacent_find(s.theta.begin(), s.theta.end()) != s.theta.end())
      throw Error(ErrorCode::InvalidSpec, "theta repeats an index");
    in.expect(":chi=");
    s.chi = in.list(true);
    in.finish();
    if (static_cast<int>(s.chi.size()) != s.rank)
      throw Error(ErrorCode::InvalidSpec, "chi needs " + std::to_string(s.rank) + " entries");
  } else if (in.take("quadric:")) {
    s.kind = SpaceKind::Quadric;
    s.d = static_cast<int>(in.integer());
    if (in.take(",")) {
      in.expect("x0");
      s.x0 = true;
    }
    in.finish();
    if (s.d < 1 || s.d > 7) throw Error(ErrorCode::InvalidSpec, "quadric:n needs 1 <= n <= 7");
  } else {
    in.fail("one of projective:, grassmannian:, flag:, quadric:");
  }
  if (s.kind != SpaceKind::Quadric) flag_variety(s);  // semantic checks
  return s;
}

std::string to_string(const SpaceSpec& s) {
  switch (s.kind) {
    case SpaceKind::Projective: return "projective:" + std::to_string(s.d);
    case SpaceKind::Grassmannian: return "grassmannian:" + std::to_string(s.l) + "," + std::to_string(s.d);
    case SpaceKind::Flag:
      return "flag:" + std::string(1, family_letter(s.family)) + std::to_string(s.rank) + ":theta=" + join(s.theta) +
             ":chi=" + join(s.chi);
    case SpaceKind::Quadric: return "quadric:" + std::to_string(s.d) + (s.x0 ? ",x0" : "");
  }
  return {};
}

FlagVarietySpec flag_variety(const SpaceSpec& s) {
  switch (s.kind) {
    case SpaceKind::Projective: return FlagVarietySpec::projective(s.d);
    case SpaceKind::Grassmannian: return FlagVarietySpec::grassmannian(s.l, s.d);
    case SpaceKind::Flag: {
      SimpleRootSet theta;
      for (int i : s.theta) theta.insert(i - 1);
      return FlagVarietySpec(build_root_system(s.family, s.rank), theta, s.chi);
    }
    case SpaceKind::Quadric: break;
  }
  throw Error(ErrorCode::InvalidSpec, "quadrics carry closed-form profiles only, not a split root datum");
}

LatticeModel lattice_model(const SpaceSpec& s) {
  if (s.kind == SpaceKind::Quadric) {
    const std::size_t n = static_cast<std::size_t>(s.d) + 2;
    RatMatrix q(n, n);
    q(0, n - 1) = 1;
    q(n - 1, 0) = 1;
    for (std::size_t i = 1; i + 1 < n; ++i) q(i, i) = -1;
    RatVec y(n, Rational(0));
    y.front() = -1;
    y.back() = 1;
    return {AmbientSpace::quadric(q, {0}), y, Rational(-1)};
  }
  const auto fv = flag_variety(s);
  if (fv.rs().family() != Family::A)
    throw Error(ErrorCode::InvalidSpec, "lattice commands need a type-A space (SL_d)");
  const int d = fv.rs().rank() + 1;
  const auto theta = fv.theta();
  const auto complement = theta.complement(fv.rs().rank()).indices();
  LatticeModel model{AmbientSpace::projective(d), flow_element(fv).diag_coords(), chi_of_flow(fv)};
  if (complement.size() == 1 && fv.chi()[static_cast<std::size_t>(complement[0])] == 1) {
    const int k = complement[0] + 1;
    if (k > 1) model.space = AmbientSpace::grassmann(k, d);
  } else if (theta.empty()) {
    if (std::any_of(fv.chi().begin(), fv.chi().end(), [](long n) { return n != 1; }))
      throw Error(ErrorCode::InvalidSpec, "the full-flag lattice model measures chi = 1,...,1 only");
    model.space = AmbientSpace::fullflag(d);
  } else {
    throw Error(ErrorCode::InvalidSpec,
                "lattice commands support projective, grassmannian, full type-A flags and quadrics; got " + to_string(s));
  }
  return model;
}

}  // namespace flagexp

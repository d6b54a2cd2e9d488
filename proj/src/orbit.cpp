#include "flagexp/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "flagexp/covolume.hpp"
#include "flagexp/error.hpp"
#include "flagexp/parallel.hpp"

namespace flagexp {

RatVec representation_weights(const AmbientSpace& space, const RatVec& y_diag) {
  if (space.kind() != AmbientKind::Grassmann) return y_diag;
  RatVec out;
  for (const auto& subset : k_subsets(space.d(), space.l())) {
    Rational w = 0;
    for (int i : subset) w += y_diag[static_cast<std::size_t>(i)];
    out.push_back(w);
  }
  return out;
}

std::vector<double> time_grid(double t0, double t1, double step) {
  if (!(step > 0) || t1 < t0) throw Error(ErrorCode::PreconditionViolated, "time grid needs step > 0 and t1 >= t0");
  const auto n = static_cast<std::size_t>(std::floor((t1 - t0) / step + 1e-9));
  std::vector<double> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(t0 + static_cast<double>(i) * step);
  return out;
}

namespace {

double log_length(const HighFloat& sqnorm) { return static_cast<double>(log(sqnorm) / 2); }

OrbitSample sample_at(double t, const HighMatrix& s, const RatVec& y_diag, const AmbientSpace& space, bool unimodular,
                      const FlowOptions& options) {
  const std::size_t d = s.rows();
  HighVec scale(d);
  for (std::size_t i = 0; i < d; ++i) scale[i] = exp(HighFloat(t) * to_high(y_diag[i]));
  const HighMatrix g = HighMatrix::diagonal(scale) * s;
  const HighMatrix rep = space.kind() == AmbientKind::Grassmann ? exterior_power(g, space.l()) : g;
  const auto lattice = LatticeBasis::from_float(rep);
  OrbitSample out;
  out.t = t;
  if (options.minima) {
    const auto sm = successive_minima(lattice, 0, options.budget);
    for (const auto& q : sm.sqnorm) out.log_lambda.push_back(log_length(q));
  }
  try {
    const auto r = r_chi(lattice, space, options.c_cone, std::nullopt, options.budget);
    out.r_state = r.certified_infinite ? RChiState::Infinite : RChiState::Found;
    out.log_r_chi = r.log_value;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EnumerationBudgetExceeded) throw;
    out.r_state = RChiState::Missing;
  }
  if (options.position && unimodular) {
    try {
      out.c = c_of_lattice(g, options.budget).c;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EnumerationBudgetExceeded) throw;
    }
    if (options.flag_threshold > 0 && !out.c.empty()) {
      try {
        for (const auto& f : partial_flag_detect(g, options.flag_threshold, 0.5, options.budget)) {
          if (!out.flags.empty()) out.flags += ' ';
          out.flags += "k" + std::to_string(f.k);
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GapNotCertified && e.code() != ErrorCode::EnumerationBudgetExceeded) throw;
        out.flags = "uncertified";
      }
    }
  }
  return out;
}

}  // namespace

OrbitTrace flow_orbit(const HighMatrix& s, const RatVec& y_diag, std::span<const double> t_grid,
                      const AmbientSpace& space, const FlowOptions& options) {
  const auto d = static_cast<std::size_t>(space.d());
  if (s.rows() != d || s.cols() != d) throw Error(ErrorCode::PreconditionViolated, "s must be d x d for " + space.name());
  if (y_diag.size() != d) throw Error(ErrorCode::PreconditionViolated, "Y must have d diagonal entries");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw Error(ErrorCode::PreconditionViolated, "time grid must increase");
  if (!t_grid.empty() && std::abs(t_grid.back()) > 60) throw Error(ErrorCode::PreconditionViolated, "|t| <= 60");

  const RatVec weights = representation_weights(space, y_diag);
  AmbientSpace flowing = space;
  if (space.kind() == AmbientKind::FullFlag) {
    for (std::size_t i = 1; i < d; ++i)
      if (!(y_diag[i - 1] < y_diag[i]))
        throw Error(ErrorCode::PreconditionViolated, "full flag flows need increasing diagonal entries");
  } else {
    const Rational low = *std::min_element(weights.begin(), weights.end());
    std::vector<std::size_t> plus;
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (weights[i] == low) plus.push_back(i);
    flowing = space.with_plus(plus);
  }

  OrbitTrace trace;
  trace.space = space.name();
  trace.rep_dim = space.kind() == AmbientKind::FullFlag ? d : space.rep_dim();
  trace.group_dim = d;
  for (const auto& w : weights) trace.lipschitz = std::max(trace.lipschitz, std::abs(to_double(w)));
  const bool unimodular = d <= 6 && abs(abs(s.determinant()) - 1) < HighFloat("1e-40");
  trace.samples = parallel_map<OrbitSample>(t_grid.size(), options.threads, [&](std::size_t i) {
    return sample_at(t_grid[i], s, y_diag, flowing, unimodular, options);
  });
  return trace;
}

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const OrbitTrace& trace) {
  out << "t";
  for (std::size_t i = 1; i <= trace.rep_dim; ++i) out << ",log_lambda_" << i;
  out << ",log_r_chi";
  for (std::size_t i = 1; i < trace.group_dim; ++i) out << ",c_" << i;
  out << ",flags\n";
  for (const auto& s : trace.samples) {
    out << fmt(s.t);
    for (std::size_t i = 0; i < trace.rep_dim; ++i) out << ',' << (i < s.log_lambda.size() ? fmt(s.log_lambda[i]) : "");
    out << ',';
    if (s.r_state == RChiState::Found) out << fmt(s.log_r_chi);
    if (s.r_state == RChiState::Infinite) out << "inf";
    for (std::size_t i = 0; i + 1 < trace.group_dim; ++i) out << ',' << (i < s.c.size() ? fmt(s.c[i]) : "");
    out << ',' << s.flags << '\n';
  }
}

OrbitTrace read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Syntax, "empty trace");
  const auto header = split_csv(line);
  OrbitTrace trace;
  std::size_t c_cols = 0;
  for (const auto& h : header) {
    if (h.rfind("log_lambda_", 0) == 0) ++trace.rep_dim;
    if (h.rfind("c_", 0) == 0) ++c_cols;
  }
  trace.group_dim = c_cols + 1;
  const std::size_t width = 3 + trace.rep_dim + c_cols;
  if (header.size() != width || header.front() != "t" || header.back() != "flags")
    throw Error(ErrorCode::Syntax, "not an orbit trace header");
  auto number = [](const std::string& cell) {
    try {
      std::size_t used = 0;
      const double v = std::stod(cell, &used);
      if (used != cell.size()) throw Error(ErrorCode::Syntax, "bad number '" + cell + "'");
      return v;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Syntax, "bad number '" + cell + "'");
    }
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != width) throw Error(ErrorCode::Syntax, "row width differs from the header");
    OrbitSample s;
    s.t = number(cells[0]);
    for (std::size_t i = 0; i < trace.rep_dim; ++i)
      if (!cells[1 + i].empty()) s.log_lambda.push_back(number(cells[1 + i]));
    const auto& r = cells[1 + trace.rep_dim];
    if (r == "inf") {
      s.r_state = RChiState::Infinite;
    } else if (!r.empty()) {
      s.r_state = RChiState::Found;
      s.log_r_chi = number(r);
    }
    for (std::size_t i = 0; i < c_cols; ++i)
      if (!cells[2 + trace.rep_dim + i].empty()) s.c.push_back(number(cells[2 + trace.rep_dim + i]));
    s.flags = cells.back();
    trace.samples.push_back(std::move(s));
  }
  return trace;
}

GammaEstimate estimate_gamma(const OrbitTrace& trace) {
  if (trace.samples.empty()) throw Error(ErrorCode::AllInfinite, "empty trace");
  GammaEstimate est;
  est.t_hi = trace.samples.back().t;
  est.t_lo = est.t_hi / 2;
  est.sup = -std::numeric_limits<double>::infinity();
  est.inf = std::numeric_limits<double>::infinity();
  bool saw_infinite = false;
  for (const auto& s : trace.samples) {
    if (s.t < est.t_lo || s.t <= 0) continue;
    switch (s.r_state) {
      case RChiState::Missing: ++est.missing; break;
      case RChiState::Infinite: saw_infinite = true; break;
      case RChiState::Found: {
        const double v = -s.log_r_chi / s.t;
        est.sup = std::max(est.sup, v);
        est.inf = std::min(est.inf, v);
        ++est.used;
        break;
      }
    }
  }
  if (est.used == 0) throw Error(ErrorCode::AllInfinite, "no finite r_chi sample on the window");
  if (saw_infinite) est.inf = -std::numeric_limits<double>::infinity();
  return est;
}

double beta_from_gamma(double gamma, const Rational& chi_y) {
  if (sgn(chi_y) >= 0) throw Error(ErrorCode::PreconditionViolated, "chi(Y) must be negative");
  const double pole = -to_double(chi_y);
  if (gamma > pole) throw Error(ErrorCode::PoleOrBeyond, "gamma " + fmt(gamma) + " beyond -chi(Y) = " + fmt(pole));
  if (gamma == pole) return std::numeric_limits<double>::infinity();
  return 1 / (pole - gamma);
}

}  // namespace flagexp

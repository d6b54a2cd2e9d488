#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "flagexp/counting.hpp"
#include "flagexp/covolume.hpp"
#include "flagexp/error.hpp"
#include "flagexp/experiments.hpp"
#include "flagexp/lattice.hpp"
#include "flagexp/orbit.hpp"
#include "flagexp/schubert.hpp"
#include "flagexp/spacespec.hpp"

namespace flagexp::cli {

namespace {

// ---- flag values

std::optional<std::string> get(const CommandRequest& r, const std::string& flag) {
  const auto it = r.options.find(flag);
  if (it == r.options.end()) return std::nullopt;
  return it->second;
}

std::string require(const CommandRequest& r, const std::string& flag) {
  auto v = get(r, flag);
  if (!v) throw UsageError(r.group + " " + r.command + ": missing " + flag);
  return *v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

long to_long(const std::string& flag, const std::string& text) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + ": expected an integer, got \"" + text + "\"");
}

double to_real(const std::string& flag, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + ": expected a number, got \"" + text + "\"");
}

std::vector<double> reals(const std::string& flag, const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(to_real(flag, part));
  if (out.empty()) throw UsageError(flag + ": expected a comma list of numbers");
  return out;
}

std::vector<long> integers(const std::string& flag, const std::string& text) {
  std::vector<long> out;
  for (const auto& part : split(text, ',')) out.push_back(to_long(flag, part));
  return out;
}

std::uint64_t count_flag(const CommandRequest& r, const std::string& flag, std::uint64_t fallback) {
  const auto v = get(r, flag);
  if (!v) return fallback;
  const long n = to_long(flag, *v);
  if (n < 0) throw UsageError(flag + ": must be non-negative");
  return static_cast<std::uint64_t>(n);
}

unsigned threads(const CommandRequest& r) {
  const auto n = count_flag(r, "--threads", 1);
  if (n < 1 || n > 256) throw UsageError("--threads: expected 1..256");
  return static_cast<unsigned>(n);
}

EnumerationBudget budget(const CommandRequest& r) {
  EnumerationBudget b;
  if (get(r, "--budget")) b.max_nodes = count_flag(r, "--budget", b.max_nodes);
  return b;
}

// Real entry: p/q, a decimal, sqrt(q) or cbrt(q), optionally negated. Exact when rational.
struct RealEntry {
  HighFloat value;
  std::optional<Rational> exact;
};

RealEntry parse_entry(const std::string& flag, std::string text) {
  bool negative = false;
  if (!text.empty() && text[0] == '-') {
    negative = true;
    text.erase(0, 1);
  }
  RealEntry e;
  try {
    for (const std::string fn : {"sqrt", "cbrt"}) {
      if (text.rfind(fn + "(", 0) == 0 && text.back() == ')') {
        const Rational arg = parse_rational(text.substr(fn.size() + 1, text.size() - fn.size() - 2));
        if (fn == "sqrt" && arg < 0) throw UsageError(flag + ": sqrt of a negative number");
        e.value = fn == "sqrt" ? sqrt(to_high(arg)) : cbrt(to_high(arg));
        if (negative) e.value = -e.value;
        return e;
      }
    }
    e.exact = parse_rational(text);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError(flag + ": cannot read \"" + text + "\" as p/q, a decimal, sqrt(q) or cbrt(q)");
  }
  if (negative) *e.exact = -*e.exact;
  e.value = to_high(*e.exact);
  return e;
}

std::vector<RealEntry> entries(const std::string& flag, const std::string& text) {
  std::vector<RealEntry> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_entry(flag, part));
  if (out.empty()) throw UsageError(flag + ": expected a comma list");
  return out;
}

std::size_t square_side(const std::string& flag, std::size_t n) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (side * side != n || side < 1) throw UsageError(flag + ": expected d*d entries, got " + std::to_string(n));
  return side;
}

HighMatrix matrix_of(const std::vector<RealEntry>& e, std::size_t d) {
  HighMatrix m(d, d);
  for (std::size_t i = 0; i < d * d; ++i) m(i / d, i % d) = e[i].value;
  return m;
}

// ---- spaces

SpaceSpec space_of(const CommandRequest& r) {
  if (auto text = get(r, "--space")) {
    for (const std::string flag : {"--family", "--rank", "--theta", "--chi"})
      if (get(r, flag)) throw UsageError(flag + " conflicts with --space");
    return parse_space(*text);
  }
  if (!get(r, "--family") && !get(r, "--rank")) throw UsageError(r.group + " " + r.command + ": missing --space");
  SpaceSpec s;
  s.kind = SpaceKind::Flag;
  s.family = parse_family(require(r, "--family"));
  s.rank = static_cast<int>(to_long("--rank", require(r, "--rank")));
  // Reparse the canonical text so that both spellings are validated the same way.
  std::string text = "flag:" + std::string(1, family_letter(s.family)) + std::to_string(s.rank) + ":theta=" +
                     get(r, "--theta").value_or("") + ":chi=" + require(r, "--chi");
  return parse_space(text);
}

std::string word_text(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) out += (i ? "," : "") + std::to_string(word[i] + 1);
  return out;
}

Json theta_json(const FlagVarietySpec& fv) {
  Json out = Json::array();
  for (int i : fv.theta().indices()) out.push_back(i + 1);
  return out;
}

Json exponent_json(const Exponent& e) { return e.str(); }

// ---- root-system and flag-variety commands

Output rootsys_info(const CommandRequest& r) {
  const auto family = parse_family(require(r, "--family"));
  const auto rs = build_root_system(family, static_cast<int>(to_long("--rank", require(r, "--rank"))));
  Output o;
  o.doc["name"] = rs->name();
  o.doc["rank"] = rs->rank();
  o.doc["ambient_dim"] = rs->ambient_dim();
  o.doc["weyl_order"] = rs->weyl_order();
  auto matrix = [](const RatMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(exact(m.row(i)));
    return out;
  };
  o.doc["cartan"] = matrix(rs->cartan());
  o.doc["gram"] = matrix(rs->gram());
  Json simple = Json::array(), weights = Json::array(), mult = Json::array();
  for (int i = 0; i < rs->rank(); ++i) {
    simple.push_back(exact(rs->simple_root(i)));
    weights.push_back(exact(rs->fundamental_weight(i)));
    mult.push_back(rs->fw_multiplier(i));
  }
  o.doc["simple_roots"] = simple;
  o.doc["fundamental_weights"] = weights;
  o.doc["fw_multipliers"] = mult;
  Json roots = Json::array();
  o.table.header = {"root", "coefficients", "height", "vector"};
  int index = 0;
  for (const auto& coeffs : rs->positive_roots()) {
    int height = 0;
    std::string ctext, vtext;
    for (int c : coeffs) {
      height += c;
      ctext += (ctext.empty() ? "" : " ") + std::to_string(c);
    }
    for (const auto& q : rs->root_vector(coeffs)) vtext += (vtext.empty() ? "" : " ") + to_string(q);
    roots.push_back(Json{{"coefficients", coeffs}, {"height", height}, {"vector", exact(rs->root_vector(coeffs))}});
    o.table.rows.push_back({std::to_string(++index), ctext, std::to_string(height), vtext});
  }
  o.doc["positive_roots"] = roots;
  return o;
}

Output flag_exponent(const CommandRequest& r) {
  const auto s = space_of(r);
  Output o;
  o.doc["space"] = to_string(s);
  if (s.kind == SpaceKind::Quadric) {
    const auto q = quadric_profile(s.d, s.x0);
    o.doc["beta_X"] = exact(q.beta);
    return o;
  }
  const auto fv = flag_variety(s);
  const auto y = flow_element(fv);
  o.doc["beta_X"] = exact(beta_almost_sure(fv));
  o.doc["root_system"] = fv.rs().name();
  o.doc["theta"] = theta_json(fv);
  o.doc["chi"] = fv.chi();
  o.doc["chi_of_flow"] = exact(chi_of_flow(fv));
  o.doc["cc_dimension"] = cc_dimension(fv.rs(), fv.theta());
  o.doc["flow_root_values"] = exact(y.root_values());
  o.doc["flow_eval"] = exact(y.eval_coords());
  return o;
}

PsiParams psi_of(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("--psi: expected c,gamma,delta");
  try {
    return PsiParams{parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2])};
  } catch (const Error&) {
    throw UsageError("--psi: expected three rationals c,gamma,delta, got \"" + text + "\"");
  }
}

Output flag_khintchine(const CommandRequest& r) {
  const auto s = space_of(r);
  const auto profile = s.kind == SpaceKind::Quadric ? quadric_khintchine_profile(s.d, s.x0)
                                                    : khintchine_profile(flag_variety(s));
  Output o;
  o.doc["a"] = exact(profile.a_chi);
  o.doc["b"] = profile.b_chi;
  o.doc["power"] = exact(profile.a_chi / profile.beta_X);
  o.doc["beta_X"] = exact(profile.beta_X);
  o.doc["space"] = to_string(s);
  if (auto psi = get(r, "--psi")) {
    o.doc["psi"] = *psi;
    o.doc["integral"] = to_string(khintchine_classify(profile, psi_of(*psi)));
  }
  return o;
}

Output flag_counting(const CommandRequest& r) {
  const auto s = space_of(r);
  const auto fv = flag_variety(s);
  const auto c = counting_exponents(fv);
  Output o;
  o.doc["space"] = to_string(s);
  o.doc["u"] = exact(c.u);
  o.doc["v"] = c.v;
  o.doc["beta_X"] = exact(beta_almost_sure(fv));
  return o;
}

// ---- Schubert cells

Output schubert_spectrum(const CommandRequest& r) {
  const auto s = space_of(r);
  const auto fv = flag_variety(s);
  Output o;
  o.doc["space"] = to_string(s);
  o.doc["beta_X"] = exact(beta_almost_sure(fv));
  o.doc["min_beta"] = exponent_json(min_beta(fv));
  Json cells = Json::array();
  o.table.header = {"cell", "length", "beta", "gamma", "unstable"};
  for (const auto& entry : exponent_spectrum(fv)) {
    const auto cell = analyze_cell(fv, entry.w);
    const std::string word = word_text(entry.w.word());
    cells.push_back(Json{{"cell", word},
                         {"length", entry.w.length()},
                         {"beta", exponent_json(entry.beta)},
                         {"gamma", exact(cell.gamma)},
                         {"unstable", cell.unstable}});
    o.table.rows.push_back({word, std::to_string(entry.w.length()), entry.beta.str(), to_string(cell.gamma),
                            cell.unstable ? "true" : "false"});
  }
  o.doc["cells"] = cells;
  return o;
}

Output schubert_analyze(const CommandRequest& r) {
  const auto s = space_of(r);
  const auto fv = flag_variety(s);
  std::vector<int> word;
  const std::string text = get(r, "--cell").value_or("e");
  if (text != "e")
    for (long i : integers("--cell", text)) {
      if (i < 1 || i > fv.rs().rank()) throw UsageError("--cell: simple reflection " + std::to_string(i) + " outside 1.." + std::to_string(fv.rs().rank()));
      word.push_back(static_cast<int>(i - 1));
    }
  const auto w = WeylElement::from_word(fv.rs_ptr(), word);
  const auto cell = analyze_cell(fv, w);
  Output o;
  o.doc["space"] = to_string(s);
  o.doc["cell"] = word_text(minimal_coset_rep(fv, w).word());
  o.doc["length"] = cell.w.length();
  o.doc["yw_eval"] = exact(cell.yw.eval_coords());
  o.doc["pyw_eval"] = exact(cell.pyw.eval_coords());
  o.doc["gamma"] = exact(cell.gamma);
  o.doc["beta"] = exponent_json(cell.beta);
  o.doc["beta_X"] = exact(beta_almost_sure(fv));
  o.doc["unstable"] = cell.unstable;
  return o;
}

Output schubert_grassmann_gamma(const CommandRequest& r) {
  const auto s = parse_space(require(r, "--space"));
  if (s.kind != SpaceKind::Grassmannian) throw UsageError("--space: grassmann-gamma needs grassmannian:l,d");
  GrassFlagData data{s.d, s.l, {}};
  for (const auto& step : split(require(r, "--steps"), ',')) {
    const auto pair = split(step, ':');
    if (pair.size() != 2) throw UsageError("--steps: expected d_k:i_k pairs, got \"" + step + "\"");
    data.steps.push_back({static_cast<int>(to_long("--steps", pair[0])), static_cast<int>(to_long("--steps", pair[1]))});
  }
  validate(data);
  const auto g = grassmannian_gamma_detailed(data);
  auto steps_json = [](const GrassFlagData& f) {
    Json out = Json::array();
    for (const auto& st : f.steps) out.push_back(std::to_string(st.dim) + ":" + std::to_string(st.meet));
    return out;
  };
  Output o;
  o.doc["space"] = to_string(s);
  o.doc["steps"] = steps_json(data);
  o.doc["c_values"] = exact(grass_c_values(data));
  o.doc["coarsened_steps"] = steps_json(canonical_coarsening(data));
  o.doc["gamma"] = exact(g.gamma);
  o.doc["raw_gamma"] = exact(g.raw_gamma);
  o.doc["beta"] = exponent_json(g.beta);
  o.doc["cell"] = word_text(grass_cell_representative(data).word());
  return o;
}

// ---- lattices

Output lattice_minima(const CommandRequest& r) {
  const auto e = entries("--matrix", require(r, "--matrix"));
  const std::size_t d = square_side("--matrix", e.size());
  const bool rational = std::all_of(e.begin(), e.end(), [](const RealEntry& x) { return x.exact.has_value(); });
  LatticeBasis lattice = LatticeBasis::standard(d);
  if (rational) {
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d * d; ++i) m(i / d, i % d) = *e[i].exact;
    lattice = LatticeBasis::exact(m);
  } else {
    lattice = LatticeBasis::from_float(matrix_of(e, d));
  }
  const auto b = budget(r);
  const auto minima = successive_minima(lattice, 0, b);
  const auto mk = minkowski_check(lattice, b);
  Output o;
  o.doc["dim"] = d;
  o.doc["exact_input"] = rational;
  o.doc["covolume"] = num(lattice.covolume().convert_to<double>());
  Json rows = Json::array();
  o.table.header = {"i", "lambda", "coefficients"};
  for (std::size_t i = 0; i < minima.lambda.size(); ++i) {
    Json coeffs = Json::array();
    std::string text;
    for (const auto& z : minima.vectors[i]) {
      coeffs.push_back(z.get_str());
      text += (text.empty() ? "" : " ") + z.get_str();
    }
    rows.push_back(Json{{"lambda", num(minima.lambda[i])}, {"coefficients", coeffs}});
    o.table.rows.push_back({std::to_string(i + 1), fmt(minima.lambda[i]), text});
  }
  o.doc["minima"] = rows;
  o.doc["minkowski"] = Json{{"product_over_covolume", num(mk.product_over_covolume)},
                            {"ball_ratio", num(mk.ball_ratio)},
                            {"lower", num(mk.lower)},
                            {"upper", num(mk.upper)},
                            {"holds", mk.holds}};
  return o;
}

HighMatrix orbit_start(const CommandRequest& r, const SpaceSpec& s, const LatticeModel& model) {
  const std::size_t d = model.y_diag.size();
  if (auto text = get(r, "--matrix")) {
    if (get(r, "--point")) throw UsageError("--point conflicts with --matrix");
    const auto e = entries("--matrix", *text);
    if (square_side("--matrix", e.size()) != d)
      throw UsageError("--matrix: " + to_string(s) + " needs " + std::to_string(d) + " x " + std::to_string(d) + " entries");
    return matrix_of(e, d);
  }
  const auto point = entries("--point", require(r, "--point"));
  if (model.space.kind() != AmbientKind::Projective || point.size() + 1 != d)
    throw UsageError("--point: needs projective:d and d-1 coordinates; use --matrix otherwise");
  HighMatrix m = HighMatrix::identity(d);
  for (std::size_t i = 0; i < point.size(); ++i) m(i + 1, 0) = point[i].value;
  return m;
}

OrbitTrace run_orbit(const CommandRequest& r, const SpaceSpec& s, const LatticeModel& model) {
  const double T = to_real("--T", get(r, "--T").value_or("20"));
  const double step = to_real("--grid", get(r, "--grid").value_or("0.5"));
  if (!(step > 0) || !(T > 0)) throw UsageError("--T and --grid must be positive");
  FlowOptions options;
  options.threads = threads(r);
  options.budget = budget(r);
  return flow_orbit(orbit_start(r, s, model), model.y_diag, time_grid(0, T, step), model.space, options);
}

Output lattice_orbit(const CommandRequest& r) {
  const auto s = parse_space(require(r, "--space"));
  const auto model = lattice_model(s);
  const auto trace = run_orbit(r, s, model);
  Output o;
  o.doc["space"] = trace.space;
  o.doc["rep_dim"] = trace.rep_dim;
  o.doc["group_dim"] = trace.group_dim;
  o.doc["lipschitz"] = num(trace.lipschitz);
  Json samples = Json::array();
  for (const auto& p : trace.samples) {
    Json row{{"t", num(p.t)}};
    Json lam = Json::array(), c = Json::array();
    for (double v : p.log_lambda) lam.push_back(num(v));
    for (double v : p.c) c.push_back(num(v));
    row["log_lambda"] = lam;
    row["log_r_chi"] = p.r_state == RChiState::Found ? num(p.log_r_chi)
                                                     : (p.r_state == RChiState::Infinite ? Json("inf") : Json(nullptr));
    row["c"] = c;
    row["flags"] = p.flags;
    samples.push_back(row);
  }
  o.doc["samples"] = samples;
  std::ostringstream csv;
  write_csv(csv, trace);
  std::istringstream lines(csv.str());
  std::string line;
  bool header = true;
  while (std::getline(lines, line)) {
    auto cells = split(line, ',');
    if (header) {
      o.table.header = cells;
      header = false;
    } else {
      o.table.rows.push_back(cells);
    }
  }
  return o;
}

Json beta_json(double gamma, const Rational& chi_y) {
  try {
    return num(beta_from_gamma(gamma, chi_y));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PoleOrBeyond) return "pole";
    throw;
  }
}

Output lattice_estimate_gamma(const CommandRequest& r) {
  const auto s = parse_space(require(r, "--space"));
  const auto model = lattice_model(s);
  OrbitTrace trace;
  if (auto path = get(r, "--input")) {
    for (const std::string flag : {"--point", "--matrix", "--T", "--grid"})
      if (get(r, flag)) throw UsageError(flag + " conflicts with --input");
    std::ifstream in(*path);
    if (!in) throw UsageError("--input: cannot open " + *path);
    trace = read_csv(in);
  } else {
    trace = run_orbit(r, s, model);
  }
  const auto g = estimate_gamma(trace);
  Output o;
  o.doc["space"] = to_string(s);
  o.doc["t_lo"] = num(g.t_lo);
  o.doc["t_hi"] = num(g.t_hi);
  o.doc["gamma_sup"] = num(g.sup);
  o.doc["gamma_inf"] = num(g.inf);
  o.doc["used"] = g.used;
  o.doc["missing"] = g.missing;
  o.doc["chi_y"] = exact(model.chi_y);
  o.doc["beta_from_sup"] = beta_json(g.sup, model.chi_y);
  o.doc["beta_from_inf"] = beta_json(g.inf, model.chi_y);
  return o;
}

Output lattice_count_points(const CommandRequest& r) {
  const auto s = parse_space(require(r, "--space"));
  const auto model = lattice_model(s);
  const auto Ts = reals("--T", require(r, "--T"));
  Output o;
  o.doc["space"] = to_string(s);
  std::vector<double> x, y;
  Json rows = Json::array();
  o.table.header = {"T", "count"};
  for (double T : Ts) {
    const auto n = count_rational_points(model.space, T);
    rows.push_back(Json{{"T", num(T)}, {"count", n}});
    o.table.rows.push_back({fmt(T), std::to_string(n)});
    if (n > 0) {
      x.push_back(T);
      y.push_back(static_cast<double>(n));
    }
  }
  o.doc["counts"] = rows;
  if (x.size() >= 2) o.doc["fitted_slope"] = num(loglog_slope(x, y));
  o.doc["expected_u"] = exact(counting_exponents(flag_variety(s)).u);
  return o;
}

Output lattice_count_solutions(const CommandRequest& r) {
  const auto s = parse_space(require(r, "--space"));
  if (s.kind != SpaceKind::Projective) throw UsageError("--space: count-solutions needs projective:d");
  const auto point = entries("--point", require(r, "--point"));
  if (point.size() + 1 != static_cast<std::size_t>(s.d)) throw UsageError("--point: needs d-1 coordinates");
  HighVec x{HighFloat(1)};
  for (const auto& e : point) x.push_back(e.value);
  const auto psi = psi_of(get(r, "--psi").value_or("1,0,0"));
  const auto Ts = reals("--T", require(r, "--T"));
  const auto counts = count_solutions(x, psi, Ts);
  Output o;
  o.doc["space"] = to_string(s);
  o.doc["beta"] = exact(beta_almost_sure(flag_variety(s)));
  o.doc["psi"] = get(r, "--psi").value_or("1,0,0");
  Json rows = Json::array();
  o.table.header = {"T", "count"};
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    rows.push_back(Json{{"T", num(Ts[i])}, {"count", counts[i]}});
    o.table.rows.push_back({fmt(Ts[i]), std::to_string(counts[i])});
  }
  o.doc["counts"] = rows;
  return o;
}

Output lattice_mc_volume(const CommandRequest& r) {
  const auto radii = reals("--radii", get(r, "--radii").value_or("0.1,0.2,0.3,0.4,0.5"));
  const auto n = count_flag(r, "--samples", 100000);
  const auto seed = count_flag(r, "--seed", 1);
  const auto res = monte_carlo_cusp_fraction(radii, n, seed, threads(r));
  Output o;
  o.doc["samples"] = res.samples;
  o.doc["seed"] = seed;
  Json rows = Json::array();
  std::vector<double> x, y;
  o.table.header = {"r", "fraction"};
  for (std::size_t i = 0; i < res.r.size(); ++i) {
    rows.push_back(Json{{"r", num(res.r[i])}, {"fraction", num(res.fraction[i])}});
    o.table.rows.push_back({fmt(res.r[i]), fmt(res.fraction[i])});
    if (res.r[i] <= 1 && res.fraction[i] > 0) {
      x.push_back(res.r[i]);
      y.push_back(res.fraction[i]);
    }
  }
  o.doc["fractions"] = rows;
  if (x.size() >= 2) o.doc["fitted_slope"] = num(loglog_slope(x, y));
  return o;
}

Output lattice_curve_experiment(const CommandRequest& r) {
  const auto s = parse_space(require(r, "--space"));
  const auto model = lattice_model(s);
  if (s.kind == SpaceKind::Quadric) throw UsageError("--space: curve-experiment needs a type-A space");
  const std::size_t d = model.y_diag.size();
  const std::string name = get(r, "--curve").value_or("moment");
  Curve curve;
  if (name == "moment") {
    // exp(u N) for the lower shift N.
    curve = [d](const HighFloat& u) {
      HighMatrix m = HighMatrix::identity(d);
      for (std::size_t i = 1; i < d; ++i) {
        HighFloat term = 1;
        for (std::size_t k = 1; k <= i; ++k) {
          term = term * u / static_cast<long>(k);
          m(i, i - k) = term;
        }
      }
      return m;
    };
  } else if (name == "constant") {
    curve = [d](const HighFloat&) { return HighMatrix::identity(d); };
  } else {
    throw UsageError("--curve: expected moment or constant, got \"" + name + "\"");
  }
  const auto times = reals("--T", get(r, "--T").value_or("10,20,30,40"));
  const auto eps = reals("--eps", get(r, "--eps").value_or("0.2"));
  const auto n = count_flag(r, "--samples", 200);
  const auto seed = count_flag(r, "--seed", 1);
  const auto rep = curve_experiment(curve, model.y_diag, times, n, seed, eps, threads(r), budget(r));
  Output o;
  o.doc["space"] = to_string(s);
  o.doc["curve"] = name;
  o.doc["samples"] = n;
  o.doc["seed"] = seed;
  Json rows = Json::array();
  o.table.header = {"T", "set_position"};
  for (double e : eps) o.table.header.push_back("exceed_" + fmt(e));
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    Json pos = Json::array(), ex = Json::array();
    std::string ptext;
    for (double v : rep.set_position[i]) {
      pos.push_back(num(v));
      ptext += (ptext.empty() ? "" : " ") + fmt(v);
    }
    std::vector<std::string> row{fmt(rep.times[i]), ptext};
    for (double v : rep.exceed[i]) {
      ex.push_back(num(v));
      row.push_back(fmt(v));
    }
    rows.push_back(Json{{"T", num(rep.times[i])}, {"set_position", pos}, {"exceed", ex}});
    o.table.rows.push_back(row);
  }
  o.doc["eps"] = eps;
  o.doc["rows"] = rows;
  return o;
}

}  // namespace

CommandResult execute(const CommandRequest& r) {
  using Handler = std::function<Output(const CommandRequest&)>;
  static const std::map<std::string, std::pair<Handler, Format>> table{
      {"rootsys info", {rootsys_info, Format::Table}},
      {"flag exponent", {flag_exponent, Format::Json}},
      {"flag khintchine", {flag_khintchine, Format::Json}},
      {"flag counting", {flag_counting, Format::Json}},
      {"schubert spectrum", {schubert_spectrum, Format::Json}},
      {"schubert analyze", {schubert_analyze, Format::Json}},
      {"schubert grassmann-gamma", {schubert_grassmann_gamma, Format::Json}},
      {"lattice minima", {lattice_minima, Format::Json}},
      {"lattice orbit", {lattice_orbit, Format::Csv}},
      {"lattice estimate-gamma", {lattice_estimate_gamma, Format::Json}},
      {"lattice count-points", {lattice_count_points, Format::Json}},
      {"lattice count-solutions", {lattice_count_solutions, Format::Json}},
      {"lattice mc-volume", {lattice_mc_volume, Format::Json}},
      {"lattice curve-experiment", {lattice_curve_experiment, Format::Json}},
  };
  const auto it = table.find(r.group + " " + r.command);
  if (it == table.end()) throw UsageError("unknown subcommand " + r.group + " " + r.command);
  const auto format = get(r, "--format") ? parse_format(*get(r, "--format")) : it->second.second;
  return CommandResult{it->second.first(r), format};
}

}  // namespace flagexp::cli

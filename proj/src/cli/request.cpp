#include <CLI11.hpp>

#include <deque>
#include <optional>

#include "flagexp/cli.hpp"
#include "flagexp/spacespec.hpp"
#include "request_internal.hpp"

namespace flagexp::cli {

namespace {

const std::map<std::string, std::string>& flag_help() {
  static const std::map<std::string, std::string> help{
      {"--space", "space string: " + std::string(kSpaceGrammar)},
      {"--family", "root-system family A, B, C or D"},
      {"--rank", "root-system rank"},
      {"--theta", "1-based simple roots kept in the Levi, comma separated (may be empty)"},
      {"--chi", "height weight as integer coefficients on the fundamental weights"},
      {"--psi", "c,gamma,delta for psi(u) = c (log u)^-gamma (log log u)^-delta"},
      {"--cell", "1-based reduced word of simple reflections, comma separated"},
      {"--steps", "flag data d1:i1,d2:i2,... ending at d:l"},
      {"--matrix", "d x d entries row by row; columns are basis vectors; p/q, decimals, sqrt(q), cbrt(q)"},
      {"--point", "affine coordinates x_1..x_{d-1} of a projective point"},
      {"--input", "orbit CSV written by 'lattice orbit'"},
      {"--curve", "moment or constant"},
      {"--T", "final time, height bound or comma list of them"},
      {"--grid", "time step"},
      {"--radii", "comma list of radii"},
      {"--eps", "comma list of deviation thresholds"},
      {"--samples", "sample count"},
      {"--seed", "random seed"},
      {"--threads", "worker cap"},
      {"--budget", "enumeration node cap"},
      {"--format", "json, csv or table"},
  };
  return help;
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<std::string> spec_flags{"--space", "--family", "--rank", "--theta", "--chi", "--format"};
  auto with = [](std::vector<std::string> base, std::initializer_list<std::string> extra) {
    base.insert(base.end(), extra);
    return base;
  };
  static const std::vector<CommandInfo> table{
      {"rootsys", "info", "Cartan data, positive roots and Weyl order", {"--family", "--rank", "--format"}},
      {"flag", "exponent", "almost-sure exponent and flow data", spec_flags},
      {"flag", "khintchine", "Khintchine constants and the psi integral test", with(spec_flags, {"--psi"})},
      {"flag", "counting", "rational-point counting exponents", spec_flags},
      {"schubert", "spectrum", "exponents of every Schubert cell", spec_flags},
      {"schubert", "analyze", "one cell: Y^w, its projection, gamma and beta", with(spec_flags, {"--cell"})},
      {"schubert", "grassmann-gamma", "Grassmannian gamma of flag data", {"--space", "--steps", "--format"}},
      {"lattice", "minima", "successive minima and the Minkowski check", {"--matrix", "--budget", "--format"}},
      {"lattice",
       "orbit",
       "minima, r_chi and position along a diagonal orbit",
       {"--space", "--point", "--matrix", "--T", "--grid", "--budget", "--threads", "--format"}},
      {"lattice",
       "estimate-gamma",
       "tail-window escape rate and the exponent it implies",
       {"--space", "--point", "--matrix", "--T", "--grid", "--budget", "--threads", "--input", "--format"}},
      {"lattice", "count-points", "rational points of bounded height", {"--space", "--T", "--format"}},
      {"lattice", "count-solutions", "approximations within H^-beta psi(H)", {"--space", "--point", "--psi", "--T", "--format"}},
      {"lattice", "mc-volume", "Monte-Carlo share of SL_2 lattices with lambda_1 <= r", {"--radii", "--samples", "--seed", "--threads", "--format"}},
      {"lattice",
       "curve-experiment",
       "concentration of a curve of lattices under the flow",
       {"--space", "--curve", "--samples", "--seed", "--T", "--eps", "--threads", "--budget", "--format"}},
  };
  return table;
}

ParseOutcome parse_or_help(std::span<const std::string> args) {
  CLI::App app{"flagexp: Diophantine exponents of flag varieties and their lattice-side checks", "flagexp"};
  app.require_subcommand(1, 1);
  app.footer("space grammar: " + std::string(kSpaceGrammar));
  struct Leaf {
    const CommandInfo* info;
    CLI::App* app;
    std::vector<std::pair<std::string, CLI::Option*>> options;
  };
  std::deque<std::string> storage;
  std::vector<Leaf> leaves;
  std::map<std::string, CLI::App*> groups;
  for (const auto& info : commands()) {
    auto*& group = groups[info.group];
    if (!group) {
      static const std::map<std::string, std::string> about{{"rootsys", "root-system data"},
                                                             {"flag", "exact exponents of a flag variety"},
                                                             {"schubert", "Schubert cells and algebraic points"},
                                                             {"lattice", "lattice-side simulations and counts"}};
      group = app.add_subcommand(info.group, about.at(info.group));
      group->require_subcommand(1, 1);
    }
    Leaf leaf{&info, group->add_subcommand(info.command, info.summary), {}};
    leaf.app->footer("space grammar: " + std::string(kSpaceGrammar));
    for (const auto& flag : info.flags) {
      storage.emplace_back();
      leaf.options.emplace_back(flag, leaf.app->add_option(flag, storage.back(), flag_help().at(flag)));
    }
    leaves.push_back(std::move(leaf));
  }

  // CLI11 reads "--flag=" as a flag still waiting for its value.
  std::vector<std::string> reversed;
  for (auto it = args.rbegin(); it != args.rend(); ++it) {
    if (it->size() > 3 && it->starts_with("--") && it->back() == '=') {
      reversed.emplace_back();
      reversed.push_back(it->substr(0, it->size() - 1));
    } else {
      reversed.push_back(*it);
    }
  }
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto& leaf : leaves)
      if (leaf.app->parsed()) target = leaf.app;
    if (target == &app)
      for (const auto& [name, group] : groups)
        if (group->parsed()) target = group;
    return ParseOutcome{std::nullopt, target->help()};
  } catch (const CLI::ParseError& e) {
    std::string where;
    for (const auto& leaf : leaves)
      if (leaf.app->parsed()) where = "\n" + leaf.app->help();
    if (where.empty()) where = "\n" + app.help();
    throw UsageError(std::string(e.what()) + where);
  }
  for (const auto& leaf : leaves) {
    if (!leaf.app->parsed()) continue;
    CommandRequest request{leaf.info->group, leaf.info->command, {}};
    for (const auto& [flag, option] : leaf.options)
      if (option->count() > 0) request.options[flag] = option->as<std::string>();
    return ParseOutcome{request, {}};
  }
  throw UsageError("no subcommand given\n" + app.help());
}

CommandRequest parse_request(std::span<const std::string> args) {
  auto outcome = parse_or_help(args);
  if (!outcome.request) throw UsageError("help requested");
  return *outcome.request;
}

std::vector<std::string> print_request(const CommandRequest& request) {
  std::vector<std::string> out{request.group, request.command};
  for (const auto& [flag, value] : request.options) out.push_back(flag + "=" + value);
  return out;
}

}  // namespace flagexp::cli

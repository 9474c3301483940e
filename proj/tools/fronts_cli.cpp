// Command-line front end for the fronts library: minimal front speeds,
// variational bounds, bound optimization, verification reports, and PDE
// validation runs.
//
// Exit codes: 0 success, 1 computational failure, 2 usage/config error.
// All numeric output uses 12 significant digits; identical invocations
// produce byte-identical output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <fronts/fronts.hpp>

namespace {

using nlohmann::ordered_json;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Reaction specification: "fisher", "hadeler_rothe(4)", "poly:1,-1", or the
// JSON record used in config files.

fronts::ReactionSpec parse_reaction_string(const std::string& text) {
  fronts::ReactionSpec spec;
  static const std::regex re_param(R"(([a-z_]+)\(([0-9.eE+\-]+)\))");
  std::smatch m;
  if (text.rfind("poly:", 0) == 0) {
    spec.kind = "polynomial";
    std::stringstream ss(text.substr(5));
    std::string item;
    while (std::getline(ss, item, ','))
      spec.coefficients.push_back(std::stod(item));
    return spec;
  }
  spec.kind = "builtin";
  if (std::regex_match(text, m, re_param)) {
    spec.name = m[1].str();
    spec.param = std::stod(m[2].str());
  } else {
    spec.name = text;
  }
  return spec;
}

ordered_json reaction_to_json(const fronts::ReactionSpec& spec) {
  ordered_json j;
  j["kind"] = spec.kind;
  if (spec.kind == "builtin") {
    j["name"] = spec.name;
    if (spec.param) j["params"] = {{"param", *spec.param}};
  } else if (spec.kind == "polynomial") {
    j["coefficients"] = spec.coefficients;
  } else if (spec.kind == "piecewise") {
    j["segments"] = ordered_json::array();
    for (const auto& s : spec.segments)
      j["segments"].push_back(
          {{"lo", s.lo}, {"hi", s.hi}, {"coefficients", s.coefficients}});
  }
  return j;
}

fronts::ReactionSpec reaction_from_json(const ordered_json& j) {
  fronts::ReactionSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  if (spec.kind == "builtin") {
    spec.name = j.at("name").get<std::string>();
    if (j.contains("params") && j["params"].contains("param"))
      spec.param = j["params"]["param"].get<double>();
  } else if (spec.kind == "polynomial") {
    spec.coefficients = j.at("coefficients").get<std::vector<double>>();
  } else if (spec.kind == "piecewise") {
    for (const auto& s : j.at("segments")) {
      fronts::PiecewiseSegment seg;
      seg.lo = s.at("lo").get<double>();
      seg.hi = s.at("hi").get<double>();
      seg.coefficients = s.at("coefficients").get<std::vector<double>>();
      spec.segments.push_back(seg);
    }
  } else {
    throw fronts::InvalidArgument("config: unknown reaction kind '" +
                                  spec.kind + "'");
  }
  return spec;
}

// ---------------------------------------------------------------------------
// RunConfig: everything a single invocation needs, JSON round-trippable.

struct RunConfig {
  std::string command;
  std::optional<fronts::ReactionSpec> reaction;
  std::vector<fronts::ReactionSpec> reactions;  // batched verify
  double c_tol = 1e-4;
  double quad_rel_tol = 1e-8;
  std::string principle = "VP2";
  std::string trial = "g=1-u";
  int budget = 200;
  int jobs = 1;
  std::string ic = "step";
  double length = 400.0;
  double dx = 0.1;
  double t_end = 150.0;
  std::string profile;  // "", "phase", "front"
  std::string output;
  bool json_output = false;
};

ordered_json config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  if (cfg.reactions.size() > 1) {
    j["reactions"] = ordered_json::array();
    for (const auto& r : cfg.reactions) j["reactions"].push_back(reaction_to_json(r));
  } else if (cfg.reaction) {
    j["reaction"] = reaction_to_json(*cfg.reaction);
  }
  j["tolerances"] = {{"c_tol", cfg.c_tol}, {"quad_rel_tol", cfg.quad_rel_tol}};
  if (cfg.command == "bound") {
    j["principle"] = cfg.principle;
    j["trial"] = cfg.trial;
  }
  if (cfg.command == "optimize") {
    j["budget"] = cfg.budget;
    j["jobs"] = cfg.jobs;
  }
  if (cfg.command == "verify") j["jobs"] = cfg.jobs;
  if (cfg.command == "evolve") {
    j["ic"] = cfg.ic;
    j["length"] = cfg.length;
    j["dx"] = cfg.dx;
    j["t_end"] = cfg.t_end;
  }
  if (cfg.command == "speed" && !cfg.profile.empty())
    j["profile"] = cfg.profile;
  if (!cfg.output.empty()) j["output"] = cfg.output;
  j["format"] = cfg.json_output ? "json" : "text";
  return j;
}

RunConfig config_from_json(const ordered_json& j) {
  RunConfig cfg;
  cfg.command = j.value("command", std::string{});
  if (j.contains("reaction")) cfg.reaction = reaction_from_json(j["reaction"]);
  if (j.contains("reactions"))
    for (const auto& r : j["reactions"])
      cfg.reactions.push_back(reaction_from_json(r));
  if (cfg.reaction && cfg.reactions.empty()) cfg.reactions = {*cfg.reaction};
  if (!cfg.reaction && !cfg.reactions.empty()) cfg.reaction = cfg.reactions[0];
  if (j.contains("tolerances")) {
    cfg.c_tol = j["tolerances"].value("c_tol", cfg.c_tol);
    cfg.quad_rel_tol = j["tolerances"].value("quad_rel_tol", cfg.quad_rel_tol);
  }
  cfg.principle = j.value("principle", cfg.principle);
  cfg.trial = j.value("trial", cfg.trial);
  cfg.budget = j.value("budget", cfg.budget);
  cfg.jobs = j.value("jobs", cfg.jobs);
  cfg.ic = j.value("ic", cfg.ic);
  cfg.length = j.value("length", cfg.length);
  cfg.dx = j.value("dx", cfg.dx);
  cfg.t_end = j.value("t_end", cfg.t_end);
  cfg.profile = j.value("profile", cfg.profile);
  cfg.output = j.value("output", cfg.output);
  cfg.json_output = j.value("format", std::string("text")) == "json";
  return cfg;
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.output);
  if (!os)
    throw fronts::InvalidArgument("cannot open output file '" + cfg.output +
                                  "'");
  os << text;
  std::cout << "wrote " << cfg.output << "\n";
}

// ---------------------------------------------------------------------------
// Subcommand implementations.

int run_speed(const RunConfig& cfg) {
  const auto f = fronts::make_reaction(*cfg.reaction);
  const auto sol = fronts::minimal_speed(f, cfg.c_tol);
  if (!cfg.profile.empty()) {
    std::ostringstream os;
    os.precision(12);
    if (cfg.profile == "phase") {
      os << "u,p\n";
      for (std::size_t i = 0; i < sol.u_grid.size(); ++i)
        os << sol.u_grid[i] << "," << sol.p[i] << "\n";
    } else if (cfg.profile == "front") {
      const auto prof = fronts::front_profile(sol);
      os << "z,u,uz\n";
      for (std::size_t i = 0; i < prof.z_grid.size(); ++i)
        os << prof.z_grid[i] << "," << prof.u[i] << "," << prof.uz[i] << "\n";
    } else {
      throw fronts::InvalidArgument("--profile must be 'phase' or 'front'");
    }
    write_output(cfg, os.str());
  }
  if (cfg.json_output) {
    ordered_json j;
    j["command"] = "speed";
    j["reaction"] = f.name;
    j["c0"] = sol.c;
    j["branch"] = fronts::to_string(sol.decay_branch);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "c0 = " << num(sol.c) << "\n"
              << "branch = " << fronts::to_string(sol.decay_branch) << "\n";
  }
  return 0;
}

ordered_json bound_to_json(const fronts::BoundResult& b) {
  return ordered_json{
      {"principle", fronts::to_string(b.principle)},
      {"direction",
       b.direction == fronts::BoundDirection::upper ? "upper" : "lower"},
      {"value", b.value},
      {"value_squared", b.value_squared},
      {"trial", b.trial},
      {"quad_error", b.quad_error}};
}

int run_bound(const RunConfig& cfg) {
  const auto f = fronts::make_reaction(*cfg.reaction);
  const auto trial = fronts::parse_trial(cfg.trial);
  fronts::BoundResult b;
  if (cfg.principle == "VP1")
    b = fronts::vp1_upper(f, trial);
  else if (cfg.principle == "VP2")
    b = fronts::vp2_lower(f, trial);
  else if (cfg.principle == "VP4")
    b = fronts::vp4_lower(f, trial);
  else
    throw fronts::InvalidArgument("--principle must be VP1, VP2, or VP4");
  if (cfg.json_output) {
    ordered_json j = bound_to_json(b);
    j.insert(j.begin(), {"command", "bound"});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "principle = " << fronts::to_string(b.principle) << "\n"
              << "direction = "
              << (b.direction == fronts::BoundDirection::upper ? "upper"
                                                               : "lower")
              << "\n"
              << "value = " << num(b.value) << "\n"
              << "trial = " << b.trial << "\n"
              << "quad_error = " << num(b.quad_error) << "\n";
  }
  return 0;
}

int run_optimize(const RunConfig& cfg) {
  const auto f = fronts::make_reaction(*cfg.reaction);
  const auto gap =
      fronts::bound_gap(f, cfg.budget, std::max(cfg.c_tol, 1e-8), cfg.jobs);
  if (cfg.json_output) {
    ordered_json j;
    j["command"] = "optimize";
    j["reaction"] = f.name;
    j["oracle_c0"] = gap.oracle_c;
    j["best_lower"] =
        gap.best_lower ? bound_to_json(*gap.best_lower) : ordered_json{};
    j["best_upper"] =
        gap.best_upper ? bound_to_json(*gap.best_upper) : ordered_json{};
    j["gap"] = gap.gap;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "oracle_c0 = " << num(gap.oracle_c) << "\n";
    if (gap.best_lower)
      std::cout << "best_lower = " << num(gap.best_lower->value) << " ("
                << fronts::to_string(gap.best_lower->principle) << ", "
                << gap.best_lower->trial << ")\n";
    else
      std::cout << "best_lower = none\n";
    if (gap.best_upper)
      std::cout << "best_upper = " << num(gap.best_upper->value) << " ("
                << fronts::to_string(gap.best_upper->principle) << ", "
                << gap.best_upper->trial << ")\n";
    else
      std::cout << "best_upper = none\n";
    std::cout << "gap = " << num(gap.gap) << "\n";
  }
  return 0;
}

int run_verify(const RunConfig& cfg) {
  std::vector<fronts::ReactionTerm> terms;
  for (const auto& spec : cfg.reactions)
    terms.push_back(fronts::make_reaction(spec));
  std::vector<ordered_json> reports(terms.size());
  auto one = [&](std::size_t i) {
    reports[i] =
        fronts::to_json(fronts::full_report(terms[i], std::max(cfg.c_tol, 1e-8)));
  };
  if (cfg.jobs > 1 && terms.size() > 1) {
    std::vector<std::future<void>> fs;
    for (std::size_t i = 0; i < terms.size(); ++i)
      fs.push_back(std::async(std::launch::async, one, i));
    for (auto& fu : fs) fu.get();
  } else {
    for (std::size_t i = 0; i < terms.size(); ++i) one(i);
  }
  ordered_json out;
  if (reports.size() == 1) {
    out = reports[0];
  } else {
    out = ordered_json::array();
    for (auto& r : reports) out.push_back(std::move(r));
  }
  write_output(cfg, out.dump(2) + "\n");
  bool all_pass = true;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& r = reports.size() == 1 ? out : out[i];
    if (!r["pass"].get<bool>()) all_pass = false;
    if (!cfg.output.empty())
      std::cout << r["reaction"].get<std::string>() << ": "
                << (r["pass"].get<bool>() ? "pass" : "fail") << "\n";
  }
  return all_pass ? 0 : 1;
}

int run_evolve(const RunConfig& cfg) {
  const auto f = fronts::make_reaction(*cfg.reaction);
  fronts::InitialCondition ic;
  if (cfg.ic == "step")
    ic = fronts::InitialCondition::step;
  else if (cfg.ic == "compact_bump")
    ic = fronts::InitialCondition::compact_bump;
  else
    throw fronts::InvalidArgument("--ic must be 'step' or 'compact_bump'");
  const auto ev = fronts::evolve(f, ic, cfg.length, cfg.dx, cfg.t_end);
  const double speed = fronts::spreading_speed(ev);
  if (!cfg.output.empty()) {
    std::ostringstream os;
    fronts::write_track_csv(ev, os);
    write_output(cfg, os.str());
  }
  if (cfg.json_output) {
    ordered_json j;
    j["command"] = "evolve";
    j["reaction"] = f.name;
    j["ic"] = cfg.ic;
    j["spreading_speed"] = speed;
    j["t_end"] = ev.t_end;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "spreading_speed = " << num(speed) << "\n";
  }
  return 0;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command != "verify" && !cfg.reaction)
    throw fronts::InvalidArgument("a reaction must be specified");
  if (cfg.command == "verify" && cfg.reactions.empty())
    throw fronts::InvalidArgument("a reaction must be specified");
  if (cfg.command == "speed") return run_speed(cfg);
  if (cfg.command == "bound") return run_bound(cfg);
  if (cfg.command == "optimize") return run_optimize(cfg);
  if (cfg.command == "verify") return run_verify(cfg);
  if (cfg.command == "evolve") return run_evolve(cfg);
  throw fronts::InvalidArgument("unknown command '" + cfg.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal front speeds, variational bounds, and checks for "
               "scalar reaction-diffusion equations"};
  app.require_subcommand(0, 1);

  std::string config_path;
  bool dump_config = false;
  app.add_option("--config", config_path, "RunConfig JSON file");
  app.add_flag("--dump-config", dump_config,
               "print the canonical JSON form of the run configuration and "
               "exit");

  struct Cli {
    std::vector<std::string> reactions;
    double c_tol = -1.0;
    double quad_rel_tol = -1.0;
    std::string principle, trial, ic, profile, output;
    int budget = -1, jobs = -1;
    double length = -1.0, dx = -1.0, t_end = -1.0;
    bool json = false;
  } cli;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--reaction", cli.reactions,
                    "reaction term: builtin name, name(param), or "
                    "poly:c1,c2,...");
    sub->add_option("--c-tol", cli.c_tol, "speed bisection tolerance");
    sub->add_option("--quad-tol", cli.quad_rel_tol,
                    "quadrature relative tolerance");
    sub->add_option("--output", cli.output, "output file path");
    sub->add_flag("--json", cli.json, "emit JSON");
  };

  auto* sp = app.add_subcommand("speed", "minimal front speed");
  add_common(sp);
  sp->add_option("--profile", cli.profile,
                 "also write a CSV profile: 'phase' (u,p) or 'front' (z,u,uz)");
  auto* bd = app.add_subcommand("bound", "evaluate one variational bound");
  add_common(bd);
  bd->add_option("--principle", cli.principle, "VP1 | VP2 | VP4");
  bd->add_option("--trial", cli.trial, "trial expression");
  auto* op = app.add_subcommand("optimize", "optimize bounds over families");
  add_common(op);
  op->add_option("--budget", cli.budget, "objective evaluations per family");
  op->add_option("--jobs", cli.jobs, "parallel family optimizations");
  auto* vf = app.add_subcommand("verify", "write a verification report");
  add_common(vf);
  vf->add_option("--jobs", cli.jobs, "parallel report generation");
  auto* ev = app.add_subcommand("evolve", "PDE run measuring the spreading speed");
  add_common(ev);
  ev->add_option("--ic", cli.ic, "initial condition: step | compact_bump");
  ev->add_option("--length", cli.length, "domain length");
  ev->add_option("--dx", cli.dx, "grid spacing");
  ev->add_option("--t-end", cli.t_end, "final time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is)
        throw fronts::InvalidArgument("cannot read config file '" +
                                      config_path + "'");
      ordered_json j;
      try {
        j = ordered_json::parse(is);
      } catch (const nlohmann::json::exception& e) {
        throw fronts::InvalidArgument(std::string("config parse error: ") +
                                      e.what());
      }
      cfg = config_from_json(j);
    }
    for (auto* sub : {sp, bd, op, vf, ev})
      if (sub->parsed()) cfg.command = sub->get_name();
    if (cfg.command.empty())
      throw fronts::InvalidArgument(
          "no subcommand given and no command in config");

    if (!cli.reactions.empty()) {
      cfg.reactions.clear();
      for (const auto& r : cli.reactions)
        cfg.reactions.push_back(parse_reaction_string(r));
      cfg.reaction = cfg.reactions[0];
    }
    if (cli.c_tol > 0) cfg.c_tol = cli.c_tol;
    if (cli.quad_rel_tol > 0) cfg.quad_rel_tol = cli.quad_rel_tol;
    if (!cli.principle.empty()) cfg.principle = cli.principle;
    if (!cli.trial.empty()) cfg.trial = cli.trial;
    if (cli.budget > 0) cfg.budget = cli.budget;
    if (cli.jobs > 0) cfg.jobs = cli.jobs;
    if (!cli.ic.empty()) cfg.ic = cli.ic;
    if (cli.length > 0) cfg.length = cli.length;
    if (cli.dx > 0) cfg.dx = cli.dx;
    if (cli.t_end > 0) cfg.t_end = cli.t_end;
    if (!cli.profile.empty()) cfg.profile = cli.profile;
    if (!cli.output.empty()) cfg.output = cli.output;
    if (cli.json) cfg.json_output = true;

    if (dump_config) {
      std::cout << config_to_json(cfg).dump(2) << "\n";
      return 0;
    }
    return dispatch(cfg);
  } catch (const fronts::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fronts::FrontsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include "steerdet/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "steerdet/entdetect.hpp"
#include "steerdet/error.hpp"
#include "steerdet/io.hpp"
#include "steerdet/selftest.hpp"
#include "steerdet/sweep.hpp"

namespace steerdet::cli {

using nlohmann::json;

namespace {

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InputError("invalid number '" + text + "' for " + what);
  return v;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects k=v, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    out[key] = parse_double(item.substr(eq + 1), "--param " + key);
  }
  return out;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw InputError("--grid expects NxM, got '" + text + "'");
  const double n = parse_double(text.substr(0, x), "--grid");
  const double m = parse_double(text.substr(x + 1), "--grid");
  if (n < 1 || m < 1 || n != static_cast<int>(n) || m != static_cast<int>(m))
    throw InputError("--grid dimensions must be positive integers");
  return {static_cast<int>(n), static_cast<int>(m)};
}

// Runs `body` against the configured output file, or `fallback` when none was given.
void with_output(const CliConfig& cfg, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (!cfg.output_path) {
    body(fallback);
    return;
  }
  std::ofstream file(*cfg.output_path, std::ios::binary);
  if (!file) throw InputError("cannot write output file '" + *cfg.output_path + "'");
  body(file);
  file.flush();
  if (!file) throw InputError("failed writing output file '" + *cfg.output_path + "'");
}

Family require_family(const CliConfig& cfg) {
  if (!cfg.family) throw InputError("--family is required");
  return *cfg.family;
}

}  // namespace

std::optional<CliConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"EPR steering detection through entanglement of mixed states", "steerdet"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string family_text, format_text = "json", grid_text;
  std::vector<std::string> param_items;
  std::optional<std::string> input, output;

  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", family_text, "werner, munro, werner_derivative, nmems, msms, one_way, amp_damp_bell, lossy_werner");
    sub->add_option("--param", param_items, "family parameter k=v (repeatable)");
  };
  auto add_mu = [&](CLI::App* sub) { sub->add_option("--mu", cfg.mu, "mixing weight in [0, 1/sqrt(3)]"); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", output, "output path (default stdout)"); };

  auto* verdict = app.add_subcommand("verdict", "steering and entanglement verdicts for a JSON state file");
  verdict->add_option("input", input, "state file")->required();
  add_mu(verdict);
  add_out(verdict);

  auto* family = app.add_subcommand("family", "write a family state as a JSON state file");
  add_family(family);
  add_out(family);

  auto* sweep = app.add_subcommand("sweep", "threshold of a detector along the free family parameter");
  add_family(sweep);
  add_mu(sweep);
  add_out(sweep);
  sweep->add_option("--detector", cfg.detector, "thm1, thm1_ba, thm1_ab, ls2, ls3, ppt, spa");
  sweep->add_option("--format", format_text, "json (threshold) or csv (pre-scan table)");
  sweep->add_option("--lo", cfg.lo, "lower end of the search bracket");
  sweep->add_option("--hi", cfg.hi, "upper end of the search bracket");
  sweep->add_option("--tol", cfg.tol, "bisection tolerance");

  auto* region = app.add_subcommand("region", "werner-derivative detection map as CSV");
  add_family(region);
  add_mu(region);
  add_out(region);
  region->add_option("--grid", grid_text, "alpha x theta grid, e.g. 201x201");
  region->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance matrix");
  selftest->add_option("--seed", cfg.seed, "seed for random-state checks");
  selftest->add_option("--threads", cfg.threads, "worker threads for the region scan");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }

  if (verdict->parsed()) cfg.command = Command::verdict;
  if (family->parsed()) cfg.command = Command::family;
  if (sweep->parsed()) cfg.command = Command::sweep;
  if (region->parsed()) cfg.command = Command::region;
  if (selftest->parsed()) cfg.command = Command::selftest;

  cfg.input_path = input;
  cfg.output_path = output;
  if (!family_text.empty()) cfg.family = family_from_name(family_text);
  cfg.params = parse_params(param_items);
  if (format_text == "json")
    cfg.format = Format::json;
  else if (format_text == "csv")
    cfg.format = Format::csv;
  else
    throw InputError("unknown format '" + format_text + "'");
  if (!grid_text.empty()) std::tie(cfg.grid_alpha, cfg.grid_theta) = parse_grid(grid_text);
  if (!(cfg.mu >= 0.0 && cfg.mu <= kMaxMu + kMuSlack)) throw InputError("--mu must lie in [0, 1/sqrt(3)]");
  return cfg;
}

int run_verdict(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  if (!cfg.input_path) throw InputError("verdict needs an input state file");
  const DensityMatrix rho = read_state_file(*cfg.input_path);
  const SteeringReport report = thm1_verdict(rho, cfg.mu);

  json j;
  j["dims"] = {rho.dims().a, rho.dims().b};
  j["steering"] = report;
  j["entanglement"]["ppt"] = ppt_report(rho);
  if (rho.dims() == BipartiteDims{2, 2}) {
    j["entanglement"]["spa"] = spa_report(rho);
    // SPA verdict on each steering map.
    for (Direction d : {Direction::BtoA, Direction::AtoB}) {
      j["steering_map_spa"][std::string(direction_name(d))] = spa_report(steering_map(rho, {cfg.mu, d}));
    }
  }
  with_output(cfg, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  return kExitOk;
}

int run_family(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  const DensityMatrix rho = make_family(FamilySpec{require_family(cfg), cfg.params});
  with_output(cfg, out, [&](std::ostream& o) { write_state_json(rho, o); });
  return kExitOk;
}

int run_sweep(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  const Family fam = require_family(cfg);
  const auto ranges = family_params(fam);
  std::vector<ParamRange> free;
  for (const auto& r : ranges)
    if (!cfg.params.count(r.name)) free.push_back(r);
  if (free.size() != 1) {
    throw InputError("sweep needs exactly one free parameter; fix the others with --param (" + std::to_string(free.size()) +
                     " free)");
  }
  const ParamRange& axis = free.front();
  const double lo = cfg.lo.value_or(axis.lo);
  const double hi = cfg.hi.value_or(axis.hi);
  const FamilySpec base{fam, cfg.params};
  const DetectorKind det = detector_from_name(cfg.detector);

  if (cfg.format == Format::csv) {
    const auto rows = prescan_table(base, axis.name, lo, hi, cfg.mu);
    with_output(cfg, out, [&](std::ostream& o) { write_prescan_csv(rows, o); });
    return kExitOk;
  }
  const ThresholdResult r = find_threshold(base, axis.name, Detector{det, cfg.mu}, lo, hi, cfg.tol);
  json j = r;
  j["family"] = family_name(fam);
  with_output(cfg, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  return kExitOk;
}

int run_region(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.family && *cfg.family != Family::werner_derivative) throw InputError("region scan supports werner_derivative only");
  const Axis alpha{"alpha", 0.0, 1.0, cfg.grid_alpha};
  const Axis theta{"theta", 0.0, std::numbers::pi / 4.0, cfg.grid_theta};
  const RegionGrid grid = region_scan(alpha, theta, cfg.mu, cfg.threads);
  with_output(cfg, out, [&](std::ostream& o) { write_region_csv(grid, o); });
  return kExitOk;
}

int run_selftest(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  SelftestOptions opts;
  opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  if (const char* env = std::getenv(kSelftestTolEnv); env && *env) {
    opts.threshold_tol = parse_double(env, kSelftestTolEnv);
    err << "note: threshold tolerance overridden to " << *opts.threshold_tol << " by " << kSelftestTolEnv << '\n';
  }
  const bool ok = print_results(run_acceptance(opts), out);
  return ok ? kExitOk : kExitInternal;
}

int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::verdict: return run_verdict(cfg, out, err);
      case Command::family: return run_family(cfg, out, err);
      case Command::sweep: return run_sweep(cfg, out, err);
      case Command::region: return run_region(cfg, out, err);
      case Command::selftest: return run_selftest(cfg, out, err);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ValidationError& e) {
    err << "error: invalid state: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const SearchError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<CliConfig> cfg;
  try {
    cfg = parse_args(args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  if (!cfg) return kExitOk;
  return run(*cfg, out, err);
}

}  // namespace steerdet::cli

// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lipderiv/envelopes.hpp"
#include "lipderiv/error.hpp"
#include "lipderiv/harness.hpp"
#include "lipderiv/io.hpp"
#include "lipderiv/linear_map.hpp"
#include "lipderiv/scales.hpp"
#include "lipderiv/zoo.hpp"

namespace {

using namespace lipderiv;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct RunConfig {
  std::string input;
  std::string values;
  std::string metric = "euclidean-2";
  RadiusGrid grid;
  double h = 0.05;
  std::optional<double> gamma;
  std::uint64_t seed = 7;
  std::string out;
  std::string summary;
  std::string lower_out;
  std::string report;
  std::vector<std::string> suites;
  std::vector<std::string> faults;
  std::vector<std::string> matrices;
  std::vector<std::string> tolerances;
  std::size_t random_spaces = 200;
  std::string field = "value";
  bool dual = false;
  std::string entry;
  double resolution = 1e-3;
};

std::string sibling(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

struct Loaded {
  SpacePtr space;
  io::PointCloud cloud;  // ids and values; coordinates only for embedded metrics
};

Loaded load_input(const RunConfig& c) {
  if (c.input.empty()) throw InputError("--input is required");
  Loaded l;
  const std::string text = io::read_file(c.input);
  if (c.metric == "matrix") {
    auto space = std::make_shared<const FiniteMetricSpace>(io::parse_distance_matrix(text, c.input));
    l.space = space;
    l.cloud.ids = space->ids();
    if (!c.values.empty()) {
      ScalarField g = io::parse_scalar_field(io::read_file(c.values), c.values, space);
      l.cloud.value_dim = 1;
      l.cloud.values = g.values();
    }
    return l;
  }
  l.cloud = io::parse_point_cloud(text, c.input);
  if (c.metric == "discrete") {
    l.space = std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::discrete(l.cloud.ids));
    return l;
  }
  const std::string prefix = "euclidean-";
  if (c.metric.rfind(prefix, 0) != 0)
    throw InputError("unknown metric '" + c.metric + "' (expected euclidean-<p>, discrete or matrix)");
  const PNorm p = parse_pnorm(c.metric.substr(prefix.size()));
  if (l.cloud.dim == 0) throw InputError(c.input + ": no coordinate columns (x1, x2, ...)");
  l.space = std::make_shared<const FiniteMetricSpace>(
      FiniteMetricSpace::from_embedding(l.cloud.ids, l.cloud.coords, l.cloud.dim, p));
  return l;
}

PNorm value_norm(const RunConfig& c) {
  const std::string prefix = "euclidean-";
  return c.metric.rfind(prefix, 0) == 0 ? parse_pnorm(c.metric.substr(prefix.size())) : PNorm::L2;
}

SampledMap load_map(const RunConfig& c) {
  Loaded l = load_input(c);
  if (l.cloud.value_dim == 0)
    throw InputError(c.metric == "matrix" ? "--values is required with --metric matrix"
                                          : c.input + ": no value column");
  return io::map_from_cloud(l.cloud, l.space, value_norm(c));
}

int cmd_profile(const RunConfig& c) {
  if (c.out.empty()) throw InputError("--out is required");
  c.grid.validate();
  SampledMap f = load_map(c);
  ScaleProfile p = scale_profile(f, c.grid);
  io::write_file_atomic(c.out, io::format_profile(f, p));
  io::write_file_atomic(c.summary.empty() ? sibling(c.out, ".summary.csv") : c.summary,
                        io::format_profile_summary(f, p));
  return kExitOk;
}

SuiteConfig suite_config(const RunConfig& c) {
  SuiteConfig s;
  s.suites = c.suites.empty() ? std::vector<std::string>{"all"} : c.suites;
  s.seed = c.seed;
  s.random_spaces = c.random_spaces;
  s.faults = {c.faults.begin(), c.faults.end()};
  for (const auto& m : c.matrices) s.matrices.push_back(LinearMapSpec::parse(m));
  for (const auto& t : c.tolerances) {
    auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("tolerance override must be name=value: " + t);
    s.tolerances[t.substr(0, eq)] = io::parse_number(t.substr(eq + 1));
  }
  return s;
}

int cmd_check(const RunConfig& c) {
  SuiteConfig s = suite_config(c);
  SuiteReport report = run_suite(s);
  std::cout << io::report_table(report);
  if (!c.report.empty()) io::write_file_atomic(c.report, io::report_json(report));
  return report.passed() ? kExitOk : kExitCheckFailed;
}

/// Largest nearest-neighbour distance: below it some balls hold only their centre.
double input_resolution(const FiniteMetricSpace& x) {
  double res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != i) nearest = std::min(nearest, x.distance(i, j));
    if (std::isfinite(nearest)) res = std::max(res, nearest);
  }
  return res;
}

int cmd_envelope(const RunConfig& c) {
  if (c.out.empty()) throw InputError("--out is required");
  if (!(c.h > 0.0)) throw InputError("--h must be positive");
  Loaded l = load_input(c);
  const double res = input_resolution(*l.space);
  if (c.h < res)
    throw InputError("--h " + io::format_number(c.h) + " is below the input resolution " + io::format_number(res));

  std::vector<double> values;
  if (c.field == "value") {
    if (l.cloud.value_dim != 1) throw InputError("envelope needs exactly one value column");
    values = l.cloud.values;
  } else {
    c.grid.validate();
    SampledMap f = io::map_from_cloud(l.cloud, l.space, value_norm(c));
    ScaleProfile p = scale_profile(f, c.grid);
    for (const auto& s : p.summary) {
      if (c.field == "lip") values.push_back(s.lip_hat);
      else if (c.field == "big") values.push_back(s.big_hat);
      else if (c.field == "loc") values.push_back(s.loc_hat);
      else throw InputError("unknown --field '" + c.field + "' (expected value, lip, big or loc)");
    }
  }
  ScalarField g(l.space, std::move(values));
  io::write_file_atomic(c.out, io::format_scalar_field(baire_upper(g, c.h)));
  if (c.dual)
    io::write_file_atomic(c.lower_out.empty() ? sibling(c.out, ".lower.csv") : c.lower_out,
                          io::format_scalar_field(baire_lower(g, c.h)));
  return kExitOk;
}

int cmd_sets(const RunConfig& c) {
  if (!c.gamma) throw InputError("--gamma is required");
  if (c.out.empty()) throw InputError("--out is required");
  c.grid.validate();
  SampledMap f = load_map(c);
  ScaleProfile p = scale_profile(f, c.grid);
  const double g = *c.gamma;
  std::string text = "id,lip_le_gamma,big_le_gamma,loc_le_gamma,lip_gt_gamma,big_gt_gamma,loc_gt_gamma\n";
  for (std::size_t i = 0; i < p.points; ++i) {
    const PointSummary& s = p.summary[i];
    const bool a = s.lip_hat <= g, b = s.big_hat <= g, l = s.loc_hat <= g;
    auto flag = [](bool v) { return v ? ",1" : ",0"; };
    text += f.domain().id(i) + flag(a) + flag(b) + flag(l) + flag(!a) + flag(!b) + flag(!l) + "\n";
  }
  io::write_file_atomic(c.out, text);
  return kExitOk;
}

int cmd_zoo_export(const RunConfig& c) {
  if (c.entry.empty()) throw InputError("--entry is required");
  if (c.out.empty()) throw InputError("--out is required");
  if (!(c.resolution > 0.0)) throw InputError("--resolution must be positive");
  ZooEntry e = make_entry(c.entry, c.resolution);
  io::write_file_atomic(c.out, io::format_point_cloud(e.map));
  return kExitOk;
}

void add_grid_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--rmax", c.grid.r_max, "Largest radius of the geometric grid")->capture_default_str();
  cmd->add_option("--q", c.grid.q, "Grid ratio in (0,1)")->capture_default_str();
  cmd->add_option("--steps", c.grid.steps, "Number of radii")->capture_default_str();
  cmd->add_option("--tail", c.grid.tail_window, "Radii in the divergence tail window")->capture_default_str();
}

void add_input_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--input", c.input, "Point cloud CSV, or distance-matrix CSV with --metric matrix");
  cmd->add_option("--metric", c.metric, "euclidean-<1|2|inf>, discrete or matrix")->capture_default_str();
  cmd->add_option("--values", c.values, "id,value CSV of map values for --metric matrix");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Lipschitz derivatives of sampled maps"};
  app.require_subcommand(1);
  // "--h" is the envelope scale, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "Config file (TOML/INI); flags override it")->envname("LIPDERIV_CONFIG");

  auto* profile = app.add_subcommand("profile", "Scale functionals on a radius grid");
  add_input_options(profile, c);
  add_grid_options(profile, c);
  profile->add_option("--out", c.out, "Profile CSV");
  profile->add_option("--summary", c.summary, "Per-point summary CSV (default <out>.summary.csv)");

  auto* check = app.add_subcommand("check", "Run theorem suites");
  check->add_option("--suite", c.suites, "Suite names, or all (default)");
  check->add_option("--seed", c.seed, "Seed for random spaces")->capture_default_str();
  check->add_option("--inject-fault", c.faults, "Perturb a check to self-test failure reporting");
  check->add_option("--matrix", c.matrices, "Matrix \"a,b;c,d\" for the frechet suite");
  check->add_option("--tolerance", c.tolerances, "Override as check-name-prefix=value");
  check->add_option("--random-spaces", c.random_spaces, "Random spaces per sweep")->capture_default_str();
  check->add_option("--report", c.report, "JSON report path");

  auto* envelope = app.add_subcommand("envelope", "Upper (and lower) Baire envelopes at scale h");
  add_input_options(envelope, c);
  add_grid_options(envelope, c);
  envelope->add_option("--h", c.h, "Envelope scale")->capture_default_str();
  envelope->add_option("--field", c.field, "value, or lip/big/loc from a profile")->capture_default_str();
  envelope->add_flag("--dual", c.dual, "Also write the lower envelope");
  envelope->add_option("--out", c.out, "Upper envelope CSV");
  envelope->add_option("--out-lower", c.lower_out, "Lower envelope CSV (default <out>.lower.csv)");

  auto* sets = app.add_subcommand("sets", "Threshold membership of the derivative estimates");
  add_input_options(sets, c);
  add_grid_options(sets, c);
  sets->add_option("--gamma", c.gamma, "Threshold");
  sets->add_option("--out", c.out, "Membership CSV");

  auto* zoo = app.add_subcommand("zoo", "Built-in test functions");
  zoo->require_subcommand(1);
  auto* zoo_export = zoo->add_subcommand("export", "Write a sampled entry as a point cloud");
  zoo_export->add_option("--entry", c.entry, "Entry name");
  zoo_export->add_option("--resolution", c.resolution, "Sampling step")->capture_default_str();
  zoo_export->add_option("--out", c.out, "Point cloud CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*profile) return cmd_profile(c);
    if (*check) return cmd_check(c);
    if (*envelope) return cmd_envelope(c);
    if (*sets) return cmd_sets(c);
    if (*zoo_export) return cmd_zoo_export(c);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

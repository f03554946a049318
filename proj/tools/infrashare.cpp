// Copyright 2026 The infrashare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// infrashare command-line front end.
//
//   infrashare run <config.json>       run an experiment config
//   infrashare preset <fig2..fig9>     run a shipped preset
//   infrashare validate <config.json>  Monte Carlo cross-check of a config
//
// Output goes to --out, else the config's output.path, else stdout. Relative
// paths are resolved against $INFRASHARE_OUT_DIR when it is set. Failures
// print a JSON error object on stderr and exit nonzero.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "infrashare/config.hpp"
#include "infrashare/errors.hpp"
#include "infrashare/experiment.hpp"
#include "infrashare/result_table.hpp"

namespace {

using namespace infrashare;

struct Options {
  std::string target;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string out;
  std::string format;
};

std::string resolve_output(const std::string& path) {
  if (path.empty()) return path;
  const std::filesystem::path p(path);
  const char* dir = std::getenv("INFRASHARE_OUT_DIR");
  if (p.is_relative() && dir && *dir) return (std::filesystem::path(dir) / p).string();
  return path;
}

config::OutputFormat choose_format(const Options& o, const config::ExperimentConfig& c,
                                   const std::string& path) {
  if (!o.format.empty()) return config::parse_format(o.format);
  if (c.format) return *c.format;
  if (std::filesystem::path(path).extension() == ".json") return config::OutputFormat::Json;
  return config::OutputFormat::Csv;
}

int finish(const Options& o, const config::ExperimentConfig& c, const ResultTable& table) {
  const std::string path = resolve_output(o.out.empty() ? c.output : o.out);
  const auto format = choose_format(o, c, path);
  if (path.empty()) {
    emit(table, format, std::cout);
  } else {
    emit(table, format, path);
    std::cerr << "wrote " << path << "\n";
  }
  return 0;
}

int report(const std::string& type, const std::string& message, const std::string& field = {}) {
  nlohmann::json err{{"error", {{"type", type}, {"message", message}}}};
  if (!field.empty()) err["error"]["field"] = field;
  std::cerr << err.dump() << "\n";
  return 1;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "override simulation.seed");
  cmd->add_option("--trials", o.trials, "override simulation.trials")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output file (default: config output.path or stdout)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage, power and market experiments for shared mobile infrastructure"};
  app.set_version_flag("--version", std::string(INFRASHARE_VERSION));
  app.require_subcommand(1);

  Options o;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", o.target, "path to a JSON config")->required();
  add_common(run, o);

  auto* preset = app.add_subcommand("preset", "run a shipped preset (fig2..fig9)");
  preset->add_option("name", o.target, "preset name")
      ->required()
      ->check(CLI::IsMember(experiment::preset_names()));
  add_common(preset, o);

  auto* validate = app.add_subcommand("validate", "Monte Carlo cross-check of a config");
  validate->add_option("config", o.target, "path to a JSON config")->required();
  add_common(validate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("usage", e.what());
    return 2;
  }

  try {
    config::ExperimentConfig c = preset->parsed() ? experiment::load_preset(o.target)
                                                  : config::load_config(o.target);
    c = config::with_overrides(c, o.seed, o.trials);
    const ResultTable table =
        validate->parsed() ? experiment::run_validation(c) : experiment::run_experiment(c);
    return finish(o, c, table);
  } catch (const ConfigError& e) {
    return report("config", e.what(), e.path());
  } catch (const Infeasible& e) {
    return report("infeasible", e.what());
  } catch (const ParameterError& e) {
    return report("parameter", e.what());
  } catch (const UnimplementedModel& e) {
    return report("unimplemented", e.what());
  } catch (const std::exception& e) {
    return report("runtime", e.what());
  }
}

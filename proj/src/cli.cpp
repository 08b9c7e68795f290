// Copyright 2026 The Obfuskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "obfuskit/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "obfuskit/dataset.hpp"
#include "obfuskit/harness/config.hpp"
#include "obfuskit/harness/experiment.hpp"
#include "obfuskit/model.hpp"
#include "obfuskit/obfuscate.hpp"

namespace obfuskit {

namespace {

using nlohmann::json;

struct ObfuscateArgs {
  std::string in_path;
  std::string out_path;
  std::string mode;
  double r = 0.0;
  double sigma = 0.0;
  int group_class = -1;  // <0 means whole dataset in group mode
  uint64_t seed = 0;
};

void cmd_obfuscate(const ObfuscateArgs& args) {
  if (!(args.sigma >= 0)) throw ConfigError("sigma: must be >= 0");
  Dataset data = load_csv(args.in_path);

  Dataset out;
  if (args.mode == "individual") {
    if (!(args.r >= 0 && args.r <= 1))
      throw ConfigError("r: must be in [0, 1] for individual mode");
    IndividualParams params{args.r, args.sigma};
    out = obfuscate_dataset_individual(data, SensitiveSelection::all(data),
                                       params, args.seed);
  } else if (args.mode == "group") {
    if (!(args.r >= 0)) throw ConfigError("r: must be >= 0 for group mode");
    GroupParams params{args.r, args.sigma};
    GroupSpec spec = args.group_class >= 0
                         ? GroupSpec::by_label(args.group_class)
                         : GroupSpec::whole();
    out = obfuscate_dataset_groups(data, {spec}, params, args.seed);
  } else {
    throw ConfigError("mode: expected 'individual' or 'group'");
  }
  save_csv(out, args.out_path);
  std::cout << "wrote " << out.size() << " samples to " << args.out_path
            << "\n";
}

struct TrainArgs {
  std::string data_path;
  std::string spec_path;
  std::string out_path;
};

void cmd_train(const TrainArgs& args) {
  Dataset data = load_csv(args.data_path);

  std::ifstream in(args.spec_path);
  if (!in) throw std::runtime_error("spec: cannot open " + args.spec_path);
  std::stringstream ss;
  ss << in.rdbuf();
  TrainSpec spec = parse_train_spec(ss.str());

  TrainConfig tc = spec.train;
  tc.seed = spec.seed;
  ModelSpec resolved =
      spec.model.resolve(data.dim, data.num_classes, data.domain);
  Model model = train(init_model(resolved, spec.seed), data, tc);
  save_model(model, args.out_path);
  std::cout << "trained model: train accuracy " << accuracy(model, data)
            << ", saved to " << args.out_path << "\n";
}

struct AttackArgs {
  std::string scenario;
  std::string config_path;
  std::string out_override;
};

void cmd_attack(const AttackArgs& args) {
  ExperimentConfig cfg = load_experiment_config(args.config_path);
  if (scenario_from_name(args.scenario) != cfg.scenario)
    throw ConfigError("scenario: '" + args.scenario +
                      "' does not match config scenario '" +
                      scenario_name(cfg.scenario) + "'");
  if (!args.out_override.empty()) {
    cfg.output_dir = args.out_override;
    json echo = json::parse(cfg.echo);
    echo["output_dir"] = cfg.output_dir;
    cfg.echo = echo.dump();
  }

  RunReport report = run_experiment(cfg);
  write_run_outputs(report, cfg);
  std::cout << "wrote " << cfg.output_dir << "/report.json ("
            << report.entries.size() << " sweep entries, "
            << report.wall_clock_sec << " s)\n";
}

struct ReportArgs {
  std::string run_dir;
  std::string format = "json";
};

void cmd_report(const ReportArgs& args) {
  std::filesystem::path path =
      std::filesystem::path(args.run_dir) / "report.json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("report: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();

  if (args.format == "json") {
    std::cout << ss.str();
    return;
  }

  json j = json::parse(ss.str());
  std::cout << "r,delta_acc,f1,val_acc\n";
  for (const json& entry : j.at("entries")) {
    const json& rep = entry.at("report");
    std::cout << entry.at("r").get<double>() << ","
              << entry.at("delta_acc").get<double>() << ",";
    if (rep.contains("f1"))
      std::cout << rep.at("f1").get<double>();
    std::cout << ",";
    if (rep.at("aux").contains("val_acc"))
      std::cout << rep.at("aux").at("val_acc").get<double>();
    std::cout << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"obfuskit: training-data obfuscation workbench"};
  app.require_subcommand(1);

  ObfuscateArgs ob;
  CLI::App* obfuscate_cmd =
      app.add_subcommand("obfuscate", "Obfuscate a CSV dataset");
  obfuscate_cmd->add_option("--in", ob.in_path, "input dataset CSV")
      ->required();
  obfuscate_cmd->add_option("--out", ob.out_path, "output dataset CSV")
      ->required();
  obfuscate_cmd
      ->add_option("--mode", ob.mode, "individual (noise) or group (augment)")
      ->required();
  obfuscate_cmd
      ->add_option("--r", ob.r,
                   "coordinate ratio (individual) / added-sample ratio (group)")
      ->required();
  obfuscate_cmd->add_option("--sigma", ob.sigma, "Gaussian noise scale")
      ->required();
  obfuscate_cmd->add_option("--class", ob.group_class,
                            "group mode: restrict to one class label");
  obfuscate_cmd->add_option("--seed", ob.seed, "noise seed");

  TrainArgs tr;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a model on a CSV");
  train_cmd->add_option("--data", tr.data_path, "dataset CSV")->required();
  train_cmd->add_option("--spec", tr.spec_path, "model+train JSON spec")
      ->required();
  train_cmd->add_option("--out", tr.out_path, "output model JSON")->required();

  AttackArgs at;
  CLI::App* attack_cmd =
      app.add_subcommand("attack", "Run an attack/defense experiment");
  attack_cmd->add_option("--scenario", at.scenario,
                         "memorization|membership|inversion|property")
      ->required();
  attack_cmd->add_option("--config", at.config_path, "experiment JSON config")
      ->required();
  attack_cmd->add_option("--out", at.out_override, "override output directory");

  ReportArgs re;
  CLI::App* report_cmd =
      app.add_subcommand("report", "Print a finished run's report");
  report_cmd->add_option("--run", re.run_dir, "run output directory")
      ->required();
  report_cmd->add_option("--format", re.format, "json or csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (obfuscate_cmd->parsed()) cmd_obfuscate(ob);
    if (train_cmd->parsed()) cmd_train(tr);
    if (attack_cmd->parsed()) cmd_attack(at);
    if (report_cmd->parsed()) {
      if (re.format != "json" && re.format != "csv")
        throw ConfigError("format: expected 'json' or 'csv'");
      cmd_report(re);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace obfuskit

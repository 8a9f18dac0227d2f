#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "quanneal/errors.hpp"
#include "runner/config.hpp"
#include "runner/runner.hpp"

namespace {

using quanneal::runner::ExperimentKind;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = 0;
  std::string format = "csv";
};

void emit_error(const std::string& kind, const std::vector<std::string>& messages) {
  nlohmann::ordered_json doc;
  doc["error"] = kind;
  doc["messages"] = messages;
  std::cerr << doc.dump(2) << std::endl;
}

int run_command(ExperimentKind kind, const CommonArgs& args) {
  std::string text;
  {
    std::ifstream in(args.config_path);
    if (!in) {
      emit_error("config", {"cannot read config file: " + args.config_path});
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  try {
    auto config = quanneal::runner::parse_config(text, kind);
    if (args.seed_given) config.seed = args.seed;
    quanneal::runner::resolve(config);

    quanneal::runner::RunOptions options;
    if (!args.out_dir.empty()) {
      options.out_dir = args.out_dir;
    } else if (!config.out_dir.empty()) {
      options.out_dir = config.out_dir;
    } else {
      emit_error("config", {"no output directory: set 'out_dir' in the config or pass --out"});
      return 2;
    }
    options.workers = args.workers;
    options.format = args.format == "json" ? quanneal::runner::RunOptions::Format::json
                                           : quanneal::runner::RunOptions::Format::csv;
    quanneal::runner::validate_resources(config);
    quanneal::runner::run_experiment(config, options);
    return 0;
  } catch (const quanneal::runner::ConfigError& e) {
    emit_error("config", e.messages());
    return 2;
  } catch (const quanneal::ResourceLimitError& e) {
    emit_error("resource_limit", {e.what()});
    return 3;
  } catch (const std::exception& e) {
    emit_error("internal", {e.what()});
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digitized quantum annealing simulator and scaling benchmark"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* description;
    ExperimentKind kind;
  };
  const Sub subs[] = {
      {"kz-bench", "Defect-density scaling series and threshold-depth report", ExperimentKind::kz_bench},
      {"noise-sweep", "Trajectory-noise curves across a grid of noise scale factors",
       ExperimentKind::noise_sweep},
      {"trotter-conv", "Per-time-step series against the near-continuum reference",
       ExperimentKind::trotter_convergence},
      {"anneal-opt", "Residual-energy curves and optimal time step on disordered instances",
       ExperimentKind::anneal_opt},
      {"spectrum", "Instantaneous spectrum slices and minimum parity gap", ExperimentKind::spectrum_scan},
  };

  std::map<std::string, std::pair<ExperimentKind, CommonArgs>> parsed;
  for (const auto& sub : subs) {
    auto* cmd = app.add_subcommand(sub.name, sub.description);
    auto& args = parsed[sub.name];
    args.first = sub.kind;
    cmd->add_option("--config", args.second.config_path, "Experiment config (JSON)")
        ->required();
    cmd->add_option("--out", args.second.out_dir, "Output directory (overrides config out_dir)");
    cmd->add_option("--seed", args.second.seed, "Override the config seed")
        ->each([&args](const std::string&) { args.second.seed_given = true; });
    cmd->add_option("--workers", args.second.workers, "Worker threads (default: available parallelism)");
    cmd->add_option("--format", args.second.format, "Series file format")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  CLI11_PARSE(app, argc, argv);

  for (const auto& [name, entry] : parsed) {
    if (app.got_subcommand(name)) return run_command(entry.first, entry.second);
  }
  return 2;
}

#pragma once

#include <filesystem>

#include "config.hpp"

namespace quanneal::runner {

struct RunOptions {
  std::filesystem::path out_dir;
  int workers = 0;  // 0 = available parallelism
  enum class Format { csv, json } format = Format::csv;
};

/// Executes the experiment and writes its artifact files (series, summary
/// report, SVG chart, resolved config) into out_dir. Outputs are a pure
/// function of the resolved config, so reruns are byte-identical.
void run_experiment(const ExperimentConfig& config, const RunOptions& options);

}  // namespace quanneal::runner

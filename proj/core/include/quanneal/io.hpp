#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quanneal/analysis.hpp"
#include "quanneal/exact.hpp"

namespace quanneal {

std::string_view toolkit_version();

/// Shortest round-trip decimal rendering (std::to_chars); stable across runs,
/// no locale dependence.
std::string format_double(double value);

/// FNV-1a 64-bit hash, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// Provenance stamp embedded in every artifact file.
struct ArtifactMeta {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version{toolkit_version()};
  // per-file additions (noise scale factor, instance seed, ...)
  std::vector<std::pair<std::string, std::string>> extras;

  std::vector<std::pair<std::string, std::string>> comment_lines() const;
};

struct SeriesRow {
  double t_f = 0.0;
  int n_steps = 0;
  double dt = 0.0;
  std::string observable;
  double mean = 0.0;
  double std_err = 0.0;
};

/// CSV with the fixed header t_f,n_steps,dt,observable,mean,std_err; the
/// meta stamp goes into leading '#' comment lines.
void write_series_csv(std::ostream& os, std::span<const SeriesRow> rows, const ArtifactMeta& meta);

std::vector<SeriesRow> series_rows(const ScalingSeries& series, std::string_view observable);

/// CSV with header s,level_index,energy_rel_ground,parity.
void write_spectrum_csv(std::ostream& os, std::span<const SpectrumSlice> slices,
                        const ArtifactMeta& meta);

/// Minimal self-contained SVG line chart; log-log axes for scaling plots.
struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};
void write_line_chart_svg(std::ostream& os, std::string_view title, std::string_view x_label,
                          std::string_view y_label, std::span<const ChartSeries> series,
                          bool log_x, bool log_y, const ArtifactMeta& meta);

/// Writes to <path>.tmp and renames, so partial failures never leave a
/// truncated artifact behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace quanneal

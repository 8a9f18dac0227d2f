#include "quanneal/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace quanneal {

std::string_view toolkit_version() {
#ifdef QUANNEAL_VERSION_STRING
  return QUANNEAL_VERSION_STRING;
#else
  return "0.0.0";
#endif
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> ArtifactMeta::comment_lines() const {
  std::vector<std::pair<std::string, std::string>> lines = {
      {"config_hash", config_hash}, {"seed", std::to_string(seed)}, {"version", version}};
  lines.insert(lines.end(), extras.begin(), extras.end());
  return lines;
}

namespace {

void write_meta_comments(std::ostream& os, const ArtifactMeta& meta) {
  for (const auto& [key, value] : meta.comment_lines()) os << "# " << key << "=" << value << "\n";
}

}  // namespace

void write_series_csv(std::ostream& os, std::span<const SeriesRow> rows, const ArtifactMeta& meta) {
  write_meta_comments(os, meta);
  os << "t_f,n_steps,dt,observable,mean,std_err\n";
  for (const auto& r : rows) {
    os << format_double(r.t_f) << ',' << r.n_steps << ',' << format_double(r.dt) << ','
       << r.observable << ',' << format_double(r.mean) << ',' << format_double(r.std_err) << '\n';
  }
}

std::vector<SeriesRow> series_rows(const ScalingSeries& series, std::string_view observable) {
  std::vector<SeriesRow> rows;
  rows.reserve(series.points.size());
  for (const auto& p : series.points) {
    rows.push_back({p.t_f, p.n_steps, series.dt, std::string(observable), p.n_def, p.std_err});
  }
  return rows;
}

void write_spectrum_csv(std::ostream& os, std::span<const SpectrumSlice> slices,
                        const ArtifactMeta& meta) {
  write_meta_comments(os, meta);
  os << "s,level_index,energy_rel_ground,parity\n";
  for (const auto& slice : slices) {
    const double e0 = slice.energies.empty() ? 0.0 : slice.energies.front();
    for (std::size_t l = 0; l < slice.energies.size(); ++l) {
      os << format_double(slice.s) << ',' << l << ',' << format_double(slice.energies[l] - e0)
         << ',' << slice.parities[l] << '\n';
    }
  }
}

namespace {

double axis_transform(double v, bool log_scale) { return log_scale ? std::log10(v) : v; }

std::string svg_num(double v) {
  // fixed 2-decimal pixel coordinates keep files small and deterministic
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace

void write_line_chart_svg(std::ostream& os, std::string_view title, std::string_view x_label,
                          std::string_view y_label, std::span<const ChartSeries> series,
                          bool log_x, bool log_y, const ArtifactMeta& meta) {
  constexpr double width = 720, height = 480;
  constexpr double ml = 70, mr = 150, mt = 40, mb = 50;
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if ((log_x && x <= 0) || (log_y && y <= 0)) continue;
      const double tx = axis_transform(x, log_x);
      const double ty = axis_transform(y, log_y);
      if (!any) {
        x_min = x_max = tx;
        y_min = y_max = ty;
        any = true;
      } else {
        x_min = std::min(x_min, tx);
        x_max = std::max(x_max, tx);
        y_min = std::min(y_min, ty);
        y_max = std::max(y_max, ty);
      }
    }
  }
  if (!any) {
    x_min = y_min = 0;
    x_max = y_max = 1;
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;

  auto px = [&](double x) { return ml + (axis_transform(x, log_x) - x_min) / (x_max - x_min) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (axis_transform(y, log_y) - y_min) / (y_max - y_min) * (height - mt - mb); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<!--";
  for (const auto& [key, value] : meta.comment_lines()) os << ' ' << key << '=' << value;
  os << " -->\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
        "font-family=\"sans-serif\">"
     << title << "</text>\n";
  // frame
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (width - ml - mr)
     << "\" height=\"" << (height - mt - mb)
     << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  // axis labels with ranges
  os << "<text x=\"" << (ml + (width - ml - mr) / 2) << "\" y=\"" << (height - 12)
     << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label
     << (log_x ? " (log)" : "") << "</text>\n";
  os << "<text x=\"18\" y=\"" << (mt + (height - mt - mb) / 2)
     << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 18 "
     << (mt + (height - mt - mb) / 2) << ")\">" << y_label << (log_y ? " (log)" : "") << "</text>\n";
  // corner tick labels
  auto tick = [&](double vx, double vy, std::string_view anchor, double x, double y) {
    os << "<text x=\"" << svg_num(x) << "\" y=\"" << svg_num(y) << "\" text-anchor=\"" << anchor
       << "\" font-size=\"11\" font-family=\"sans-serif\">(" << format_double(vx) << ", "
       << format_double(vy) << ")</text>\n";
  };
  const double x_lo = log_x ? std::pow(10.0, x_min) : x_min;
  const double x_hi = log_x ? std::pow(10.0, x_max) : x_max;
  const double y_lo = log_y ? std::pow(10.0, y_min) : y_min;
  const double y_hi = log_y ? std::pow(10.0, y_max) : y_max;
  tick(x_lo, y_lo, "start", ml, height - mb + 16);
  tick(x_hi, y_hi, "end", width - mr, mt - 6);

  int color = 0;
  double legend_y = mt + 10;
  for (const auto& s : series) {
    const char* stroke = palette[color % 8];
    std::ostringstream path;
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if ((log_x && x <= 0) || (log_y && y <= 0)) continue;
      path << (first ? "M" : " L") << svg_num(px(x)) << ' ' << svg_num(py(y));
      first = false;
    }
    os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << stroke
       << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << (width - mr + 8) << "\" y=\"" << svg_num(legend_y)
       << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" << stroke << "\">" << s.label
       << "</text>\n";
    legend_y += 16;
    ++color;
  }
  os << "</svg>\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace quanneal

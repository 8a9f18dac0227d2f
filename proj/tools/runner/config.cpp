#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "quanneal/errors.hpp"
#include "quanneal/io.hpp"

namespace quanneal::runner {

using nlohmann::json;

std::string ConfigError::join(const std::vector<std::string>& msgs) {
  std::ostringstream os;
  os << "invalid configuration:";
  for (const auto& m : msgs) os << "\n  - " << m;
  return os.str();
}

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kz_bench: return "kz_bench";
    case ExperimentKind::noise_sweep: return "noise_sweep";
    case ExperimentKind::trotter_convergence: return "trotter_convergence";
    case ExperimentKind::anneal_opt: return "anneal_opt";
    case ExperimentKind::spectrum_scan: return "spectrum_scan";
  }
  throw std::invalid_argument("unknown experiment kind");
}

ExperimentKind experiment_from_name(std::string_view name) {
  for (ExperimentKind k : {ExperimentKind::kz_bench, ExperimentKind::noise_sweep,
                           ExperimentKind::trotter_convergence, ExperimentKind::anneal_opt,
                           ExperimentKind::spectrum_scan}) {
    if (experiment_name(k) == name) return k;
  }
  throw ConfigError({"unknown experiment: " + std::string(name)});
}

namespace {

class Checker {
 public:
  std::vector<std::string> errors;

  void expect_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed,
                   const std::set<std::string>& required) {
    if (!obj.is_object()) {
      errors.push_back(path + " must be an object");
      return;
    }
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) errors.push_back(path + ": unknown key '" + key + "'");
    }
    for (const auto& key : required) {
      if (!obj.contains(key)) errors.push_back(path + ": missing required key '" + key + "'");
    }
  }

  template <typename T>
  std::optional<T> get(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
    try {
      return obj.at(key).get<T>();
    } catch (const json::exception&) {
      errors.push_back(path + "." + key + " has the wrong type");
      return std::nullopt;
    }
  }

  template <typename T>
  T get_or(const json& obj, const std::string& path, const std::string& key, T fallback) {
    auto v = get<T>(obj, path, key);
    return v ? *v : fallback;
  }
};

void parse_lattice(Checker& ck, const json& doc, ExperimentConfig& cfg) {
  if (!doc.contains("lattice")) return;
  const json& lat = doc.at("lattice");
  const auto geom = ck.get<std::string>(lat, "lattice", "geometry");
  if (!geom) {
    ck.errors.push_back("lattice: missing required key 'geometry'");
    return;
  }
  try {
    cfg.lattice.geometry = geometry_from_name(*geom);
  } catch (const std::invalid_argument& e) {
    ck.errors.push_back(std::string("lattice: ") + e.what());
    return;
  }
  switch (cfg.lattice.geometry) {
    case Geometry::open_chain:
    case Geometry::periodic_chain:
      ck.expect_keys(lat, "lattice", {"geometry", "n"}, {"geometry", "n"});
      cfg.lattice.n = ck.get_or<int>(lat, "lattice", "n", 0);
      break;
    case Geometry::square:
      ck.expect_keys(lat, "lattice", {"geometry", "rows", "cols"}, {"geometry", "rows", "cols"});
      cfg.lattice.rows = ck.get_or<int>(lat, "lattice", "rows", 0);
      cfg.lattice.cols = ck.get_or<int>(lat, "lattice", "cols", 0);
      break;
    case Geometry::heavy_hex:
      ck.expect_keys(lat, "lattice", {"geometry", "cell_rows", "cell_cols", "device"}, {"geometry"});
      if (lat.contains("device")) {
        if (lat.contains("cell_rows") || lat.contains("cell_cols"))
          ck.errors.push_back("lattice: 'device' excludes 'cell_rows'/'cell_cols'");
        const auto dev = ck.get_or<std::string>(lat, "lattice", "device", "");
        if (dev == "device_127") {
          cfg.lattice.device = HeavyHexDevice::device_127;
        } else if (dev == "device_133") {
          cfg.lattice.device = HeavyHexDevice::device_133;
        } else {
          ck.errors.push_back("lattice.device must be 'device_127' or 'device_133'");
        }
      } else {
        if (!lat.contains("cell_rows") || !lat.contains("cell_cols"))
          ck.errors.push_back("lattice: heavy_hex needs 'device' or 'cell_rows'+'cell_cols'");
        cfg.lattice.rows = ck.get_or<int>(lat, "lattice", "cell_rows", 0);
        cfg.lattice.cols = ck.get_or<int>(lat, "lattice", "cell_cols", 0);
      }
      break;
  }
}

void parse_couplings(Checker& ck, const json& doc, ExperimentConfig& cfg, bool allow_seed_list) {
  if (!doc.contains("couplings")) return;
  const json& cpl = doc.at("couplings");
  const auto kind = ck.get<std::string>(cpl, "couplings", "kind");
  if (!kind) {
    ck.errors.push_back("couplings: missing required key 'kind'");
    return;
  }
  if (*kind == "uniform") {
    ck.expect_keys(cpl, "couplings", {"kind", "j"}, {"kind"});
    cfg.coupling_kind = CouplingKind::uniform;
    cfg.coupling_j = ck.get_or<double>(cpl, "couplings", "j", 1.0);
  } else if (*kind == "disordered") {
    cfg.coupling_kind = CouplingKind::disordered;
    if (allow_seed_list) {
      ck.expect_keys(cpl, "couplings", {"kind", "seed", "seeds"}, {"kind"});
      if (cpl.contains("seeds")) {
        cfg.coupling_seeds = ck.get_or<std::vector<std::uint64_t>>(cpl, "couplings", "seeds", {});
      } else if (cpl.contains("seed")) {
        cfg.coupling_seeds = {ck.get_or<std::uint64_t>(cpl, "couplings", "seed", 0)};
      } else {
        ck.errors.push_back("couplings: disordered needs 'seed' or 'seeds'");
      }
      if (cfg.coupling_seeds.empty() && cpl.contains("seeds"))
        ck.errors.push_back("couplings.seeds must not be empty");
    } else {
      ck.expect_keys(cpl, "couplings", {"kind", "seed"}, {"kind", "seed"});
      if (cpl.contains("seed"))
        cfg.coupling_seeds = {ck.get_or<std::uint64_t>(cpl, "couplings", "seed", 0)};
    }
  } else {
    ck.errors.push_back("couplings.kind must be 'uniform' or 'disordered'");
  }
}

void parse_noise(Checker& ck, const json& doc, ExperimentConfig& cfg, bool eta_grid_required) {
  if (!doc.contains("noise") || doc.at("noise").is_null()) return;
  const json& noi = doc.at("noise");
  std::set<std::string> allowed = {"base", "n_traj", "shots_per_traj"};
  std::set<std::string> required = {"base", "n_traj", "shots_per_traj"};
  if (eta_grid_required) {
    allowed.insert("eta_grid");
    required.insert("eta_grid");
  } else {
    allowed.insert("eta");
    required.insert("eta");
  }
  ck.expect_keys(noi, "noise", allowed, required);

  NoiseSpec spec;
  if (noi.contains("base")) {
    const json& base = noi.at("base");
    if (base.is_string()) {
      if (base.get<std::string>() == "device_average") {
        spec.base = default_sherbrooke_model();
      } else {
        ck.errors.push_back("noise.base must be 'device_average' or a model object");
      }
    } else if (base.is_object()) {
      try {
        spec.base = noise_model_from_json(base.dump());
      } catch (const std::exception& e) {
        ck.errors.push_back(std::string("noise.base: ") + e.what());
      }
    } else {
      ck.errors.push_back("noise.base must be 'device_average' or a model object");
    }
  }
  if (eta_grid_required) {
    spec.etas = ck.get_or<std::vector<double>>(noi, "noise", "eta_grid", {});
    if (noi.contains("eta_grid") && spec.etas.empty())
      ck.errors.push_back("noise.eta_grid must not be empty");
  } else {
    spec.etas = {ck.get_or<double>(noi, "noise", "eta", 1.0)};
  }
  for (double eta : spec.etas) {
    if (!(eta > 0.0)) ck.errors.push_back("noise eta values must be positive");
  }
  spec.n_traj = ck.get_or<int>(noi, "noise", "n_traj", 0);
  spec.shots_per_traj = ck.get_or<int>(noi, "noise", "shots_per_traj", 0);
  if (spec.n_traj < 1) ck.errors.push_back("noise.n_traj must be at least 1");
  if (spec.shots_per_traj < 1) ck.errors.push_back("noise.shots_per_traj must be at least 1");
  cfg.noise = std::move(spec);
}

void parse_steps(Checker& ck, const json& doc, ExperimentConfig& cfg) {
  const bool has_max = doc.contains("max_steps");
  const bool has_list = doc.contains("steps");
  if (has_max == has_list) {
    ck.errors.push_back("exactly one of 'max_steps' or 'steps' is required");
    return;
  }
  if (has_max) {
    const int max_steps = ck.get_or<int>(doc, "config", "max_steps", 0);
    if (max_steps < 1) {
      ck.errors.push_back("max_steps must be at least 1");
      return;
    }
    cfg.steps.resize(static_cast<std::size_t>(max_steps));
    for (int i = 0; i < max_steps; ++i) cfg.steps[static_cast<std::size_t>(i)] = i + 1;
  } else {
    cfg.steps = ck.get_or<std::vector<int>>(doc, "config", "steps", {});
    if (cfg.steps.empty()) ck.errors.push_back("steps must not be empty");
    for (int s : cfg.steps)
      if (s < 1) ck.errors.push_back("steps entries must be at least 1");
    if (!std::is_sorted(cfg.steps.begin(), cfg.steps.end()) ||
        std::adjacent_find(cfg.steps.begin(), cfg.steps.end()) != cfg.steps.end())
      ck.errors.push_back("steps must be strictly increasing");
  }
}

void parse_analysis(Checker& ck, const json& doc, ExperimentConfig& cfg) {
  if (!doc.contains("analysis")) return;
  const json& an = doc.at("analysis");
  ck.expect_keys(an, "analysis", {"reference_exponent", "delta", "calib_points", "fit_window"}, {});
  cfg.reference_exponent = ck.get_or<double>(an, "analysis", "reference_exponent", cfg.reference_exponent);
  cfg.delta = ck.get_or<double>(an, "analysis", "delta", cfg.delta);
  cfg.calib_points = ck.get_or<int>(an, "analysis", "calib_points", cfg.calib_points);
  if (an.contains("fit_window")) {
    const auto window = ck.get_or<std::vector<double>>(an, "analysis", "fit_window", {});
    if (window.size() != 2 || !(window[0] < window[1])) {
      ck.errors.push_back("analysis.fit_window must be [t_lo, t_hi] with t_lo < t_hi");
    } else {
      cfg.fit_window = {window[0], window[1]};
    }
  }
  if (!(cfg.delta > 0.0)) ck.errors.push_back("analysis.delta must be positive");
  if (cfg.calib_points < 2) ck.errors.push_back("analysis.calib_points must be at least 2");
}

void parse_dt_grid(Checker& ck, const json& doc, ExperimentConfig& cfg) {
  cfg.dt_grid = ck.get_or<std::vector<double>>(doc, "config", "dt_grid", {});
  if (cfg.dt_grid.empty()) ck.errors.push_back("dt_grid must not be empty");
  for (double dt : cfg.dt_grid)
    if (!(dt > 0.0)) ck.errors.push_back("dt_grid entries must be positive");
  if (!std::is_sorted(cfg.dt_grid.begin(), cfg.dt_grid.end()))
    ck.errors.push_back("dt_grid must be increasing");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, ExperimentKind kind) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError({std::string("not valid JSON: ") + e.what()});
  }

  Checker ck;
  ExperimentConfig cfg;
  cfg.kind = kind;

  std::set<std::string> allowed = {"experiment", "seed", "out_dir", "lattice", "couplings"};
  std::set<std::string> required = {"seed", "lattice", "couplings"};
  switch (kind) {
    case ExperimentKind::kz_bench:
      allowed.insert({"dt", "max_steps", "steps", "analysis", "noise"});
      required.insert("dt");
      break;
    case ExperimentKind::noise_sweep:
      allowed.insert({"dt", "max_steps", "steps", "noise", "divergence_delta"});
      required.insert({"dt", "noise"});
      break;
    case ExperimentKind::trotter_convergence:
      allowed.insert({"dt_grid", "t_f_grid", "max_t_f", "fine_dt"});
      required.insert("dt_grid");
      break;
    case ExperimentKind::anneal_opt:
      allowed.insert({"dt_grid", "max_steps", "steps", "noise"});
      required.insert("dt_grid");
      break;
    case ExperimentKind::spectrum_scan:
      allowed.insert({"s_points", "k_levels", "min_gap"});
      break;
  }
  ck.expect_keys(doc, "config", allowed, required);

  if (doc.is_object() && doc.contains("experiment")) {
    const auto name = ck.get_or<std::string>(doc, "config", "experiment", "");
    if (name != experiment_name(kind))
      ck.errors.push_back("config.experiment '" + name + "' does not match the requested experiment '" +
                          std::string(experiment_name(kind)) + "'");
  }
  if (!doc.is_object()) throw ConfigError(std::move(ck.errors));

  cfg.seed = ck.get_or<std::uint64_t>(doc, "config", "seed", 0);
  cfg.out_dir = ck.get_or<std::string>(doc, "config", "out_dir", "");

  parse_lattice(ck, doc, cfg);
  parse_couplings(ck, doc, cfg, kind == ExperimentKind::anneal_opt);

  switch (kind) {
    case ExperimentKind::kz_bench:
      cfg.dt = ck.get_or<double>(doc, "config", "dt", 0.0);
      if (!(cfg.dt > 0.0)) ck.errors.push_back("dt must be positive");
      parse_steps(ck, doc, cfg);
      parse_analysis(ck, doc, cfg);
      parse_noise(ck, doc, cfg, false);
      break;
    case ExperimentKind::noise_sweep:
      cfg.dt = ck.get_or<double>(doc, "config", "dt", 0.0);
      if (!(cfg.dt > 0.0)) ck.errors.push_back("dt must be positive");
      parse_steps(ck, doc, cfg);
      parse_noise(ck, doc, cfg, true);
      cfg.divergence_delta = ck.get_or<double>(doc, "config", "divergence_delta", cfg.divergence_delta);
      if (!(cfg.divergence_delta > 0.0)) ck.errors.push_back("divergence_delta must be positive");
      break;
    case ExperimentKind::trotter_convergence: {
      parse_dt_grid(ck, doc, cfg);
      const bool has_grid = doc.contains("t_f_grid");
      const bool has_max = doc.contains("max_t_f");
      if (has_grid == has_max) {
        ck.errors.push_back("exactly one of 't_f_grid' or 'max_t_f' is required");
      } else if (has_grid) {
        cfg.t_f_grid = ck.get_or<std::vector<double>>(doc, "config", "t_f_grid", {});
      } else {
        const int max_t = ck.get_or<int>(doc, "config", "max_t_f", 0);
        if (max_t < 1) ck.errors.push_back("max_t_f must be at least 1");
        for (int t = 1; t <= max_t; ++t) cfg.t_f_grid.push_back(t);
      }
      if (cfg.t_f_grid.empty()) ck.errors.push_back("t_f_grid must not be empty");
      if (!std::is_sorted(cfg.t_f_grid.begin(), cfg.t_f_grid.end()))
        ck.errors.push_back("t_f_grid must be increasing");
      cfg.fine_dt = ck.get_or<double>(doc, "config", "fine_dt", cfg.fine_dt);
      if (!(cfg.fine_dt > 0.0 && cfg.fine_dt <= 0.01))
        ck.errors.push_back("fine_dt must lie in (0, 0.01]");
      for (double t : cfg.t_f_grid) {
        if (!(t > 0.0)) {
          ck.errors.push_back("t_f_grid entries must be positive");
          continue;
        }
        for (double dt : cfg.dt_grid) {
          if (dt <= 0.0) continue;
          const double ratio = t / dt;
          if (std::abs(ratio - std::round(ratio)) > 1e-9)
            ck.errors.push_back("t_f " + format_double(t) + " is not a whole number of steps of dt " +
                                format_double(dt));
        }
      }
      break;
    }
    case ExperimentKind::anneal_opt:
      parse_dt_grid(ck, doc, cfg);
      parse_steps(ck, doc, cfg);
      parse_noise(ck, doc, cfg, false);
      if (cfg.coupling_kind != CouplingKind::disordered)
        ck.errors.push_back("anneal_opt requires disordered couplings");
      break;
    case ExperimentKind::spectrum_scan:
      cfg.s_points = ck.get_or<int>(doc, "config", "s_points", cfg.s_points);
      cfg.k_levels = ck.get_or<int>(doc, "config", "k_levels", cfg.k_levels);
      cfg.min_gap = ck.get_or<bool>(doc, "config", "min_gap", cfg.min_gap);
      if (cfg.s_points < 2) ck.errors.push_back("s_points must be at least 2");
      if (cfg.k_levels < 1) ck.errors.push_back("k_levels must be at least 1");
      break;
  }

  if (!ck.errors.empty()) throw ConfigError(std::move(ck.errors));
  return cfg;
}

void resolve(ExperimentConfig& config) {
  json doc;
  doc["experiment"] = experiment_name(config.kind);
  doc["seed"] = config.seed;

  json lat;
  lat["geometry"] = geometry_name(config.lattice.geometry);
  switch (config.lattice.geometry) {
    case Geometry::open_chain:
    case Geometry::periodic_chain:
      lat["n"] = config.lattice.n;
      break;
    case Geometry::square:
      lat["rows"] = config.lattice.rows;
      lat["cols"] = config.lattice.cols;
      break;
    case Geometry::heavy_hex:
      if (config.lattice.device) {
        lat["device"] =
            *config.lattice.device == HeavyHexDevice::device_127 ? "device_127" : "device_133";
      } else {
        lat["cell_rows"] = config.lattice.rows;
        lat["cell_cols"] = config.lattice.cols;
      }
      break;
  }
  doc["lattice"] = std::move(lat);

  // The resolved document stays parseable by parse_config, so a stored
  // config.resolved.json reproduces its run verbatim.
  json cpl;
  if (config.coupling_kind == CouplingKind::uniform) {
    cpl["kind"] = "uniform";
    cpl["j"] = config.coupling_j;
  } else {
    cpl["kind"] = "disordered";
    if (config.kind == ExperimentKind::anneal_opt) {
      cpl["seeds"] = config.coupling_seeds;
    } else {
      cpl["seed"] = config.coupling_seeds.at(0);
    }
  }
  doc["couplings"] = std::move(cpl);

  if (config.noise) {
    json noi;
    noi["base"] = json::parse(noise_model_to_json(config.noise->base));
    if (config.kind == ExperimentKind::noise_sweep) {
      noi["eta_grid"] = config.noise->etas;
    } else {
      noi["eta"] = config.noise->etas.at(0);
    }
    noi["n_traj"] = config.noise->n_traj;
    noi["shots_per_traj"] = config.noise->shots_per_traj;
    doc["noise"] = std::move(noi);
  }

  switch (config.kind) {
    case ExperimentKind::kz_bench:
      doc["dt"] = config.dt;
      doc["steps"] = config.steps;
      doc["analysis"] = {{"reference_exponent", config.reference_exponent},
                         {"delta", config.delta},
                         {"calib_points", config.calib_points},
                         {"fit_window", {config.fit_window.t_lo, config.fit_window.t_hi}}};
      break;
    case ExperimentKind::noise_sweep:
      doc["dt"] = config.dt;
      doc["steps"] = config.steps;
      doc["divergence_delta"] = config.divergence_delta;
      break;
    case ExperimentKind::trotter_convergence:
      doc["dt_grid"] = config.dt_grid;
      doc["t_f_grid"] = config.t_f_grid;
      doc["fine_dt"] = config.fine_dt;
      break;
    case ExperimentKind::anneal_opt:
      doc["dt_grid"] = config.dt_grid;
      doc["steps"] = config.steps;
      break;
    case ExperimentKind::spectrum_scan:
      doc["s_points"] = config.s_points;
      doc["k_levels"] = config.k_levels;
      doc["min_gap"] = config.min_gap;
      break;
  }

  // nlohmann::json orders object keys, so the dump is canonical.
  config.canonical_json = doc.dump(2) + "\n";
  config.config_hash = fnv1a_hex(config.canonical_json);
}

void validate_resources(const ExperimentConfig& config) {
  const SiteGraph graph = build_graph(config);
  const int n = graph.n_sites;
  switch (config.kind) {
    case ExperimentKind::kz_bench:
    case ExperimentKind::noise_sweep:
    case ExperimentKind::trotter_convergence:
      if (n > PureState::max_sites)
        throw ResourceLimitError("statevector experiments are limited to " +
                                 std::to_string(PureState::max_sites) + " sites, got " +
                                 std::to_string(n));
      break;
    case ExperimentKind::anneal_opt:
      if (n > 24)
        throw ResourceLimitError("anneal_opt needs the exhaustive ground-state oracle (24 sites), got " +
                                 std::to_string(n));
      break;
    case ExperimentKind::spectrum_scan:
      if (n > 14)
        throw ResourceLimitError("spectrum_scan is limited to 14 sites (dense solver), got " +
                                 std::to_string(n));
      break;
  }
}

SiteGraph build_graph(const ExperimentConfig& config) { return build_lattice(config.lattice); }

CouplingMap build_couplings(const ExperimentConfig& config, const SiteGraph& graph,
                            std::size_t instance) {
  if (config.coupling_kind == CouplingKind::uniform) return uniform_couplings(graph, config.coupling_j);
  if (instance >= config.coupling_seeds.size())
    throw std::invalid_argument("instance index out of range");
  return disordered_couplings(graph, config.coupling_seeds[instance]);
}

}  // namespace quanneal::runner

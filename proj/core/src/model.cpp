#include "quanneal/model.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace quanneal {

std::pair<double, double> AnnealSchedule::at(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("schedule parameter s must lie in [0, 1]");
  return {1.0 - s, s};
}

double kz_exponent(const CriticalExponents& exps) {
  if (exps.d <= 0 || exps.z <= 0.0 || exps.nu <= 0.0)
    throw std::invalid_argument("critical exponents must be strictly positive");
  return -static_cast<double>(exps.d) * exps.nu / (1.0 + exps.z * exps.nu);
}

TrotterPlan build_trotter_plan(const SiteGraph& graph, const CouplingMap& couplings,
                               const AnnealSchedule& schedule, double dt, int n_steps) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
  if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
  if (couplings.values.size() != graph.edges.size())
    throw std::invalid_argument("couplings must be index-aligned with graph edges");

  TrotterPlan plan;
  plan.graph = graph;
  plan.couplings = couplings;
  plan.schedule = schedule;
  plan.dt = dt;
  plan.n_steps = n_steps;
  plan.x_angles.resize(n_steps);
  plan.zz_angles.assign(n_steps, std::vector<double>(graph.edges.size()));
  for (int m = 1; m <= n_steps; ++m) {
    double s_m = static_cast<double>(m) / n_steps;
    auto [a, b] = schedule.at(s_m);
    plan.x_angles[m - 1] = -2.0 * a * dt;
    auto& row = plan.zz_angles[m - 1];
    for (std::size_t e = 0; e < couplings.values.size(); ++e) {
      row[e] = -2.0 * couplings.values[e] * b * dt;
    }
  }
  return plan;
}

std::string plan_to_json(const TrotterPlan& plan) {
  nlohmann::ordered_json doc;
  doc["dt"] = plan.dt;
  doc["n_steps"] = plan.n_steps;
  doc["t_f"] = plan.t_f();
  auto layers = plan.graph.color_layers();
  auto& steps = doc["steps"] = nlohmann::ordered_json::array();
  for (int m = 1; m <= plan.n_steps; ++m) {
    nlohmann::ordered_json step;
    step["m"] = m;
    step["x_angle"] = plan.x_angles[m - 1];
    auto& jlayers = step["layers"] = nlohmann::ordered_json::array();
    for (int c = 0; c < static_cast<int>(layers.size()); ++c) {
      nlohmann::ordered_json layer;
      layer["color"] = c;
      auto& angles = layer["angles"] = nlohmann::ordered_json::array();
      for (int e : layers[c]) angles.push_back(plan.zz_angles[m - 1][e]);
      jlayers.push_back(std::move(layer));
    }
    steps.push_back(std::move(step));
  }
  return doc.dump(2) + "\n";
}

}  // namespace quanneal

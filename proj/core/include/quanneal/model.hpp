#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quanneal/lattice.hpp"

namespace quanneal {

/// Annealing schedule s -> (A, B) with A(0)=1, B(0)=0, A(1)=0, B(1)=1.
/// Only the linear form ships; the accessor is the extension point for
/// other shapes.
struct AnnealSchedule {
  enum class Form { linear };
  Form form = Form::linear;

  /// Throws std::domain_error outside [0, 1].
  std::pair<double, double> at(double s) const;
};

struct CriticalExponents {
  int d = 1;        // dimension
  double z = 1.0;   // dynamical exponent
  double nu = 1.0;  // correlation-length exponent
};

/// Defect-density scaling exponent -d*nu / (1 + z*nu); -1/2 in the 1D case.
double kz_exponent(const CriticalExponents& exps);

struct ScalingLaw {
  double exponent = 0.0;
  double prefactor = 1.0;
};

/// Fully resolved digitized anneal. Step m in 1..n_steps evaluates the
/// schedule at the step endpoint s_m = m*dt/t_f and carries
///   x_angle  phi_m     = -2 * A(s_m) * dt        (one per site)
///   zz_angle theta_m,e = -2 * J_e * B(s_m) * dt  (one per edge)
/// in the convention R(theta) = exp(-i*theta*G/2), so each angle reproduces
/// the product-formula factor exp(-i*dt*a_l*H_l) of its Hamiltonian term.
struct TrotterPlan {
  SiteGraph graph;
  CouplingMap couplings;
  AnnealSchedule schedule;
  double dt = 0.0;
  int n_steps = 0;
  std::vector<double> x_angles;               // [step]
  std::vector<std::vector<double>> zz_angles;  // [step][edge]

  double t_f() const { return dt * n_steps; }
};

TrotterPlan build_trotter_plan(const SiteGraph& graph, const CouplingMap& couplings,
                               const AnnealSchedule& schedule, double dt, int n_steps);

/// Audit document {dt, n_steps, t_f, steps:[{m, x_angle, layers:[{color, angles}]}]};
/// per-layer angles follow the canonical edge order within each color.
std::string plan_to_json(const TrotterPlan& plan);

}  // namespace quanneal

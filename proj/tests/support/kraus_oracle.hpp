#pragma once

// Brute-force density-matrix evolution mirroring run_noisy_anneal's channel
// composition step for step. Exact for any physical T2 <= 2*T1; feasible for
// N <= 3 (64-dimensional superoperators at most).

#include <Eigen/Dense>
#include <cmath>

#include "quanneal/model.hpp"
#include "quanneal/noise.hpp"
#include "test_util.hpp"

namespace testutil {

class DensityOracle {
 public:
  DensityOracle(const quanneal::TrotterPlan& plan, const quanneal::NoiseModel& model)
      : plan_(plan), model_(model), n_(plan.graph.n_sites) {
    const Eigen::Index dim = Eigen::Index(1) << n_;
    Vec plus = Vec::Constant(dim, cd(std::pow(2.0, -0.5 * n_), 0.0));
    rho_ = plus * plus.adjoint();
  }

  void run() {
    const auto layers = plan_.graph.color_layers();
    for (int m = 0; m < plan_.n_steps; ++m) {
      Mat ux = Mat::Identity(rho_.rows(), rho_.cols());
      for (int q = 0; q < n_; ++q) ux = op_at(n_, q, rx_gate(plan_.x_angles[m])) * ux;
      apply_unitary(ux);
      for (int q = 0; q < n_; ++q) depolarize_1q(q, model_.e_1q);
      for (int q = 0; q < n_; ++q) thermal(q, model_.dur_1q_ns);
      for (const auto& layer : layers) {
        Mat uzz = Mat::Identity(rho_.rows(), rho_.cols());
        for (int e : layer)
          uzz = rzz_full(n_, plan_.graph.edges[e].first, plan_.graph.edges[e].second,
                         plan_.zz_angles[m][e]) *
                uzz;
        apply_unitary(uzz);
        for (int e : layer)
          depolarize_2q(plan_.graph.edges[e].first, plan_.graph.edges[e].second, model_.e_2q);
        for (int q = 0; q < n_; ++q) thermal(q, model_.dur_2q_ns);
      }
    }
    for (int q = 0; q < n_; ++q) thermal(q, model_.dur_ro_ns);
  }

  double zz(int i, int j) const {
    const Mat op = op_at(n_, i, pauli(3)) * op_at(n_, j, pauli(3));
    return (op * rho_).trace().real();
  }

  // Expected raw estimates after the independent bit-flip readout channel.
  double n_def_raw() const {
    const double f = 1.0 - 2.0 * model_.e_ro;
    double acc = 0.0;
    for (const auto& [i, j] : plan_.graph.edges) acc += zz(i, j);
    return 0.5 * (1.0 - f * f * acc / double(plan_.graph.edges.size()));
  }

  double energy_raw() const {
    const double f = 1.0 - 2.0 * model_.e_ro;
    double acc = 0.0;
    for (std::size_t e = 0; e < plan_.graph.edges.size(); ++e) {
      const auto [i, j] = plan_.graph.edges[e];
      acc -= plan_.couplings.values[e] * f * f * zz(i, j);
    }
    return acc;
  }

  const Mat& rho() const { return rho_; }

 private:
  void apply_unitary(const Mat& u) { rho_ = u * rho_ * u.adjoint(); }

  void depolarize_1q(int site, double e) {
    if (e <= 0.0) return;
    Mat mixed = Mat::Zero(rho_.rows(), rho_.cols());
    for (int p = 1; p <= 3; ++p) {
      const Mat op = op_at(n_, site, pauli(p));
      mixed += op * rho_ * op;
    }
    rho_ = (1.0 - e) * rho_ + (e / 3.0) * mixed;
  }

  void depolarize_2q(int i, int j, double e) {
    if (e <= 0.0) return;
    Mat mixed = Mat::Zero(rho_.rows(), rho_.cols());
    for (int pi = 0; pi <= 3; ++pi) {
      for (int pj = 0; pj <= 3; ++pj) {
        if (pi == 0 && pj == 0) continue;
        const Mat op = op_at(n_, i, pauli(pi)) * op_at(n_, j, pauli(pj));
        mixed += op * rho_ * op.adjoint();
      }
    }
    rho_ = (1.0 - e) * rho_ + (e / 15.0) * mixed;
  }

  void thermal(int site, double dur_ns) {
    if (dur_ns <= 0.0) return;
    const double gamma1 = 1.0 / (model_.t1_us * 1e3);
    const double rate2 = 1.0 / (model_.t2_us * 1e3);
    const double gamma_phi = rate2 - 0.5 * gamma1;
    const double lambda = 1.0 - std::exp(-gamma1 * dur_ns);
    Mat k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - lambda);
    k1 << 0, std::sqrt(lambda), 0, 0;
    const Mat K0 = op_at(n_, site, k0);
    const Mat K1 = op_at(n_, site, k1);
    rho_ = K0 * rho_ * K0.adjoint() + K1 * rho_ * K1.adjoint();
    const double q = 0.5 * (1.0 - std::exp(-gamma_phi * dur_ns));
    const Mat z = op_at(n_, site, pauli(3));
    rho_ = (1.0 - q) * rho_ + q * z * rho_ * z;
  }

  const quanneal::TrotterPlan& plan_;
  const quanneal::NoiseModel& model_;
  int n_;
  Mat rho_;
};

}  // namespace testutil

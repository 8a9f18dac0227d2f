#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "quanneal/lattice.hpp"
#include "quanneal/rng.hpp"
#include "quanneal/statevector.hpp"

namespace testutil {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cd = std::complex<double>;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat pauli(int p) {
  Mat m(2, 2);
  switch (p) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cd(0, -1), cd(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Site 0 is the least significant bit of the basis index, so a one-site
// operator embeds as kron(I, ..., op, ..., I) with op at position n-1-site.
inline Mat op_at(int n, int site, const Mat& op) {
  Mat out = Mat::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) out = kron(out, q == site ? op : pauli(0));
  return out;
}

inline Mat rx_gate(double phi) {
  Mat m(2, 2);
  const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  m << c, cd(0, -s), cd(0, -s), c;
  return m;
}

inline Mat rzz_full(int n, int i, int j, double theta) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Mat m = Mat::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const bool diff = ((k >> i) ^ (k >> j)) & 1;
    m(k, k) = std::exp(cd(0, diff ? 0.5 * theta : -0.5 * theta));
  }
  return m;
}

inline Vec to_eigen(const quanneal::PureState& st) {
  Vec v(static_cast<Eigen::Index>(st.dim()));
  auto amps = st.amplitudes();
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = amps[static_cast<std::size_t>(k)];
  return v;
}

inline quanneal::PureState random_state(int n, std::uint64_t seed) {
  quanneal::PureState st(n);
  quanneal::SplitMix64 rng(seed);
  for (std::uint64_t k = 0; k < st.dim(); ++k)
    st.amplitude(k) = {rng.next_symmetric(), rng.next_symmetric()};
  st.normalize();
  return st;
}

}  // namespace testutil

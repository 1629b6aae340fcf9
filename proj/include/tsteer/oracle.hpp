#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsteer/chain.hpp"

namespace tsteer {

// Brute-force many-body oracle on the full 2^L dimensional space. Used to
// cross-check the free-fermion closed form on small rings.

enum class FieldShift { none, plus, minus };

inline constexpr int oracle_max_sites = 12;

namespace detail {

inline void check_oracle_size(int L) {
  if (L > oracle_max_sites)
    throw std::invalid_argument("dense oracle limited to L <= " +
                                std::to_string(oracle_max_sites) + " sites, got " +
                                std::to_string(L));
}

}  // namespace detail

// H = -sum_l [(1+gamma)/2 X_l X_{l+1} + (1-gamma)/2 Y_l Y_{l+1}] - lambda sum_l Z_l
// on a periodic ring, with lambda shifted by +-g according to the qubit state.
// Basis: bit l of the index is spin l, bit value 1 meaning Z = +1.
inline Eigen::MatrixXd dense_hamiltonian(const ChainParams& p, FieldShift shift) {
  p.validate();
  detail::check_oracle_size(p.L);
  const double lam = p.lambda + (shift == FieldShift::plus ? p.g : 0.0) -
                     (shift == FieldShift::minus ? p.g : 0.0);
  const int dim = 1 << p.L;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    int up = 0;
    for (int l = 0; l < p.L; ++l) up += (b >> l) & 1;
    h(b, b) = -lam * (2.0 * up - p.L);
    for (int l = 0; l < p.L; ++l) {
      const int l2 = (l + 1) % p.L;
      const int mask = (1 << l) | (1 << l2);
      const int b2 = b ^ mask;
      const bool aligned = (((b >> l) & 1) == ((b >> l2) & 1));
      // XX flips both spins with +1; YY flips with -1 on aligned pairs, +1 on
      // anti-aligned ones, so the flip amplitude is -gamma or -1.
      h(b2, b) += aligned ? -p.gamma : -1.0;
    }
  }
  return h;
}

struct GroundState {
  Eigen::VectorXd psi;
  double energy = 0.0;
  double gap = 0.0;
  bool degenerate = false;
};

inline GroundState ground_state(const Eigen::MatrixXd& h, double degeneracy_tol = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolver failed to converge");
  GroundState gs;
  gs.psi = es.eigenvectors().col(0);
  gs.energy = es.eigenvalues()(0);
  gs.gap = es.eigenvalues()(1) - es.eigenvalues()(0);
  gs.degenerate = gs.gap < degeneracy_tol;
  // Fix the overall sign: largest-magnitude component (first such index on
  // ties) made positive, so repeated runs agree bit for bit.
  int imax = 0;
  double amax = 0.0;
  for (int i = 0; i < gs.psi.size(); ++i) {
    const double a = std::fabs(gs.psi(i));
    if (a > amax) {
      amax = a;
      imax = i;
    }
  }
  if (gs.psi(imax) < 0.0) gs.psi = -gs.psi;
  return gs;
}

// Precomputes both shifted eigendecompositions so that F(t) at many times
// costs one dim^2 complex product each.
class OracleEvolver {
 public:
  explicit OracleEvolver(const ChainParams& p) {
    p.validate();
    detail::check_oracle_size(p.L);
    const GroundState gs = ground_state(dense_hamiltonian(p, FieldShift::none));
    degenerate_ = gs.degenerate;
    gap_ = gs.gap;
    energy_ = gs.energy;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esp(dense_hamiltonian(p, FieldShift::plus));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esm(dense_hamiltonian(p, FieldShift::minus));
    if (esp.info() != Eigen::Success || esm.info() != Eigen::Success)
      throw std::runtime_error("dense eigensolver failed to converge");
    e_plus_ = esp.eigenvalues();
    e_minus_ = esm.eigenvalues();
    a_ = esp.eigenvectors().transpose() * gs.psi;
    c_ = esm.eigenvectors().transpose() * gs.psi;
    b_ = esp.eigenvectors().transpose() * esm.eigenvectors();
  }

  // F(t) = <psi| e^{+i H_+ t} e^{-i H_- t} |psi>
  std::complex<double> factor(double t) const {
    detail::check_time(t);
    const int dim = static_cast<int>(a_.size());
    Eigen::VectorXcd w(dim);
    for (int j = 0; j < dim; ++j)
      w(j) = std::polar(c_(j), -e_minus_(j) * t);
    const Eigen::VectorXcd v = b_ * w;
    std::complex<double> f = 0.0;
    for (int m = 0; m < dim; ++m)
      f += a_(m) * std::polar(1.0, e_plus_(m) * t) * v(m);
    return f;
  }

  bool degenerate() const { return degenerate_; }
  double gap() const { return gap_; }
  double ground_energy() const { return energy_; }

 private:
  Eigen::VectorXd e_plus_, e_minus_, a_, c_;
  Eigen::MatrixXd b_;
  bool degenerate_ = false;
  double gap_ = 0.0;
  double energy_ = 0.0;
};

inline std::complex<double> oracle_factor(const ChainParams& p, double t) {
  return OracleEvolver(p).factor(t);
}

}  // namespace tsteer

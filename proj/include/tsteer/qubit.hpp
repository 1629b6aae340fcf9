#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace tsteer {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

namespace detail {

inline bool hermitian_within(const Mat2& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// Smallest eigenvalue of a Hermitian 2x2 matrix, closed form.
inline double min_eig_herm2(const Mat2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double off = std::abs(m(0, 1));
  const double tr = a + d;
  const double disc = std::sqrt((a - d) * (a - d) / 4.0 + off * off);
  return tr / 2.0 - disc;
}

}  // namespace detail

struct QubitState {
  Mat2 rho;

  void validate(double tol = 1e-10) const {
    if (std::abs(rho.trace() - std::complex<double>(1.0)) > tol)
      throw std::invalid_argument("qubit state must have unit trace");
    if (!detail::hermitian_within(rho, tol))
      throw std::invalid_argument("qubit state must be Hermitian");
    if (detail::min_eig_herm2((rho + rho.adjoint()) / 2.0) < -tol)
      throw std::invalid_argument("qubit state must be positive semidefinite");
  }

  Eigen::Vector3d bloch() const {
    return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
            rho(0, 0).real() - rho(1, 1).real()};
  }
};

inline QubitState maximally_mixed() {
  QubitState q;
  q.rho = Mat2::Identity() / 2.0;
  return q;
}

// Pure dephasing in the Z eigenbasis: the coherence rho_{10} (row |down>,
// column |up>) picks up the factor f, its conjugate picks up f*.
inline QubitState apply_dephasing(const QubitState& rho, std::complex<double> f) {
  if (std::abs(f) > 1.0 + 1e-9)
    throw std::domain_error("decoherence factor must satisfy |f| <= 1");
  QubitState out;
  out.rho = rho.rho;
  out.rho(1, 0) *= f;
  out.rho(0, 1) *= std::conj(f);
  return out;
}

struct MeasureResult {
  double probability = 0.0;
  QubitState state;            // normalized post-measurement state
  bool zero_probability = false;  // probability below 1e-14: state left as input
};

inline MeasureResult measure(const QubitState& rho, const Mat2& projector) {
  MeasureResult r;
  const Mat2 m = projector * rho.rho * projector.adjoint();
  r.probability = m.trace().real();
  if (r.probability < 1e-14) {
    r.zero_probability = true;
    r.probability = std::max(0.0, r.probability);
    r.state = rho;
    return r;
  }
  r.state.rho = m / r.probability;
  return r;
}

}  // namespace tsteer

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tsteer/qubit.hpp"

namespace tsteer {

// Family of 2 or 3 mutually unbiased projective qubit measurements
// parameterized by two angles. Each direction i has outcomes a = +-1 with
// rank-1 projectors P_{a|i}.
struct Measurement {
  Mat2 p_plus;
  Mat2 p_minus;
  Eigen::Vector3d axis;  // Bloch axis of the +1 outcome
};

struct MeasurementSet {
  double theta = 0.0;
  double phi = 0.0;
  int n = 2;
  std::vector<Measurement> directions;

  const Mat2& projector(int i, int a) const {
    if (i < 1 || i > n) throw std::invalid_argument("measurement direction out of range");
    if (a != 1 && a != -1) throw std::invalid_argument("outcome must be +1 or -1");
    return a == 1 ? directions[i - 1].p_plus : directions[i - 1].p_minus;
  }

  Mat2 observable(int i) const {
    if (i < 1 || i > n) throw std::invalid_argument("measurement direction out of range");
    return directions[i - 1].p_plus - directions[i - 1].p_minus;
  }
};

namespace detail {

inline Mat2 rot_x(double a) {
  Mat2 sx;
  sx << 0.0, 1.0, 1.0, 0.0;
  return std::cos(a / 2.0) * Mat2::Identity() + std::complex<double>(0.0, std::sin(a / 2.0)) * sx;
}

inline Mat2 rot_y(double a) {
  Mat2 sy;
  sy << std::complex<double>(0.0, 0.0), std::complex<double>(0.0, -1.0),
      std::complex<double>(0.0, 1.0), std::complex<double>(0.0, 0.0);
  return std::cos(a / 2.0) * Mat2::Identity() + std::complex<double>(0.0, std::sin(a / 2.0)) * sy;
}

inline Mat2 projector_of(const Vec2& psi) { return psi * psi.adjoint(); }

inline Eigen::Vector3d bloch_axis(const Mat2& p) {
  return {2.0 * p(0, 1).real(), -2.0 * p(0, 1).imag(), p(0, 0).real() - p(1, 1).real()};
}

}  // namespace detail

// Directions 1 and 2 tilt the Z axis by rot_y(phi) rot_x(theta + shift) with
// shifts {0, pi} and {pi/2, 3pi/2}; direction 3 is rot_y(phi -+ pi/2) alone.
// theta = 0, phi = pi/2 gives the equatorial pair/triple, theta = phi = 0 the
// Z-containing one.
inline MeasurementSet build_measurements(double theta, double phi, int n) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("number of measurement directions must be 2 or 3");
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw std::invalid_argument("measurement angles must be finite");
  const double pi = std::acos(-1.0);
  const Vec2 up(1.0, 0.0);
  MeasurementSet set;
  set.theta = theta;
  set.phi = phi;
  set.n = n;
  auto dir12 = [&](double shift) {
    Measurement m;
    m.p_plus = detail::projector_of(detail::rot_y(phi) * detail::rot_x(theta + shift) * up);
    m.p_minus = detail::projector_of(detail::rot_y(phi) * detail::rot_x(theta + shift + pi) * up);
    m.axis = detail::bloch_axis(m.p_plus);
    return m;
  };
  set.directions.push_back(dir12(0.0));
  set.directions.push_back(dir12(pi / 2.0));
  if (n == 3) {
    Measurement m;
    m.p_plus = detail::projector_of(detail::rot_y(phi - pi / 2.0) * up);
    m.p_minus = detail::projector_of(detail::rot_y(phi + pi / 2.0) * up);
    m.axis = detail::bloch_axis(m.p_plus);
    set.directions.push_back(m);
  }
  return set;
}

}  // namespace tsteer

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "tsteer/measurements.hpp"
#include "tsteer/qubit.hpp"

namespace tsteer {

// Temporal steering parameter S_N: measure direction i at time zero, send the
// collapsed state through the dephasing channel, measure the same direction
// again, and sum the probability-weighted squared conditional expectations
// over directions.
inline double ts_parameter_numeric(std::complex<double> f, const MeasurementSet& meas,
                                   const QubitState& rho0) {
  rho0.validate();
  double s = 0.0;
  for (int i = 1; i <= meas.n; ++i) {
    const Mat2 obs = meas.observable(i);
    for (int a : {1, -1}) {
      const MeasureResult r = measure(rho0, meas.projector(i, a));
      if (r.zero_probability) continue;
      const QubitState evolved = apply_dephasing(r.state, f);
      const double e = (obs * evolved.rho).trace().real();
      s += r.probability * e * e;
    }
  }
  return s;
}

namespace detail {

inline void check_re_f(double re_f) {
  if (!(re_f >= -1.0 && re_f <= 1.0))
    throw std::invalid_argument("Re F must lie in [-1, 1]");
}

inline double axis_term(double nz2, double re_f) {
  const double e = nz2 * (1.0 - re_f) + re_f;
  return e * e;
}

}  // namespace detail

// Closed forms for the maximally mixed input. Only Re F enters: the channel
// rotates the equatorial Bloch components by arg f, which drops out of the
// squared expectation along each axis.
inline double s2_analytic(double theta, double phi, double re_f) {
  detail::check_re_f(re_f);
  const double c2 = std::cos(phi) * std::cos(phi);
  const double n1z2 = std::cos(theta) * std::cos(theta) * c2;
  const double n2z2 = std::sin(theta) * std::sin(theta) * c2;
  return detail::axis_term(n1z2, re_f) + detail::axis_term(n2z2, re_f);
}

inline double s3_analytic(double theta, double phi, double re_f) {
  detail::check_re_f(re_f);
  const double n3z2 = std::sin(phi) * std::sin(phi);
  return s2_analytic(theta, phi, re_f) + detail::axis_term(n3z2, re_f);
}

// Maximum of S_N over the measurement angles, attained when one direction
// lies along Z and the rest are equatorial.
inline double s_max(int n, double re_f) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("number of measurement directions must be 2 or 3");
  detail::check_re_f(re_f);
  return 1.0 + (n - 1) * re_f * re_f;
}

}  // namespace tsteer

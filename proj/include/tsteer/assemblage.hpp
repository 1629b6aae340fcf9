#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tsteer/measurements.hpp"
#include "tsteer/qubit.hpp"

namespace tsteer {

// Temporal assemblage: unnormalized conditional states sigma_{a|i}, one per
// measurement direction i and outcome a, with the channel applied after the
// time-zero measurement. Index 0 holds outcome +1, index 1 outcome -1.
struct Assemblage {
  int n = 0;
  std::vector<std::array<Mat2, 2>> entries;

  const Mat2& at(int i, int a) const {
    if (i < 1 || i > n) throw std::invalid_argument("assemblage direction out of range");
    if (a != 1 && a != -1) throw std::invalid_argument("outcome must be +1 or -1");
    return entries[i - 1][a == 1 ? 0 : 1];
  }

  Mat2 marginal(int i) const {
    if (i < 1 || i > n) throw std::invalid_argument("assemblage direction out of range");
    return entries[i - 1][0] + entries[i - 1][1];
  }

  void validate(double tol = 1e-10) const {
    if ((n != 2 && n != 3) || static_cast<int>(entries.size()) != n)
      throw std::invalid_argument("assemblage must hold 2 or 3 directions");
    for (int i = 1; i <= n; ++i)
      for (int a : {1, -1}) {
        const Mat2& m = at(i, a);
        if (!detail::hermitian_within(m, tol))
          throw std::invalid_argument("assemblage entries must be Hermitian");
        if (detail::min_eig_herm2((m + m.adjoint()) / 2.0) < -tol)
          throw std::invalid_argument("assemblage entries must be positive semidefinite");
      }
    const Mat2 m1 = marginal(1);
    if (std::abs(m1.trace() - std::complex<double>(1.0)) > tol)
      throw std::invalid_argument("assemblage marginal must have unit trace");
    for (int i = 2; i <= n; ++i)
      if ((marginal(i) - m1).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("assemblage marginals must agree across directions");
  }
};

inline Assemblage build_assemblage(std::complex<double> f, const MeasurementSet& meas,
                                   const QubitState& rho0) {
  rho0.validate();
  Assemblage out;
  out.n = meas.n;
  out.entries.resize(meas.n);
  for (int i = 1; i <= meas.n; ++i)
    for (int a : {1, -1}) {
      const MeasureResult r = measure(rho0, meas.projector(i, a));
      const Mat2 post = r.zero_probability ? Mat2::Zero().eval() : r.state.rho;
      out.entries[i - 1][a == 1 ? 0 : 1] = r.probability * apply_dephasing({post}, f).rho;
    }
  return out;
}

// All 2^n deterministic outcome assignments. Bit i-1 of the strategy index
// gives the outcome for direction i: bit 0 -> +1, bit 1 -> -1.
struct StrategySet {
  int n = 0;
  std::vector<std::array<int, 3>> outcomes;  // outcomes[s][i-1] in {+1, -1}

  int outcome(int s, int i) const { return outcomes[s][i - 1]; }
  int size() const { return static_cast<int>(outcomes.size()); }
};

inline StrategySet deterministic_strategies(int n) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("number of measurement directions must be 2 or 3");
  StrategySet set;
  set.n = n;
  for (int s = 0; s < (1 << n); ++s) {
    std::array<int, 3> row{1, 1, 1};
    for (int i = 0; i < n; ++i) row[i] = ((s >> i) & 1) ? -1 : 1;
    set.outcomes.push_back(row);
  }
  return set;
}

}  // namespace tsteer

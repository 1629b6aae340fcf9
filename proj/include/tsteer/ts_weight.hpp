#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tsteer/assemblage.hpp"
#include "tsteer/sdp.hpp"

namespace tsteer {

// Steering weight of a temporal assemblage: the smallest steerable fraction w
// in a decomposition sigma = w * steerable + (1 - w) * unsteerable. Computed
// as W = 1 - max sum_s tr(sigma_tilde_s) over subnormalized local-model
// components sigma_tilde_s >= 0 with sum_s D_s(a|i) sigma_tilde_s <= sigma_{a|i}.
struct SdpSolution {
  SdpStatus status = SdpStatus::infeasible_input;
  double weight = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::vector<Mat2> sigma_tilde;                // one per deterministic strategy
  std::vector<std::array<Mat2, 2>> dual;        // F_{a|i}: dual[i-1][0] = +1 outcome
};

namespace detail {

inline std::array<Mat2, 4> herm_basis() {
  std::array<Mat2, 4> b;
  const double r = 1.0 / std::sqrt(2.0);
  b[0] = Mat2::Zero();
  b[0](0, 0) = 1.0;
  b[1] = Mat2::Zero();
  b[1](1, 1) = 1.0;
  b[2] = Mat2::Zero();
  b[2](0, 1) = r;
  b[2](1, 0) = r;
  b[3] = Mat2::Zero();
  b[3](0, 1) = std::complex<double>(0.0, -r);
  b[3](1, 0) = std::complex<double>(0.0, r);
  return b;
}

}  // namespace detail

inline SdpSolution ts_weight(const Assemblage& assemblage, double tol = 1e-8,
                             int max_iterations = 200) {
  if (!(tol >= 1e-10))
    throw std::invalid_argument("weight SDP tolerance must be >= 1e-10");
  SdpSolution sol;
  try {
    assemblage.validate();
  } catch (const std::invalid_argument&) {
    sol.status = SdpStatus::infeasible_input;
    return sol;
  }

  const int n = assemblage.n;
  const StrategySet strategies = deterministic_strategies(n);
  const int ns = strategies.size();
  const std::array<Mat2, 4> basis = detail::herm_basis();

  SdpProblem prob;
  prob.block_dims.assign(ns + 2 * n, 2);
  // Blocks 0..ns-1: sigma_tilde per strategy; block ns + 2(i-1) + a_idx: slack
  // Z_{a|i} carrying sigma_{a|i} - sum_s D_s(a|i) sigma_tilde_s >= 0.
  for (int s = 0; s < ns; ++s) {
    SdpTerm t;
    t.block = s;
    t.coeff = Mat2::Identity();
    prob.objective.push_back(t);
  }
  for (int i = 1; i <= n; ++i)
    for (int a_idx = 0; a_idx < 2; ++a_idx) {
      const int a = a_idx == 0 ? 1 : -1;
      const int zblock = ns + 2 * (i - 1) + a_idx;
      for (int c = 0; c < 4; ++c) {
        SdpConstraint con;
        for (int s = 0; s < ns; ++s)
          if (strategies.outcome(s, i) == a) con.terms.push_back({s, basis[c]});
        con.terms.push_back({zblock, basis[c]});
        con.rhs = detail::block_ip(basis[c], assemblage.at(i, a));
        prob.constraints.push_back(con);
      }
    }

  const SdpResult r = solve_sdp(prob, tol, max_iterations);
  sol.status = r.status;
  sol.weight = 1.0 - r.primal_objective;
  sol.gap = r.gap;
  sol.primal_residual = r.primal_residual;
  sol.dual_residual = r.dual_residual;
  sol.iterations = r.iterations;
  sol.sigma_tilde.assign(r.x.begin(), r.x.begin() + ns);
  sol.dual.resize(n);
  for (int i = 1; i <= n; ++i)
    for (int a_idx = 0; a_idx < 2; ++a_idx) {
      Mat2 f = Mat2::Zero();
      for (int c = 0; c < 4; ++c) {
        const int j = (2 * (i - 1) + a_idx) * 4 + c;
        f += r.y[j] * basis[c];
      }
      sol.dual[i - 1][a_idx] = f;
    }
  return sol;
}

}  // namespace tsteer

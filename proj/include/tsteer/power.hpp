#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tsteer/assemblage.hpp"
#include "tsteer/chain.hpp"
#include "tsteer/parallel.hpp"
#include "tsteer/rng.hpp"
#include "tsteer/ts_weight.hpp"

namespace tsteer {

// A weight below this is treated as steering sudden death.
inline constexpr double sudden_death_threshold = 1e-4;

inline std::vector<double> time_grid(double t_start, double t_stop, double t_step) {
  if (!(t_step > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(t_stop >= t_start)) throw std::invalid_argument("time grid bounds out of order");
  const int count = static_cast<int>(std::floor((t_stop - t_start) / t_step + 1e-9)) + 1;
  std::vector<double> g(count);
  for (int k = 0; k < count; ++k) g[k] = t_start + k * t_step;
  return g;
}

namespace detail {

inline double trapezoid_average(const std::vector<double>& t, const std::vector<double>& v) {
  if (t.size() < 2) return v.empty() ? 0.0 : v.front();
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k)
    acc += 0.5 * (v[k] + v[k + 1]) * (t[k + 1] - t[k]);
  return acc / (t.back() - t.front());
}

}  // namespace detail

// TS weight power: sample random measurement angle pairs, time-average the
// steering weight of each over [0, t_b], and keep the best pair. Angles are
// drawn once up front, so sample j always sees the same pair for a given seed
// regardless of worker count.
struct PowerConfig {
  int n = 2;
  double t_b = 10.0;
  double t_step = 0.1;
  int samples = 200;
  std::uint64_t seed = 1;
  double sdp_tol = 1e-8;
  int workers = 1;

  void validate() const {
    if (n != 2 && n != 3)
      throw std::invalid_argument("number of measurement directions must be 2 or 3");
    if (!(t_b > 0.0)) throw std::invalid_argument("averaging horizon t_b must be positive");
    if (!(t_step > 0.0 && t_step <= t_b))
      throw std::invalid_argument("power time step must lie in (0, t_b]");
    if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
    if (!(sdp_tol >= 1e-10)) throw std::invalid_argument("weight SDP tolerance must be >= 1e-10");
    if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
  }
};

struct PowerResult {
  double power = 0.0;
  double best_theta = 0.0;
  double best_phi = 0.0;
  int failed_samples = 0;
};

inline PowerResult ts_weight_power(const ChainParams& params, const PowerConfig& cfg) {
  params.validate();
  cfg.validate();
  const double pi = std::acos(-1.0);
  Rng rng(cfg.seed);
  std::vector<double> thetas(cfg.samples), phis(cfg.samples);
  for (int j = 0; j < cfg.samples; ++j) {
    thetas[j] = rng.uniform(0.0, pi);
    phis[j] = rng.uniform(0.0, pi);
  }

  const std::vector<double> grid = time_grid(0.0, cfg.t_b, cfg.t_step);
  const std::vector<DecoherenceSample> trace = decoherence_trace(params, grid);
  const QubitState mixed = maximally_mixed();

  std::vector<double> avg(cfg.samples, std::numeric_limits<double>::quiet_NaN());
  parallel_for(cfg.samples, cfg.workers, [&](int j) {
    const MeasurementSet meas = build_measurements(thetas[j], phis[j], cfg.n);
    std::vector<double> w(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const SdpSolution sol = ts_weight(build_assemblage(trace[k].f, meas, mixed), cfg.sdp_tol);
      if (sol.status != SdpStatus::optimal) return;  // leaves avg[j] NaN
      w[k] = sol.weight;
    }
    avg[j] = detail::trapezoid_average(grid, w);
  });

  PowerResult res;
  res.power = -1.0;
  for (int j = 0; j < cfg.samples; ++j) {
    if (std::isnan(avg[j])) {
      ++res.failed_samples;
      continue;
    }
    if (avg[j] > res.power) {
      res.power = avg[j];
      res.best_theta = thetas[j];
      res.best_phi = phis[j];
    }
  }
  if (res.failed_samples == cfg.samples)
    throw std::runtime_error("TS weight power: every sampled angle pair failed to solve");
  return res;
}

struct SweepPoint {
  double value = 0.0;  // swept parameter (lambda)
  PowerResult result;
};

// Power across a lambda grid with an identical sample set at every point.
inline std::vector<SweepPoint> lambda_sweep(const ChainParams& base, double lo, double hi,
                                            double step, const PowerConfig& cfg) {
  base.validate();
  cfg.validate();
  if (!(step > 0.0)) throw std::invalid_argument("lambda step must be positive");
  if (!(hi >= lo)) throw std::invalid_argument("lambda bounds out of order");
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<SweepPoint> out(count);
  for (int k = 0; k < count; ++k) {
    ChainParams p = base;
    p.lambda = lo + k * step;
    out[k].value = p.lambda;
    out[k].result = ts_weight_power(p, cfg);
  }
  return out;
}

// Weight on a gamma x time grid at fixed lambda, with per-gamma sudden-death
// times (NaN when the weight never stays below threshold through the horizon).
struct PhaseMap {
  std::vector<double> gammas;
  std::vector<double> times;
  std::vector<std::vector<double>> w;  // w[gamma_index][time_index]
  std::vector<double> death_t;
};

inline PhaseMap gamma_time_map(const ChainParams& base, const std::vector<double>& gammas,
                               const std::vector<double>& times, const MeasurementSet& meas,
                               double sdp_tol = 1e-8, int workers = 1) {
  base.validate();
  if (gammas.empty()) throw std::invalid_argument("gamma grid must be nonempty");
  if (!(sdp_tol >= 1e-10)) throw std::invalid_argument("weight SDP tolerance must be >= 1e-10");
  PhaseMap map;
  map.gammas = gammas;
  map.times = times;
  map.w.assign(gammas.size(), std::vector<double>(times.size(), 0.0));
  map.death_t.assign(gammas.size(), std::numeric_limits<double>::quiet_NaN());

  const QubitState mixed = maximally_mixed();
  std::vector<std::vector<DecoherenceSample>> traces(gammas.size());
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    ChainParams p = base;
    p.gamma = gammas[gi];
    traces[gi] = decoherence_trace(p, times);
  }

  const int total = static_cast<int>(gammas.size() * times.size());
  parallel_for(total, workers, [&](int idx) {
    const std::size_t gi = idx / times.size();
    const std::size_t ti = idx % times.size();
    const SdpSolution sol =
        ts_weight(build_assemblage(traces[gi][ti].f, meas, mixed), sdp_tol);
    if (sol.status != SdpStatus::optimal)
      throw std::runtime_error("weight solve failed on the phase map grid");
    map.w[gi][ti] = sol.weight;
  });

  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    const std::vector<double>& row = map.w[gi];
    int first = -1;
    for (int ti = static_cast<int>(row.size()) - 1; ti >= 0; --ti) {
      if (row[ti] < sudden_death_threshold)
        first = ti;
      else
        break;
    }
    if (first >= 0) map.death_t[gi] = times[first];
  }
  return map;
}

}  // namespace tsteer

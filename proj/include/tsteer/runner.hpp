#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "tsteer/assemblage.hpp"
#include "tsteer/chain.hpp"
#include "tsteer/config.hpp"
#include "tsteer/csv.hpp"
#include "tsteer/measurements.hpp"
#include "tsteer/oracle.hpp"
#include "tsteer/parallel.hpp"
#include "tsteer/power.hpp"
#include "tsteer/steering.hpp"
#include "tsteer/ts_weight.hpp"

namespace tsteer {

// Executes one configured scenario and streams its CSV. Rows are written as
// they are produced, so a failure partway through still leaves the completed
// prefix on disk; solver failures are reported after the full grid has been
// attempted.
inline void run_scenario(const ExperimentConfig& cfg, const std::string& out_path, int workers) {
  if (workers < 1) throw config_error("worker count must be >= 1");
  {
    const ParseResult check = parse_config(serialize_config(cfg));
    if (!check.ok()) {
      std::string msg = "invalid configuration:";
      for (const std::string& e : check.errors) msg += "\n  " + e;
      throw config_error(msg);
    }
  }

  CsvWriter csv(out_path);
  csv.metadata(serialize_config(cfg));

  const std::vector<double> times = time_grid(cfg.t_start, cfg.t_stop, cfg.t_step);
  const auto [theta, phi] = cfg.effective_angles();

  switch (cfg.scenario) {
    case ScenarioType::factor: {
      csv.header({"t", "re_f", "im_f", "abs_f"});
      for (const DecoherenceSample& d : decoherence_trace(cfg.chain, times))
        csv.row({CsvWriter::cell(d.t), CsvWriter::cell(d.f.real()), CsvWriter::cell(d.f.imag()),
                 CsvWriter::cell(d.abs_f)});
      break;
    }
    case ScenarioType::ts_param: {
      csv.header({"t", "s2", "s3", "s2_max", "s3_max"});
      for (const DecoherenceSample& d : decoherence_trace(cfg.chain, times)) {
        const double r = d.re_f;
        csv.row({CsvWriter::cell(d.t), CsvWriter::cell(s2_analytic(theta, phi, r)),
                 CsvWriter::cell(s3_analytic(theta, phi, r)), CsvWriter::cell(s_max(2, r)),
                 CsvWriter::cell(s_max(3, r))});
      }
      break;
    }
    case ScenarioType::weight: {
      csv.header({"t", "w", "gap", "status"});
      const MeasurementSet meas = build_measurements(theta, phi, cfg.n_meas);
      const std::vector<DecoherenceSample> trace = decoherence_trace(cfg.chain, times);
      const QubitState mixed = maximally_mixed();
      std::vector<SdpSolution> sols(trace.size());
      parallel_for(static_cast<int>(trace.size()), workers, [&](int k) {
        sols[k] = ts_weight(build_assemblage(trace[k].f, meas, mixed), cfg.sdp_gap);
      });
      int failures = 0;
      for (std::size_t k = 0; k < trace.size(); ++k) {
        if (sols[k].status != SdpStatus::optimal) ++failures;
        csv.row({CsvWriter::cell(trace[k].t), CsvWriter::cell(sols[k].weight),
                 CsvWriter::cell(sols[k].gap), CsvWriter::cell(to_string(sols[k].status))});
      }
      if (failures > 0)
        throw std::runtime_error("weight scenario: " + std::to_string(failures) +
                                 " of " + std::to_string(trace.size()) +
                                 " solves did not reach optimal");
      break;
    }
    case ScenarioType::power: {
      csv.header({"lambda", "power", "best_theta", "best_phi"});
      PowerConfig pc;
      pc.n = cfg.n_meas;
      pc.t_b = cfg.power_t_b;
      pc.t_step = cfg.power_t_step;
      pc.samples = cfg.power_samples;
      pc.seed = cfg.seed;
      pc.sdp_tol = cfg.sdp_gap;
      pc.workers = workers;
      const int count =
          static_cast<int>(std::floor((cfg.lambda_stop - cfg.lambda_start) / cfg.lambda_step +
                                      1e-9)) +
          1;
      for (int k = 0; k < count; ++k) {
        ChainParams p = cfg.chain;
        p.lambda = cfg.lambda_start + k * cfg.lambda_step;
        const PowerResult r = ts_weight_power(p, pc);
        if (r.failed_samples > 0)
          std::fprintf(stderr, "warning: lambda = %s: %d samples failed to solve\n",
                       detail::format_double(p.lambda).c_str(), r.failed_samples);
        csv.row({CsvWriter::cell(p.lambda), CsvWriter::cell(r.power),
                 CsvWriter::cell(r.best_theta), CsvWriter::cell(r.best_phi)});
      }
      break;
    }
    case ScenarioType::phase_map: {
      csv.header({"gamma", "t", "w", "death_t"});
      const MeasurementSet meas = build_measurements(theta, phi, cfg.n_meas);
      const int count =
          static_cast<int>(std::floor((cfg.gamma_stop - cfg.gamma_start) / cfg.gamma_step +
                                      1e-9)) +
          1;
      std::vector<double> gammas(count);
      for (int k = 0; k < count; ++k) gammas[k] = cfg.gamma_start + k * cfg.gamma_step;
      const PhaseMap map = gamma_time_map(cfg.chain, gammas, times, meas, cfg.sdp_gap, workers);
      for (std::size_t gi = 0; gi < map.gammas.size(); ++gi)
        for (std::size_t ti = 0; ti < map.times.size(); ++ti)
          csv.row({CsvWriter::cell(map.gammas[gi]), CsvWriter::cell(map.times[ti]),
                   CsvWriter::cell(map.w[gi][ti]), CsvWriter::cell(map.death_t[gi])});
      break;
    }
    case ScenarioType::oracle_audit: {
      csv.header({"t", "closed_re", "closed_im", "oracle_re", "oracle_im", "abs_diff"});
      const OracleEvolver oracle(cfg.chain);
      if (oracle.degenerate())
        std::fprintf(stderr,
                     "warning: ground state is near-degenerate (gap = %s); "
                     "audit comparison may be unreliable\n",
                     detail::format_double(oracle.gap()).c_str());
      const std::vector<DecoherenceSample> trace = decoherence_trace(cfg.chain, times);
      for (const DecoherenceSample& d : trace) {
        const std::complex<double> of = oracle.factor(d.t);
        csv.row({CsvWriter::cell(d.t), CsvWriter::cell(d.f.real()), CsvWriter::cell(d.f.imag()),
                 CsvWriter::cell(of.real()), CsvWriter::cell(of.imag()),
                 CsvWriter::cell(std::abs(d.f - of))});
      }
      break;
    }
  }
}

}  // namespace tsteer

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "tsteer/tsteer.hpp"

namespace {

struct CliFlags {
  std::string config_path;
  std::string out_path;
  int workers = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double gamma = 0.0;
  double g = 0.0;
  int chain_size = 0;
  int n_meas = 0;
  double t_max = 0.0;
  double t_step = 0.0;
  int samples = 0;
  double tol = 0.0;
};

void add_common_options(CLI::App* sub, CliFlags& f) {
  sub->add_option("--config", f.config_path, "Config file; flags override its values");
  sub->add_option("--out", f.out_path, "Output CSV path (default: <scenario>.csv)");
  sub->add_option("--workers", f.workers, "Worker threads (default: TSTEER_WORKERS or hardware)");
  sub->add_option("--seed", f.seed, "Random seed for sampled measurement angles");
  sub->add_option("--lambda", f.lambda, "Transverse field lambda");
  sub->add_option("--gamma", f.gamma, "Anisotropy gamma in [0, 1]");
  sub->add_option("--g", f.g, "Qubit-chain coupling g");
  sub->add_option("--chain-size", f.chain_size, "Number of chain sites (odd, >= 3)");
  sub->add_option("--n-meas", f.n_meas, "Measurement directions, 2 or 3");
  sub->add_option("--t-max", f.t_max, "Time horizon (power: averaging horizon t_b)");
  sub->add_option("--t-step", f.t_step, "Time step (power: averaging step)");
  sub->add_option("--samples", f.samples, "Sampled angle pairs per sweep point");
  sub->add_option("--tol", f.tol, "Weight SDP duality-gap tolerance");
}

int fail_config(const std::vector<std::string>& errors) {
  std::fprintf(stderr, "configuration errors:\n");
  for (const std::string& e : errors) std::fprintf(stderr, "  %s\n", e.c_str());
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal steering of a qubit dephasing through a transverse-field XY ring"};
  app.require_subcommand(1);
  CliFlags flags;

  const std::pair<const char*, const char*> subs[] = {
      {"factor", "Decoherence factor F(t) over a time grid"},
      {"ts-param", "Temporal steering parameters S2, S3 and their maxima"},
      {"weight", "Temporal steering weight over a time grid"},
      {"power", "TS weight power across a lambda sweep"},
      {"phase-map", "Weight over a gamma-time grid with sudden-death times"},
      {"oracle-audit", "Closed form versus dense many-body oracle on a small ring"},
  };
  for (const auto& [name, desc] : subs) add_common_options(app.add_subcommand(name, desc), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string scenario = sub->get_name();

  tsteer::ExperimentConfig cfg;
  if (sub->count("--config")) {
    std::string text;
    try {
      text = tsteer::read_file(flags.config_path);
    } catch (const tsteer::io_error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 4;
    }
    const tsteer::ParseResult parsed = tsteer::parse_config(text);
    if (!parsed.ok()) return fail_config(parsed.errors);
    cfg = parsed.config;
  }

  for (tsteer::ScenarioType t :
       {tsteer::ScenarioType::factor, tsteer::ScenarioType::ts_param, tsteer::ScenarioType::weight,
        tsteer::ScenarioType::power, tsteer::ScenarioType::phase_map,
        tsteer::ScenarioType::oracle_audit})
    if (scenario == tsteer::scenario_name(t)) cfg.scenario = t;

  const bool is_power = cfg.scenario == tsteer::ScenarioType::power;
  if (sub->count("--lambda")) cfg.chain.lambda = flags.lambda;
  if (sub->count("--gamma")) cfg.chain.gamma = flags.gamma;
  if (sub->count("--g")) cfg.chain.g = flags.g;
  if (sub->count("--chain-size")) cfg.chain.L = flags.chain_size;
  if (sub->count("--n-meas")) cfg.n_meas = flags.n_meas;
  if (sub->count("--t-max")) (is_power ? cfg.power_t_b : cfg.t_stop) = flags.t_max;
  if (sub->count("--t-step")) (is_power ? cfg.power_t_step : cfg.t_step) = flags.t_step;
  if (sub->count("--samples")) cfg.power_samples = flags.samples;
  if (sub->count("--seed")) cfg.seed = flags.seed;
  if (sub->count("--tol")) cfg.sdp_gap = flags.tol;

  {
    const tsteer::ParseResult check = tsteer::parse_config(tsteer::serialize_config(cfg));
    if (!check.ok()) return fail_config(check.errors);
    cfg = check.config;
  }

  int workers = 0;
  try {
    workers = sub->count("--workers") ? flags.workers : tsteer::default_workers();
    if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  const std::string out_path =
      sub->count("--out") ? flags.out_path : scenario + ".csv";

  try {
    tsteer::run_scenario(cfg, out_path, workers);
  } catch (const tsteer::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const tsteer::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}

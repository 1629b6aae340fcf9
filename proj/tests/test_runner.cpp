#include <catch_amalgamated.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "tsteer/runner.hpp"

using namespace tsteer;

namespace {

struct CsvFile {
  std::string header;
  std::vector<std::string> data_lines;
};

CsvFile parse_rows(const std::string& text) {
  CsvFile out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    if (line.rfind("# ", 0) == 0) continue;
    if (line.empty()) continue;
    if (out.header.empty())
      out.header = line;
    else
      out.data_lines.push_back(line);
  }
  return out;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    const std::size_t c = line.find(',', pos);
    cells.push_back(line.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return cells;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

ExperimentConfig small_grid_config() {
  ExperimentConfig cfg;
  cfg.t_start = 0.0;
  cfg.t_stop = 1.0;
  cfg.t_step = 0.5;
  return cfg;
}

}  // namespace

TEST_CASE("factor scenario writes the exact trace", "[runner]") {
  ExperimentConfig cfg = small_grid_config();
  cfg.scenario = ScenarioType::factor;
  cfg.chain.L = 5;
  TempFile tmp("runner_factor.csv");
  run_scenario(cfg, tmp.path, 1);

  const std::string text = read_file(tmp.path);
  const ParseResult meta = parse_csv_metadata(text);
  REQUIRE(meta.ok());
  CHECK(meta.config == cfg);

  const CsvFile csv = parse_rows(text);
  CHECK(csv.header == "t,re_f,im_f,abs_f");
  const std::vector<DecoherenceSample> tr =
      decoherence_trace(cfg.chain, time_grid(cfg.t_start, cfg.t_stop, cfg.t_step));
  REQUIRE(csv.data_lines.size() == tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const std::string want = CsvWriter::cell(tr[k].t) + "," + CsvWriter::cell(tr[k].f.real()) +
                             "," + CsvWriter::cell(tr[k].f.imag()) + "," +
                             CsvWriter::cell(tr[k].abs_f);
    CHECK(csv.data_lines[k] == want);
  }
}

TEST_CASE("ts-param scenario applies the closed-form parameters", "[runner]") {
  ExperimentConfig cfg = small_grid_config();
  cfg.scenario = ScenarioType::ts_param;
  cfg.chain.L = 101;
  cfg.axes = "angles";
  cfg.theta = 0.7;
  cfg.phi = 1.1;
  TempFile tmp("runner_tsparam.csv");
  run_scenario(cfg, tmp.path, 1);

  const CsvFile csv = parse_rows(read_file(tmp.path));
  CHECK(csv.header == "t,s2,s3,s2_max,s3_max");
  const std::vector<DecoherenceSample> tr =
      decoherence_trace(cfg.chain, time_grid(cfg.t_start, cfg.t_stop, cfg.t_step));
  REQUIRE(csv.data_lines.size() == tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const double r = tr[k].re_f;
    const std::string want = CsvWriter::cell(tr[k].t) + "," +
                             CsvWriter::cell(s2_analytic(0.7, 1.1, r)) + "," +
                             CsvWriter::cell(s3_analytic(0.7, 1.1, r)) + "," +
                             CsvWriter::cell(s_max(2, r)) + "," + CsvWriter::cell(s_max(3, r));
    CHECK(csv.data_lines[k] == want);
  }
}

TEST_CASE("weight scenario reruns bit for bit from its own metadata", "[runner]") {
  ExperimentConfig cfg = small_grid_config();
  cfg.scenario = ScenarioType::weight;
  cfg.chain.L = 51;
  TempFile a("runner_weight_a.csv");
  TempFile b("runner_weight_b.csv");
  run_scenario(cfg, a.path, 1);

  const std::string text_a = read_file(a.path);
  const CsvFile csv = parse_rows(text_a);
  CHECK(csv.header == "t,w,gap,status");
  REQUIRE(csv.data_lines.size() == 3);
  for (const std::string& line : csv.data_lines) {
    const std::vector<std::string> cells = split_cells(line);
    REQUIRE(cells.size() == 4);
    CHECK(cells[3] == "optimal");
    const double w = std::strtod(cells[1].c_str(), nullptr);
    CHECK(w >= -1e-7);
    CHECK(w <= 1.0 + 1e-7);
  }
  // At t = 0 the channel is the identity and the weight is maximal.
  CHECK_THAT(std::strtod(split_cells(csv.data_lines[0])[1].c_str(), nullptr),
             Catch::Matchers::WithinAbs(1.0, 1e-6));

  // Rerun from the emitted metadata with a different worker count.
  const ParseResult meta = parse_csv_metadata(text_a);
  REQUIRE(meta.ok());
  run_scenario(meta.config, b.path, 2);
  CHECK(read_file(b.path) == text_a);
}

TEST_CASE("power scenario sweeps lambda", "[runner]") {
  ExperimentConfig cfg = small_grid_config();
  cfg.scenario = ScenarioType::power;
  cfg.chain.L = 51;
  cfg.power_t_b = 1.0;
  cfg.power_t_step = 0.5;
  cfg.power_samples = 2;
  cfg.lambda_start = 0.9;
  cfg.lambda_stop = 1.1;
  cfg.lambda_step = 0.2;
  TempFile tmp("runner_power.csv");
  run_scenario(cfg, tmp.path, 1);

  const CsvFile csv = parse_rows(read_file(tmp.path));
  CHECK(csv.header == "lambda,power,best_theta,best_phi");
  REQUIRE(csv.data_lines.size() == 2);
  CHECK(split_cells(csv.data_lines[0])[0] == CsvWriter::cell(cfg.lambda_start));
  for (const std::string& line : csv.data_lines) {
    const double p = std::strtod(split_cells(line)[1].c_str(), nullptr);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0 + 1e-9);
  }
}

TEST_CASE("phase-map scenario tabulates the gamma-time grid", "[runner]") {
  ExperimentConfig cfg = small_grid_config();
  cfg.scenario = ScenarioType::phase_map;
  cfg.chain.L = 51;
  cfg.gamma_start = 0.5;
  cfg.gamma_stop = 1.0;
  cfg.gamma_step = 0.5;
  TempFile tmp("runner_phase.csv");
  run_scenario(cfg, tmp.path, 1);

  const CsvFile csv = parse_rows(read_file(tmp.path));
  CHECK(csv.header == "gamma,t,w,death_t");
  REQUIRE(csv.data_lines.size() == 6);
  for (const std::string& line : csv.data_lines) {
    const std::vector<std::string> cells = split_cells(line);
    REQUIRE(cells.size() == 4);
    // Too little dephasing this early for sudden death on this short horizon.
    CHECK(cells[3] == "nan");
  }
}

TEST_CASE("oracle-audit scenario matches the closed form", "[runner]") {
  ExperimentConfig cfg = small_grid_config();
  cfg.scenario = ScenarioType::oracle_audit;
  cfg.chain.L = 5;
  TempFile tmp("runner_audit.csv");
  run_scenario(cfg, tmp.path, 1);

  const CsvFile csv = parse_rows(read_file(tmp.path));
  CHECK(csv.header == "t,closed_re,closed_im,oracle_re,oracle_im,abs_diff");
  REQUIRE(csv.data_lines.size() == 3);
  for (const std::string& line : csv.data_lines) {
    const std::vector<std::string> cells = split_cells(line);
    REQUIRE(cells.size() == 6);
    CHECK(std::strtod(cells[5].c_str(), nullptr) < 1e-10);
  }
}

TEST_CASE("runner rejects bad input", "[runner]") {
  ExperimentConfig cfg = small_grid_config();
  cfg.chain.L = 4;
  CHECK_THROWS_AS(run_scenario(cfg, "runner_bad.csv", 1), config_error);

  ExperimentConfig ok = small_grid_config();
  ok.chain.L = 5;
  CHECK_THROWS_AS(run_scenario(ok, "runner_bad.csv", 0), config_error);
  CHECK_THROWS_AS(run_scenario(ok, "/nonexistent_dir_tsteer/out.csv", 1), io_error);
  std::remove("runner_bad.csv");
}

#include <catch_amalgamated.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "tsteer/csv.hpp"

using namespace tsteer;

namespace {

bool has_error_containing(const ParseResult& r, const std::string& needle) {
  for (const std::string& e : r.errors)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("config round trip preserves every field", "[config]") {
  const ExperimentConfig def;
  const ParseResult back = parse_config(serialize_config(def));
  REQUIRE(back.ok());
  CHECK(back.config == def);

  ExperimentConfig c;
  c.chain.L = 301;
  c.chain.gamma = 0.35;
  c.chain.lambda = -0.71;
  c.chain.g = 0.013;
  c.scenario = ScenarioType::power;
  c.t_start = 0.1;
  c.t_stop = 4.4;
  c.t_step = std::acos(-1.0) / 30.0;
  c.n_meas = 3;
  c.axes = "angles";
  c.theta = std::acos(-1.0) / 3.0;
  c.phi = 0.123456789012345678;
  c.power_t_b = 7.5;
  c.power_t_step = 0.2;
  c.power_samples = 17;
  c.seed = 987654321123456789ULL;
  c.lambda_start = -1.2;
  c.lambda_stop = 1.3;
  c.lambda_step = 0.1;
  c.gamma_start = 0.1;
  c.gamma_stop = 0.9;
  c.gamma_step = 0.2;
  c.sdp_gap = 1e-9;
  const ParseResult r = parse_config(serialize_config(c));
  REQUIRE(r.ok());
  CHECK(r.config == c);
}

TEST_CASE("seventeen digits reproduce a double exactly", "[config]") {
  for (double v : {std::acos(-1.0) / 2.0, 0.1, 1.0 / 3.0, 5.2763424282e-06}) {
    double parsed = 0.0;
    REQUIRE(detail::parse_double(detail::format_double(v), parsed));
    CHECK(parsed == v);
  }
}

TEST_CASE("parser reports every problem with its line", "[config]") {
  const std::string text =
      "[chain]\n"
      "L = 4\n"
      "gamma = banana\n"
      "[bogus]\n"
      "frob = 1\n"
      "[measurement]\n"
      "n = 5\n"
      "axes = diag\n";
  const ParseResult r = parse_config(text);
  REQUIRE_FALSE(r.ok());
  CHECK(r.errors.size() == 5);
  CHECK(has_error_containing(r, "line 3: key 'gamma': not a number"));
  CHECK(has_error_containing(r, "line 4: unknown section 'bogus'"));
  CHECK(has_error_containing(r, "L must be odd"));
  CHECK(has_error_containing(r, "n must be 2 or 3"));
  CHECK(has_error_containing(r, "axes must be one of"));
}

TEST_CASE("parser rejects structural mistakes", "[config]") {
  CHECK(has_error_containing(parse_config("x = 1\n"), "before any section header"));
  CHECK(has_error_containing(parse_config("[scenario]\ntype = wibble\n"),
                             "unknown scenario type"));
  CHECK(has_error_containing(parse_config("[meta]\nf_convention = other\n"),
                             "unsupported factor convention"));
  CHECK(has_error_containing(parse_config("[chain]\njust words\n"), "expected 'key = value'"));
  CHECK(parse_config("[meta]\nversion = 9.9.9\n").ok());
  CHECK(parse_config("; comment\n# another\n\n").ok());
}

TEST_CASE("csv metadata block round trips", "[config][csv]") {
  ExperimentConfig c;
  c.scenario = ScenarioType::ts_param;
  c.chain.L = 101;
  const std::string path = "tsteer_test_tmp.csv";
  {
    CsvWriter w(path);
    w.metadata(serialize_config(c));
    w.header({"t", "re_f"});
    w.row({CsvWriter::cell(0.5), CsvWriter::cell(0.25)});
  }
  const std::string text = read_file(path);
  CHECK(text.rfind("# [chain]", 0) == 0);
  CHECK(text.find("t,re_f\n0.5,0.25\n") != std::string::npos);
  const ParseResult r = parse_csv_metadata(text);
  REQUIRE(r.ok());
  CHECK(r.config == c);
  std::remove(path.c_str());

  const ParseResult none = parse_csv_metadata("t,re_f\n0,1\n");
  CHECK(has_error_containing(none, "no metadata block"));
}

TEST_CASE("csv writer failures surface as io errors", "[csv]") {
  CHECK_THROWS_AS(CsvWriter("/nonexistent_dir_tsteer/out.csv"), io_error);
  CHECK_THROWS_AS(read_file("/nonexistent_dir_tsteer/in.csv"), io_error);
}

TEST_CASE("cell formatting", "[csv]") {
  CHECK(CsvWriter::cell(0.5) == "0.5");
  CHECK(CsvWriter::cell(4.0) == "4");
  CHECK(CsvWriter::cell(0.05) == "0.050000000000000003");
  CHECK(CsvWriter::cell(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(CsvWriter::cell(7) == "7");
  CHECK(CsvWriter::cell(std::string("abc")) == "abc");
}

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tsteer/chain.hpp"
#include "tsteer/version.hpp"

namespace tsteer {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScenarioType { factor, ts_param, weight, power, phase_map, oracle_audit };

inline const char* scenario_name(ScenarioType s) {
  switch (s) {
    case ScenarioType::factor: return "factor";
    case ScenarioType::ts_param: return "ts-param";
    case ScenarioType::weight: return "weight";
    case ScenarioType::power: return "power";
    case ScenarioType::phase_map: return "phase-map";
    case ScenarioType::oracle_audit: return "oracle-audit";
  }
  return "unknown";
}

// Full experiment description. Everything that affects the numbers lives
// here; output path and worker count are deliberately excluded so that a run
// can be reproduced from the metadata echoed into its CSV.
struct ExperimentConfig {
  ChainParams chain;
  ScenarioType scenario = ScenarioType::factor;

  double t_start = 0.0;
  double t_stop = 5.0;
  double t_step = 0.05;

  int n_meas = 2;
  std::string axes = "equatorial";  // equatorial | z-pair | angles
  double theta = 0.0;
  double phi = 1.5707963267948966;

  double power_t_b = 10.0;
  double power_t_step = 0.1;
  int power_samples = 200;
  std::uint64_t seed = 1;
  double lambda_start = -1.5;
  double lambda_stop = 1.5;
  double lambda_step = 0.05;

  double gamma_start = 0.05;
  double gamma_stop = 1.0;
  double gamma_step = 0.05;

  double sdp_gap = 1e-8;

  bool operator==(const ExperimentConfig&) const = default;

  // Angles actually used by measurement-based scenarios.
  std::pair<double, double> effective_angles() const {
    if (axes == "equatorial") return {0.0, std::acos(-1.0) / 2.0};
    if (axes == "z-pair") return {0.0, 0.0};
    return {theta, phi};
  }
};

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline bool parse_double(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end != s.c_str() && *end == '\0';
}

inline bool parse_int(const std::string& s, int& out) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') return false;
  out = static_cast<int>(v);
  return out == v;
}

inline bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty() || s[0] == '-') return false;
  char* end = nullptr;
  out = std::strtoull(s.c_str(), &end, 10);
  return end != s.c_str() && *end == '\0';
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

inline std::string serialize_config(const ExperimentConfig& c) {
  using detail::format_double;
  std::string s;
  auto line = [&](const std::string& l) {
    s += l;
    s += '\n';
  };
  line("[chain]");
  line("L = " + std::to_string(c.chain.L));
  line("gamma = " + format_double(c.chain.gamma));
  line("lambda = " + format_double(c.chain.lambda));
  line("g = " + format_double(c.chain.g));
  line("[scenario]");
  line(std::string("type = ") + scenario_name(c.scenario));
  line("[grid]");
  line("t_start = " + format_double(c.t_start));
  line("t_stop = " + format_double(c.t_stop));
  line("t_step = " + format_double(c.t_step));
  line("[measurement]");
  line("n = " + std::to_string(c.n_meas));
  line("axes = " + c.axes);
  line("theta = " + format_double(c.theta));
  line("phi = " + format_double(c.phi));
  line("[power]");
  line("t_b = " + format_double(c.power_t_b));
  line("t_step = " + format_double(c.power_t_step));
  line("samples = " + std::to_string(c.power_samples));
  line("seed = " + std::to_string(c.seed));
  line("lambda_start = " + format_double(c.lambda_start));
  line("lambda_stop = " + format_double(c.lambda_stop));
  line("lambda_step = " + format_double(c.lambda_step));
  line("[phase_map]");
  line("gamma_start = " + format_double(c.gamma_start));
  line("gamma_stop = " + format_double(c.gamma_stop));
  line("gamma_step = " + format_double(c.gamma_step));
  line("[tolerance]");
  line("sdp_gap = " + format_double(c.sdp_gap));
  line("[meta]");
  line(std::string("version = ") + version);
  line(std::string("f_convention = ") + f_convention);
  return s;
}

struct ParseResult {
  ExperimentConfig config;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

// Parses the config text, collecting every problem instead of stopping at the
// first. Unknown sections and keys are errors; semantic range checks run after
// parsing so a single pass reports both kinds of issue with line numbers.
inline ParseResult parse_config(const std::string& text) {
  ParseResult res;
  ExperimentConfig& c = res.config;
  auto err = [&](int ln, const std::string& msg) {
    res.errors.push_back("line " + std::to_string(ln) + ": " + msg);
  };

  std::string section;
  int ln = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string raw = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++ln;
    std::string lineText = detail::trim(raw);
    if (lineText.empty() || lineText[0] == '#' || lineText[0] == ';') continue;
    if (lineText.front() == '[') {
      if (lineText.back() != ']') {
        err(ln, "malformed section header '" + lineText + "'");
        continue;
      }
      section = lineText.substr(1, lineText.size() - 2);
      if (section != "chain" && section != "scenario" && section != "grid" &&
          section != "measurement" && section != "power" && section != "phase_map" &&
          section != "tolerance" && section != "meta")
        err(ln, "unknown section '" + section + "'");
      continue;
    }
    const std::size_t eq = lineText.find('=');
    if (eq == std::string::npos) {
      err(ln, "expected 'key = value', got '" + lineText + "'");
      continue;
    }
    const std::string key = detail::trim(lineText.substr(0, eq));
    const std::string val = detail::trim(lineText.substr(eq + 1));
    if (section.empty()) {
      err(ln, "key '" + key + "' appears before any section header");
      continue;
    }

    auto want_double = [&](double& target) {
      if (!detail::parse_double(val, target)) err(ln, "key '" + key + "': not a number: '" + val + "'");
    };
    auto want_int = [&](int& target) {
      if (!detail::parse_int(val, target)) err(ln, "key '" + key + "': not an integer: '" + val + "'");
    };

    bool handled = true;
    if (section == "chain") {
      if (key == "L") want_int(c.chain.L);
      else if (key == "gamma") want_double(c.chain.gamma);
      else if (key == "lambda") want_double(c.chain.lambda);
      else if (key == "g") want_double(c.chain.g);
      else handled = false;
    } else if (section == "scenario") {
      if (key == "type") {
        bool found = false;
        for (ScenarioType t : {ScenarioType::factor, ScenarioType::ts_param, ScenarioType::weight,
                               ScenarioType::power, ScenarioType::phase_map,
                               ScenarioType::oracle_audit})
          if (val == scenario_name(t)) {
            c.scenario = t;
            found = true;
          }
        if (!found) err(ln, "unknown scenario type '" + val + "'");
      } else
        handled = false;
    } else if (section == "grid") {
      if (key == "t_start") want_double(c.t_start);
      else if (key == "t_stop") want_double(c.t_stop);
      else if (key == "t_step") want_double(c.t_step);
      else handled = false;
    } else if (section == "measurement") {
      if (key == "n") want_int(c.n_meas);
      else if (key == "axes") c.axes = val;
      else if (key == "theta") want_double(c.theta);
      else if (key == "phi") want_double(c.phi);
      else handled = false;
    } else if (section == "power") {
      if (key == "t_b") want_double(c.power_t_b);
      else if (key == "t_step") want_double(c.power_t_step);
      else if (key == "samples") want_int(c.power_samples);
      else if (key == "seed") {
        if (!detail::parse_u64(val, c.seed)) err(ln, "key 'seed': not an unsigned integer: '" + val + "'");
      } else if (key == "lambda_start") want_double(c.lambda_start);
      else if (key == "lambda_stop") want_double(c.lambda_stop);
      else if (key == "lambda_step") want_double(c.lambda_step);
      else handled = false;
    } else if (section == "phase_map") {
      if (key == "gamma_start") want_double(c.gamma_start);
      else if (key == "gamma_stop") want_double(c.gamma_stop);
      else if (key == "gamma_step") want_double(c.gamma_step);
      else handled = false;
    } else if (section == "tolerance") {
      if (key == "sdp_gap") want_double(c.sdp_gap);
      else handled = false;
    } else if (section == "meta") {
      if (key == "version") {
        // Recorded for traceability; any value parses.
      } else if (key == "f_convention") {
        if (val != f_convention) err(ln, "unsupported factor convention '" + val + "'");
      } else
        handled = false;
    } else {
      continue;  // unknown section already reported
    }
    if (!handled) err(ln, "unknown key '" + key + "' in section [" + section + "]");
  }

  // Semantic checks on the assembled config.
  auto serr = [&](const std::string& msg) { res.errors.push_back("config: " + msg); };
  if (c.chain.L < 3 || c.chain.L % 2 == 0) serr("chain L must be odd and >= 3");
  if (!(c.chain.gamma >= 0.0 && c.chain.gamma <= 1.0)) serr("chain gamma must lie in [0, 1]");
  if (!std::isfinite(c.chain.lambda)) serr("chain lambda must be finite");
  if (!(c.chain.g >= 0.0) || !std::isfinite(c.chain.g)) serr("chain g must be finite and >= 0");
  if (!(c.t_step > 0.0)) serr("grid t_step must be positive");
  if (!(c.t_start >= 0.0)) serr("grid t_start must be >= 0");
  if (!(c.t_stop >= c.t_start)) serr("grid t_stop must be >= t_start");
  if (c.n_meas != 2 && c.n_meas != 3) serr("measurement n must be 2 or 3");
  if (c.axes != "equatorial" && c.axes != "z-pair" && c.axes != "angles")
    serr("measurement axes must be one of equatorial, z-pair, angles");
  if (!std::isfinite(c.theta) || !std::isfinite(c.phi)) serr("measurement angles must be finite");
  if (!(c.power_t_b > 0.0)) serr("power t_b must be positive");
  if (!(c.power_t_step > 0.0 && c.power_t_step <= c.power_t_b))
    serr("power t_step must lie in (0, t_b]");
  if (c.power_samples < 1) serr("power samples must be >= 1");
  if (!(c.lambda_step > 0.0)) serr("power lambda_step must be positive");
  if (!(c.lambda_stop >= c.lambda_start)) serr("power lambda_stop must be >= lambda_start");
  if (!(c.gamma_step > 0.0)) serr("phase_map gamma_step must be positive");
  if (!(c.gamma_stop >= c.gamma_start)) serr("phase_map gamma_stop must be >= gamma_start");
  if (!(c.gamma_start >= 0.0 && c.gamma_stop <= 1.0))
    serr("phase_map gamma grid must lie in [0, 1]");
  if (!(c.sdp_gap >= 1e-10)) serr("tolerance sdp_gap must be >= 1e-10");
  return res;
}

// Pulls the leading "# " comment block out of an emitted CSV and parses it as
// a config, enabling exact reruns from an output file.
inline ParseResult parse_csv_metadata(const std::string& csv_text) {
  std::string cfg;
  std::size_t pos = 0;
  while (pos < csv_text.size()) {
    const std::size_t nl = csv_text.find('\n', pos);
    const std::string line =
        csv_text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    if (line.rfind("# ", 0) != 0) break;
    cfg += line.substr(2);
    cfg += '\n';
    pos = nl == std::string::npos ? csv_text.size() : nl + 1;
  }
  if (cfg.empty()) {
    ParseResult r;
    r.errors.push_back("no metadata block found at the top of the CSV");
    return r;
  }
  return parse_config(cfg);
}

}  // namespace tsteer

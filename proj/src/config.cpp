#include "mmd2d/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mmd2d/units.hpp"

namespace mmd2d::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "on" || text == "true" || text == "yes" || text == "1") return true;
  if (text == "off" || text == "false" || text == "no" || text == "0") return false;
  throw ConfigError("invalid boolean for '" + std::string(key) + "': '" + std::string(text) + "'");
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string model_spec(const AlignmentErrorModel& model) {
  if (const auto* u = std::get_if<UniformError>(&model)) return "uniform:" + format_double(u->eps0);
  if (const auto* g = std::get_if<TruncatedGaussianError>(&model)) {
    return "gaussian:" + format_double(g->s2) + ":" + format_double(g->eps0);
  }
  return "perfect";
}

std::string range_spec(const Range& r) {
  return format_double(r.lo) + ":" + format_double(r.hi) + ":" + format_double(r.step);
}

void validate_range(const Range& r, const char* name) {
  if (!(r.step > 0.0) || !(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    throw ValidationError(std::string(name) + ": require lo <= hi and step > 0");
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<double> Range::values() const {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    out.push_back(std::round(v * 1e9) / 1e9);
  }
  return out;
}

double parse_angle(std::string_view text) {
  text = trim(text);
  if (text.ends_with("pi")) {
    const auto head = trim(text.substr(0, text.size() - 2));
    const double factor = head.empty() ? 1.0 : parse_real("angle", head);
    return factor * std::numbers::pi;
  }
  if (text.ends_with("deg")) {
    return units::degrees_to_radians(parse_real("angle", text.substr(0, text.size() - 3)));
  }
  return parse_real("angle", text);
}

Range parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw ConfigError("range must be lo:hi:step, got '" + std::string(text) + "'");
  }
  return Range{parse_real("range", parts[0]), parse_real("range", parts[1]),
               parse_real("range", parts[2])};
}

AlignmentErrorModel parse_model(std::string_view text) {
  const auto parts = split(trim(text), ':');
  AlignmentErrorModel model;
  if (parts[0] == "perfect" && parts.size() == 1) {
    model = PerfectAlignment{};
  } else if (parts[0] == "uniform" && parts.size() == 2) {
    model = UniformError{parse_angle(parts[1])};
  } else if (parts[0] == "gaussian" && parts.size() == 3) {
    model = TruncatedGaussianError{parse_real("s2", parts[1]), parse_angle(parts[2])};
  } else {
    throw ConfigError("invalid error model '" + std::string(text) +
                      "' (expected perfect, uniform:<eps0> or gaussian:<s2>:<eps0>)");
  }
  validate(model);
  return model;
}

void apply_setting(RunConfig& c, std::string_view key_in, std::string_view value_in) {
  const auto key = trim(key_in);
  const auto value = trim(value_in);
  if (key == "g_m_dbi") c.g_m_dbi = parse_real(key, value);
  else if (key == "tau") c.tau = parse_real(key, value);
  else if (key == "lambda_per_km2") c.lambda_per_km2 = parse_real(key, value);
  else if (key == "r_m") c.r_m = parse_real(key, value);
  else if (key == "lambda_l_per_km2") {
    if (value == "auto") c.lambda_l_per_km2.reset();
    else c.lambda_l_per_km2 = parse_real(key, value);
  }
  else if (key == "p_d_w") c.p_d_w = parse_real(key, value);
  else if (key == "alpha") c.alpha = parse_real(key, value);
  else if (key == "c_db") c.c_db = parse_real(key, value);
  else if (key == "bandwidth_ghz") c.bandwidth_ghz = parse_real(key, value);
  else if (key == "carrier_ghz") c.carrier_ghz = parse_real(key, value);
  else if (key == "noise_figure_db") c.noise_figure_db = parse_real(key, value);
  else if (key == "d0_m") c.d0_m = parse_real(key, value);
  else if (key == "d_min_m") c.d_min_m = parse_real(key, value);
  else if (key == "error") {
    if (value != "perfect" && value != "uniform" && value != "gaussian" && !value.empty()) {
      throw ConfigError("error must be perfect, uniform or gaussian, got '" + std::string(value) + "'");
    }
    c.error = std::string(value);
  }
  else if (key == "eps0") c.eps0 = parse_angle(value);
  else if (key == "s2") c.s2 = parse_real(key, value);
  else if (key == "models") {
    c.models.clear();
    if (!value.empty()) {
      for (auto part : split(value, ';')) c.models.push_back(parse_model(part));
    }
  }
  else if (key == "gamma_db_range") c.gamma_db = parse_range(value);
  else if (key == "d0_grid_m") c.d0_grid_m = parse_range(value);
  else if (key == "distance_gamma_db") c.distance_gamma_db = parse_real(key, value);
  else if (key == "engine") {
    if (value == "analytic") c.engine = Engine::analytic;
    else if (value == "sim") c.engine = Engine::sim;
    else if (value == "both") c.engine = Engine::both;
    else throw ConfigError("engine must be analytic, sim or both, got '" + std::string(value) + "'");
  }
  else if (key == "iterations") c.iterations = parse_unsigned(key, value);
  else if (key == "seed") c.seed = parse_unsigned(key, value);
  else if (key == "los_mode") {
    if (value == "ball") c.los_mode = LosMode::ball;
    else if (value == "blockage") c.los_mode = LosMode::blockage;
    else throw ConfigError("los_mode must be ball or blockage, got '" + std::string(value) + "'");
  }
  else if (key == "blockages") c.blockages = parse_bool(key, value);
  else if (key == "blockage_per_km2") c.blockage_per_km2 = parse_real(key, value);
  else if (key == "blockage_min_m") c.blockage_min_m = parse_real(key, value);
  else if (key == "blockage_max_m") c.blockage_max_m = parse_real(key, value);
  else if (key == "region_km") c.region_km = parse_real(key, value);
  else if (key == "calibration_iterations") c.calibration_iterations = parse_unsigned(key, value);
  else if (key == "gain_samples") c.gain_samples = parse_unsigned(key, value);
  else if (key == "gain_grid_points") c.gain_grid_points = parse_unsigned(key, value);
  else if (key == "interference_realizations") c.interference_realizations = parse_unsigned(key, value);
  else if (key == "interference_lambda_per_km2") c.interference_lambda_per_km2 = parse_real(key, value);
  else throw ConfigError("unknown key '" + std::string(key) + "'");
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    auto line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
      }
      try {
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
      } catch (const ValidationError& e) {
        throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return base;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config_text(ss.str(), std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void RunConfig::validate() const {
  if (!std::isfinite(g_m_dbi)) throw ValidationError("g_m_dbi must be finite");
  pattern().validate();
  if (!(lambda_per_km2 >= 0.0)) throw ValidationError("lambda_per_km2 must be >= 0");
  if (!(r_m > 0.0)) throw ValidationError("r_m must be > 0");
  if (!(region_km > 0.0)) throw ValidationError("region_km must be > 0");
  if (r_m > 500.0 * region_km) throw ValidationError("r_m must fit inside the simulation region");
  if (lambda_l_per_km2 && !(*lambda_l_per_km2 >= 0.0 && *lambda_l_per_km2 <= lambda_per_km2)) {
    throw ValidationError("lambda_l_per_km2 must lie in [0, lambda_per_km2]");
  }
  if (!(p_d_w > 0.0)) throw ValidationError("p_d_w must be > 0");
  if (!(alpha > 2.0)) {
    throw ValidationError("alpha must exceed 2 so that delta = 2/alpha lies in (0, 1)");
  }
  if (!(bandwidth_ghz > 0.0)) throw ValidationError("bandwidth_ghz must be > 0");
  if (!(d0_m > 0.0)) throw ValidationError("d0_m must be > 0");
  if (!(d_min_m > 0.0)) throw ValidationError("d_min_m must be > 0");
  if (!(eps0 > 0.0 && eps0 < std::numbers::pi)) throw ValidationError("eps0 must lie in (0, pi)");
  if (!(s2 > 0.0)) throw ValidationError("s2 must be > 0");
  for (const auto& m : models) mmd2d::validate(m);
  validate_range(gamma_db, "gamma_db_range");
  validate_range(d0_grid_m, "d0_grid_m");
  if (!(d0_grid_m.lo > 0.0)) throw ValidationError("d0_grid_m: distances must be > 0");
  if (iterations < 1) throw ValidationError("iterations must be >= 1");
  if (!(blockage_per_km2 >= 0.0)) throw ValidationError("blockage_per_km2 must be >= 0");
  if (!(blockage_min_m > 0.0 && blockage_max_m >= blockage_min_m)) {
    throw ValidationError("blockage sizes: require 0 < blockage_min_m <= blockage_max_m");
  }
  if (calibration_iterations < 1) throw ValidationError("calibration_iterations must be >= 1");
  if (gain_samples < 10'000) throw ValidationError("gain_samples must be >= 10000");
  if (gain_grid_points < 2) throw ValidationError("gain_grid_points must be >= 2");
  if (interference_realizations < 1'000) {
    throw ValidationError("interference_realizations must be >= 1000");
  }
  if (!(interference_lambda_per_km2 >= 0.0)) {
    throw ValidationError("interference_lambda_per_km2 must be >= 0");
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  std::string model_list;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (i) model_list += "; ";
    model_list += model_spec(models[i]);
  }
  const char* engine_name = engine == Engine::analytic ? "analytic" : engine == Engine::sim ? "sim" : "both";
  return {
      {"g_m_dbi", format_double(g_m_dbi)},
      {"tau", format_double(tau)},
      {"lambda_per_km2", format_double(lambda_per_km2)},
      {"r_m", format_double(r_m)},
      {"lambda_l_per_km2", lambda_l_per_km2 ? format_double(*lambda_l_per_km2) : "auto"},
      {"p_d_w", format_double(p_d_w)},
      {"alpha", format_double(alpha)},
      {"c_db", format_double(c_db)},
      {"bandwidth_ghz", format_double(bandwidth_ghz)},
      {"carrier_ghz", format_double(carrier_ghz)},
      {"noise_figure_db", format_double(noise_figure_db)},
      {"d0_m", format_double(d0_m)},
      {"d_min_m", format_double(d_min_m)},
      {"error", error},
      {"eps0", format_double(eps0)},
      {"s2", format_double(s2)},
      {"models", model_list},
      {"gamma_db_range", range_spec(gamma_db)},
      {"d0_grid_m", range_spec(d0_grid_m)},
      {"distance_gamma_db", format_double(distance_gamma_db)},
      {"engine", engine_name},
      {"iterations", std::to_string(iterations)},
      {"seed", std::to_string(seed)},
      {"los_mode", los_mode == LosMode::ball ? "ball" : "blockage"},
      {"blockages", blockages ? "on" : "off"},
      {"blockage_per_km2", format_double(blockage_per_km2)},
      {"blockage_min_m", format_double(blockage_min_m)},
      {"blockage_max_m", format_double(blockage_max_m)},
      {"region_km", format_double(region_km)},
      {"calibration_iterations", std::to_string(calibration_iterations)},
      {"gain_samples", std::to_string(gain_samples)},
      {"gain_grid_points", std::to_string(gain_grid_points)},
      {"interference_realizations", std::to_string(interference_realizations)},
      {"interference_lambda_per_km2", format_double(interference_lambda_per_km2)},
  };
}

AntennaPattern RunConfig::pattern() const {
  return AntennaPattern{units::db_to_linear(g_m_dbi), tau};
}

LinkBudget RunConfig::budget() const {
  LinkBudget b;
  b.p_d_w = p_d_w;
  b.c_intercept = units::db_to_linear(c_db);
  b.alpha = alpha;
  b.sigma2_w = units::dbm_to_watts(noise_power_dbm(bandwidth_ghz * 1e9, noise_figure_db));
  return b;
}

}  // namespace mmd2d::cli

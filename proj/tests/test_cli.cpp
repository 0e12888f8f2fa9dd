#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mmd2d/commands.hpp"
#include "mmd2d/config.hpp"
#include "mmd2d/units.hpp"

using namespace mmd2d;
using namespace mmd2d::units;
using namespace mmd2d::cli;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("empty config gives the reference defaults") {
  const auto c = parse_config_text("");
  CHECK(c.lambda_per_km2 == 50.0);
  CHECK(c.r_m == 300.0);
  CHECK(c.p_d_w == 1.0);
  CHECK(c.alpha == 2.1);
  CHECK(c.c_db == -62.0);
  CHECK(c.bandwidth_ghz == 1.0);
  CHECK(c.carrier_ghz == 28.0);
  CHECK(c.g_m_dbi == 10.0);
  CHECK(c.tau == 3.0);
  CHECK(c.pattern().g_m == doctest::Approx(10.0));
  CHECK(watts_to_dbm(c.budget().sigma2_w) == doctest::Approx(-74.0));
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("angles") {
  CHECK(parse_angle("0.4pi") == doctest::Approx(0.4 * kPi));
  CHECK(parse_angle("pi") == doctest::Approx(kPi));
  CHECK(parse_angle("45deg") == doctest::Approx(kPi / 4.0));
  CHECK(parse_angle("1.25") == 1.25);
  CHECK_THROWS_AS(parse_angle("abc"), ConfigError);
  CHECK(parse_config_text("eps0 = 0.4pi").eps0 == doctest::Approx(0.4 * kPi));
}

TEST_CASE("invalid settings are rejected with context") {
  CHECK_THROWS_AS(parse_config_text("alpha = 1.9").validate(), ValidationError);
  try {
    parse_config_text("alpha = 1.9").validate();
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("alpha") != std::string::npos);
  }
  try {
    parse_config_text("tau = 3\n\nbogus_key = 1\n");
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("bogus_key") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("tau = three"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("just a line"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("engine = quantum"), ConfigError);
}

TEST_CASE("comments, ranges and models") {
  const auto c = parse_config_text(
      "# header\n"
      "tau = 2   # inline\n"
      "gamma_db_range = -5:5:2.5\n"
      "models = perfect; uniform:0.2pi; gaussian:4:0.4pi\n");
  CHECK(c.tau == 2.0);
  CHECK(c.gamma_db.values() == std::vector<double>{-5.0, -2.5, 0.0, 2.5, 5.0});
  REQUIRE(c.models.size() == 3);
  CHECK(describe(c.models[2]) == "gaussian:s2=4:eps0=0.4pi");
  CHECK_THROWS_AS(parse_model("laplace:1"), ConfigError);
  CHECK_THROWS_AS(parse_range("1:2"), ConfigError);
}

TEST_CASE("entries round-trip through the parser") {
  auto c = parse_config_text("tau = 2.5\nmodels = uniform:0.3pi\nlos_mode = blockage\nlambda_l_per_km2 = 33\n");
  std::string text;
  for (const auto& [k, v] : c.entries()) text += k + " = " + v + "\n";
  const auto back = parse_config_text(text);
  CHECK(back.entries() == c.entries());
  CHECK(config_digest(back) == config_digest(c));
  c.seed = 99;
  CHECK(config_digest(back) != config_digest(c));
}

TEST_CASE("number formatting and hashing") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(0.4 * kPi)) == 0.4 * kPi);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("model selection") {
  RunConfig c;
  CHECK(selected_models(c, Command::coverage).size() == 4);
  CHECK(selected_models(c, Command::gain_cdf).size() == 4);
  c.error = "uniform";
  const auto one = selected_models(c, Command::coverage);
  REQUIRE(one.size() == 1);
  CHECK(describe(one[0]) == "uniform:eps0=0.4pi");
}

TEST_CASE("coverage command layout") {
  RunConfig c;
  c.engine = Engine::analytic;
  c.lambda_l_per_km2 = 40.0;
  c.gamma_db = Range{-10.0, 10.0, 10.0};
  c.error = "perfect";
  const auto csv = cmd_coverage(c, 1);
  CHECK(csv.find("# config_digest = ") != std::string::npos);
  CHECK(csv.find("# resolved_") != std::string::npos);
  const auto lines = data_lines(csv);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "model,gamma_db,analytic");
  CHECK(lines[1].rfind("perfect,-10,", 0) == 0);

  c.engine = Engine::both;
  c.iterations = 200;
  c.region_km = 2.0;
  const auto both = data_lines(cmd_coverage(c, 1));
  CHECK(both[0] == "model,gamma_db,analytic,sim,ci_low,ci_high");
  CHECK(cmd_coverage(c, 1) == cmd_coverage(c, 3));
}

TEST_CASE("gain cdf command") {
  RunConfig c;
  c.error = "perfect";
  c.gain_samples = 10'000;
  c.gain_grid_points = 11;
  const auto lines = data_lines(cmd_gain_cdf(c, 1));
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "model,gain,closed_form_cdf,empirical_cdf,ks");
  // Perfect alignment: a single step at g_m.
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) CHECK(lines[i].find(",0.000000,0.000000,") != std::string::npos);
}

TEST_CASE("interference cdf command with no transmitters") {
  RunConfig c;
  c.interference_lambda_per_km2 = 0.0;
  c.interference_realizations = 1000;
  c.region_km = 2.0;
  const auto lines = data_lines(cmd_interference_cdf(c, 1));
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "interference_w,cdf_without_error,cdf_with_error,ks");
  CHECK(lines[1].rfind("0.000000e+00,1.000000,1.000000,", 0) == 0);
}

TEST_CASE("distance sweep with a single point") {
  RunConfig c;
  c.engine = Engine::analytic;
  c.lambda_l_per_km2 = 40.0;
  c.d0_grid_m = Range{50.0, 50.0, 10.0};
  c.error = "perfect";
  const auto lines = data_lines(cmd_distance_sweep(c, 1));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "model,d0_m,analytic");
}

TEST_CASE("calibrate-los command") {
  RunConfig c;
  c.calibration_iterations = 20;
  const auto lines = data_lines(cmd_calibrate_los(c, 1));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "p_l,std_error,candidates,retained,lambda_per_km2,lambda_l_per_km2");
  c.blockages = false;
  const auto los = resolve_los(c, 1);
  CHECK(los.p_l == 1.0);
  CHECK(los.source == "no-blockages");
  c.lambda_l_per_km2 = 25.0;
  CHECK(resolve_los(c, 1).source == "override");
  CHECK(resolve_los(c, 1).p_l == doctest::Approx(0.5));
}

// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "dwl/commands.hpp"
#include "dwl/config.hpp"

using namespace dwl;
using Catch::Matchers::ContainsSubstring;

namespace
{

std::vector<std::vector<std::string>> read_csv(const std::string& text)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
  {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ','))
    {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("empty config gives the reference defaults", "[config]")
{
  const RunConfig cfg = parse_config("");
  CHECK(cfg == RunConfig{});
  const Params p = cfg.params();
  CHECK(p.tau == 2.0);
  CHECK(p.xi == 2.0 * p.mu * p.tau);
  CHECK(p.shift == 1.5);
  CHECK(cfg.grid().dx() == 0.05);
  CHECK(cfg.grid().drho() == 0.05);
  CHECK(cfg.dt == 0.1);
  CHECK(cfg.data == "paper");
}

TEST_CASE("overrides apply and the rest is defaulted", "[config]")
{
  const RunConfig cfg = parse_config("mu = 1.5\nlaw = kelvin_voigt\n");
  CHECK(cfg.mu == 1.5);
  CHECK(cfg.law == DampingLaw::KelvinVoigt);
  CHECK(cfg.tau == 2.0);
  const Params p = cfg.params();
  CHECK(p.xi == 3.0);
  CHECK(p.shift == 0.0);
  CHECK(label_of(p) == SystemLabel::KelvinVoigt);
}

TEST_CASE("comments, blanks and scientific notation", "[config]")
{
  const RunConfig cfg = parse_config(
      "# experiment\n\n  dt=2.5e-2   # finer\nmu = +1E0\nbetas = 1, 2.5 ,1e1\nsystem = original\n");
  CHECK(cfg.dt == 0.025);
  CHECK(cfg.mu == 1.0);
  CHECK(cfg.betas == std::vector<double>{1.0, 2.5, 10.0});
  CHECK(cfg.system == SystemChoice::Original);
}

TEST_CASE("errors name the line and key", "[config]")
{
  auto expect_error = [](const std::string& text, int line, const std::string& key) {
    try
    {
      parse_config(text);
      FAIL("no error for: " << text);
    }
    catch (const ConfigError& e)
    {
      CHECK(e.line() == line);
      CHECK(e.key() == key);
      CHECK_THAT(e.what(), ContainsSubstring(key));
    }
  };
  expect_error("tau = -1", 1, "tau");
  expect_error("# c\ncolour = red", 2, "colour");
  expect_error("a = 1\nnx = 2.5", 2, "nx");
  expect_error("dt = fast", 1, "dt");
  expect_error("mu = 1\nmu = 2", 2, "mu");
  expect_error("law = plastic", 1, "law");
  expect_error("\n\nxi = 1", 3, "xi");  // below xi_star for the shifted default
  expect_error("nx = 1", 1, "nx");
  expect_error("window_fraction = 1", 1, "window_fraction");
  expect_error("betas = 2, 1", 1, "betas");
  CHECK_THROWS_AS(parse_config("just words"), ConfigError);
  CHECK_THROWS_AS(parse_config("= 3"), ConfigError);
}

TEST_CASE("serialize then parse is the identity", "[config]")
{
  RunConfig cfg;
  CHECK(parse_config(serialize_config(cfg)) == cfg);

  cfg.law = DampingLaw::KelvinVoigt;
  cfg.a = 0.1 + 0.2;  // not exactly representable in short decimal
  cfg.mu = 1.0 / 3.0;
  cfg.tau = 2.0 / 7.0;
  cfg.xi = cfg.mu * cfg.tau;
  cfg.nx = 37;
  cfg.nrho = 11;
  cfg.dt = 1e-3;
  cfg.t_end = 12.5;
  cfg.data = "smooth";
  cfg.snapshot_stride = 5;
  cfg.betas = {0.5, M_PI};
  cfg.region = ComplexRect{-2.0, 0.25, -7.0, 9.0};
  cfg.c = -0.75;
  cfg.c_star = true;
  cfg.vary = "tau";
  cfg.values = {1.0, 1e-7, 12345.678};
  cfg.out = "runs/kv.csv";
  CHECK(parse_config(serialize_config(cfg)) == cfg);
}

TEST_CASE("every key is accepted by apply_setting", "[config]")
{
  RunConfig cfg;
  for (const std::string& key : config_keys())
  {
    std::istringstream in(serialize_config(cfg));
    std::string line;
    while (std::getline(in, line))
    {
      if (line.rfind(key + " =", 0) == 0)
      {
        CHECK_NOTHROW(apply_setting(cfg, key, line.substr(key.size() + 2)));
      }
    }
  }
  CHECK_THROWS_AS(apply_setting(cfg, "bogus", "1"), ConfigError);
}

TEST_CASE("simulate CSV", "[commands]")
{
  RunConfig cfg;
  std::ostringstream out, err;
  REQUIRE(run_command(Command::Simulate, cfg, out, err) == kExitOk);
  const std::string text = out.str();
  CHECK(text.find('\r') == std::string::npos);
  const auto rows = read_csv(text);
  REQUIRE(rows.size() == 502);
  CHECK(rows[0] == std::vector<std::string>{"t", "E", "neg_log10_E"});
  // past the transient the energy in -log scale only climbs
  for (std::size_t k = 52; k < rows.size(); ++k)
  {
    CHECK(std::stod(rows[k][2]) >= std::stod(rows[k - 1][2]));
  }
  CHECK_THAT(err.str(), ContainsSubstring("exponential_decay"));

  std::ostringstream again, err2;
  run_command(Command::Simulate, cfg, again, err2);
  CHECK(again.str() == text);
}

TEST_CASE("other commands", "[commands]")
{
  RunConfig cfg;
  std::ostringstream out, err;

  REQUIRE(run_command(Command::Spectrum, cfg, out, err) == kExitOk);
  auto rows = read_csv(out.str());
  CHECK(rows[0] == std::vector<std::string>{"re", "im"});
  CHECK(rows.size() == 61);
  CHECK_THAT(err.str(), ContainsSubstring("spectral_abscissa"));

  out.str("");
  REQUIRE(run_command(Command::Resolvent, cfg, out, err) == kExitOk);
  rows = read_csv(out.str());
  CHECK(rows[0][0] == "beta");
  CHECK(rows[0][1] == "norm");
  CHECK(rows.size() == 8);

  out.str("");
  REQUIRE(run_command(Command::Charroots, cfg, out, err) == kExitOk);
  rows = read_csv(out.str());
  CHECK(rows[0] == std::vector<std::string>{"re", "im", "residual", "multiplicity"});
  CHECK(rows.size() > 1);

  out.str("");
  cfg.values = {1.0, 2.0};
  cfg.t_end = 5.0;
  REQUIRE(run_command(Command::Sweep, cfg, out, err) == kExitOk);
  rows = read_csv(out.str());
  CHECK(rows[0][0] == "mu");
  CHECK(rows.size() == 3);
}

TEST_CASE("robin command", "[commands]")
{
  RunConfig cfg;
  std::ostringstream out, err;
  cfg.c_star = true;
  REQUIRE(run_command(Command::Robin, cfg, out, err) == kExitOk);
  CHECK(out.str() == "c_star: -1.0000000000\n");
  out.str("");
  cfg.c_star = false;
  cfg.c = 0.0;
  REQUIRE(run_command(Command::Robin, cfg, out, err) == kExitOk);
  CHECK(out.str() == "C(0): 2.4674011003\n");
}

TEST_CASE("command exit codes", "[commands]")
{
  std::ostringstream out, err;
  RunConfig cfg;
  CHECK(run_command(Command::Sweep, cfg, out, err) == kExitConfig);  // values missing
  cfg.tau = -1.0;
  CHECK(run_command(Command::Simulate, cfg, out, err) == kExitConfig);
  cfg = RunConfig{};
  cfg.out = "/nonexistent-dir/x.csv";
  cfg.t_end = 1.0;
  CHECK(run_command(Command::Simulate, cfg, out, err) == kExitRuntime);
  CHECK(parse_command("verify") == Command::Verify);
  CHECK_FALSE(parse_command("plot"));
}

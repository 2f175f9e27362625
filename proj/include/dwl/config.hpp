// SPDX-License-Identifier: Apache-2.0

#ifndef DWL_CONFIG_HPP
#define DWL_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dwl/analysis.hpp"
#include "dwl/core.hpp"
#include "dwl/spectral.hpp"

namespace dwl
{

// Bad configuration text, unknown key or invalid value. line is 0 for command-line overrides
// and for rules that span several keys.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(int line, std::string key, const std::string& what);

  int line() const { return line_; }
  const std::string& key() const { return key_; }

private:
  int line_;
  std::string key_;
};

enum class SystemChoice
{
  Original,
  Shifted
};

//
// Flat experiment description. Defaults: tau = 2, xi = 2 mu tau (mu tau for Kelvin-Voigt),
// dx = drho = 1/20, dt = 0.1, data "paper", a = mu = 1.
//
struct RunConfig
{
  DampingLaw law = DampingLaw::InternalFriction;
  SystemChoice system = SystemChoice::Shifted;  // ignored for kelvin_voigt
  double a = 1.0;
  double mu = 1.0;
  double tau = 2.0;
  std::optional<double> xi;
  int nx = 20;
  int nrho = 20;
  double dt = 0.1;
  double t_end = 50.0;
  std::string data = "paper";
  int snapshot_stride = 0;
  double window_fraction = 0.5;
  double rate_threshold = 1e-4;
  double fit_threshold = 0.98;
  std::vector<double> betas{1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
  ComplexRect region{-5.0, 0.5, -20.0, 20.0};
  double c = 0.0;
  bool c_star = false;
  std::string vary = "mu";
  std::vector<double> values;
  std::string out;

  Params params() const;
  Grid grid() const;
  FitThresholds thresholds() const { return {rate_threshold, fit_threshold}; }

  bool operator==(const RunConfig&) const = default;
};

// Names accepted by parse_config, in serialization order.
const std::vector<std::string>& config_keys();

// `key = value` per line, `#` starts a comment. Applies defaults, then validates. Throws
// ConfigError.
RunConfig parse_config(std::string_view text);

// Sets a single key (same value syntax as the file format). Does not run check_config.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line = 0);

// Cross-key validation: model parameters, grid, time stepping and fit options.
void check_config(const RunConfig& cfg);

// Every key, one per line, reals with 17 significant digits. parse_config inverts it.
std::string serialize_config(const RunConfig& cfg);

// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_real(double x);

}  // namespace dwl

#endif  // DWL_CONFIG_HPP

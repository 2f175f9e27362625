// SPDX-License-Identifier: Apache-2.0

#include "dwl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace dwl
{

ConfigError::ConfigError(int line, std::string key, const std::string& what)
    : std::runtime_error(
          (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
          (key.empty() ? std::string() : "key '" + key + "': ") + what),
      line_(line),
      key_(std::move(key))
{
}

Params RunConfig::params() const
{
  if (law == DampingLaw::KelvinVoigt)
  {
    Params p = Params::kelvin_voigt(a, mu, tau);
    if (xi)
    {
      p.xi = *xi;
    }
    return p;
  }
  const bool shifted = system == SystemChoice::Shifted;
  Params p = Params::internal_friction(a, mu, tau, xi.value_or(2.0 * mu * tau), shifted);
  return p;
}

Grid RunConfig::grid() const { return Grid::make(nx, nrho); }

std::string format_real(double x)
{
  if (std::isnan(x))
  {
    return "nan";
  }
  if (std::isinf(x))
  {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace
{

std::string_view trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
  {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view key, std::string_view v, int line)
{
  double x = 0.0;
  // from_chars rejects a leading '+'; accept it for hand-written files
  std::string_view body = v;
  if (!body.empty() && body.front() == '+')
  {
    body.remove_prefix(1);
  }
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), x);
  if (body.empty() || ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(x))
  {
    throw ConfigError(line, std::string(key), "expected a finite real, got '" + std::string(v) + "'");
  }
  return x;
}

int parse_int(std::string_view key, std::string_view v, int line)
{
  int x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
  {
    throw ConfigError(line, std::string(key), "expected an integer, got '" + std::string(v) + "'");
  }
  return x;
}

bool parse_bool(std::string_view key, std::string_view v, int line)
{
  if (v == "true" || v == "1")
  {
    return true;
  }
  if (v == "false" || v == "0")
  {
    return false;
  }
  throw ConfigError(line, std::string(key), "expected true or false, got '" + std::string(v) + "'");
}

std::vector<double> parse_list(std::string_view key, std::string_view v, int line)
{
  std::vector<double> out;
  if (v.empty())
  {
    return out;
  }
  std::size_t start = 0;
  while (true)
  {
    const auto comma = v.find(',', start);
    const auto item = trim(v.substr(start, comma == std::string_view::npos ? v.npos : comma - start));
    out.push_back(parse_real(key, item, line));
    if (comma == std::string_view::npos)
    {
      break;
    }
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<double>& xs)
{
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k)
  {
    if (k > 0)
    {
      s += ",";
    }
    s += format_real(xs[k]);
  }
  return s;
}

}  // namespace

const std::vector<std::string>& config_keys()
{
  static const std::vector<std::string> keys{
      "law",     "system",          "a",
      "mu",      "tau",             "xi",
      "nx",      "nrho",            "dt",
      "t_end",   "data",            "snapshot_stride",
      "window_fraction", "rate_threshold", "fit_threshold",
      "betas",   "re_min",          "re_max",
      "im_min",  "im_max",          "c",
      "c_star",  "vary",            "values",
      "out"};
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line)
{
  const std::string k(key);
  const auto v = trim(value);
  if (k == "law")
  {
    if (v == "internal_friction")
    {
      cfg.law = DampingLaw::InternalFriction;
    }
    else if (v == "kelvin_voigt")
    {
      cfg.law = DampingLaw::KelvinVoigt;
    }
    else
    {
      throw ConfigError(line, k, "expected internal_friction or kelvin_voigt, got '" + std::string(v) + "'");
    }
  }
  else if (k == "system")
  {
    if (v == "original")
    {
      cfg.system = SystemChoice::Original;
    }
    else if (v == "shifted")
    {
      cfg.system = SystemChoice::Shifted;
    }
    else
    {
      throw ConfigError(line, k, "expected original or shifted, got '" + std::string(v) + "'");
    }
  }
  else if (k == "a")
  {
    cfg.a = parse_real(k, v, line);
  }
  else if (k == "mu")
  {
    cfg.mu = parse_real(k, v, line);
  }
  else if (k == "tau")
  {
    cfg.tau = parse_real(k, v, line);
  }
  else if (k == "xi")
  {
    if (v.empty() || v == "auto")
    {
      cfg.xi.reset();
    }
    else
    {
      cfg.xi = parse_real(k, v, line);
    }
  }
  else if (k == "nx")
  {
    cfg.nx = parse_int(k, v, line);
  }
  else if (k == "nrho")
  {
    cfg.nrho = parse_int(k, v, line);
  }
  else if (k == "dt")
  {
    cfg.dt = parse_real(k, v, line);
  }
  else if (k == "t_end")
  {
    cfg.t_end = parse_real(k, v, line);
  }
  else if (k == "data")
  {
    cfg.data = std::string(v);
  }
  else if (k == "snapshot_stride")
  {
    cfg.snapshot_stride = parse_int(k, v, line);
  }
  else if (k == "window_fraction")
  {
    cfg.window_fraction = parse_real(k, v, line);
  }
  else if (k == "rate_threshold")
  {
    cfg.rate_threshold = parse_real(k, v, line);
  }
  else if (k == "fit_threshold")
  {
    cfg.fit_threshold = parse_real(k, v, line);
  }
  else if (k == "betas")
  {
    cfg.betas = parse_list(k, v, line);
  }
  else if (k == "re_min")
  {
    cfg.region.re_min = parse_real(k, v, line);
  }
  else if (k == "re_max")
  {
    cfg.region.re_max = parse_real(k, v, line);
  }
  else if (k == "im_min")
  {
    cfg.region.im_min = parse_real(k, v, line);
  }
  else if (k == "im_max")
  {
    cfg.region.im_max = parse_real(k, v, line);
  }
  else if (k == "c")
  {
    cfg.c = parse_real(k, v, line);
  }
  else if (k == "c_star")
  {
    cfg.c_star = parse_bool(k, v, line);
  }
  else if (k == "vary")
  {
    cfg.vary = std::string(v);
  }
  else if (k == "values")
  {
    cfg.values = parse_list(k, v, line);
  }
  else if (k == "out")
  {
    cfg.out = std::string(v);
  }
  else
  {
    throw ConfigError(line, k, "unknown key");
  }
}

void check_config(const RunConfig& cfg)
{
  try
  {
    validate_params(cfg.params());
    (void)cfg.grid();
  }
  catch (const ValidationError& e)
  {
    // messages open with the parameter name ("tau must be positive")
    std::string msg = e.what();
    std::string key = msg.substr(0, msg.find(' '));
    if (msg.rfind("kelvin_voigt requires xi", 0) == 0)
    {
      key = "xi";
    }
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
    {
      key.clear();
    }
    throw ConfigError(0, key, msg);
  }
  if (!(cfg.dt > 0.0))
  {
    throw ConfigError(0, "dt", "must be positive");
  }
  if (!(cfg.t_end > 0.0))
  {
    throw ConfigError(0, "t_end", "must be positive");
  }
  if (cfg.snapshot_stride < 0)
  {
    throw ConfigError(0, "snapshot_stride", "must be nonnegative");
  }
  if (!(cfg.window_fraction > 0.0 && cfg.window_fraction < 1.0))
  {
    throw ConfigError(0, "window_fraction", "must lie in (0,1)");
  }
  if (!(cfg.rate_threshold >= 0.0))
  {
    throw ConfigError(0, "rate_threshold", "must be nonnegative");
  }
  if (!(cfg.fit_threshold >= 0.0 && cfg.fit_threshold <= 1.0))
  {
    throw ConfigError(0, "fit_threshold", "must lie in [0,1]");
  }
  for (std::size_t k = 0; k < cfg.betas.size(); ++k)
  {
    if (!(cfg.betas[k] > 0.0) || (k > 0 && !(cfg.betas[k] > cfg.betas[k - 1])))
    {
      throw ConfigError(0, "betas", "must be positive and strictly increasing");
    }
  }
  if (!(cfg.region.re_min < cfg.region.re_max && cfg.region.im_min < cfg.region.im_max))
  {
    throw ConfigError(0, "re_min", "search rectangle is empty");
  }
  if (!parse_sweep_parameter(cfg.vary))
  {
    throw ConfigError(0, "vary", "expected a, mu or tau, got '" + cfg.vary + "'");
  }
  try
  {
    (void)builtin_initial_data(cfg.data);
  }
  catch (const ValidationError& e)
  {
    throw ConfigError(0, "data", e.what());
  }
}

RunConfig parse_config(std::string_view text)
{
  RunConfig cfg;
  std::map<std::string, int> where;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw))
  {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos)
    {
      s = s.substr(0, hash);
    }
    s = trim(s);
    if (s.empty())
    {
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
    {
      throw ConfigError(line, "", "expected 'key = value', got '" + std::string(s) + "'");
    }
    const std::string key(trim(s.substr(0, eq)));
    if (key.empty())
    {
      throw ConfigError(line, "", "missing key before '='");
    }
    if (const auto it = where.find(key); it != where.end())
    {
      throw ConfigError(line, key, "duplicate key (first set on line " + std::to_string(it->second) + ")");
    }
    where[key] = line;
    apply_setting(cfg, key, s.substr(eq + 1), line);
  }
  try
  {
    check_config(cfg);
  }
  catch (const ConfigError& e)
  {
    // point at the offending line when the rule names a single key
    const auto it = where.find(e.key());
    if (it != where.end())
    {
      throw ConfigError(it->second, e.key(), std::string(e.what()).substr(("key '" + e.key() + "': ").size()));
    }
    throw;
  }
  return cfg;
}

std::string serialize_config(const RunConfig& cfg)
{
  std::ostringstream o;
  o << "law = " << to_string(cfg.law) << "\n";
  o << "system = " << (cfg.system == SystemChoice::Shifted ? "shifted" : "original") << "\n";
  o << "a = " << format_real(cfg.a) << "\n";
  o << "mu = " << format_real(cfg.mu) << "\n";
  o << "tau = " << format_real(cfg.tau) << "\n";
  o << "xi = " << (cfg.xi ? format_real(*cfg.xi) : "auto") << "\n";
  o << "nx = " << cfg.nx << "\n";
  o << "nrho = " << cfg.nrho << "\n";
  o << "dt = " << format_real(cfg.dt) << "\n";
  o << "t_end = " << format_real(cfg.t_end) << "\n";
  o << "data = " << cfg.data << "\n";
  o << "snapshot_stride = " << cfg.snapshot_stride << "\n";
  o << "window_fraction = " << format_real(cfg.window_fraction) << "\n";
  o << "rate_threshold = " << format_real(cfg.rate_threshold) << "\n";
  o << "fit_threshold = " << format_real(cfg.fit_threshold) << "\n";
  o << "betas = " << join(cfg.betas) << "\n";
  o << "re_min = " << format_real(cfg.region.re_min) << "\n";
  o << "re_max = " << format_real(cfg.region.re_max) << "\n";
  o << "im_min = " << format_real(cfg.region.im_min) << "\n";
  o << "im_max = " << format_real(cfg.region.im_max) << "\n";
  o << "c = " << format_real(cfg.c) << "\n";
  o << "c_star = " << (cfg.c_star ? "true" : "false") << "\n";
  o << "vary = " << cfg.vary << "\n";
  o << "values = " << join(cfg.values) << "\n";
  o << "out = " << cfg.out << "\n";
  return o.str();
}

}  // namespace dwl

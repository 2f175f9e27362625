// SPDX-License-Identifier: Apache-2.0
//
// delay-wave-lab <command> [--config file] [--out file] [--key value ...]

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dwl/commands.hpp"
#include "dwl/config.hpp"

namespace
{

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw dwl::ConfigError(0, "", "cannot read config file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Finite-difference lab for the 1D wave equation with boundary delay damping"};
  app.set_version_flag("--version", "delay-wave-lab 0.1.0");

  std::string command;
  std::string config_path;
  app.add_option("command", command, "simulate | spectrum | resolvent | charroots | robin | sweep | verify")
      ->required()
      ->check(CLI::IsMember({"simulate", "spectrum", "resolvent", "charroots", "robin", "sweep",
                             "verify"}));
  app.add_option("--config", config_path, "key = value file; defaults apply when omitted")
      ->check(CLI::ExistingFile);

  // every config key doubles as an override; values use the file syntax
  std::map<std::string, std::string> overrides;
  for (const std::string& key : dwl::config_keys())
  {
    if (key == "c_star")
    {
      continue;
    }
    app.add_option_function<std::string>(
        "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
        "override '" + key + "'");
  }
  bool c_star = false;
  app.add_flag("--c-star,--c_star", c_star, "robin: print the critical constant instead of C(c)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp& e)
  {
    return app.exit(e);
  }
  catch (const CLI::CallForVersion& e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError& e)
  {
    app.exit(e);
    return dwl::kExitConfig;
  }

  dwl::RunConfig cfg;
  try
  {
    if (!config_path.empty())
    {
      cfg = dwl::parse_config(read_file(config_path));
    }
    for (const auto& [key, value] : overrides)
    {
      dwl::apply_setting(cfg, key, value, 0);
    }
    if (c_star)
    {
      cfg.c_star = true;
    }
  }
  catch (const dwl::ConfigError& e)
  {
    std::cerr << "config error: " << (config_path.empty() ? "" : config_path + ": ") << e.what()
              << "\n";
    return dwl::kExitConfig;
  }

  return dwl::run_command(*dwl::parse_command(command), cfg, std::cout, std::cerr);
}

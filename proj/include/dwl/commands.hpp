// SPDX-License-Identifier: Apache-2.0

#ifndef DWL_COMMANDS_HPP
#define DWL_COMMANDS_HPP

#include <optional>
#include <ostream>
#include <string_view>

#include "dwl/config.hpp"

namespace dwl
{

enum class Command
{
  Simulate,
  Spectrum,
  Resolvent,
  Charroots,
  Robin,
  Sweep,
  Verify
};

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c);

enum ExitCode : int
{
  kExitOk = 0,
  kExitRuntime = 1,
  kExitConfig = 2
};

// Runs one command. CSV goes to cfg.out when set, otherwise to `out`; the plain text summary
// goes to `out` when the CSV went to a file and to `err` otherwise, so stdout stays parseable.
// Errors are reported on `err`. Returns an ExitCode.
int run_command(Command cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace dwl

#endif  // DWL_COMMANDS_HPP

// SPDX-License-Identifier: Apache-2.0

#ifndef DWL_VERIFY_HPP
#define DWL_VERIFY_HPP

#include <string>
#include <vector>

namespace dwl
{

struct CheckResult
{
  std::string name;
  bool passed = false;
  std::string detail;
};

// Self-check of the library on fixed, seeded inputs: energy structure, contraction,
// spectral shift, Robin constants and decay classification. Takes a few seconds.
std::vector<CheckResult> run_verification_suite();

}  // namespace dwl

#endif  // DWL_VERIFY_HPP

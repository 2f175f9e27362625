// SPDX-License-Identifier: Apache-2.0

#ifndef DWL_ANALYSIS_HPP
#define DWL_ANALYSIS_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dwl/core.hpp"
#include "dwl/timestepper.hpp"

namespace dwl
{

enum class DecayClass
{
  ExponentialDecay,
  Growth,
  Undetermined
};

std::string_view to_string(DecayClass c);

struct FitThresholds
{
  double rate = 1e-4;
  double r_squared = 0.98;
};

// E(t) ~ amplitude * exp(-rate * t) on the tail window.
struct DecayFit
{
  double rate = 0.0;
  double amplitude = 0.0;
  double r_squared = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t samples = 0;
  DecayClass classification = DecayClass::Undetermined;
  std::string diagnostic;
};

// Least squares of log E against t over [t_last (1 - window_fraction), t_last]. An
// identically zero trace is reported as ExponentialDecay with rate = +inf. A diverged trace
// is classified as Growth regardless of the fitted slope.
DecayFit fit_decay(const SimulationTrace& trace, double window_fraction = 0.5,
                   const FitThresholds& thresholds = {});

struct PowerLawFit
{
  double exponent = 0.0;  // E(t) ~ t^{-exponent}
  double r_squared = 0.0;
  std::size_t samples = 0;
  std::string diagnostic;  // nonempty when the fit was not possible
};

// Least squares of log E against log t over the same tail window, skipping t = 0.
PowerLawFit polynomial_fit_decay(const SimulationTrace& trace, double window_fraction = 0.5);

enum class SweepParameter
{
  A,
  Mu,
  Tau
};

std::string_view to_string(SweepParameter s);
// Accepts "a", "mu", "tau".
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

struct SweepRow
{
  double value = 0.0;
  Params params;
  DecayFit fit;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  bool diverged = false;
  std::string error;  // nonempty when the row failed; the sweep continues
};

struct SweepTable
{
  SweepParameter parameter = SweepParameter::Mu;
  std::vector<SweepRow> rows;  // sorted by value
};

// Varies one parameter of `base`, keeping the ratio xi / (mu tau) of the base and
// recomputing the shift. With the default xi = 2 xi* (xi = xi* for Kelvin-Voigt) every row
// keeps that relation.
SweepTable sweep(const Params& base, const Grid& grid, const InitialData& data, double dt,
                 double t_end, SweepParameter vary, std::span<const double> values,
                 double window_fraction = 0.5, const FitThresholds& thresholds = {});

}  // namespace dwl

#endif  // DWL_ANALYSIS_HPP

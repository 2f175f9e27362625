// SPDX-License-Identifier: Apache-2.0

#include "dwl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dwl
{

std::string_view to_string(DecayClass c)
{
  switch (c)
  {
    case DecayClass::ExponentialDecay:
      return "exponential_decay";
    case DecayClass::Growth:
      return "growth";
    case DecayClass::Undetermined:
      return "undetermined";
  }
  return "unknown";
}

std::string_view to_string(SweepParameter s)
{
  switch (s)
  {
    case SweepParameter::A:
      return "a";
    case SweepParameter::Mu:
      return "mu";
    case SweepParameter::Tau:
      return "tau";
  }
  return "unknown";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name)
{
  if (name == "a")
  {
    return SweepParameter::A;
  }
  if (name == "mu")
  {
    return SweepParameter::Mu;
  }
  if (name == "tau")
  {
    return SweepParameter::Tau;
  }
  return std::nullopt;
}

namespace
{

struct LineFit
{
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
  {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0)
  {
    fit.r_squared = 1.0;
  }
  else
  {
    double ss_res = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
    {
      const double r = y[k] - (fit.intercept + fit.slope * x[k]);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

constexpr std::size_t kMinSamples = 10;

void check_window(double window_fraction)
{
  if (!(window_fraction > 0.0 && window_fraction < 1.0))
  {
    throw ValidationError("window_fraction must lie in (0,1)");
  }
}

}  // namespace

DecayFit fit_decay(const SimulationTrace& trace, double window_fraction,
                   const FitThresholds& thresholds)
{
  check_window(window_fraction);
  DecayFit fit;
  if (trace.times.empty())
  {
    fit.diagnostic = "empty trace";
    return fit;
  }
  if (std::all_of(trace.energies.begin(), trace.energies.end(),
                  [](double e) { return e == 0.0; }))
  {
    fit.rate = std::numeric_limits<double>::infinity();
    fit.r_squared = 1.0;
    fit.t_lo = trace.times.front();
    fit.t_hi = trace.times.back();
    fit.samples = trace.times.size();
    fit.classification = DecayClass::ExponentialDecay;
    fit.diagnostic = "identically zero";
    return fit;
  }

  const double t_end = trace.times.back();
  fit.t_lo = t_end * (1.0 - window_fraction);
  fit.t_hi = t_end;
  std::vector<double> ts, logs;
  for (std::size_t k = 0; k < trace.times.size(); ++k)
  {
    if (trace.times[k] >= fit.t_lo && trace.energies[k] > 0.0)
    {
      ts.push_back(trace.times[k]);
      logs.push_back(std::log(trace.energies[k]));
    }
  }
  fit.samples = ts.size();

  if (ts.size() < kMinSamples)
  {
    fit.diagnostic = "fewer than 10 positive-energy samples in the fit window";
    fit.classification = trace.diverged ? DecayClass::Growth : DecayClass::Undetermined;
    return fit;
  }

  const LineFit line = least_squares(ts, logs);
  fit.rate = -line.slope;
  fit.amplitude = std::exp(line.intercept);
  fit.r_squared = line.r_squared;
  if (trace.diverged || fit.rate < -thresholds.rate)
  {
    fit.classification = DecayClass::Growth;
  }
  else if (fit.rate > thresholds.rate && fit.r_squared > thresholds.r_squared)
  {
    fit.classification = DecayClass::ExponentialDecay;
  }
  else
  {
    fit.classification = DecayClass::Undetermined;
  }
  if (trace.diverged)
  {
    fit.diagnostic = "trace diverged";
  }
  return fit;
}

PowerLawFit polynomial_fit_decay(const SimulationTrace& trace, double window_fraction)
{
  check_window(window_fraction);
  PowerLawFit fit;
  if (trace.times.empty())
  {
    fit.diagnostic = "empty trace";
    return fit;
  }
  const double t_lo = trace.times.back() * (1.0 - window_fraction);
  std::vector<double> logt, loge;
  for (std::size_t k = 0; k < trace.times.size(); ++k)
  {
    if (trace.times[k] > 0.0 && trace.times[k] >= t_lo && trace.energies[k] > 0.0)
    {
      logt.push_back(std::log(trace.times[k]));
      loge.push_back(std::log(trace.energies[k]));
    }
  }
  fit.samples = logt.size();
  if (logt.size() < kMinSamples)
  {
    fit.diagnostic = "fewer than 10 positive-energy samples in the fit window";
    return fit;
  }
  const LineFit line = least_squares(logt, loge);
  fit.exponent = -line.slope;
  fit.r_squared = line.r_squared;
  return fit;
}

SweepTable sweep(const Params& base, const Grid& grid, const InitialData& data, double dt,
                 double t_end, SweepParameter vary, std::span<const double> values,
                 double window_fraction, const FitThresholds& thresholds)
{
  SweepTable table;
  table.parameter = vary;
  const double xi_ratio = base.xi / base.xi_star();
  const bool shifted = label_of(base) == SystemLabel::Shifted;

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  for (double value : sorted)
  {
    SweepRow row;
    row.value = value;
    Params p = base;
    switch (vary)
    {
      case SweepParameter::A:
        p.a = value;
        break;
      case SweepParameter::Mu:
        p.mu = value;
        break;
      case SweepParameter::Tau:
        p.tau = value;
        break;
    }
    p.xi = p.law == DampingLaw::KelvinVoigt ? p.mu * p.tau : xi_ratio * p.mu * p.tau;
    p.shift = shifted ? p.shift_constant() : 0.0;
    row.params = p;
    try
    {
      validate_params(p);
      const SimulationTrace trace = simulate(p, grid, data, dt, t_end);
      row.fit = fit_decay(trace, window_fraction, thresholds);
      row.initial_energy = trace.energies.front();
      row.final_energy = trace.energies.back();
      row.diverged = trace.diverged;
    }
    catch (const std::exception& e)
    {
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace dwl

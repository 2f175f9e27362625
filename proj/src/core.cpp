// SPDX-License-Identifier: Apache-2.0

#include "dwl/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dwl
{

std::string_view to_string(DampingLaw law)
{
  switch (law)
  {
    case DampingLaw::InternalFriction:
      return "internal_friction";
    case DampingLaw::KelvinVoigt:
      return "kelvin_voigt";
  }
  return "unknown";
}

std::string_view to_string(SystemLabel label)
{
  switch (label)
  {
    case SystemLabel::Original:
      return "original";
    case SystemLabel::Shifted:
      return "shifted";
    case SystemLabel::KelvinVoigt:
      return "kelvin_voigt";
  }
  return "unknown";
}

Params Params::internal_friction(double a, double mu, double tau, double xi, bool shifted)
{
  Params p{a, mu, tau, xi, DampingLaw::InternalFriction, 0.0};
  if (shifted)
  {
    p.shift = p.shift_constant();
  }
  return p;
}

Params Params::kelvin_voigt(double a, double mu, double tau)
{
  return Params{a, mu, tau, mu * tau, DampingLaw::KelvinVoigt, 0.0};
}

SystemLabel label_of(const Params& p)
{
  if (p.law == DampingLaw::KelvinVoigt)
  {
    return SystemLabel::KelvinVoigt;
  }
  return p.shift != 0.0 ? SystemLabel::Shifted : SystemLabel::Original;
}

namespace
{

bool nearly_equal(double x, double y)
{
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

void require(bool ok, const std::string& rule)
{
  if (!ok)
  {
    throw ValidationError(rule);
  }
}

}  // namespace

void require_assemblable(const Params& p)
{
  require(std::isfinite(p.tau) && p.tau > 0.0, "tau must be positive");
  require(std::isfinite(p.xi) && p.xi > 0.0, "xi must be positive");
  require(std::isfinite(p.a) && p.a >= 0.0, "a must be nonnegative");
  require(std::isfinite(p.mu) && p.mu >= 0.0, "mu must be nonnegative");
  require(std::isfinite(p.shift) && p.shift >= 0.0, "shift must be nonnegative");
}

CheckedParams validate_params(const Params& p)
{
  require(std::isfinite(p.tau) && p.tau > 0.0, "tau must be positive");
  require(std::isfinite(p.mu) && p.mu > 0.0, "mu must be positive");
  require(std::isfinite(p.xi) && p.xi > 0.0, "xi must be positive");
  require(std::isfinite(p.a) && p.a >= 0.0, "a must be nonnegative");
  require(std::isfinite(p.shift) && p.shift >= 0.0, "shift must be nonnegative");

  CheckedParams checked{p, std::nullopt};
  if (p.law == DampingLaw::KelvinVoigt)
  {
    require(p.shift == 0.0, "kelvin_voigt runs carry no shift");
    require(nearly_equal(p.xi, p.xi_star()), "kelvin_voigt requires xi = mu * tau");
    if (!(p.mu < std::abs(kCriticalRobinConstant1D) * p.a))
    {
      checked.advisory = "condition mu < a violated";
    }
  }
  else if (p.shift != 0.0)
  {
    require(p.xi > p.xi_star(), "xi must exceed xi_star = mu * tau for the shifted system");
    require(nearly_equal(p.shift, p.shift_constant()),
            "shift must equal xi / (2 tau) + mu / 2");
  }
  return checked;
}

Grid Grid::make(int nx, int nrho)
{
  require(nx >= 2, "nx must be at least 2");
  require(nrho >= 1, "nrho must be at least 1");
  return Grid{nx, nrho};
}

StateVector::StateVector(const Grid& grid)
  : grid_(grid), data_(Eigen::VectorXd::Zero(grid.state_dim()))
{
}

StateVector::StateVector(const Grid& grid, Eigen::VectorXd data)
  : grid_(grid), data_(std::move(data))
{
  if (data_.size() != grid_.state_dim())
  {
    throw ValidationError("state vector has dimension " + std::to_string(data_.size()) +
                          ", grid requires " + std::to_string(grid_.state_dim()));
  }
}

double StateVector::v(int i) const
{
  if (i == 0)
  {
    return 0.0;
  }
  if (i == grid_.nx)
  {
    return w();
  }
  return data_[grid_.v_offset() + i - 1];
}

InitialData steep_profile_initial_data()
{
  auto profile = [](double x) { return x * std::exp(10.0 * x); };
  return {profile, profile, [](double rho) { return std::exp(rho) * std::exp(10.0); }};
}

InitialData zero_initial_data()
{
  auto zero = [](double) { return 0.0; };
  return {zero, zero, zero};
}

InitialData ramp_initial_data()
{
  auto zero = [](double) { return 0.0; };
  return {[](double x) { return x; }, zero, zero};
}

InitialData smooth_initial_data()
{
  auto zero = [](double) { return 0.0; };
  return {[](double x) { return std::sin(0.5 * M_PI * x); }, zero, zero};
}

InitialData builtin_initial_data(std::string_view name)
{
  if (name == "paper")
  {
    return steep_profile_initial_data();
  }
  if (name == "zero")
  {
    return zero_initial_data();
  }
  if (name == "ramp")
  {
    return ramp_initial_data();
  }
  if (name == "smooth")
  {
    return smooth_initial_data();
  }
  throw ValidationError("unknown initial data set '" + std::string(name) +
                        "' (known: paper, zero, ramp, smooth)");
}

StateVector sample_initial_state(const InitialData& d, const Grid& g)
{
  StateVector state(g);
  for (int i = 1; i <= g.nx; ++i)
  {
    state.set_u(i, d.u0(g.x(i)));
  }
  for (int i = 1; i < g.nx; ++i)
  {
    state.set_v(i, d.u1(g.x(i)));
  }
  state.set_w(d.u1(1.0));
  for (int j = 1; j <= g.nrho; ++j)
  {
    state.set_z(j, d.f0(g.rho(j)));
  }
  return state;
}

}  // namespace dwl

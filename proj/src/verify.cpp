// SPDX-License-Identifier: Apache-2.0

#include "dwl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "dwl/analysis.hpp"
#include "dwl/config.hpp"
#include "dwl/discretization.hpp"
#include "dwl/spectral.hpp"
#include "dwl/timestepper.hpp"

namespace dwl
{

namespace
{

constexpr unsigned kSeed = 20240611u;

struct Draw
{
  double a, mu, tau;
};

std::vector<Draw> random_draws(int n, bool mu_below_a)
{
  std::mt19937 rng(kSeed);
  std::uniform_real_distribution<double> a(0.1, 3.0), mu(0.1, 3.0), tau(0.1, 5.0);
  std::vector<Draw> out;
  while (static_cast<int>(out.size()) < n)
  {
    Draw d{a(rng), mu(rng), tau(rng)};
    if (mu_below_a && d.mu > d.a)
    {
      std::swap(d.mu, d.a);
    }
    out.push_back(d);
  }
  return out;
}

std::string num(double x) { return format_real(x); }

CheckResult gram_positive_definite()
{
  const Params p = Params::internal_friction(1.0, 1.0, 2.0, 4.0, true);
  const Eigen::MatrixXd G = assemble_gram(p, Grid::make(20, 20));
  const Eigen::LLT<Eigen::MatrixXd> llt(G);
  return {"gram_positive_definite", llt.info() == Eigen::Success, ""};
}

CheckResult shift_identity()
{
  const Grid g = Grid::make(20, 20);
  for (const Draw& d : random_draws(20, false))
  {
    const Params s = Params::internal_friction(d.a, d.mu, d.tau, 2.0 * d.mu * d.tau, true);
    Params o = s;
    o.shift = 0.0;
    const auto As = assemble_generator(s, g, SystemLabel::Shifted).matrix;
    const auto Ao = assemble_generator(o, g, SystemLabel::Original).matrix;
    const Eigen::MatrixXd expect =
        Ao - s.shift_constant() * Eigen::MatrixXd::Identity(Ao.rows(), Ao.cols());
    if (As != expect)
    {
      return {"shift_identity", false, "mismatch at a=" + num(d.a) + " mu=" + num(d.mu)};
    }
  }
  return {"shift_identity", true, "20 draws"};
}

CheckResult dissipative(bool kelvin_voigt)
{
  const Grid g = Grid::make(20, 20);
  double worst = -std::numeric_limits<double>::infinity();
  for (const Draw& d : random_draws(10, kelvin_voigt))
  {
    const Params p = kelvin_voigt
                         ? Params::kelvin_voigt(d.a, d.mu, d.tau)
                         : Params::internal_friction(d.a, d.mu, d.tau, 2.0 * d.mu * d.tau, true);
    worst = std::max(worst, max_dissipation_rate(assemble_generator(p, g, label_of(p))));
  }
  return {kelvin_voigt ? "kelvin_voigt_dissipative" : "shifted_dissipative", worst <= 1e-12,
          "max dissipation rate " + num(worst)};
}

CheckResult upwind_telescoping()
{
  std::mt19937 rng(kSeed);
  std::normal_distribution<double> n01;
  const Grid g = Grid::make(20, 20);
  const Params p = Params::internal_friction(1.0, 1.0, 2.0, 4.0, false);
  for (int trial = 0; trial < 10; ++trial)
  {
    StateVector v(g);
    for (Eigen::Index k = 0; k < v.data().size(); ++k)
    {
      v.data()[k] = n01(rng);
    }
    const double lhs = delay_line_rayleigh(p, v);
    const double rhs = p.xi / (2.0 * p.tau) * (v.w() * v.w() - v.z(g.nrho) * v.z(g.nrho));
    if (lhs > rhs + 1e-12 * std::max(1.0, std::abs(rhs)))
    {
      return {"upwind_telescoping", false, "lhs " + num(lhs) + " > rhs " + num(rhs)};
    }
  }
  return {"upwind_telescoping", true, "10 random states"};
}

CheckResult contraction(bool kelvin_voigt)
{
  const Params p = kelvin_voigt ? Params::kelvin_voigt(1.0, 0.5, 2.0)
                                : Params::internal_friction(1.0, 1.0, 2.0, 4.0, true);
  const std::string name = kelvin_voigt ? "kelvin_voigt_contraction" : "shifted_contraction";
  for (double dt : {0.01, 0.1, 1.0})
  {
    const auto trace = simulate(p, Grid::make(20, 20), steep_profile_initial_data(), dt, 10.0);
    for (std::size_t k = 1; k < trace.energies.size(); ++k)
    {
      if (trace.energies[k] > trace.energies[k - 1] * (1.0 + 1e-12))
      {
        return {name, false, "energy grew at dt=" + num(dt) + " step " + std::to_string(k)};
      }
    }
  }
  return {name, true, "dt in {0.01, 0.1, 1}"};
}

CheckResult spectrum_shift()
{
  const Grid g = Grid::make(20, 20);
  const Params s = Params::internal_friction(1.0, 1.0, 2.0, 4.0, true);
  Params o = s;
  o.shift = 0.0;
  const auto es = eigenvalues(assemble_generator(s, g, SystemLabel::Shifted));
  const auto eo = eigenvalues(assemble_generator(o, g, SystemLabel::Original));
  double worst = 0.0;
  for (const Complex& z : es.eigenvalues)
  {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& y : eo.eigenvalues)
    {
      best = std::min(best, std::abs(z - (y - s.shift_constant())));
    }
    worst = std::max(worst, best / std::max(1.0, std::abs(z)));
  }
  const bool ok = worst <= 1e-10 && es.spectral_abscissa < 0.0;
  return {"spectrum_shift", ok,
          "max relative mismatch " + num(worst) + ", shifted abscissa " + num(es.spectral_abscissa)};
}

CheckResult robin_constants()
{
  const double c0 = robin_eigenvalue(0.0);
  const double cm1 = robin_eigenvalue(-1.0);
  const double cs = find_c_star();
  const bool ok = std::abs(c0 - M_PI * M_PI / 4.0) <= 1e-10 && std::abs(cm1) <= 1e-10 &&
                  std::abs(cs - kCriticalRobinConstant1D) <= 1e-8;
  return {"robin_constants", ok, "C(0)=" + num(c0) + " C(-1)=" + num(cm1) + " c*=" + num(cs)};
}

CheckResult robin_monotone()
{
  double prev = -std::numeric_limits<double>::infinity();
  for (double c : {-3.0, -2.0, -1.0, 0.0, 1.0, 2.0})
  {
    const double v = robin_eigenvalue(c);
    if (!(v > prev))
    {
      return {"robin_monotone", false, "not increasing at c=" + num(c)};
    }
    prev = v;
  }
  return {"robin_monotone", true, ""};
}

// first positive root of cot(theta) = theta
double undamped_frequency()
{
  double lo = 0.5, hi = 1.2;
  for (int it = 0; it < 200; ++it)
  {
    const double mid = 0.5 * (lo + hi);
    (std::cos(mid) - mid * std::sin(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

CheckResult undamped_root()
{
  Params p = Params::internal_friction(0.0, 1.0, 1.0, 2.0, false);
  p.mu = 0.0;
  const Grid g = Grid::make(20, 20);
  const auto spectrum = eigenvalues(assemble_generator(p, g, SystemLabel::Original));
  const double theta = undamped_frequency();
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& z : spectrum.eigenvalues)
  {
    best = std::min(best, std::abs(z - Complex(0.0, theta)));
  }
  return {"undamped_root", best <= 5.0 * g.dx(),
          "distance to i theta_1 " + num(best) + " (5 dx = " + num(5.0 * g.dx()) + ")"};
}

CheckResult classification(const std::string& name, const Params& p, DecayClass expect)
{
  const auto trace = simulate(p, Grid::make(20, 20), steep_profile_initial_data(), 0.1, 50.0);
  const DecayFit fit = fit_decay(trace);
  return {name, fit.classification == expect,
          std::string(to_string(fit.classification)) + ", rate " + num(fit.rate)};
}

CheckResult shift_consistency_order()
{
  const Params p = Params::internal_friction(1.0, 1.0, 2.0, 4.0, true);
  const Grid g = Grid::make(20, 20);
  const auto coarse = shift_consistency(p, g, steep_profile_initial_data(), 0.05, 5.0);
  const auto fine = shift_consistency(p, g, steep_profile_initial_data(), 0.025, 5.0);
  const double ratio = coarse.max_relative_residual / fine.max_relative_residual;
  const bool ok = coarse.generator_identity_exact && ratio >= 1.6 && ratio <= 2.4;
  return {"shift_consistency_order", ok, "residual ratio " + num(ratio)};
}

CheckResult resolvent_lower_bound()
{
  const Params p = Params::internal_friction(1.0, 1.0, 2.0, 4.0, true);
  const auto gen = assemble_generator(p, Grid::make(20, 20), SystemLabel::Shifted);
  const auto spectrum = eigenvalues(gen);
  for (double beta : {1.0, 4.0, 16.0})
  {
    const double n = resolvent_norm(gen, beta);
    const double bound = 1.0 / distance_to_spectrum(spectrum, beta);
    if (n < bound * (1.0 - 1e-8))
    {
      return {"resolvent_lower_bound", false, "beta " + num(beta) + ": " + num(n) + " < " + num(bound)};
    }
  }
  return {"resolvent_lower_bound", true, "beta in {1, 4, 16}"};
}

CheckResult shifted_roots_left()
{
  const Params p = Params::internal_friction(1.0, 1.0, 2.0, 4.0, true);
  const auto roots = characteristic_roots(p, ComplexRect{});
  double max_re = -std::numeric_limits<double>::infinity();
  for (const auto& r : roots)
  {
    max_re = std::max(max_re, r.lambda.real());
  }
  return {"shifted_roots_left_half_plane", !roots.empty() && max_re < 0.0,
          std::to_string(roots.size()) + " roots, max real part " + num(max_re)};
}

}  // namespace

std::vector<CheckResult> run_verification_suite()
{
  std::vector<std::function<CheckResult()>> checks{
      gram_positive_definite,
      shift_identity,
      [] { return dissipative(false); },
      [] { return dissipative(true); },
      upwind_telescoping,
      [] { return contraction(false); },
      [] { return contraction(true); },
      spectrum_shift,
      robin_constants,
      robin_monotone,
      undamped_root,
      [] {
        return classification("shifted_decay", Params::internal_friction(1.0, 2.0, 2.0, 8.0, true),
                              DecayClass::ExponentialDecay);
      },
      [] {
        return classification("original_growth",
                              Params::internal_friction(1.0, 2.0, 2.0, 8.0, false),
                              DecayClass::Growth);
      },
      [] {
        return classification("kelvin_voigt_decay", Params::kelvin_voigt(1.0, 0.5, 2.0),
                              DecayClass::ExponentialDecay);
      },
      shift_consistency_order,
      resolvent_lower_bound,
      shifted_roots_left,
  };
  std::vector<CheckResult> results;
  for (const auto& check : checks)
  {
    try
    {
      results.push_back(check());
    }
    catch (const std::exception& e)
    {
      results.push_back({"(check threw)", false, e.what()});
    }
  }
  return results;
}

}  // namespace dwl

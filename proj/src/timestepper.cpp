// SPDX-License-Identifier: Apache-2.0

#include "dwl/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dwl
{

BackwardEuler::BackwardEuler(const DiscreteGenerator& gen, double dt)
  : dt_(dt), label_(gen.label), grid_(gen.grid)
{
  if (!(dt > 0.0) || !std::isfinite(dt))
  {
    throw ValidationError("dt must be positive");
  }
  const Eigen::Index n = gen.matrix.rows();
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - dt * gen.matrix;
  lu_.compute(system);
  const double rcond = lu_.rcond();
  if (!(rcond > 1e-14))
  {
    std::ostringstream msg;
    msg << "I - dt A is singular for dt = " << dt << " (label " << to_string(gen.label)
        << ", reciprocal condition estimate " << rcond << ")";
    throw NumericError(msg.str());
  }
}

StateVector BackwardEuler::step(const StateVector& v) const
{
  if (v.size() != grid_.state_dim())
  {
    throw ValidationError("state dimension does not match the factorized generator");
  }
  return StateVector(grid_, lu_.solve(v.data()));
}

StateVector step(const DiscreteGenerator& gen, const StateVector& v, double dt)
{
  return BackwardEuler(gen, dt).step(v);
}

std::size_t step_count(double dt, double t_end)
{
  if (!(dt > 0.0) || !std::isfinite(dt))
  {
    throw ValidationError("dt must be positive");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end))
  {
    throw ValidationError("t_end must be positive");
  }
  // Tolerate t_end / dt landing a few ulps off an integer.
  return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

SimulationTrace simulate(const DiscreteGenerator& gen, const StateVector& initial, double dt,
                         double t_end, int snapshot_stride)
{
  const std::size_t steps = step_count(dt, t_end);
  const BackwardEuler stepper(gen, dt);

  SimulationTrace trace;
  trace.params = gen.params;
  trace.grid = gen.grid;
  trace.label = gen.label;
  trace.dt = dt;
  trace.times.reserve(steps + 1);
  trace.energies.reserve(steps + 1);

  StateVector state = initial;
  for (std::size_t n = 0; n <= steps; ++n)
  {
    if (n > 0)
    {
      state = stepper.step(state);
    }
    const double e = energy(gen, state);
    if (!std::isfinite(e))
    {
      trace.diverged = true;
      break;
    }
    const double t = static_cast<double>(n) * dt;
    trace.times.push_back(t);
    trace.energies.push_back(e);
    if (snapshot_stride > 0 && n % static_cast<std::size_t>(snapshot_stride) == 0)
    {
      trace.snapshots.emplace_back(t, state);
    }
  }
  return trace;
}

SimulationTrace simulate(const Params& p, const Grid& g, const InitialData& d, double dt,
                         double t_end, int snapshot_stride)
{
  const DiscreteGenerator gen = assemble_generator(p, g, label_of(p));
  return simulate(gen, sample_initial_state(d, g), dt, t_end, snapshot_stride);
}

ShiftConsistencyReport shift_consistency(const Params& p, const Grid& g, const InitialData& d,
                                         double dt, double t_end)
{
  Params base = p;
  base.shift = 0.0;
  const DiscreteGenerator original = assemble_generator(base, g, SystemLabel::Original);
  const DiscreteGenerator shifted = assemble_generator(base, g, SystemLabel::Shifted);
  const double mu1 = base.shift_constant();
  return shift_consistency(original, shifted, mu1, sample_initial_state(d, g), dt, t_end);
}

ShiftConsistencyReport shift_consistency(const DiscreteGenerator& original,
                                         const DiscreteGenerator& shifted, double shift,
                                         const StateVector& initial, double dt, double t_end)
{
  ShiftConsistencyReport report;
  report.shift = shift;

  const Eigen::Index n = original.matrix.rows();
  const Eigen::MatrixXd expected =
    original.matrix - shift * Eigen::MatrixXd::Identity(n, n);
  report.generator_identity_exact = shifted.matrix.rows() == n &&
                                    shifted.matrix.cols() == n &&
                                    (shifted.matrix.array() == expected.array()).all();

  const std::size_t steps = step_count(dt, t_end);
  const BackwardEuler orig_stepper(original, dt);
  const BackwardEuler shift_stepper(shifted, dt);

  StateVector vo = initial;
  StateVector vs = initial;
  for (std::size_t k = 0; k <= steps; ++k)
  {
    if (k > 0)
    {
      vo = orig_stepper.step(vo);
      vs = shift_stepper.step(vs);
    }
    const double t = static_cast<double>(k) * dt;
    const double norm = std::sqrt(energy_squared(original.gram, vo.data()));
    if (!std::isfinite(norm) || !vo.data().allFinite())
    {
      report.original_diverged = true;
      break;
    }
    ++report.compared_steps;
    if (norm == 0.0)
    {
      continue;
    }
    const Eigen::VectorXd diff = vo.data() - std::exp(shift * t) * vs.data();
    const double rel = std::sqrt(std::max(0.0, energy_squared(original.gram, diff))) / norm;
    report.max_relative_residual = std::max(report.max_relative_residual, rel);
  }
  return report;
}

}  // namespace dwl

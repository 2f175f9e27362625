// SPDX-License-Identifier: Apache-2.0

#ifndef DWL_TIMESTEPPER_HPP
#define DWL_TIMESTEPPER_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dwl/core.hpp"
#include "dwl/discretization.hpp"

namespace dwl
{

// Backward Euler for V' = A V: solves (I - dt A) V+ = V. The LU factorization is built
// once at construction and reused by every call to step().
class BackwardEuler
{
public:
  // Throws NumericError if I - dt A is numerically singular.
  BackwardEuler(const DiscreteGenerator& gen, double dt);

  StateVector step(const StateVector& v) const;

  double dt() const { return dt_; }
  SystemLabel label() const { return label_; }

private:
  double dt_;
  SystemLabel label_;
  Grid grid_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

// One-off step; factorizes on every call. Prefer BackwardEuler in loops.
StateVector step(const DiscreteGenerator& gen, const StateVector& v, double dt);

struct SimulationTrace
{
  std::vector<double> times;     // t_n = n dt
  std::vector<double> energies;  // E(t_n) = ||V^n||_G
  std::vector<std::pair<double, StateVector>> snapshots;
  Params params;
  Grid grid;
  SystemLabel label = SystemLabel::Original;
  double dt = 0.0;
  // Trace was cut at the last finite energy.
  bool diverged = false;
};

// Label follows label_of(p). snapshot_stride <= 0 disables snapshots.
SimulationTrace simulate(const Params& p, const Grid& g, const InitialData& d, double dt,
                         double t_end, int snapshot_stride = 0);

SimulationTrace simulate(const DiscreteGenerator& gen, const StateVector& initial, double dt,
                         double t_end, int snapshot_stride = 0);

// Number of backward Euler steps used to reach t_end.
std::size_t step_count(double dt, double t_end);

struct ShiftConsistencyReport
{
  // A_shifted == A_original - mu_1 I, compared entrywise with no tolerance.
  bool generator_identity_exact = false;
  double shift = 0.0;
  // max_n ||V_orig^n - e^{mu_1 t_n} V_shift^n||_G / ||V_orig^n||_G over the finite prefix.
  double max_relative_residual = 0.0;
  std::size_t compared_steps = 0;
  bool original_diverged = false;
};

// Runs the Original and Shifted internal friction systems from the same initial state.
ShiftConsistencyReport shift_consistency(const Params& p, const Grid& g, const InitialData& d,
                                         double dt, double t_end);

// Same comparison for an arbitrary generator pair related by `shift`.
ShiftConsistencyReport shift_consistency(const DiscreteGenerator& original,
                                         const DiscreteGenerator& shifted, double shift,
                                         const StateVector& initial, double dt, double t_end);

}  // namespace dwl

#endif  // DWL_TIMESTEPPER_HPP

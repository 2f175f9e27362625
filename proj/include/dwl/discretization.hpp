// SPDX-License-Identifier: Apache-2.0

#ifndef DWL_DISCRETIZATION_HPP
#define DWL_DISCRETIZATION_HPP

#include <Eigen/Dense>

#include "dwl/core.hpp"

namespace dwl
{

//
// Finite difference semi-discretization V' = A V of the transport reformulation.
//
// Stencils: centered second differences in the interior, a one-sided first difference for
// the normal derivative at x = 1 and first-order upwinding in rho with inflow z_0 = w. The
// Gram matrix uses backward difference quotients for |u_x|^2 and right-endpoint sums for
// the delay line, so that summation by parts makes <A V, V>_G reproduce the continuous
// energy identity term by term.
//
struct DiscreteGenerator
{
  Eigen::MatrixXd matrix;
  Eigen::MatrixXd gram;
  Params params;
  Grid grid;
  SystemLabel label = SystemLabel::Original;
};

// The Shifted label subtracts mu_1 = xi / (2 tau) + mu / 2 from the diagonal. The
// KelvinVoigt label requires params.law == KelvinVoigt; Original and Shifted require
// internal friction.
DiscreteGenerator assemble_generator(const Params& p, const Grid& g, SystemLabel label);

// ||V||_G^2 = sum_{i=1}^{nx} (u_i - u_{i-1})^2 / dx + dx sum_{i=1}^{nx-1} v_i^2 + w^2
//           + xi drho sum_{j=1}^{nrho} z_j^2
Eigen::MatrixXd assemble_gram(const Params& p, const Grid& g);

double energy_squared(const Eigen::MatrixXd& gram, const Eigen::VectorXd& v);
double energy(const DiscreteGenerator& gen, const StateVector& v);

// <A V, V>_G = V^T G A V. Throws ValidationError on dimension mismatch.
double rayleigh(const DiscreteGenerator& gen, const StateVector& v);

// Largest eigenvalue of the G-symmetric part of A, i.e. of the pencil
// (1/2 (G A + A^T G), G). Nonpositive exactly when A is dissipative in the G inner product.
double max_dissipation_rate(const DiscreteGenerator& gen);

// z-block contribution to the Rayleigh quotient: -(xi / tau) sum_j z_j (z_j - z_{j-1}).
double delay_line_rayleigh(const Params& p, const StateVector& v);

}  // namespace dwl

#endif  // DWL_DISCRETIZATION_HPP

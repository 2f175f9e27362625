// SPDX-License-Identifier: Apache-2.0

#include "dwl/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dwl
{

DiscreteGenerator assemble_generator(const Params& p, const Grid& g, SystemLabel label)
{
  require_assemblable(p);
  const bool kv = label == SystemLabel::KelvinVoigt;
  if (kv != (p.law == DampingLaw::KelvinVoigt))
  {
    throw ValidationError("label " + std::string(to_string(label)) +
                          " does not match damping law " + std::string(to_string(p.law)));
  }

  const int nx = g.nx;
  const int nrho = g.nrho;
  const double dx = g.dx();
  const double dx2 = dx * dx;
  const double transport = 1.0 / (p.tau * g.drho());

  auto u = [&](int i) { return g.u_offset() + i - 1; };
  auto v = [&](int i) { return i == nx ? g.w_index() : g.v_offset() + i - 1; };
  auto z = [&](int j) { return j == 0 ? g.w_index() : g.z_offset() + j - 1; };
  const Eigen::Index w = g.w_index();

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(g.state_dim(), g.state_dim());

  // u' = v, with u_nx' = w
  for (int i = 1; i <= nx; ++i)
  {
    A(u(i), v(i)) = 1.0;
  }

  for (int i = 1; i < nx; ++i)
  {
    A(v(i), u(i)) += -2.0 / dx2;
    A(v(i), u(i + 1)) += 1.0 / dx2;
    if (i > 1)
    {
      A(v(i), u(i - 1)) += 1.0 / dx2;
    }
    if (kv)
    {
      A(v(i), v(i)) += -2.0 * p.a / dx2;
      A(v(i), v(i + 1)) += p.a / dx2;
      if (i > 1)
      {
        A(v(i), v(i - 1)) += p.a / dx2;
      }
    }
    else
    {
      A(v(i), v(i)) += -p.a;
    }
  }

  // Dynamic boundary: w' = -du/dnu - mu z(1) (- a dv/dnu for Kelvin-Voigt).
  A(w, u(nx)) += -1.0 / dx;
  A(w, u(nx - 1)) += 1.0 / dx;
  A(w, z(nrho)) += -p.mu;
  if (kv)
  {
    A(w, w) += -p.a / dx;
    A(w, v(nx - 1)) += p.a / dx;
  }

  // tau z_t + z_rho = 0, upwind with inflow z_0 = w.
  for (int j = 1; j <= nrho; ++j)
  {
    A(z(j), z(j)) += -transport;
    A(z(j), z(j - 1)) += transport;
  }

  if (label == SystemLabel::Shifted)
  {
    A.diagonal().array() -= p.shift_constant();
  }

  return DiscreteGenerator{std::move(A), assemble_gram(p, g), p, g, label};
}

Eigen::MatrixXd assemble_gram(const Params& p, const Grid& g)
{
  require_assemblable(p);
  const int nx = g.nx;
  const double dx = g.dx();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(g.state_dim(), g.state_dim());

  // sum_{i=1}^{nx} (u_i - u_{i-1})^2 / dx with u_0 = 0
  for (int i = 1; i <= nx; ++i)
  {
    const Eigen::Index k = g.u_offset() + i - 1;
    G(k, k) += 1.0 / dx;
    if (i > 1)
    {
      G(k - 1, k - 1) += 1.0 / dx;
      G(k, k - 1) -= 1.0 / dx;
      G(k - 1, k) -= 1.0 / dx;
    }
  }
  for (int i = 1; i < nx; ++i)
  {
    const Eigen::Index k = g.v_offset() + i - 1;
    G(k, k) = dx;
  }
  G(g.w_index(), g.w_index()) = 1.0;
  for (int j = 1; j <= g.nrho; ++j)
  {
    const Eigen::Index k = g.z_offset() + j - 1;
    G(k, k) = p.xi * g.drho();
  }
  return G;
}

double energy_squared(const Eigen::MatrixXd& gram, const Eigen::VectorXd& v)
{
  return v.dot(gram * v);
}

double energy(const DiscreteGenerator& gen, const StateVector& v)
{
  const double e2 = energy_squared(gen.gram, v.data());
  if (!std::isfinite(e2))
  {
    return std::numeric_limits<double>::infinity();
  }
  return std::sqrt(std::max(0.0, e2));
}

double rayleigh(const DiscreteGenerator& gen, const StateVector& v)
{
  if (v.size() != gen.matrix.rows())
  {
    throw ValidationError("state dimension " + std::to_string(v.size()) +
                          " does not match generator dimension " +
                          std::to_string(gen.matrix.rows()));
  }
  return v.data().dot(gen.gram * (gen.matrix * v.data()));
}

double max_dissipation_rate(const DiscreteGenerator& gen)
{
  const Eigen::MatrixXd GA = gen.gram * gen.matrix;
  const Eigen::MatrixXd sym = 0.5 * (GA + GA.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, gen.gram,
                                                                   Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
  {
    throw NumericError("generalized symmetric eigensolver failed for the dissipation pencil");
  }
  return solver.eigenvalues().maxCoeff();
}

double delay_line_rayleigh(const Params& p, const StateVector& v)
{
  const int nrho = v.grid().nrho;
  double sum = 0.0;
  for (int j = 1; j <= nrho; ++j)
  {
    sum += v.z(j) * (v.z(j) - v.z(j - 1));
  }
  return -(p.xi / p.tau) * sum;
}

}  // namespace dwl

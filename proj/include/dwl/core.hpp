// SPDX-License-Identifier: Apache-2.0

#ifndef DWL_CORE_HPP
#define DWL_CORE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace dwl
{

//
// Model constants, meshes and the discrete state layout for the 1D wave equation on (0,1)
// with a Dirichlet end at x = 0 and a dynamic, delayed boundary at x = 1. The delay is
// carried by a transport variable z(rho, t) = u_t(1, t - tau * rho), rho in (0,1).
//

// Hard invariant violated by user-supplied parameters or grids.
class ValidationError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure (singular factorization, eigensolver breakdown, root count mismatch).
class NumericError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class DampingLaw
{
  InternalFriction,  // u_tt - u_xx + a u_t = 0
  KelvinVoigt        // u_tt - u_xx - a u_txx = 0
};

enum class SystemLabel
{
  Original,
  Shifted,
  KelvinVoigt
};

std::string_view to_string(DampingLaw law);
std::string_view to_string(SystemLabel label);

// Robin constant at which the first Dirichlet-Robin eigenvalue on (0,1) vanishes.
inline constexpr double kCriticalRobinConstant1D = -1.0;

struct Params
{
  double a = 1.0;    // damping coefficient
  double mu = 1.0;   // delay feedback gain
  double tau = 2.0;  // delay
  double xi = 4.0;   // weight of the delay line in the energy norm
  DampingLaw law = DampingLaw::InternalFriction;
  double shift = 0.0;  // mu_1 for the shifted system, 0 otherwise

  // Internal friction system. With shifted = true the shift is set to xi / (2 tau) + mu / 2.
  static Params internal_friction(double a, double mu, double tau, double xi, bool shifted);

  // Kelvin-Voigt system with the energy weight fixed to xi = mu * tau and no shift.
  static Params kelvin_voigt(double a, double mu, double tau);

  double xi_star() const { return mu * tau; }
  double shift_constant() const { return xi / (2.0 * tau) + mu / 2.0; }

  bool operator==(const Params&) const = default;
};

// Original, Shifted or KelvinVoigt, as implied by the damping law and the shift.
SystemLabel label_of(const Params& p);

struct CheckedParams
{
  Params params;
  // Set when the Kelvin-Voigt stability condition mu < |c*| a does not hold. Advisory only.
  std::optional<std::string> advisory;

  bool operator==(const CheckedParams&) const = default;
};

// Throws ValidationError naming the violated rule.
CheckedParams validate_params(const Params& p);

// Structural requirements shared by every assembly routine: tau > 0, xi > 0, a >= 0, mu >= 0.
// Weaker than validate_params so that diagnostic runs with mu = 0 remain possible.
void require_assemblable(const Params& p);

struct Grid
{
  int nx = 20;    // spatial cells on (0,1)
  int nrho = 20;  // delay-variable cells on (0,1)

  static Grid make(int nx, int nrho);

  double dx() const { return 1.0 / nx; }
  double drho() const { return 1.0 / nrho; }
  double x(int i) const { return static_cast<double>(i) / nx; }
  double rho(int j) const { return static_cast<double>(j) / nrho; }

  Eigen::Index state_dim() const { return 2 * nx + nrho; }

  // Offsets of the blocks of V = (u_1..u_nx, v_1..v_{nx-1}, w, z_1..z_nrho).
  Eigen::Index u_offset() const { return 0; }
  Eigen::Index v_offset() const { return nx; }
  Eigen::Index w_index() const { return 2 * nx - 1; }
  Eigen::Index z_offset() const { return 2 * nx; }

  bool operator==(const Grid&) const = default;
};

// Discrete state. u_0 = 0 is eliminated; v at x_nx is the boundary velocity w; z_0 is not
// stored and always reads back as w.
class StateVector
{
public:
  explicit StateVector(const Grid& grid);
  StateVector(const Grid& grid, Eigen::VectorXd data);

  const Grid& grid() const { return grid_; }
  Eigen::Index size() const { return data_.size(); }

  const Eigen::VectorXd& data() const { return data_; }
  Eigen::VectorXd& data() { return data_; }

  // u_i for i = 0..nx (u_0 = 0).
  double u(int i) const { return i == 0 ? 0.0 : data_[grid_.u_offset() + i - 1]; }
  // v_i for i = 0..nx (v_0 = 0, v_nx = w).
  double v(int i) const;
  double w() const { return data_[grid_.w_index()]; }
  // z_j for j = 0..nrho (z_0 = w).
  double z(int j) const { return j == 0 ? w() : data_[grid_.z_offset() + j - 1]; }

  void set_u(int i, double value) { data_[grid_.u_offset() + i - 1] = value; }
  void set_v(int i, double value) { data_[grid_.v_offset() + i - 1] = value; }
  void set_w(double value) { data_[grid_.w_index()] = value; }
  void set_z(int j, double value) { data_[grid_.z_offset() + j - 1] = value; }

  bool operator==(const StateVector& other) const
  {
    return grid_ == other.grid_ && data_ == other.data_;
  }

private:
  Grid grid_;
  Eigen::VectorXd data_;
};

struct InitialData
{
  std::function<double(double)> u0;  // displacement on [0,1]
  std::function<double(double)> u1;  // velocity on [0,1]
  std::function<double(double)> f0;  // boundary velocity history, as a function of rho
};

// u0 = u1 = x e^{10x}, f0(rho) = e^{rho} e^{10}.
InitialData steep_profile_initial_data();
InitialData zero_initial_data();
// u0 = x, u1 = 0, f0 = 0.
InitialData ramp_initial_data();
// u0 = sin(pi x / 2), u1 = 0, f0 = 0.
InitialData smooth_initial_data();

// Known names: "paper", "zero", "ramp", "smooth". Throws ValidationError otherwise.
InitialData builtin_initial_data(std::string_view name);

StateVector sample_initial_state(const InitialData& d, const Grid& g);

}  // namespace dwl

#endif  // DWL_CORE_HPP

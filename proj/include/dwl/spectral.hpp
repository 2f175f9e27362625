// SPDX-License-Identifier: Apache-2.0

#ifndef DWL_SPECTRAL_HPP
#define DWL_SPECTRAL_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dwl/core.hpp"
#include "dwl/discretization.hpp"

namespace dwl
{

using Complex = std::complex<double>;

struct SpectrumReport
{
  std::vector<Complex> eigenvalues;
  double spectral_abscissa = 0.0;
  double min_distance_to_imaginary_axis = 0.0;
  SystemLabel label = SystemLabel::Original;
};

SpectrumReport eigenvalues(const DiscreteGenerator& gen);
SpectrumReport eigenvalues(const Eigen::MatrixXd& matrix);

// Distance from i beta to the nearest listed eigenvalue.
double distance_to_spectrum(const SpectrumReport& spectrum, double beta);

// ||(i beta I - A)^{-1}|| in the operator norm induced by G, by power iteration on the
// G-adjoint normal operator R^* R. Throws NumericError("beta too close to spectrum") when the
// shifted matrix is numerically singular.
double resolvent_norm(const DiscreteGenerator& gen, double beta);
double resolvent_norm(const Eigen::MatrixXd& matrix, const Eigen::MatrixXd& gram, double beta);

struct ResolventScan
{
  std::vector<double> betas;
  std::vector<double> norms;
  // Least-squares slope of log(norm) against log(beta) over betas <= saturation_beta.
  double fitted_loglog_slope = 0.0;
  double saturation_beta = 0.0;
  std::size_t fitted_points = 0;
};

// betas must be positive and increasing. The saturation frequency is the largest imaginary
// part in the discrete spectrum.
ResolventScan resolvent_scan(const DiscreteGenerator& gen, std::span<const double> betas);

struct ComplexRect
{
  double re_min = -5.0;
  double re_max = 0.5;
  double im_min = -20.0;
  double im_max = 20.0;

  bool contains(Complex z, double slack = 0.0) const
  {
    return z.real() >= re_min - slack && z.real() <= re_max + slack &&
           z.imag() >= im_min - slack && z.imag() <= im_max + slack;
  }

  bool operator==(const ComplexRect&) const = default;
};

struct CharacteristicRoot
{
  Complex lambda;
  double residual = 0.0;  // relative residual of the scaled characteristic function
  int multiplicity_hint = 1;
};

struct CharacteristicValue
{
  Complex value;      // characteristic function scaled by e^{-|Re kappa|}
  double magnitude;   // sum of the moduli of its scaled terms
};

// Characteristic function of the continuous system selected by label_of(p), normalized by
// the solution u(x) = sinh(kappa x) / kappa so that it is entire in kappa^2 and has no
// spurious root at kappa = 0:
//   internal friction: lambda^2 S + C + mu lambda e^{-lambda tau} S,  kappa^2 = lambda (lambda + a)
//   Kelvin-Voigt:      lambda^2 S + (1 + a lambda) C + mu lambda e^{-lambda tau} S,
//                      kappa^2 = lambda^2 / (1 + a lambda)
// with S = sinh(kappa) / kappa and C = cosh(kappa). For the shifted system the original
// function is evaluated at lambda + mu_1.
CharacteristicValue characteristic_function(const Params& p, Complex lambda);

// Number of zeros inside the rectangle, from the change of argument along its boundary.
// Throws NumericError if the boundary passes too close to a zero.
int winding_count(const Params& p, const ComplexRect& region);

// All zeros inside the region, refined by Newton to a relative residual below 1e-10 and sorted
// by (imag, real). Throws NumericError if the refined roots do not account for the winding
// count.
std::vector<CharacteristicRoot> characteristic_roots(const Params& p, const ComplexRect& region);

// First eigenvalue C(c) of -u'' = lambda u, u(0) = 0, u'(1) + c u(1) = 0.
double robin_eigenvalue(double c);

// Robin constant c* < 0 with C(c*) = 0.
double find_c_star();

}  // namespace dwl

#endif  // DWL_SPECTRAL_HPP

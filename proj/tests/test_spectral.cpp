// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>

#include "catch_amalgamated.hpp"
#include "dwl/spectral.hpp"

using namespace dwl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

const Params kShifted = Params::internal_friction(1.0, 1.0, 2.0, 4.0, true);

Params no_delay(double a)
{
  Params p;
  p.a = a;
  p.mu = 0.0;
  p.tau = 1.0;
  p.xi = 1.0;
  return p;
}

template <class F>
double bisect(F f, double lo, double hi)
{
  const bool lo_positive = f(lo) > 0.0;
  for (int it = 0; it < 200; ++it)
  {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) > 0.0) == lo_positive ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double nearest(const std::vector<Complex>& zs, Complex target)
{
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& z : zs)
  {
    best = std::min(best, std::abs(z - target));
  }
  return best;
}

// the k roots of smallest modulus in the closed upper half plane
std::vector<Complex> smallest_upper_roots(const Params& p, const ComplexRect& region, std::size_t k)
{
  std::vector<Complex> roots;
  for (const auto& r : characteristic_roots(p, region))
  {
    if (r.lambda.imag() >= -1e-9)
    {
      roots.push_back(r.lambda);
    }
  }
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  roots.resize(std::min(k, roots.size()));
  return roots;
}

}  // namespace

TEST_CASE("diagonal matrix spectrum", "[spectral]")
{
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
  A(0, 0) = -1.0;
  A(1, 1) = -2.0;
  const SpectrumReport r = eigenvalues(A);
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(r.eigenvalues[0] == Complex(-2.0, 0.0));
  CHECK(r.eigenvalues[1] == Complex(-1.0, 0.0));
  CHECK(r.spectral_abscissa == -1.0);
  CHECK(r.min_distance_to_imaginary_axis == 1.0);
}

TEST_CASE("shifted reference spectrum lies in the left half plane", "[spectral]")
{
  const auto gen = assemble_generator(kShifted, Grid::make(20, 20), SystemLabel::Shifted);
  const SpectrumReport r = eigenvalues(gen);
  CHECK(r.eigenvalues.size() == 60);
  CHECK(r.spectral_abscissa < 0.0);
  // regression baseline
  CHECK_THAT(r.spectral_abscissa, WithinAbs(-1.4423901640, 1e-8));
  double abscissa = -std::numeric_limits<double>::infinity();
  for (const Complex& z : r.eigenvalues)
  {
    abscissa = std::max(abscissa, z.real());
  }
  CHECK(abscissa == r.spectral_abscissa);
}

TEST_CASE("spectrum is closed under conjugation", "[spectral]")
{
  for (const Params& p : {kShifted, Params::internal_friction(0.3, 2.0, 1.0, 4.0, false),
                          Params::kelvin_voigt(1.0, 0.5, 2.0)})
  {
    const auto gen = assemble_generator(p, Grid::make(20, 15), label_of(p));
    const auto r = eigenvalues(gen);
    for (const Complex& z : r.eigenvalues)
    {
      CHECK(nearest(r.eigenvalues, std::conj(z)) <= 1e-10 * std::max(1.0, std::abs(z)));
    }
  }
}

TEST_CASE("shifted spectrum is the original spectrum moved by -mu_1", "[spectral]")
{
  const Grid g = Grid::make(20, 20);
  Params o = kShifted;
  o.shift = 0.0;
  const auto s = eigenvalues(assemble_generator(kShifted, g, SystemLabel::Shifted)).eigenvalues;
  auto moved = eigenvalues(assemble_generator(o, g, SystemLabel::Original)).eigenvalues;
  for (Complex& z : moved)
  {
    z -= kShifted.shift;
  }
  REQUIRE(s.size() == moved.size());
  for (std::size_t k = 0; k < s.size(); ++k)
  {
    CHECK(nearest(moved, s[k]) <= 1e-10);
    CHECK(nearest(s, moved[k]) <= 1e-10);
  }
}

TEST_CASE("undamped discrete spectrum approaches i theta_1", "[spectral]")
{
  const double theta1 = bisect([](double t) { return std::cos(t) - t * std::sin(t); }, 0.1, 1.5);
  CHECK_THAT(theta1, WithinAbs(0.86033, 1e-5));
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {20, 40, 80})
  {
    const Grid g = Grid::make(n, n);
    const auto r = eigenvalues(assemble_generator(no_delay(0.0), g, SystemLabel::Original));
    const double err = nearest(r.eigenvalues, Complex(0.0, theta1));
    INFO("nx " << n << " error " << err);
    CHECK(err <= g.dx());
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("resolvent norm of -I", "[spectral]")
{
  const Eigen::MatrixXd A = -Eigen::MatrixXd::Identity(3, 3);
  const Eigen::MatrixXd G = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THAT(resolvent_norm(A, G, 0.0), WithinRel(1.0, 1e-8));
  CHECK_THAT(resolvent_norm(A, G, 1.0), WithinRel(1.0 / std::sqrt(2.0), 1e-8));
}

TEST_CASE("resolvent norm uses the weighted norm", "[spectral]")
{
  // non-normal 2x2 example checked against the SVD of L^T R L^{-T}
  Eigen::MatrixXd A(2, 2);
  A << -1.0, 5.0, 0.0, -2.0;
  Eigen::MatrixXd G(2, 2);
  G << 2.0, 0.5, 0.5, 1.0;
  const double beta = 0.7;
  const Eigen::MatrixXcd M = Complex(0.0, beta) * Eigen::MatrixXcd::Identity(2, 2) - A.cast<Complex>();
  const Eigen::MatrixXcd R = M.inverse();
  const Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(G).matrixL();
  const Eigen::MatrixXcd W = L.transpose().cast<Complex>() * R * L.transpose().inverse().cast<Complex>();
  const double expect = Eigen::JacobiSVD<Eigen::MatrixXcd>(W).singularValues()(0);
  CHECK_THAT(resolvent_norm(A, G, beta), WithinRel(expect, 1e-8));
}

TEST_CASE("resolvent near an eigenvalue is refused", "[spectral]")
{
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
  A(0, 1) = 1.0;
  A(1, 0) = -1.0;  // eigenvalues +-i
  CHECK_THROWS_AS(resolvent_norm(A, Eigen::MatrixXd::Identity(2, 2), 1.0), NumericError);
}

TEST_CASE("resolvent scan on the shifted generator", "[spectral]")
{
  const auto gen = assemble_generator(kShifted, Grid::make(20, 20), SystemLabel::Shifted);
  const std::vector<double> betas{1, 2, 4, 8, 16, 32, 64};
  const ResolventScan scan = resolvent_scan(gen, betas);
  const auto spectrum = eigenvalues(gen);
  REQUIRE(scan.norms.size() == betas.size());
  for (std::size_t k = 0; k < betas.size(); ++k)
  {
    CHECK(std::isfinite(scan.norms[k]));
    CHECK(scan.norms[k] > 0.0);
    CHECK(scan.norms[k] >= (1.0 - 1e-8) / distance_to_spectrum(spectrum, betas[k]));
  }
  CHECK(scan.fitted_points >= 2);
  CHECK(scan.fitted_loglog_slope <= 2.5);
  CHECK(scan.saturation_beta > 0.0);
}

TEST_CASE("characteristic roots of the undamped problem", "[spectral]")
{
  const double theta1 = bisect([](double t) { return std::cos(t) - t * std::sin(t); }, 0.1, 1.5);
  const auto roots = characteristic_roots(no_delay(0.0), ComplexRect{-1.0, 0.5, -2.0, 2.0});
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots)
  {
    CHECK_THAT(r.lambda.real(), WithinAbs(0.0, 1e-10));
    CHECK_THAT(std::abs(r.lambda.imag()), WithinAbs(theta1, 1e-10));
    CHECK(r.residual < 1e-10);
  }
}

TEST_CASE("frictional roots without delay match the discrete generator", "[spectral]")
{
  const Params p = no_delay(1.0);
  const auto roots = smallest_upper_roots(p, ComplexRect{-3.0, 0.5, -12.0, 12.0}, 3);
  REQUIRE(roots.size() == 3);
  for (const auto& r : characteristic_roots(p, ComplexRect{-3.0, 0.5, -12.0, 12.0}))
  {
    CHECK(r.lambda.real() < 0.0);
  }
  for (int n : {20, 40})
  {
    const Grid g = Grid::make(n, n);
    const auto spectrum = eigenvalues(assemble_generator(p, g, SystemLabel::Original)).eigenvalues;
    for (const Complex& z : roots)
    {
      INFO("nx " << n << " root " << z);
      CHECK(nearest(spectrum, z) <= g.dx());
    }
  }
}

TEST_CASE("shifted reference roots lie in the left half plane", "[spectral]")
{
  const auto roots = characteristic_roots(kShifted, ComplexRect{});
  CHECK(roots.size() == static_cast<std::size_t>(winding_count(kShifted, ComplexRect{})));
  REQUIRE_FALSE(roots.empty());
  const auto spectrum = eigenvalues(assemble_generator(kShifted, Grid::make(20, 20), SystemLabel::Shifted));
  for (const auto& r : roots)
  {
    CHECK(r.lambda.real() < 0.0);
    CHECK(r.residual < 1e-10);
    CHECK(r.lambda.real() <= spectrum.spectral_abscissa + 0.1);
  }
}

TEST_CASE("discrete eigenvalues converge to the characteristic roots", "[spectral][slow]")
{
  // reference parameters, dx = drho refined together; the third root is pre-asymptotic below
  // nx = 40
  const auto roots = smallest_upper_roots(kShifted, ComplexRect{-4.0, 0.5, -0.01, 12.0}, 3);
  REQUIRE(roots.size() == 3);
  std::vector<std::vector<double>> errors(roots.size());
  for (int n : {40, 80, 160, 320})
  {
    const auto spectrum =
        eigenvalues(assemble_generator(kShifted, Grid::make(n, n), SystemLabel::Shifted)).eigenvalues;
    for (std::size_t k = 0; k < roots.size(); ++k)
    {
      errors[k].push_back(nearest(spectrum, roots[k]));
    }
  }
  for (std::size_t k = 0; k < roots.size(); ++k)
  {
    for (std::size_t m = 1; m < errors[k].size(); ++m)
    {
      const double order = std::log2(errors[k][m - 1] / errors[k][m]);
      INFO("root " << roots[k] << " refinement " << m << " order " << order);
      CHECK(order >= 0.9);
    }
  }
}

TEST_CASE("Robin eigenvalue examples", "[spectral]")
{
  CHECK_THAT(robin_eigenvalue(0.0), WithinAbs(M_PI * M_PI / 4.0, 1e-10));
  CHECK_THAT(robin_eigenvalue(-1.0), WithinAbs(0.0, 1e-10));
  const double s = bisect([](double x) { return std::tanh(x) - 0.5 * x; }, 1.0, 3.0);
  CHECK_THAT(s, WithinAbs(1.9150, 1e-4));
  CHECK_THAT(robin_eigenvalue(-2.0), WithinAbs(-s * s, 1e-9));
  // c > 0: root of tan k = -k / c on (pi/2, pi)
  const double k = bisect([](double x) { return std::cos(x) + std::sin(x) / x; }, 1.6, 3.1);
  CHECK_THAT(robin_eigenvalue(1.0), WithinAbs(k * k, 1e-9));
}

TEST_CASE("critical Robin constant", "[spectral]")
{
  CHECK(robin_eigenvalue(-0.5) > 0.0);
  CHECK(robin_eigenvalue(-1.5) < 0.0);
  const double c = find_c_star();
  CHECK_THAT(c, WithinAbs(-1.0, 1e-8));
  CHECK(std::abs(robin_eigenvalue(c)) < 1e-10);
}

TEST_CASE("Robin eigenvalue is increasing in c", "[spectral]")
{
  const std::vector<double> cs{-3.0, -2.0, -1.0, 0.0, 1.0, 2.0};
  for (std::size_t k = 1; k < cs.size(); ++k)
  {
    CHECK(robin_eigenvalue(cs[k - 1]) < robin_eigenvalue(cs[k]));
  }
}

// SPDX-License-Identifier: Apache-2.0

#include "dwl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace dwl
{

namespace
{

void sort_spectrum(std::vector<Complex>& values)
{
  std::sort(values.begin(), values.end(), [](Complex x, Complex y) {
    if (x.real() != y.real())
    {
      return x.real() < y.real();
    }
    return x.imag() < y.imag();
  });
}

}  // namespace

SpectrumReport eigenvalues(const Eigen::MatrixXd& matrix)
{
  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.compute(matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
  {
    std::ostringstream msg;
    msg << "nonsymmetric eigensolver did not converge (dimension " << matrix.rows()
        << ", iteration budget " << solver.getMaxIterations() << " per eigenvalue)";
    throw NumericError(msg.str());
  }

  SpectrumReport report;
  report.eigenvalues.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  sort_spectrum(report.eigenvalues);
  report.spectral_abscissa = -std::numeric_limits<double>::infinity();
  report.min_distance_to_imaginary_axis = std::numeric_limits<double>::infinity();
  for (const Complex& l : report.eigenvalues)
  {
    report.spectral_abscissa = std::max(report.spectral_abscissa, l.real());
    report.min_distance_to_imaginary_axis =
      std::min(report.min_distance_to_imaginary_axis, std::abs(l.real()));
  }
  return report;
}

SpectrumReport eigenvalues(const DiscreteGenerator& gen)
{
  SpectrumReport report = eigenvalues(gen.matrix);
  report.label = gen.label;
  return report;
}

double distance_to_spectrum(const SpectrumReport& spectrum, double beta)
{
  const Complex point(0.0, beta);
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& l : spectrum.eigenvalues)
  {
    best = std::min(best, std::abs(point - l));
  }
  return best;
}

double resolvent_norm(const Eigen::MatrixXd& matrix, const Eigen::MatrixXd& gram, double beta)
{
  const Eigen::Index n = matrix.rows();
  const Eigen::MatrixXcd shifted =
    Complex(0.0, beta) * Eigen::MatrixXcd::Identity(n, n) - matrix.cast<Complex>();
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  if (!(lu.rcond() > 1e-14))
  {
    std::ostringstream msg;
    msg << "beta too close to spectrum (beta = " << beta
        << ", reciprocal condition estimate " << lu.rcond() << ")";
    throw NumericError(msg.str());
  }
  const Eigen::LLT<Eigen::MatrixXd> gram_llt(gram);
  if (gram_llt.info() != Eigen::Success)
  {
    throw NumericError("Gram matrix is not positive definite");
  }
  const Eigen::MatrixXcd G = gram.cast<Complex>();

  auto g_norm2 = [&](const Eigen::VectorXcd& x) { return x.dot(G * x).real(); };
  // R^* R x in the G inner product, R^* = G^{-1} R^H G.
  auto normal_op = [&](const Eigen::VectorXcd& x) {
    const Eigen::VectorXcd rx = lu.solve(x);
    const Eigen::VectorXcd y = lu.adjoint().solve(G * rx);
    Eigen::VectorXcd out(n);
    out.real() = gram_llt.solve(y.real());
    out.imag() = gram_llt.solve(y.imag());
    return out;
  };

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::VectorXcd x(n);
  for (Eigen::Index k = 0; k < n; ++k)
  {
    x[k] = Complex(uniform(rng), uniform(rng));
  }
  x /= std::sqrt(g_norm2(x));

  constexpr int kMaxIterations = 20000;
  for (int it = 0; it < kMaxIterations; ++it)
  {
    const Eigen::VectorXcd y = normal_op(x);
    const double sigma2 = x.dot(G * y).real();
    const double residual = std::sqrt(std::max(0.0, g_norm2(y - sigma2 * x)));
    if (residual <= 1e-10 * sigma2)
    {
      return std::sqrt(sigma2);
    }
    x = y / std::sqrt(g_norm2(y));
  }
  std::ostringstream msg;
  msg << "power iteration for the resolvent norm did not converge at beta = " << beta;
  throw NumericError(msg.str());
}

double resolvent_norm(const DiscreteGenerator& gen, double beta)
{
  return resolvent_norm(gen.matrix, gen.gram, beta);
}

ResolventScan resolvent_scan(const DiscreteGenerator& gen, std::span<const double> betas)
{
  for (std::size_t k = 0; k < betas.size(); ++k)
  {
    if (!(betas[k] > 0.0) || (k > 0 && !(betas[k] > betas[k - 1])))
    {
      throw ValidationError("resolvent scan frequencies must be positive and increasing");
    }
  }
  const SpectrumReport spectrum = eigenvalues(gen);

  ResolventScan scan;
  scan.betas.assign(betas.begin(), betas.end());
  scan.saturation_beta = 0.0;
  for (const Complex& l : spectrum.eigenvalues)
  {
    scan.saturation_beta = std::max(scan.saturation_beta, std::abs(l.imag()));
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double beta : betas)
  {
    const double norm = resolvent_norm(gen, beta);
    scan.norms.push_back(norm);
    if (beta <= scan.saturation_beta)
    {
      const double lx = std::log(beta);
      const double ly = std::log(norm);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++scan.fitted_points;
    }
  }
  const double m = static_cast<double>(scan.fitted_points);
  const double denom = m * sxx - sx * sx;
  scan.fitted_loglog_slope = scan.fitted_points >= 2 && denom > 0.0
                               ? (m * sxy - sx * sy) / denom
                               : std::numeric_limits<double>::quiet_NaN();
  return scan;
}

// Characteristic function

namespace
{

// sinh(kappa) / kappa and cosh(kappa) for kappa^2 = q, both multiplied by e^{-scale}.
struct ScaledHyperbolic
{
  Complex sinhc;
  Complex cosh;
};

ScaledHyperbolic scaled_hyperbolic(Complex q, std::optional<double> scale_exponent,
                                   double* used_scale)
{
  const Complex kappa = std::sqrt(q);
  const double r = scale_exponent ? *scale_exponent : std::abs(kappa.real());
  if (used_scale != nullptr)
  {
    *used_scale = r;
  }
  const Complex ep = std::exp(kappa - r);
  const Complex em = std::exp(-kappa - r);
  ScaledHyperbolic h;
  h.cosh = 0.5 * (ep + em);
  if (std::abs(kappa) < 1e-2)
  {
    // Taylor series of sinh(k)/k in q = k^2, truncation error below 1e-18.
    const Complex series =
      1.0 + q / 6.0 * (1.0 + q / 20.0 * (1.0 + q / 42.0 * (1.0 + q / 72.0)));
    h.sinhc = series * std::exp(-r);
  }
  else
  {
    h.sinhc = (ep - em) / (2.0 * kappa);
  }
  return h;
}

CharacteristicValue evaluate(const Params& p, Complex lambda,
                             std::optional<double> scale_exponent = std::nullopt,
                             double* used_scale = nullptr)
{
  const SystemLabel label = label_of(p);
  if (label == SystemLabel::Shifted)
  {
    lambda += p.shift;
  }
  const Complex delay = p.mu * lambda * std::exp(-lambda * p.tau);
  if (label == SystemLabel::KelvinVoigt)
  {
    const Complex visc = 1.0 + p.a * lambda;
    const ScaledHyperbolic h = scaled_hyperbolic(lambda * lambda / visc, scale_exponent, used_scale);
    const Complex t1 = lambda * lambda * h.sinhc;
    const Complex t2 = visc * h.cosh;
    const Complex t3 = delay * h.sinhc;
    return {t1 + t2 + t3, std::abs(t1) + std::abs(t2) + std::abs(t3)};
  }
  const ScaledHyperbolic h = scaled_hyperbolic(lambda * (lambda + p.a), scale_exponent, used_scale);
  const Complex t1 = lambda * lambda * h.sinhc;
  const Complex t2 = h.cosh;
  const Complex t3 = delay * h.sinhc;
  return {t1 + t2 + t3, std::abs(t1) + std::abs(t2) + std::abs(t3)};
}

double relative_residual(const CharacteristicValue& v)
{
  return v.magnitude > 0.0 ? std::abs(v.value) / v.magnitude : std::abs(v.value);
}

void require_region(const Params& p, const ComplexRect& region)
{
  require_assemblable(p);
  if (!(region.re_min < region.re_max) || !(region.im_min < region.im_max) ||
      !std::isfinite(region.re_min) || !std::isfinite(region.re_max) ||
      !std::isfinite(region.im_min) || !std::isfinite(region.im_max))
  {
    throw ValidationError("characteristic root region must be a bounded nonempty rectangle");
  }
  if (p.law == DampingLaw::KelvinVoigt && p.a > 0.0)
  {
    // The Kelvin-Voigt function has an essential singularity at lambda = -1/a.
    const Complex pole(-1.0 / p.a, 0.0);
    if (region.contains(pole, 1e-6))
    {
      throw ValidationError("region contains the Kelvin-Voigt singular point lambda = -1/a");
    }
  }
}

class ArgumentTracker
{
public:
  explicit ArgumentTracker(const Params& p) : p_(p) {}

  double edge(Complex from, Complex to, int pieces)
  {
    double total = 0.0;
    Complex fa = value(from);
    for (int k = 0; k < pieces; ++k)
    {
      const Complex za = from + (to - from) * (static_cast<double>(k) / pieces);
      const Complex zb = from + (to - from) * (static_cast<double>(k + 1) / pieces);
      const Complex fb = value(zb);
      total += segment(za, zb, fa, fb, 0);
      fa = fb;
    }
    return total;
  }

private:
  Complex value(Complex z) const
  {
    const Complex f = evaluate(p_, z).value;
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag()) || f == Complex(0.0, 0.0))
    {
      std::ostringstream msg;
      msg << "characteristic function not evaluable on the region boundary at " << z;
      throw NumericError(msg.str());
    }
    return f;
  }

  double segment(Complex za, Complex zb, Complex fa, Complex fb, int depth)
  {
    const double d = std::arg(fb / fa);
    const double log_ratio = std::log(std::abs(fb) / std::abs(fa));
    if (std::abs(d) < 0.3 && std::abs(log_ratio) < 1.0)
    {
      return d;
    }
    if (depth > 48)
    {
      std::ostringstream msg;
      msg << "region boundary passes too close to a characteristic root near " << za;
      throw NumericError(msg.str());
    }
    const Complex zm = 0.5 * (za + zb);
    const Complex fm = value(zm);
    return segment(za, zm, fa, fm, depth + 1) + segment(zm, zb, fm, fb, depth + 1);
  }

  const Params& p_;
};

struct NewtonResult
{
  Complex root;
  double residual;
  bool converged;
};

NewtonResult newton(const Params& p, Complex z, double max_step)
{
  double residual = relative_residual(evaluate(p, z));
  for (int it = 0; it < 80; ++it)
  {
    double scale = 0.0;
    const CharacteristicValue f = evaluate(p, z, std::nullopt, &scale);
    residual = relative_residual(f);
    const double h = 1e-7 * std::max(1.0, std::abs(z));
    const Complex fp = evaluate(p, z + h, scale).value;
    const Complex fm = evaluate(p, z - h, scale).value;
    const Complex fpi = evaluate(p, z + Complex(0.0, h), scale).value;
    const Complex fmi = evaluate(p, z - Complex(0.0, h), scale).value;
    // Average of real- and imaginary-direction central differences.
    const Complex deriv = 0.5 * ((fp - fm) / (2.0 * h) + (fpi - fmi) / (Complex(0.0, 2.0 * h)));
    if (deriv == Complex(0.0, 0.0) || !std::isfinite(std::abs(deriv)))
    {
      break;
    }
    Complex delta = f.value / deriv;
    if (std::abs(delta) > max_step)
    {
      delta *= max_step / std::abs(delta);
    }
    z -= delta;
    if (std::abs(delta) <= 1e-15 * std::max(1.0, std::abs(z)))
    {
      residual = relative_residual(evaluate(p, z));
      break;
    }
  }
  residual = relative_residual(evaluate(p, z));
  return {z, residual, residual < 1e-10};
}

class RootLocator
{
public:
  explicit RootLocator(const Params& p) : p_(p) {}

  std::vector<CharacteristicRoot> run(const ComplexRect& region)
  {
    const int total = count(region);
    locate(region, total, 0);
    int found = 0;
    for (const auto& r : roots_)
    {
      found += r.multiplicity_hint;
    }
    if (found != total)
    {
      std::ostringstream msg;
      msg << "winding count " << total << " disagrees with " << found << " refined roots";
      throw NumericError(msg.str());
    }
    std::sort(roots_.begin(), roots_.end(), [](const auto& x, const auto& y) {
      if (x.lambda.imag() != y.lambda.imag())
      {
        return x.lambda.imag() < y.lambda.imag();
      }
      return x.lambda.real() < y.lambda.real();
    });
    return roots_;
  }

  int count(const ComplexRect& r)
  {
    ArgumentTracker tracker(p_);
    const Complex c00(r.re_min, r.im_min), c10(r.re_max, r.im_min);
    const Complex c11(r.re_max, r.im_max), c01(r.re_min, r.im_max);
    const double total = tracker.edge(c00, c10, 32) + tracker.edge(c10, c11, 32) +
                         tracker.edge(c11, c01, 32) + tracker.edge(c01, c00, 32);
    const double turns = total / (2.0 * std::numbers::pi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-3)
    {
      throw NumericError("argument change along the region boundary is not an integer");
    }
    return static_cast<int>(rounded);
  }

private:
  void locate(const ComplexRect& r, int n, int depth)
  {
    if (n <= 0)
    {
      return;
    }
    const Complex center(0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max));
    const double width = r.re_max - r.re_min;
    const double height = r.im_max - r.im_min;
    const double diag = std::hypot(width, height);
    if (n == 1 && diag < 4.0)
    {
      const NewtonResult res = newton(p_, center, 0.5 * diag);
      if (res.converged && r.contains(res.root, 1e-9 * diag))
      {
        roots_.push_back({res.root, res.residual, 1});
        return;
      }
    }
    if (depth > 60 || diag < 1e-9)
    {
      const NewtonResult res = newton(p_, center, diag);
      if (!res.converged)
      {
        std::ostringstream msg;
        msg << "Newton refinement failed for a cluster of " << n << " roots near " << center;
        throw NumericError(msg.str());
      }
      roots_.push_back({res.root, res.residual, n});
      return;
    }

    const bool split_real = width >= height;
    for (double t : {0.5, 0.47, 0.53, 0.43, 0.57, 0.4, 0.6})
    {
      ComplexRect lo = r;
      ComplexRect hi = r;
      if (split_real)
      {
        const double cut = r.re_min + t * width;
        lo.re_max = cut;
        hi.re_min = cut;
      }
      else
      {
        const double cut = r.im_min + t * height;
        lo.im_max = cut;
        hi.im_min = cut;
      }
      int n_lo = 0;
      int n_hi = 0;
      try
      {
        n_lo = count(lo);
        n_hi = count(hi);
      }
      catch (const NumericError&)
      {
        continue;
      }
      if (n_lo + n_hi != n)
      {
        continue;
      }
      locate(lo, n_lo, depth + 1);
      locate(hi, n_hi, depth + 1);
      return;
    }
    std::ostringstream msg;
    msg << "could not subdivide region around " << center << " holding " << n << " roots";
    throw NumericError(msg.str());
  }

  const Params& p_;
  std::vector<CharacteristicRoot> roots_;
};

}  // namespace

CharacteristicValue characteristic_function(const Params& p, Complex lambda)
{
  return evaluate(p, lambda);
}

int winding_count(const Params& p, const ComplexRect& region)
{
  require_region(p, region);
  return RootLocator(p).count(region);
}

std::vector<CharacteristicRoot> characteristic_roots(const Params& p, const ComplexRect& region)
{
  require_region(p, region);
  return RootLocator(p).run(region);
}

// Dirichlet-Robin eigenvalue

namespace
{

// Sign-faithful form of cos(sqrt(l)) + c sin(sqrt(l)) / sqrt(l), continued to l <= 0. For
// l < 0 it is divided by e^{sqrt(-l)} to avoid overflow.
double robin_function(double lambda, double c)
{
  if (lambda > 0.0)
  {
    const double s = std::sqrt(lambda);
    return std::cos(s) + c * std::sin(s) / s;
  }
  if (lambda == 0.0)
  {
    return 1.0 + c;
  }
  const double s = std::sqrt(-lambda);
  const double scaled_cosh = 0.5 * (1.0 + std::exp(-2.0 * s));
  const double scaled_sinhc = -std::expm1(-2.0 * s) / (2.0 * s);
  return scaled_cosh + c * scaled_sinhc;
}

double bisect(double lo, double hi, double c)
{
  double f_lo = robin_function(lo, c);
  for (int it = 0; it < 400 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it)
  {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = robin_function(mid, c);
    if (f_mid == 0.0)
    {
      return mid;
    }
    if ((f_mid > 0.0) == (f_lo > 0.0))
    {
      lo = mid;
      f_lo = f_mid;
    }
    else
    {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double robin_eigenvalue(double c)
{
  if (!std::isfinite(c))
  {
    throw ValidationError("Robin constant must be finite");
  }
  const double at_zero = robin_function(0.0, c);
  if (at_zero == 0.0)
  {
    return 0.0;
  }
  if (at_zero < 0.0)
  {
    // Negative first eigenvalue; the function is positive for lambda -> -infinity.
    double lo = -1.0;
    while (robin_function(lo, c) <= 0.0)
    {
      lo *= 2.0;
    }
    return bisect(lo, 0.0, c);
  }
  // The first root of sqrt(l) cot(sqrt(l)) = -c lies below pi^2, where the function is -1.
  double hi = 1.0;
  while (hi < std::numbers::pi * std::numbers::pi && robin_function(hi, c) > 0.0)
  {
    hi = std::min(2.0 * hi, std::numbers::pi * std::numbers::pi);
  }
  return bisect(0.0, hi, c);
}

double find_c_star()
{
  double hi = 1.0;
  while (robin_eigenvalue(hi) <= 0.0)
  {
    hi *= 2.0;
  }
  double lo = -1.5;
  while (robin_eigenvalue(lo) >= 0.0)
  {
    lo *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it)
  {
    const double mid = 0.5 * (lo + hi);
    const double value = robin_eigenvalue(mid);
    if (std::abs(value) < 1e-13)
    {
      return mid;
    }
    (value > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace dwl

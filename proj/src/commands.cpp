// SPDX-License-Identifier: Apache-2.0

#include "dwl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "dwl/analysis.hpp"
#include "dwl/discretization.hpp"
#include "dwl/spectral.hpp"
#include "dwl/timestepper.hpp"
#include "dwl/verify.hpp"

namespace dwl
{

std::optional<Command> parse_command(std::string_view name)
{
  for (Command c : {Command::Simulate, Command::Spectrum, Command::Resolvent, Command::Charroots,
                    Command::Robin, Command::Sweep, Command::Verify})
  {
    if (to_string(c) == name)
    {
      return c;
    }
  }
  return std::nullopt;
}

std::string_view to_string(Command c)
{
  switch (c)
  {
    case Command::Simulate:
      return "simulate";
    case Command::Spectrum:
      return "spectrum";
    case Command::Resolvent:
      return "resolvent";
    case Command::Charroots:
      return "charroots";
    case Command::Robin:
      return "robin";
    case Command::Sweep:
      return "sweep";
    case Command::Verify:
      return "verify";
  }
  return "unknown";
}

namespace
{

class CsvWriter
{
public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void row(std::initializer_list<std::string> cells)
  {
    bool first = true;
    for (const auto& c : cells)
    {
      if (!first)
      {
        os_ << ',';
      }
      os_ << c;
      first = false;
    }
    os_ << '\n';
  }

private:
  std::ostream& os_;
};

std::string label_text(const Params& p) { return std::string(to_string(label_of(p))); }

void simulate_cmd(const RunConfig& cfg, std::ostream& csv, std::ostream& summary)
{
  const Params p = cfg.params();
  const auto checked = validate_params(p);
  if (checked.advisory)
  {
    summary << "advisory: " << *checked.advisory << "\n";
  }
  const SimulationTrace trace = simulate(p, cfg.grid(), builtin_initial_data(cfg.data), cfg.dt,
                                         cfg.t_end, cfg.snapshot_stride);
  CsvWriter w(csv);
  w.row({"t", "E", "neg_log10_E"});
  for (std::size_t k = 0; k < trace.times.size(); ++k)
  {
    const double e = trace.energies[k];
    w.row({format_real(trace.times[k]), format_real(e), format_real(-std::log10(e))});
  }

  if (cfg.snapshot_stride > 0 && !cfg.out.empty())
  {
    std::ofstream snap(cfg.out + ".snapshots.csv", std::ios::binary);
    const Grid g = trace.grid;
    snap << "t";
    for (int i = 1; i <= g.nx; ++i)
    {
      snap << ",u_" << i;
    }
    for (int i = 1; i < g.nx; ++i)
    {
      snap << ",v_" << i;
    }
    snap << ",w";
    for (int j = 1; j <= g.nrho; ++j)
    {
      snap << ",z_" << j;
    }
    snap << '\n';
    for (const auto& [t, state] : trace.snapshots)
    {
      snap << format_real(t);
      for (Eigen::Index k = 0; k < state.data().size(); ++k)
      {
        snap << ',' << format_real(state.data()[k]);
      }
      snap << '\n';
    }
  }

  const DecayFit fit = fit_decay(trace, cfg.window_fraction, cfg.thresholds());
  summary << "system: " << label_text(p) << "\n";
  summary << "steps: " << trace.times.size() - 1 << "\n";
  summary << "E(0): " << format_real(trace.energies.front()) << "\n";
  summary << "E(t_end): " << format_real(trace.energies.back()) << "\n";
  summary << "diverged: " << (trace.diverged ? "true" : "false") << "\n";
  summary << "decay_rate: " << format_real(fit.rate) << "\n";
  summary << "r_squared: " << format_real(fit.r_squared) << "\n";
  summary << "classification: " << to_string(fit.classification) << "\n";
  if (!fit.diagnostic.empty())
  {
    summary << "diagnostic: " << fit.diagnostic << "\n";
  }
}

void spectrum_cmd(const RunConfig& cfg, std::ostream& csv, std::ostream& summary)
{
  const Params p = cfg.params();
  validate_params(p);
  const auto gen = assemble_generator(p, cfg.grid(), label_of(p));
  const SpectrumReport rep = eigenvalues(gen);
  CsvWriter w(csv);
  w.row({"re", "im"});
  for (const Complex& z : rep.eigenvalues)
  {
    w.row({format_real(z.real()), format_real(z.imag())});
  }
  summary << "system: " << label_text(p) << "\n";
  summary << "eigenvalues: " << rep.eigenvalues.size() << "\n";
  summary << "spectral_abscissa: " << format_real(rep.spectral_abscissa) << "\n";
  summary << "min_distance_to_imaginary_axis: "
          << format_real(rep.min_distance_to_imaginary_axis) << "\n";
}

void resolvent_cmd(const RunConfig& cfg, std::ostream& csv, std::ostream& summary)
{
  const Params p = cfg.params();
  validate_params(p);
  const auto gen = assemble_generator(p, cfg.grid(), label_of(p));
  const ResolventScan scan = resolvent_scan(gen, cfg.betas);
  const SpectrumReport rep = eigenvalues(gen);
  CsvWriter w(csv);
  w.row({"beta", "norm", "inverse_distance"});
  for (std::size_t k = 0; k < scan.betas.size(); ++k)
  {
    w.row({format_real(scan.betas[k]), format_real(scan.norms[k]),
           format_real(1.0 / distance_to_spectrum(rep, scan.betas[k]))});
  }
  summary << "system: " << label_text(p) << "\n";
  summary << "loglog_slope: " << format_real(scan.fitted_loglog_slope) << "\n";
  summary << "saturation_beta: " << format_real(scan.saturation_beta) << "\n";
  summary << "fitted_points: " << scan.fitted_points << "\n";
}

void charroots_cmd(const RunConfig& cfg, std::ostream& csv, std::ostream& summary)
{
  const Params p = cfg.params();
  validate_params(p);
  const auto roots = characteristic_roots(p, cfg.region);
  CsvWriter w(csv);
  w.row({"re", "im", "residual", "multiplicity"});
  double max_re = -std::numeric_limits<double>::infinity();
  for (const auto& r : roots)
  {
    w.row({format_real(r.lambda.real()), format_real(r.lambda.imag()), format_real(r.residual),
           std::to_string(r.multiplicity_hint)});
    max_re = std::max(max_re, r.lambda.real());
  }
  summary << "system: " << label_text(p) << "\n";
  summary << "roots: " << roots.size() << "\n";
  summary << "max_real_part: " << format_real(max_re) << "\n";
}

void robin_cmd(const RunConfig& cfg, std::ostream& text)
{
  char buf[64];
  if (cfg.c_star)
  {
    std::snprintf(buf, sizeof buf, "%.10f", find_c_star());
    text << "c_star: " << buf << "\n";
    return;
  }
  std::snprintf(buf, sizeof buf, "%.10f", robin_eigenvalue(cfg.c));
  text << "C(" << format_real(cfg.c) << "): " << buf << "\n";
}

void sweep_cmd(const RunConfig& cfg, std::ostream& csv, std::ostream& summary)
{
  if (cfg.values.empty())
  {
    throw ConfigError(0, "values", "required by sweep");
  }
  const Params base = cfg.params();
  validate_params(base);
  const SweepParameter vary = *parse_sweep_parameter(cfg.vary);
  const SweepTable table = sweep(base, cfg.grid(), builtin_initial_data(cfg.data), cfg.dt,
                                 cfg.t_end, vary, cfg.values, cfg.window_fraction,
                                 cfg.thresholds());
  CsvWriter w(csv);
  w.row({std::string(to_string(vary)), "rate", "amplitude", "r_squared", "classification",
         "E0", "E_end", "diverged", "error"});
  std::size_t failed = 0;
  for (const auto& r : table.rows)
  {
    std::string error = r.error;
    for (char& ch : error)
    {
      if (ch == ',' || ch == '\n')
      {
        ch = ';';
      }
    }
    failed += r.error.empty() ? 0 : 1;
    w.row({format_real(r.value), format_real(r.fit.rate), format_real(r.fit.amplitude),
           format_real(r.fit.r_squared), std::string(to_string(r.fit.classification)),
           format_real(r.initial_energy), format_real(r.final_energy),
           r.diverged ? "true" : "false", error});
  }
  summary << "system: " << label_text(base) << "\n";
  summary << "rows: " << table.rows.size() << "\n";
  summary << "failed_rows: " << failed << "\n";
}

int verify_cmd(std::ostream& text)
{
  const auto results = run_verification_suite();
  int failed = 0;
  for (const auto& r : results)
  {
    text << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty())
    {
      text << ": " << r.detail;
    }
    text << "\n";
    failed += r.passed ? 0 : 1;
  }
  text << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
  return failed == 0 ? kExitOk : kExitRuntime;
}

}  // namespace

int run_command(Command cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  try
  {
    check_config(cfg);
    if (cmd == Command::Robin)
    {
      robin_cmd(cfg, out);
      return kExitOk;
    }
    if (cmd == Command::Verify)
    {
      return verify_cmd(out);
    }

    // Buffer the CSV so a failing command leaves no partial file behind.
    std::ostringstream csv;
    std::ostream& summary = cfg.out.empty() ? err : out;
    switch (cmd)
    {
      case Command::Simulate:
        simulate_cmd(cfg, csv, summary);
        break;
      case Command::Spectrum:
        spectrum_cmd(cfg, csv, summary);
        break;
      case Command::Resolvent:
        resolvent_cmd(cfg, csv, summary);
        break;
      case Command::Charroots:
        charroots_cmd(cfg, csv, summary);
        break;
      case Command::Sweep:
        sweep_cmd(cfg, csv, summary);
        break;
      default:
        break;
    }
    if (cfg.out.empty())
    {
      out << csv.str();
    }
    else
    {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f)
      {
        err << "error: cannot open output file '" << cfg.out << "'\n";
        return kExitRuntime;
      }
      f << csv.str();
      if (!f)
      {
        err << "error: failed writing '" << cfg.out << "'\n";
        return kExitRuntime;
      }
    }
    return kExitOk;
  }
  catch (const ConfigError& e)
  {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  catch (const ValidationError& e)
  {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  catch (const std::exception& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace dwl

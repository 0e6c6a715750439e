#include "ellipdrive/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ellipdrive/analysis.hpp"
#include "ellipdrive/density.hpp"
#include "ellipdrive/drive.hpp"
#include "ellipdrive/errors.hpp"
#include "ellipdrive/kernels.hpp"
#include "ellipdrive/oracle.hpp"
#include "ellipdrive/output.hpp"

namespace ellipdrive {

namespace {

struct Options {
  double a = 0.3;
  std::optional<double> x;
  double k = 0.25;
  double omega = 1.0;
  double hbar = 1.0;
  double mu = 10.0;
  double lambda = 5.0;
  double t_max = 60.0;
  int samples = 601;
  std::string initial = "ground";
  std::string out = "-";
  std::string format = "csv";
  int precision = 12;
  double tol = 1e-5;
  double rel_tol = 1e-9;
  bool zero_phase = false;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Destination for data output: a file, or the caller's stream for "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : to_stdout_(path.empty() || path == "-") {
    if (!to_stdout_) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw IoError("cannot open output file '" + path + "'");
    }
    stream_ = to_stdout_ ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }
  bool to_stdout() const { return to_stdout_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write to output failed");
  }

 private:
  bool to_stdout_;
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

void write_svg_file(const Options& o, std::string_view title, std::span<const double> t,
                    std::span<const Series> series) {
  if (o.out.empty() || o.out == "-") throw UsageError("--format csv+svg needs --out <file>");
  std::filesystem::path path(o.out);
  path.replace_extension(".svg");
  std::ofstream os(path);
  if (!os) throw IoError("cannot open output file '" + path.string() + "'");
  write_svg(os, title, t, series);
  if (!os.flush()) throw IoError("write to '" + path.string() + "' failed");
}

DriveParams drive_from(const Options& o) {
  DriveParams p;
  p.a = o.a;
  p.k = o.k;
  p.omega = o.omega;
  p.hbar = o.hbar;
  if (o.k == 0.0) {
    throw DomainError("degenerate modulus k = 0: the drive condition forces a = 0 and T = 0");
  }
  p.x = o.x ? *o.x : complete_x(o.a, o.k, o.omega, o.hbar);
  return p;
}

H0Params h0_from(const Options& o) { return H0Params{o.mu, o.lambda, o.hbar}; }

ComplexVec3 initial_state(const Options& o, const ClosedFormSolution& sol) {
  if (o.initial == "ground") return ComplexVec3{{1.0, 0.0, 0.0}};
  if (o.initial == "zero") return sol.basis_state(BasisLabel::zero, 0.0, 0.0);
  if (o.initial == "plus") return sol.basis_state(BasisLabel::plus, 0.0, 0.0);
  if (o.initial == "minus") return sol.basis_state(BasisLabel::minus, 0.0, 0.0);

  std::vector<double> parts;
  std::stringstream ss(o.initial);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--initial expects ground|zero|plus|minus or six comma-separated reals");
    }
  }
  if (parts.size() != 6) throw UsageError("--initial expects six comma-separated reals");
  ComplexVec3 v{{Complex{parts[0], parts[1]}, Complex{parts[2], parts[3]}, Complex{parts[4], parts[5]}}};
  if (std::abs(v.norm() - 1.0) > 1e-8) throw DomainError("explicit initial state is not normalized");
  return v;
}

std::string fmt(double v, int precision) { return format_number(v, precision); }

int cmd_params(const Options& o, std::ostream& out, std::ostream& err) {
  const int pr = o.precision;
  const DriveParams p = drive_from(o);
  out << "a=" << fmt(p.a, pr) << '\n'
      << "x=" << fmt(p.x, pr) << (o.x ? "" : " (solved)") << '\n'
      << "k=" << fmt(p.k, pr) << '\n'
      << "omega=" << fmt(p.omega, pr) << '\n'
      << "hbar=" << fmt(p.hbar, pr) << '\n';
  const double residual = condition_residual(p);
  try {
    const DerivedConstants c = validate(p);
    const double period = p.k < 1.0 ? 4.0 * quarter_period(p.k) / p.omega : INFINITY;
    out << "B=" << fmt(c.B, pr) << '\n'
        << "T=" << fmt(c.T, pr) << '\n'
        << "drive_period=" << fmt(period, pr) << '\n'
        << "condition_residual=" << fmt(residual, pr) << '\n'
        << "status=ok\n";
    return kExitOk;
  } catch (const ValidationError& e) {
    out << "condition_residual=" << fmt(e.residual(), pr) << '\n' << "status=invalid\n";
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream&) {
  const ClosedFormSolution sol(drive_from(o), FreeHamiltonian(h0_from(o)),
                               SolutionOptions{o.zero_phase});
  const auto coeffs = sol.decompose(initial_state(o, sol));
  const auto grid = uniform_grid(o.t_max, o.samples);
  const auto rows = parallel::sample_trajectory(sol, coeffs, grid);

  Sink sink(o.out, out);
  write_trajectory_csv(sink.stream(), rows, o.precision);
  sink.finish();

  if (o.format == "csv+svg") {
    std::array<Series, 3> s{Series{"p1", {}}, Series{"p2", {}}, Series{"p3", {}}};
    for (const auto& r : rows)
      for (int j = 0; j < 3; ++j) s[j].values.push_back(r.occupations[j]);
    write_svg_file(o, "occupation probabilities", grid, s);
  }
  return kExitOk;
}

int cmd_phase(const Options& o, std::ostream& out, std::ostream& err) {
  const ClosedFormSolution sol(drive_from(o), FreeHamiltonian(h0_from(o)));
  const auto grid = uniform_grid(o.t_max, o.samples);
  const auto phi = parallel::phase_on_grid(sol, grid);

  Sink sink(o.out, out);
  write_phase_csv(sink.stream(), grid, phi, o.precision);
  sink.finish();

  std::ostream& report = sink.to_stdout() ? err : out;
  report << "phase_rate_at_0=" << fmt(sol.phase_rate(0.0), o.precision) << '\n';
  if (std::isfinite(sol.drive_period())) {
    report << "drive_period=" << fmt(sol.drive_period(), o.precision) << '\n'
           << "mean_phase_rate=" << fmt(mean_phase_rate(sol, sol.drive_period()), o.precision) << '\n'
           << "drive_angular_frequency=" << fmt(2.0 * std::numbers::pi / sol.drive_period(), o.precision)
           << '\n';
  } else {
    report << "note=phase identically zero at k = 1\n";
  }

  if (o.format == "csv+svg") {
    std::array<Series, 1> s{Series{"sin(phi)", {}}};
    for (double v : phi) s[0].values.push_back(std::sin(v));
    write_svg_file(o, "sin(phi(t))", grid, s);
  }
  return kExitOk;
}

const char* match_label(const std::optional<VonNeumannForm>& f) {
  return f ? to_string(*f) : "neither";
}

void print_forms(std::ostream& os, const char* prefix, const std::array<FormResidual, 2>& forms, int pr) {
  for (VonNeumannForm f : {VonNeumannForm::plain, VonNeumannForm::three_halves}) {
    const auto& r = forms[static_cast<int>(f)];
    const std::string tag = std::string(prefix) + to_string(f);
    os << "fd_residual_" << tag << '=' << fmt(r.fd_residual, pr) << '\n'
       << "fd_residual_half_step_" << tag << '=' << fmt(r.fd_residual_half, pr) << '\n'
       << "oracle_deviation_" << tag << '=' << fmt(r.oracle_deviation, pr) << '\n';
  }
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  constexpr int pr = 6;
  DriveParams p;
  try {
    p = drive_from(o);
  } catch (const DomainError& e) {
    out << "validation=failed\n";
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  IntegratorConfig cfg;
  cfg.rel_tol = o.rel_tol;
  cfg.t_grid = uniform_grid(o.t_max, o.samples);
  const VerificationReport rep = verify_all(p, h0_from(o), cfg, VerifyOptions{o.zero_phase});

  if (!rep.validation_ok) {
    out << "# parameters rejected before integration: " << rep.validation_message << '\n'
        << "validation=failed\n"
        << "condition_residual=" << fmt(rep.condition_residual, pr) << '\n';
    return kExitDomain;
  }

  const double worst = rep.worst_residual();
  const bool pass = !rep.integration_failed() && worst <= o.tol;
  out << "# closed-form solutions vs adaptive Runge-Kutta over [0, " << fmt(o.t_max, pr) << "]\n"
      << "# " << (pass ? "all residuals within tolerance" : "residual above tolerance or failure")
      << '\n';
  if (rep.phase_identically_zero) out << "# phase identically zero (k = 1)\n";
  out << "validation=ok\n"
      << "condition_residual=" << fmt(rep.condition_residual, pr) << '\n'
      << "phase=" << (rep.phase_identically_zero ? "identically_zero" : "integrated") << '\n'
      << "phase_suppressed=" << (o.zero_phase ? "yes" : "no") << '\n';
  for (int j = 0; j < 4; ++j) {
    static constexpr const char* names[] = {"zero", "plus", "minus", "ground"};
    out << "state_deviation_" << names[j] << '=' << fmt(rep.state_deviation[j], pr) << '\n';
  }
  out << "max_state_deviation=" << fmt(rep.max_state_deviation, pr) << '\n'
      << "max_gram_deviation=" << fmt(rep.max_gram_deviation, pr) << '\n'
      << "max_norm_drift=" << fmt(rep.max_norm_drift, pr) << '\n';
  const auto& d = rep.density;
  if (d.available) {
    out << "density=available\n"
        << "density_A=" << fmt(d.coeffs.A, pr) << '\n'
        << "density_B=" << fmt(d.coeffs.B, pr) << '\n'
        << "density_C=" << fmt(d.coeffs.C, pr) << '\n'
        << "max_eigenvalue_drift=" << fmt(d.max_eigenvalue_drift, pr) << '\n'
        << "max_conjugation_residual=" << fmt(d.max_conjugation_residual, pr) << '\n'
        << "max_unitarity_deviation=" << fmt(d.max_unitarity_deviation, pr) << '\n';
    print_forms(out, "", d.swapped, pr);
    print_forms(out, "printed_order_", d.printed, pr);
    out << "matched_variant=" << match_label(d.matched) << '\n'
        << "printed_order_matched_variant=" << match_label(d.matched_printed_order) << '\n';
  } else {
    out << "density=unavailable (" << d.note << ")\n";
  }
  for (const auto& f : rep.failures) out << "failure=" << f << '\n';
  out << "worst_residual=" << fmt(worst, pr) << '\n'
      << "tol=" << fmt(o.tol, pr) << '\n'
      << "result=" << (pass ? "pass" : "fail") << '\n';

  if (rep.integration_failed()) return kExitIntegration;
  return pass ? kExitOk : kExitVerificationFailed;
}

int cmd_density(const Options& o, std::ostream& out, std::ostream& err) {
  const int pr = o.precision;
  const DensityCoeffs c = solve_coeffs(o.mu, o.lambda, o.omega, o.k, o.hbar);
  const DensitySolution sol(c);
  const auto grid = uniform_grid(o.t_max, o.samples);
  const auto rows = parallel::sample_density(sol, grid);

  IntegratorConfig cfg;
  cfg.rel_tol = o.rel_tol;
  cfg.t_grid = grid;
  std::array<FormResidual, 2> forms;
  for (VonNeumannForm f : {VonNeumannForm::plain, VonNeumannForm::three_halves}) {
    forms[static_cast<int>(f)] = evaluate_form(sol, f, cfg);
  }
  const DensitySolution printed(c, FreeHamiltonianOrder::printed);
  std::array<FormResidual, 2> printed_forms;
  for (VonNeumannForm f : {VonNeumannForm::plain, VonNeumannForm::three_halves}) {
    printed_forms[static_cast<int>(f)] = evaluate_form(printed, f, cfg);
  }

  Sink sink(o.out, out);
  write_density_csv(sink.stream(), rows, pr);
  sink.finish();

  std::ostream& report = sink.to_stdout() ? err : out;
  const auto ev = c.eigenvalues();
  const auto res = c.condition_residuals();
  double drift = 0.0, conj = 0.0;
  for (const auto& r : rows) {
    for (int j = 0; j < 3; ++j) drift = std::max(drift, std::abs(r.eigenvalues[j] - ev[j]));
    conj = std::max(conj, r.conjugation_residual);
  }
  report << "mu=" << fmt(c.mu, pr) << '\n'
         << "lambda=" << fmt(c.lambda, pr) << '\n'
         << "omega=" << fmt(c.omega, pr) << '\n'
         << "k=" << fmt(c.k, pr) << '\n'
         << "hbar=" << fmt(c.hbar, pr) << '\n'
         << "configuration=" << to_string(H0Params{c.mu, c.lambda, c.hbar}.classify()) << '\n'
         << "level_order=" << to_string(sol.order()) << '\n'
         << "A=" << fmt(c.A, pr) << '\n'
         << "B=" << fmt(c.B, pr) << '\n'
         << "C=" << fmt(c.C, pr) << '\n'
         << "T=" << fmt(c.T, pr) << '\n'
         << "eigenvalues=" << fmt(ev[0], pr) << ',' << fmt(ev[1], pr) << ',' << fmt(ev[2], pr) << '\n'
         << "physical=" << (c.physical() ? "yes" : "no") << '\n'
         << "condition_residuals=" << fmt(res[0], 3) << ',' << fmt(res[1], 3) << ',' << fmt(res[2], 3)
         << '\n'
         << "max_eigenvalue_drift=" << fmt(drift, 3) << '\n'
         << "max_conjugation_residual=" << fmt(conj, 3) << '\n';
  print_forms(report, "", forms, 3);
  print_forms(report, "printed_order_", printed_forms, 3);
  report << "matched_variant=" << match_label(matched_form(forms)) << '\n'
         << "printed_order_matched_variant=" << match_label(matched_form(printed_forms)) << '\n';
  if (!c.physical()) err << "warning: 1/3 - T/2 < 0, rho(t) is not a positive state\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form dynamics of a three-level system under Jacobi-elliptic drives", "ellipdrive"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file (flags override)");

  Options o;
  std::optional<double> x_flag;
  app.add_option("--a", o.a, "cn-drive amplitude")->capture_default_str();
  app.add_option("--x", x_flag, "dn-drive amplitude (solved from the drive condition if omitted)");
  app.add_option("--k", o.k, "elliptic modulus")->capture_default_str();
  app.add_option("--omega", o.omega, "drive angular frequency")->capture_default_str();
  app.add_option("--hbar", o.hbar, "reduced Planck constant")->capture_default_str();
  app.add_option("--mu", o.mu, "H0 parameter mu")->capture_default_str();
  app.add_option("--lambda", o.lambda, "H0 parameter lambda")->capture_default_str();
  app.add_option("--t-max", o.t_max, "end of the time grid")->capture_default_str();
  app.add_option("--samples", o.samples, "number of grid points")->capture_default_str()->check(CLI::Range(2, 100000000));
  app.add_option("--initial", o.initial, "ground|zero|plus|minus|re1,im1,re2,im2,re3,im3")->capture_default_str();
  app.add_option("--out", o.out, "output file, - for stdout")->capture_default_str();
  app.add_option("--format", o.format, "csv or csv+svg")->capture_default_str()->check(CLI::IsMember({"csv", "csv+svg"}));
  app.add_option("--precision", o.precision, "significant digits")->capture_default_str()->check(CLI::Range(1, 17));
  app.add_option("--tol", o.tol, "verify: residual tolerance")->capture_default_str();
  app.add_option("--rel-tol", o.rel_tol, "integrator relative tolerance")->capture_default_str();
  app.add_flag("--zero-phase", o.zero_phase, "debug: force phi(t) = 0 in the plus/minus solutions");

  auto* params = app.add_subcommand("params", "derived constants and drive-condition check");
  auto* simulate = app.add_subcommand("simulate", "trajectory CSV for an initial state");
  auto* phase = app.add_subcommand("phase", "phi(t) and sin(phi(t))");
  auto* verify = app.add_subcommand("verify", "closed forms against the numerical oracle");
  auto* density = app.add_subcommand("density", "elliptic density-matrix solution");
  for (auto* sub : {params, simulate, phase, verify, density}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }
  o.x = x_flag;

  try {
    if (o.t_max <= 0.0) throw UsageError("--t-max must be positive");
    if (*params) return cmd_params(o, out, err);
    if (*simulate) return cmd_simulate(o, out, err);
    if (*phase) return cmd_phase(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    if (*density) return cmd_density(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << " (last good t = " << e.last_good_time() << ")\n";
    return kExitIntegration;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace ellipdrive

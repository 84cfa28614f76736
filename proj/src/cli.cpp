#include "glauber/cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "glauber/errors.hpp"
#include "glauber/format.hpp"
#include "glauber/full_chain.hpp"
#include "glauber/mag_chain.hpp"
#include "glauber/mcmc.hpp"
#include "glauber/perturbation.hpp"
#include "glauber/report_io.hpp"
#include "glauber/spectral.hpp"

namespace glauber::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = std::strtoll(epoch, nullptr, 10);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Explicit --output, else a default file name under $GLAUBER_OUTPUT_DIR, else empty.
std::string resolve_output(const RunConfig& config, const std::string& default_name) {
  if (!config.output.empty()) return config.output;
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir)
    return (std::filesystem::path(dir) / default_name).string();
  return {};
}

std::string flag(bool b) { return b ? "true" : "false"; }
std::string flag(const std::optional<bool>& b) { return b ? flag(*b) : "na"; }

// ---------------------------------------------------------------- verify

enum class Status { pass, fail, skipped, info };

struct Check {
  std::string name;
  Status status;
  double value;
  std::string bound;
  std::string note;
};

const char* status_text(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skipped: return "SKIPPED";
    case Status::info: return "INFO";
  }
  return "?";
}

Check upper(std::string name, double value, double tol) {
  return {std::move(name), value <= tol ? Status::pass : Status::fail, value,
          "<= " + format_double(tol), {}};
}

std::vector<double> apply_full(const FullChain& chain, const std::vector<double>& f) {
  std::vector<double> out(chain.size());
  for (std::uint64_t i = 0; i < chain.size(); ++i) {
    double v = chain.stay(i) * f[i];
    for (int x = 0; x < chain.n(); ++x) v += chain.flip(i, x) * f[i ^ (std::uint64_t{1} << x)];
    out[i] = v;
  }
  return out;
}

// Entrywise comparison of the analytic derivative with a difference of the chain.
double derivative_fd_error(const ModelParams& params) {
  constexpr double h = 1e-6;
  const auto d = derivative_matrix(params, DerivativeMode::analytic);
  const bool central = params.J >= h;
  const auto at = [&](double J) { return build_reduced_chain(params.with_J(J)); };
  const ReducedChain a = at(central ? params.J - h : params.J);
  const ReducedChain b = at(params.J + h);
  const ReducedChain c = at(params.J + 2 * h);
  auto diff = [&](double fa, double fb, double fc) {
    return central ? (fb - fa) / (2 * h) : (-3 * fa + 4 * fb - fc) / (2 * h);
  };
  double worst = 0.0;
  for (int k = 0; k < params.n; ++k) {
    const double cd = central ? 0.0 : c.up[k];
    worst = std::max(worst, std::abs(diff(a.up[k], b.up[k], cd) - d.d_up[k]));
    const double cdn = central ? 0.0 : c.down[k];
    worst = std::max(worst, std::abs(diff(a.down[k], b.down[k], cdn) - d.d_down[k]));
  }
  return worst;
}

std::vector<Check> run_checks(const ModelParams& params) {
  std::vector<Check> checks;
  const int n = params.n;
  const FullChain full = full_transition_matrix(params);
  const Distribution pi_full = stationary_full(params);
  const ReducedChain reduced = build_reduced_chain(params);
  const Distribution pi_red = reduced_stationary(params);

  double row_err = 0.0;
  for (std::uint64_t i = 0; i < full.size(); ++i)
    row_err = std::max(row_err, std::abs(full.row_sum(i) - 1.0));
  checks.push_back(upper("full chain row sums", row_err, 1e-14));
  checks.push_back(upper("full chain detailed balance", check_detailed_balance(full, pi_full),
                         1e-13));
  double red_row = 0.0;
  for (int k = 0; k <= n; ++k)
    red_row = std::max(red_row, std::abs(reduced.up_at(k) + reduced.down_at(k) +
                                         reduced.diag[k] - 1.0));
  checks.push_back(upper("reduced chain row sums", red_row, 1e-14));
  checks.push_back(upper("reduced chain detailed balance",
                         check_detailed_balance(reduced, pi_red), 1e-13));

  const auto levels = level_marginals(pi_full, n);
  double lump_pi = 0.0;
  for (int k = 0; k <= n; ++k) lump_pi = std::max(lump_pi, std::abs(levels[k] - pi_red[k]));
  checks.push_back(upper("stationary lumping", lump_pi, 1e-12));

  double lump_rates = 0.0;
  for (std::uint64_t i = 0; i < full.size(); ++i) {
    const int k = std::popcount(i);
    double up = 0.0, down = 0.0;
    for (int x = 0; x < n; ++x) ((i >> x) & 1u ? down : up) += full.flip(i, x);
    lump_rates = std::max({lump_rates, std::abs(up - reduced.up_at(k)),
                           std::abs(down - reduced.down_at(k))});
  }
  checks.push_back(upper("lumped transition rates", lump_rates, 1e-13));
  checks.push_back(upper("derivative vs finite difference", derivative_fd_error(params), 1e-8));

  const SpectralResult second = second_eigenpair(params);
  const auto full_spec = full_chain_spectrum(params);
  checks.push_back(upper("lambda2 full vs reduced", std::abs(full_spec[1] - second.lambda2),
                         1e-10));
  {
    std::vector<bool> used(full_spec.size(), false);
    double worst = 0.0;
    for (double ev : second.eigenvalues) {
      double best = INFINITY;
      std::size_t at = 0;
      for (std::size_t j = 0; j < full_spec.size(); ++j) {
        if (!used[j] && std::abs(full_spec[j] - ev) < best) {
          best = std::abs(full_spec[j] - ev);
          at = j;
        }
      }
      used[at] = true;
      worst = std::max(worst, best);
    }
    checks.push_back(upper("reduced spectrum within full spectrum", worst, 1e-10));
  }
  {
    const auto f = lump_vector(second.second_vector, n);
    const auto pf = apply_full(full, f);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      worst = std::max(worst, std::abs(pf[i] - second.lambda2 * f[i]));
    checks.push_back(upper("lumped eigenvector residual", worst, 1e-10));
  }
  {
    double norm = 0.0;
    for (int k = 0; k <= n; ++k) norm += pi_red[k] * second.second_vector[k] * second.second_vector[k];
    checks.push_back(upper("pi-normalization of f", std::abs(norm - 1.0), 1e-10));
  }

  const StructureReport rep = eigenvector_structure_report(second, params.H);
  if (!second.simple()) {
    checks.push_back({"lambda2 simple", Status::fail, second.separation, ">= 1e-12",
                      "eigenvector analysis unreliable"});
  }
  checks.push_back({"f increasing", rep.increasing ? Status::pass : Status::fail,
                    rep.min_increment, ">= -1e-09", "min increment"});
  checks.push_back({"f strictly increasing", rep.strictly ? Status::pass : Status::fail,
                    rep.min_increment, "> 0", "min increment"});
  const bool h0 = params.H == 0.0;
  const std::string skip_note = "H != 0";
  if (h0) {
    checks.push_back(upper("f antisymmetric", rep.max_antisymmetry, 1e-9));
    checks.push_back({"f sign split", *rep.sign_split ? Status::pass : Status::fail, 0.0, "", {}});
  } else {
    checks.push_back({"f antisymmetric", Status::skipped, NAN, "", skip_note});
    checks.push_back({"f sign split", Status::skipped, NAN, "", skip_note});
  }

  if (second.simple()) {
    const double hf = hellmann_feynman(params);
    const double fd = finite_difference_gap(params);
    const double tol = std::max(1e-8, 1e-6 * std::abs(fd));
    checks.push_back(upper("Hellmann-Feynman vs finite difference", std::abs(hf - fd), tol));
    if (h0) {
      checks.push_back({"d lambda2 / dJ >= 0", hf >= -1e-12 ? Status::pass : Status::fail, hf,
                        ">= -1e-12", {}});
      const auto terms = sign_structure_terms(params);
      const double lowest = *std::min_element(terms.begin(), terms.end());
      checks.push_back({"sign-structure terms", lowest >= -1e-12 ? Status::pass : Status::fail,
                        lowest, ">= -1e-12", "min term"});
    } else {
      checks.push_back({"d lambda2 / dJ >= 0", Status::info, hf, "", "reported only for H != 0"});
      checks.push_back({"sign-structure terms", Status::skipped, NAN, "", skip_note});
    }
  } else {
    for (const char* name :
         {"Hellmann-Feynman vs finite difference", "d lambda2 / dJ >= 0", "sign-structure terms"})
      checks.push_back({name, Status::skipped, NAN, "", "lambda2 not simple"});
  }
  return checks;
}

}  // namespace

void RunConfig::validate() const {
  if (n < 1) throw std::invalid_argument("--n must be >= 1");
  if (!std::isfinite(H)) throw std::invalid_argument("--H must be finite");
  const bool single = command == Command::gap || command == Command::verify ||
                      command == Command::simulate;
  if (single) {
    if (!J) throw std::invalid_argument("--J is required");
    if (J_min || J_max || J_steps)
      throw std::invalid_argument("--J-min/--J-max/--J-steps are only accepted by sweep");
    if (!(*J >= 0.0) || !std::isfinite(*J)) throw std::invalid_argument("--J must be >= 0");
  } else {
    if (J) throw std::invalid_argument("sweep takes --J-min/--J-max/--J-steps, not --J");
    if (!J_min || !J_max || !J_steps)
      throw std::invalid_argument("sweep requires --J-min, --J-max and --J-steps");
    if (!(*J_min >= 0.0)) throw std::invalid_argument("--J-min must be >= 0");
    if (!(*J_max > *J_min)) throw std::invalid_argument("--J-max must exceed --J-min");
    if (*J_steps < 2) throw std::invalid_argument("--J-steps must be >= 2");
    if (!std::isfinite(*J_max)) throw std::invalid_argument("--J-max must be finite");
  }
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("--c must be positive");
  if (command == Command::verify && n > kDefaultMaxFullN)
    throw std::invalid_argument("verify needs the full chain; --n must be <= " +
                                std::to_string(kDefaultMaxFullN));
  if (command == Command::simulate) {
    if (steps < static_cast<std::int64_t>(kMinEstimationSamples))
      throw std::invalid_argument("--steps must be >= " + std::to_string(kMinEstimationSamples) +
                                  " sweeps for a relaxation estimate");
    if (burn_in < 0) throw std::invalid_argument("--burn-in must be >= 0");
    if (full && n > 24) throw std::invalid_argument("--full supports n <= 24");
  }
}

int cmd_gap(const RunConfig& config, std::ostream& out, std::ostream&) {
  const ModelParams params{config.n, *config.J, config.H};
  const SpectralResult r = second_eigenpair(params);
  const StructureReport rep = eigenvector_structure_report(r, params.H);
  if (config.format == Format::json) {
    nlohmann::json j;
    j["n"] = params.n;
    j["J"] = params.J;
    j["H"] = params.H;
    j["lambda2"] = r.lambda2;
    j["gap"] = r.gap;
    j["t_rel"] = r.t_rel;
    j["increasing"] = rep.increasing;
    j["strictly_increasing"] = rep.strictly;
    j["antisymmetric"] = rep.antisymmetric_at_H0 ? nlohmann::json(*rep.antisymmetric_at_H0) : nullptr;
    j["sign_split"] = rep.sign_split ? nlohmann::json(*rep.sign_split) : nullptr;
    j["reliable"] = rep.reliable;
    j["second_vector"] = r.second_vector;
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "n = " << params.n << '\n'
      << "J = " << format_double(params.J) << '\n'
      << "H = " << format_double(params.H) << '\n'
      << "lambda2 = " << format_double(r.lambda2) << '\n'
      << "gap = " << format_double(r.gap) << '\n'
      << "t_rel = " << format_double(r.t_rel) << '\n'
      << "increasing = " << flag(rep.increasing) << '\n'
      << "strictly_increasing = " << flag(rep.strictly) << '\n'
      << "antisymmetric = " << flag(rep.antisymmetric_at_H0) << '\n'
      << "sign_split = " << flag(rep.sign_split) << '\n'
      << "reliable = " << flag(rep.reliable) << '\n';
  return kOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto grid = uniform_grid(*config.J_min, *config.J_max, *config.J_steps);
  const SweepReport report = sweep_monotonicity(config.n, config.H, grid);

  std::vector<TemperaturePoint> view;
  if (config.temperature_view) {
    SweepReport positive;
    for (const SweepPoint& p : report.points)
      if (p.J > 0.0 && p.ok()) positive.points.push_back(p);
    view = temperature_view(positive, config.c);
  }

  const std::string ext = config.format == Format::json ? ".json" : ".csv";
  std::ostringstream name;
  name << "sweep_n" << config.n << "_H" << format_double(config.H) << ext;
  const std::string path = resolve_output(config, name.str());

  auto write = [&](std::ostream& os) {
    if (config.format == Format::json) {
      os << sweep_to_json(report) << '\n';
    } else {
      write_sweep_csv(os, report, {kVersion, config.command_line, timestamp_utc()},
                      config.temperature_view ? std::optional<double>(config.c) : std::nullopt);
    }
  };
  std::ostream* summary = &out;
  if (path.empty()) {
    write(out);
    summary = &err;
  } else {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    write(file);
    *summary << "report written to " << path << '\n';
  }

  *summary << "monotone: " << flag(report.monotone_in_J) << '\n'
           << "max_violation: " << format_double(report.max_violation) << '\n';
  if (config.H != 0.0)
    *summary << "note: H != 0, verdict is an empirical observation\n";
  if (config.temperature_view)
    *summary << "t_rel nonincreasing in T: " << flag(nonincreasing_in_T(view)) << '\n';
  if (!report.complete()) {
    for (const SweepPoint& p : report.points)
      if (!p.ok()) err << "point J=" << format_double(p.J) << " failed: " << p.error << '\n';
    return kPartialSweep;
  }
  if (config.H == 0.0 && !report.monotone_in_J) return kPropertyFailure;
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream&) {
  const ModelParams params{config.n, *config.J, config.H};
  const auto checks = run_checks(params);
  bool all = true;
  out << std::left << std::setw(42) << "check" << std::setw(9) << "status" << std::setw(26)
      << "value" << "bound\n";
  for (const Check& c : checks) {
    out << std::setw(42) << c.name << std::setw(9) << status_text(c.status) << std::setw(26)
        << format_double(c.value) << c.bound;
    if (!c.note.empty()) out << "  (" << c.note << ')';
    out << '\n';
    if (c.status == Status::fail) all = false;
  }
  out << (all ? "all checks passed\n" : "some checks FAILED\n");
  return all ? kOk : kPropertyFailure;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream&) {
  const ModelParams params{config.n, *config.J, config.H};
  const Trajectory traj = config.full
                              ? simulate_full(params, config.seed, config.steps, config.burn_in)
                              : simulate_reduced(params, config.seed, config.steps, config.burn_in);
  std::ostringstream name;
  name << "trajectory_n" << config.n << "_seed" << config.seed << ".csv";
  const std::string path = resolve_output(config, name.str());
  if (!path.empty()) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    write_trajectory_csv(file, traj);
    out << "trajectory written to " << path << '\n';
  }

  const double spectral = spectral_t_rel_sweeps(params);
  out << "chain = " << (config.full ? "full" : "reduced") << '\n'
      << "sweeps = " << traj.samples.size() << '\n'
      << "spectral_t_rel_sweeps = " << format_double(spectral) << '\n';
  for (auto method :
       {RelaxationMethod::exponential_fit, RelaxationMethod::integrated_autocorrelation}) {
    const RelaxationEstimate e = estimate_relaxation(traj, method);
    const char* label =
        method == RelaxationMethod::exponential_fit ? "exponential_fit" : "integrated_autocorrelation";
    out << label << " = " << format_double(e.t_rel_hat) << " +- " << format_double(e.std_error)
        << " (relative difference " << std::setprecision(4)
        << (e.t_rel_hat - spectral) / spectral << std::setprecision(6)
        << (e.at_floor ? ", at floor" : "") << ")\n";
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Glauber dynamics of the mean-field Ising model: spectral gap laboratory",
               "glauber"};
  app.require_subcommand(1);
  RunConfig config;

  double J = 0, J_min = 0, J_max = 0;
  int J_steps = 0;
  std::string format = "";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", config.n, "Number of vertices")->required();
    sub->add_option("--H", config.H, "Uniform external field");
  };
  auto* gap = app.add_subcommand("gap", "lambda_2, gap and relaxation time at one point");
  common(gap);
  auto* gap_J = gap->add_option("--J", J, "Coupling");
  gap->add_option("--format", format, "Machine-readable output")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "Monotonicity sweep over a J grid");
  common(sweep);
  auto* sweep_J = sweep->add_option("--J", J, "Rejected: use the J range options");
  auto* jmin = sweep->add_option("--J-min", J_min, "Smallest coupling");
  auto* jmax = sweep->add_option("--J-max", J_max, "Largest coupling");
  auto* jsteps = sweep->add_option("--J-steps", J_steps, "Number of grid points");
  sweep->add_flag("--temperature-view", config.temperature_view, "Append T = c/J columns");
  sweep->add_option("--c", config.c, "Temperature constant in T = c/J");
  sweep->add_option("-o,--output", config.output, "Report path");
  sweep->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  auto* verify = app.add_subcommand("verify", "Run the property checks at one point");
  common(verify);
  auto* verify_J = verify->add_option("--J", J, "Coupling");

  auto* simulate = app.add_subcommand("simulate", "Heat-bath simulation and t_rel estimate");
  common(simulate);
  auto* sim_J = simulate->add_option("--J", J, "Coupling");
  simulate->add_option("--steps", config.steps, "Recorded sweeps");
  simulate->add_option("--burn-in", config.burn_in, "Discarded sweeps");
  simulate->add_option("--seed", config.seed, "Random seed");
  simulate->add_flag("--full", config.full, "Simulate all n spins instead of the level chain");
  simulate->add_option("-o,--output", config.output, "Trajectory CSV path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == gap) config.command = Command::gap;
  else if (chosen == sweep) config.command = Command::sweep;
  else if (chosen == verify) config.command = Command::verify;
  else config.command = Command::simulate;

  for (auto* opt : {gap_J, sweep_J, verify_J, sim_J})
    if (opt->count() > 0) config.J = J;
  if (jmin->count()) config.J_min = J_min;
  if (jmax->count()) config.J_max = J_max;
  if (jsteps->count()) config.J_steps = J_steps;
  if (format == "json") config.format = Format::json;

  std::ostringstream cmdline;
  cmdline << "glauber";
  for (const auto& a : args) cmdline << ' ' << a;
  config.command_line = cmdline.str();

  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n' << chosen->help();
    return kUsage;
  }

  try {
    switch (config.command) {
      case Command::gap: return cmd_gap(config, out, err);
      case Command::sweep: return cmd_sweep(config, out, err);
      case Command::verify: return cmd_verify(config, out, err);
      case Command::simulate: return cmd_simulate(config, out, err);
    }
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kOk;
}

}  // namespace glauber::cli

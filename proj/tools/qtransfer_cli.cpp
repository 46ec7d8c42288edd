// qtransfer: command-line front end for GHZ transfer runs on XX chains.
//
//   qtransfer spectrum --n 19 --j0 0.01 --out spectrum.csv
//   qtransfer evolve   --n 19 --j0 0.01 --out run.csv --svg run.svg [--gmn --gmn-stride 50]
//   qtransfer sweep    --n 23 --j0 0.01,0.02,0.03 --out sweep.csv
//   qtransfer validate --n 11 --j0 0.05 --times 64
//   qtransfer gmn      --in rho.txt
//   qtransfer plot     --in run.csv --out run.svg
//
// Every subcommand accepts --config FILE with `key = value` lines naming long options
// (without dashes); options given on the command line take precedence.

#include "qtransfer/harness.hpp"
#include "qtransfer/tridiagonal.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qtransfer;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes through a temporary buffer so "-" maps to stdout and files are opened once.
void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_chain_options(CLI::App* cmd, ChainSpec& chain) {
  cmd->add_option("--n", chain.n_total, "Total number of sites N")->capture_default_str();
  cmd->add_option("--j0", chain.j0, "Block-wire coupling J0")->capture_default_str();
}

std::string config_path;

void add_config_option(CLI::App* cmd) {
  cmd->add_option("--config", config_path, "key = value file merged under explicit flags")
      ->check(CLI::ExistingFile);
}

// Fills options that were not given on the command line from the config file.
void merge_config(CLI::App* cmd) {
  if (config_path.empty()) return;
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot open config '" + config_path + "'");
  const auto values = read_config_file(in);
  for (const auto& [key, value] : values) {
    if (key == "config") throw UsageError("config: nested config files are not supported");
    CLI::Option* opt = nullptr;
    try {
      opt = cmd->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw UsageError("config: unknown key '" + key + "' for '" + cmd->get_name() + "'");
    }
    if (opt->count() > 0) continue;
    if (opt->get_type_size() == 0) {
      if (value != "true" && value != "false")
        throw UsageError("config: flag '" + key + "' expects true or false");
      if (value == "false") continue;
    }
    opt->add_result(opt->get_type_size() == 0 ? std::string("true") : value);
    opt->run_callback();
  }
}

void report_chain(const ChainSetup& setup, const ChainSpec& spec) {
  if (auto w = spec.resonance_warning()) std::cerr << "warning: " << *w << '\n';
  if (!setup.freqs) std::cerr << "note: " << setup.regime_note << '\n';
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in list");
    }
    if (used != item.size()) throw UsageError("bad number '" + item + "' in list");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GHZ-state transfer on XX spin chains"};
  app.require_subcommand(1);

  // spectrum
  ChainSpec spectrum_chain;
  std::string spectrum_out = "-";
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Single-particle spectrum as CSV");
  add_chain_options(spectrum_cmd, spectrum_chain);
  spectrum_cmd->add_option("--out", spectrum_out, "Output CSV ('-' for stdout)");
  add_config_option(spectrum_cmd);

  // evolve
  RunConfig evolve_config;
  std::string evolve_out = "-", evolve_svg;
  double t_min = 0, t_max = 0;
  int steps = 0;
  auto* evolve_cmd = app.add_subcommand("evolve", "Entanglement time series");
  add_chain_options(evolve_cmd, evolve_config.chain);
  auto* t_min_opt = evolve_cmd->add_option("--t-min", t_min, "Start time");
  auto* t_max_opt = evolve_cmd->add_option("--t-max", t_max, "End time (default 1.2 T)");
  auto* steps_opt = evolve_cmd->add_option("--steps", steps, "Grid points (default: T~/40 spacing)");
  evolve_cmd->add_flag("--gmn", evolve_config.gmn, "Also solve the GMN SDP");
  evolve_cmd->add_option("--gmn-stride", evolve_config.gmn_stride, "Solve GMN every k-th point");
  evolve_cmd->add_option("--gmn-tol", evolve_config.gmn_tolerance, "GMN duality-gap tolerance");
  evolve_cmd->add_option("--workers", evolve_config.workers, "Worker threads (0 = all cores)");
  evolve_cmd->add_option("--out", evolve_out, "Output CSV ('-' for stdout)");
  evolve_cmd->add_option("--svg", evolve_svg, "Optional SVG plot");
  add_config_option(evolve_cmd);

  // sweep
  RunConfig sweep_config;
  sweep_config.chain.n_total = 23;
  std::string sweep_j0s = "0.01,0.02,0.03,0.04,0.05", sweep_out = "-";
  auto* sweep_cmd = app.add_subcommand("sweep", "Transfer time and quality against J0");
  sweep_cmd->add_option("--n", sweep_config.chain.n_total, "Total number of sites N")
      ->capture_default_str();
  sweep_cmd->add_option("--j0", sweep_j0s, "Ascending comma-separated J0 values")
      ->capture_default_str();
  sweep_cmd->add_flag("--gmn", sweep_config.gmn, "Also report max GMN near tau");
  sweep_cmd->add_option("--workers", sweep_config.workers, "Worker threads (0 = all cores)");
  sweep_cmd->add_option("--out", sweep_out, "Output CSV ('-' for stdout)");
  add_config_option(sweep_cmd);

  // validate
  ValidateOptions validate_options;
  validate_options.chain.n_total = 11;
  validate_options.chain.j0 = 0.05;
  std::vector<int> fault;
  auto* validate_cmd = app.add_subcommand("validate", "Compare against the exact sector oracle");
  add_chain_options(validate_cmd, validate_options.chain);
  validate_cmd->add_option("--times", validate_options.times, "Random times in [0, 2T]")
      ->capture_default_str();
  validate_cmd->add_option("--tol", validate_options.tolerance, "Elementwise tolerance")
      ->capture_default_str();
  validate_cmd->add_option("--seed", validate_options.seed, "Seed for the time sample")
      ->capture_default_str();
  validate_cmd->add_option("--inject-fault", fault, "Flip the sign of rho(i,j) (test fixture)")
      ->expected(2)
      ->group("");
  add_config_option(validate_cmd);

  // gmn
  std::string gmn_in, gmn_out = "-";
  GmnProblem gmn_problem;
  auto* gmn_cmd = app.add_subcommand("gmn", "Solve the GMN SDP for a stored density matrix");
  gmn_cmd->add_option("--in", gmn_in, "Density-matrix file")->required();
  gmn_cmd->add_option("--tol", gmn_problem.tolerance, "Duality-gap tolerance")->capture_default_str();
  gmn_cmd->add_option("--max-iter", gmn_problem.max_iterations, "Iteration cap")->capture_default_str();
  gmn_cmd->add_option("--out", gmn_out, "Report path ('-' for stdout)");
  add_config_option(gmn_cmd);

  // plot
  std::string plot_in, plot_out = "-", plot_title = "receiver entanglement";
  auto* plot_cmd = app.add_subcommand("plot", "SVG plot from an evolve CSV");
  plot_cmd->add_option("--in", plot_in, "evolve CSV")->required();
  plot_cmd->add_option("--out", plot_out, "Output SVG ('-' for stdout)");
  plot_cmd->add_option("--title", plot_title, "Plot title");
  add_config_option(plot_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (auto* cmd : app.get_subcommands()) merge_config(cmd);

    if (*spectrum_cmd) {
      spectrum_chain.validate();
      const ChainSetup setup = setup_chain(spectrum_chain);
      report_chain(setup, spectrum_chain);
      std::ostringstream out;
      write_spectrum_csv(out, setup.spectrum);
      emit(spectrum_out, out.str());
      return kExitOk;
    }

    if (*evolve_cmd) {
      evolve_config.chain.validate();
      if (*t_min_opt) evolve_config.t_min = t_min;
      if (*t_max_opt) evolve_config.t_max = t_max;
      if (*steps_opt) evolve_config.steps = steps;
      const EvolveResult result = evolve_run(evolve_config);
      report_chain(result.setup, evolve_config.chain);
      std::ostringstream csv;
      write_evolve_csv(csv, result.records);
      if (!result.error.empty()) csv << "# status: error " << result.error << '\n';
      emit(evolve_out, csv.str());
      if (!evolve_svg.empty()) {
        std::ostringstream svg;
        write_svg(svg, result.records, "N=" + std::to_string(evolve_config.chain.n_total));
        emit(evolve_svg, svg.str());
      }
      if (!result.error.empty()) {
        std::cerr << "error: " << result.error << '\n';
        return kExitValidation;
      }
      if (result.gmn_unconverged > 0) {
        std::cerr << "error: GMN SDP did not converge at " << result.gmn_unconverged
                  << " grid point(s)\n";
        return kExitSdp;
      }
      return kExitOk;
    }

    if (*sweep_cmd) {
      const SweepResult result = sweep_j0(sweep_config, parse_list(sweep_j0s));
      std::ostringstream csv;
      write_sweep_csv(csv, result);
      emit(sweep_out, csv.str());
      if (!result.fit) std::cerr << "warning: " << result.fit_error << '\n';
      return kExitOk;
    }

    if (*validate_cmd) {
      if (!fault.empty()) validate_options.fault = AssemblyFault{fault[0], fault[1]};
      const ValidationReport report = validate_run(validate_options);
      write_validation_report(std::cout, report);
      return report.passed() ? kExitOk : kExitValidation;
    }

    if (*gmn_cmd) {
      std::istringstream in(slurp(gmn_in));
      gmn_problem.rho = read_density_matrix(in);
      const GmnSolution solution = solve_gmn(gmn_problem);
      const CertificateReport report = check_certificate(solution, gmn_problem);
      std::ostringstream out;
      write_gmn_report(out, solution, report);
      emit(gmn_out, out.str());
      if (solution.status != GmnStatus::converged) return kExitSdp;
      return report.all_passed() ? kExitOk : kExitValidation;
    }

    if (*plot_cmd) {
      std::istringstream in(slurp(plot_in));
      const auto records = read_evolve_csv(in);
      std::ostringstream svg;
      write_svg(svg, records, plot_title);
      emit(plot_out, svg.str());
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

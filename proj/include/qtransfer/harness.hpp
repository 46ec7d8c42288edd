#pragma once

#include "qtransfer/chain_model.hpp"
#include "qtransfer/dynamics.hpp"
#include "qtransfer/gmn.hpp"
#include "qtransfer/measures.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtransfer {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitSdp = 3 };

struct RunConfig {
  ChainSpec chain;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<int> steps;
  bool gmn = false;
  int gmn_stride = 1;
  double gmn_tolerance = 1e-7;
  int workers = 0;  // 0 = hardware concurrency
};

/// Evenly spaced grid; defaults to [0, 1.2 T] with at least 40 points per fast period T~.
struct TimeGrid {
  double t_min = 0;
  double t_max = 0;
  int steps = 0;

  double at(int i) const;
  std::vector<double> points() const;
};

TimeGrid make_time_grid(const RunConfig& config, const std::optional<PerturbativeFrequencies>& freqs);

/// Spectrum and, when the chain is in the resonant weak-coupling regime, its frequencies.
struct ChainSetup {
  CouplingPattern pattern;
  SingleParticleSpectrum spectrum;
  std::optional<PerturbativeFrequencies> freqs;
  std::string regime_note;  // why freqs is empty
};

ChainSetup setup_chain(const ChainSpec& spec);

/// Receiver state and closed-form quantifiers at one time.
EntanglementRecord evaluate_at(const SingleParticleSpectrum& spectrum, double t,
                               ReceiverState* state_out = nullptr);

struct EvolveResult {
  ChainSetup setup;
  TimeGrid grid;
  std::vector<EntanglementRecord> records;
  int gmn_unconverged = 0;
  /// Set when a grid point failed; `records` then holds the completed prefix.
  std::string error;
};

/// Runs `task(i)` for i in [0, count) on a pool of `workers` threads (0 = hardware
/// concurrency). Exceptions from tasks are rethrown after all workers stop.
void parallel_for(int count, int workers, const std::function<void(int)>& task);

EvolveResult evolve_run(const RunConfig& config);

inline constexpr const char* kEvolveCsvHeader =
    "t,c12,c13,c23,c13_assist,neg_1_23,neg_2_13,neg_3_12,n3,ghz_witness,w_witness,gmn,verdict";

void write_evolve_csv(std::ostream& out, const std::vector<EntanglementRecord>& records);
std::vector<EntanglementRecord> read_evolve_csv(std::istream& in);

/// 960x540 line plot of c13, n3, the GHZ witness and (when present) gmn against time.
void write_svg(std::ostream& out, const std::vector<EntanglementRecord>& records,
               const std::string& title);

// ---- J0 sweeps -------------------------------------------------------------------------

struct TauSearch {
  double tau = 0;
  double max_n3 = 0;
  double window_min = 0;
  double window_max = 0;
  bool perturbative = true;
};

/// Coarse scan of n3 over [0.5, 1.5] tau_estimate at T~/40 spacing, then golden-section
/// refinement around the best grid point.
TauSearch find_transfer_time(const ChainSetup& setup);

struct SweepRow {
  double j0 = 0;
  double max_n3 = 0;
  std::optional<double> max_gmn;
  double tau = 0;
  double window_min = 0;
  double window_max = 0;
  bool perturbative = true;
};

struct PowerLawFit {
  double exponent = 0;
  double intercept = 0;
  double residual = 0;  // root-mean-square residual in log tau
  double fit_min = 0;
  double fit_max = 0;
  int points = 0;
};

class FitRefused : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Ordinary least squares of log y on log x; throws FitRefused with fewer than 3 points.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct SweepResult {
  std::vector<SweepRow> rows;
  std::optional<PowerLawFit> fit;
  std::string fit_error;
  double fit_j0_max = 0.05;
};

SweepResult sweep_j0(const RunConfig& base, const std::vector<double>& j0_values);

void write_sweep_csv(std::ostream& out, const SweepResult& result);

// ---- oracle validation -----------------------------------------------------------------

inline constexpr int kValidateMaxSites = 15;

struct ValidateOptions {
  ChainSpec chain;
  int times = 64;
  double tolerance = 1e-10;
  unsigned long long seed = 20240611ULL;
  std::optional<AssemblyFault> fault;
};

struct ValidationCheck {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  double max_density_residual = 0;
  std::string worst_entry;
  double worst_time = 0;
  bool passed() const;
};

/// Throws std::invalid_argument above kValidateMaxSites sites.
ValidationReport validate_run(const ValidateOptions& options);

void write_validation_report(std::ostream& out, const ValidationReport& report);

// ---- config files ----------------------------------------------------------------------

/// `key = value` per line; `#` starts a comment. Throws std::invalid_argument on malformed lines.
std::map<std::string, std::string> read_config_file(std::istream& in);

}  // namespace qtransfer

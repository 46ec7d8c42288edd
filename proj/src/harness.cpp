#include "qtransfer/harness.hpp"

#include "qtransfer/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace qtransfer {

// ---- grid and setup --------------------------------------------------------------------

double TimeGrid::at(int i) const {
  if (i == steps - 1) return t_max;
  return t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = at(i);
  return out;
}

TimeGrid make_time_grid(const RunConfig& config,
                        const std::optional<PerturbativeFrequencies>& freqs) {
  TimeGrid grid;
  grid.t_min = config.t_min.value_or(0.0);
  if (config.t_max) {
    grid.t_max = *config.t_max;
  } else if (freqs) {
    grid.t_max = 1.2 * freqs->t_slow;
  } else {
    throw std::invalid_argument(
        "time grid: t_max must be given outside the resonant weak-coupling regime");
  }
  if (!(grid.t_min >= 0)) throw std::invalid_argument("time grid: t_min must be >= 0");
  if (!(grid.t_max > grid.t_min)) throw std::invalid_argument("time grid: need t_max > t_min");
  if (config.steps) {
    grid.steps = *config.steps;
  } else if (freqs) {
    const double spacing = freqs->t_fast / 40.0;
    grid.steps = static_cast<int>(std::ceil((grid.t_max - grid.t_min) / spacing)) + 1;
  } else {
    grid.steps = 2001;
  }
  if (grid.steps < 2) throw std::invalid_argument("time grid: steps must be >= 2");
  return grid;
}

ChainSetup setup_chain(const ChainSpec& spec) {
  ChainSetup setup;
  setup.pattern = build_couplings(spec);
  setup.spectrum = diagonalize(setup.pattern);
  try {
    setup.freqs = perturbative_frequencies(setup.spectrum, spec);
  } catch (const std::exception& e) {
    setup.regime_note = e.what();
  }
  return setup;
}

EntanglementRecord evaluate_at(const SingleParticleSpectrum& spectrum, double t,
                               ReceiverState* state_out) {
  const ReceiverState state = receiver_density(amplitude_table(spectrum, t));
  if (state_out) *state_out = state;
  return evaluate_record(state, t);
}

void parallel_for(int count, int workers, const std::function<void(int)>& task) {
  if (count <= 0) return;
  int pool = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  pool = std::clamp(pool, 1, count);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      const int i = next.fetch_add(1);
      if (i >= count) break;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int w = 0; w < pool; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
}

EvolveResult evolve_run(const RunConfig& config) {
  if (config.gmn_stride < 1) throw std::invalid_argument("evolve: gmn stride must be >= 1");
  EvolveResult result;
  result.setup = setup_chain(config.chain);
  result.grid = make_time_grid(config, result.setup.freqs);
  const int steps = result.grid.steps;
  result.records.resize(static_cast<std::size_t>(steps));
  std::atomic<int> unconverged{0};
  std::vector<char> done(static_cast<std::size_t>(steps), 0);
  const auto& spectrum = result.setup.spectrum;
  try {
    parallel_for(steps, config.workers, [&](int i) {
      const double t = result.grid.at(i);
      ReceiverState state;
      auto rec = evaluate_at(spectrum, t, &state);
      if (config.gmn && i % config.gmn_stride == 0) {
        GmnProblem problem;
        problem.rho = state.rho;
        problem.tolerance = config.gmn_tolerance;
        const auto solution = solve_gmn(problem);
        rec.gmn = solution.gmn;
        if (solution.status != GmnStatus::converged) ++unconverged;
      }
      result.records[static_cast<std::size_t>(i)] = rec;
      done[static_cast<std::size_t>(i)] = 1;
    });
  } catch (const std::exception& e) {
    const auto prefix = std::find(done.begin(), done.end(), 0) - done.begin();
    std::ostringstream msg;
    msg << std::setprecision(17) << "failed at t=" << result.grid.at(static_cast<int>(prefix))
        << ": " << e.what();
    result.error = msg.str();
    result.records.resize(static_cast<std::size_t>(prefix));
  }
  result.gmn_unconverged = unconverged.load();
  return result;
}

// ---- CSV / SVG -------------------------------------------------------------------------

void write_evolve_csv(std::ostream& out, const std::vector<EntanglementRecord>& records) {
  out << kEvolveCsvHeader << '\n';
  out << std::setprecision(17);
  for (const auto& r : records) {
    out << r.time << ',' << r.c12 << ',' << r.c13 << ',' << r.c23 << ',' << r.c13_assist << ','
        << r.neg_1_23 << ',' << r.neg_2_13 << ',' << r.neg_3_12 << ',' << r.n3 << ','
        << r.ghz_witness << ',' << r.w_witness << ',';
    if (r.gmn) out << *r.gmn;
    out << ',' << to_string(r.verdict) << '\n';
  }
}

std::vector<EntanglementRecord> read_evolve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kEvolveCsvHeader)
    throw std::invalid_argument("evolve CSV: unexpected header");
  std::vector<EntanglementRecord> records;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() == 12) cells.emplace_back();  // trailing empty field
    if (cells.size() != 13) throw std::invalid_argument("evolve CSV: malformed row '" + line + "'");
    EntanglementRecord r;
    double* fields[] = {&r.time,     &r.c12,      &r.c13,      &r.c23,  &r.c13_assist,
                        &r.neg_1_23, &r.neg_2_13, &r.neg_3_12, &r.n3,   &r.ghz_witness,
                        &r.w_witness};
    for (std::size_t k = 0; k < 11; ++k) *fields[k] = std::stod(cells[k]);
    if (!cells[11].empty()) r.gmn = std::stod(cells[11]);
    const std::string& v = cells[12];
    if (v == "GHZ")
      r.verdict = Verdict::ghz;
    else if (v == "W-or-GHZ")
      r.verdict = Verdict::w_or_ghz;
    else if (v == "biseparable-or-unknown")
      r.verdict = Verdict::biseparable_or_unknown;
    else
      throw std::invalid_argument("evolve CSV: unknown verdict '" + v + "'");
    records.push_back(r);
  }
  return records;
}

void write_svg(std::ostream& out, const std::vector<EntanglementRecord>& records,
               const std::string& title) {
  constexpr double width = 960, height = 540;
  constexpr double left = 70, right = 180, top = 40, bottom = 50;
  constexpr double y_lo = -0.5, y_hi = 1.0;
  const double t_lo = records.empty() ? 0.0 : records.front().time;
  const double t_hi = records.empty() ? 1.0 : std::max(records.back().time, t_lo + 1e-300);
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  auto px = [&](double t) { return left + plot_w * (t - t_lo) / (t_hi - t_lo); };
  auto py = [&](double y) {
    return top + plot_h * (y_hi - std::clamp(y, y_lo, y_hi)) / (y_hi - y_lo);
  };

  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"540\" "
         "viewBox=\"0 0 960 540\">\n";
  svg << "<rect width=\"960\" height=\"540\" fill=\"white\"/>\n";
  svg << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";
  // Axes and gridlines at y = -0.5, -0.25, 0, 0.5, 1.
  svg << "<g stroke=\"#999\" stroke-width=\"1\">\n";
  for (double y : {-0.5, -0.25, 0.0, 0.5, 1.0})
    svg << "<line x1=\"" << left << "\" y1=\"" << py(y) << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << py(y) << "\"" << (y == -0.25 ? " stroke=\"#d62728\"" : "") << "/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (double y : {-0.5, -0.25, 0.0, 0.5, 1.0})
    svg << "<text x=\"" << left - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << y
        << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double t = t_lo + (t_hi - t_lo) * k / 4.0;
    svg << "<text x=\"" << px(t) << "\" y=\"" << top + plot_h + 20
        << "\" text-anchor=\"middle\">" << std::setprecision(0) << t << std::setprecision(2)
        << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\">t</text>\n</g>\n";

  struct Series {
    const char* name;
    const char* color;
    std::function<std::optional<double>(const EntanglementRecord&)> value;
  };
  const std::vector<Series> series = {
      {"C13", "#1f77b4", [](const auto& r) { return std::optional<double>(r.c13); }},
      {"N3", "#ff7f0e", [](const auto& r) { return std::optional<double>(r.n3); }},
      {"Tr[W rho]", "#17becf", [](const auto& r) { return std::optional<double>(r.ghz_witness); }},
      {"-Tr[W_sdp rho]", "#000000",
       [](const auto& r) { return r.gmn ? std::optional<double>(-*r.gmn) : std::nullopt; }},
  };
  int legend_row = 0;
  for (const auto& s : series) {
    std::ostringstream points;
    points << std::fixed << std::setprecision(2);
    bool any = false;
    for (const auto& r : records) {
      const auto v = s.value(r);
      if (!v) continue;
      points << (any ? " " : "") << px(r.time) << ',' << py(*v);
      any = true;
    }
    if (!any) continue;
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\""
        << points.str() << "\"/>\n";
    const double ly = top + 20 + 20 * legend_row++;
    svg << "<line x1=\"" << width - right + 15 << "\" y1=\"" << ly << "\" x2=\""
        << width - right + 45 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << width - right + 52 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
  }
  svg << "</svg>\n";
  out << svg.str();
}

// ---- sweeps ----------------------------------------------------------------------------

namespace {

double n3_at(const SingleParticleSpectrum& spectrum, double t) {
  return tripartite_negativity(receiver_density(amplitude_table(spectrum, t)));
}

// Golden-section search for a maximum of f on [lo, hi].
template <typename F>
std::pair<double, double> golden_maximum(F&& f, double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double t = 0.5 * (a + b);
  return {t, f(t)};
}

}  // namespace

TauSearch find_transfer_time(const ChainSetup& setup) {
  TauSearch search;
  PerturbativeFrequencies freqs;
  if (setup.freqs) {
    freqs = *setup.freqs;
  } else {
    freqs = cluster_frequencies(setup.spectrum);
    search.perturbative = false;
  }
  search.window_min = 0.5 * freqs.tau_estimate;
  search.window_max = 1.5 * freqs.tau_estimate;
  const double spacing = freqs.t_fast / 40.0;
  const int steps =
      std::max(3, static_cast<int>(std::ceil((search.window_max - search.window_min) / spacing)) + 1);
  const double h = (search.window_max - search.window_min) / (steps - 1);

  std::vector<double> values(static_cast<std::size_t>(steps));
  parallel_for(steps, 0, [&](int i) {
    values[static_cast<std::size_t>(i)] = n3_at(setup.spectrum, search.window_min + i * h);
  });
  const auto best = static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
  const double lo = search.window_min + std::max(0, best - 1) * h;
  const double hi = search.window_min + std::min(steps - 1, best + 1) * h;
  auto [t, v] = golden_maximum([&](double x) { return n3_at(setup.spectrum, x); }, lo, hi,
                               1e-6 * std::max(1.0, search.window_max));
  if (values[static_cast<std::size_t>(best)] > v) {
    t = search.window_min + best * h;
    v = values[static_cast<std::size_t>(best)];
  }
  search.tau = t;
  search.max_n3 = v;
  return search;
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_power_law: size mismatch");
  if (x.size() < 3)
    throw FitRefused("power-law fit needs at least 3 points, got " + std::to_string(x.size()));
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0 && y[i] > 0)) throw FitRefused("power-law fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0)) throw FitRefused("power-law fit needs distinct abscissae");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.exponent * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.fit_min = *std::min_element(x.begin(), x.end());
  fit.fit_max = *std::max_element(x.begin(), x.end());
  fit.points = static_cast<int>(n);
  return fit;
}

SweepResult sweep_j0(const RunConfig& base, const std::vector<double>& j0_values) {
  if (j0_values.empty()) throw std::invalid_argument("sweep: empty j0 list");
  if (!std::is_sorted(j0_values.begin(), j0_values.end()) ||
      std::adjacent_find(j0_values.begin(), j0_values.end()) != j0_values.end())
    throw std::invalid_argument("sweep: j0 list must be strictly ascending");
  if (j0_values.back() > 0.5) throw std::invalid_argument("sweep: j0 values must be <= 0.5");

  SweepResult result;
  std::vector<double> fit_x, fit_y;
  for (double j0 : j0_values) {
    ChainSpec spec = base.chain;
    spec.j0 = j0;
    const ChainSetup setup = setup_chain(spec);
    const TauSearch search = find_transfer_time(setup);
    SweepRow row;
    row.j0 = j0;
    row.tau = search.tau;
    row.max_n3 = search.max_n3;
    row.window_min = search.window_min;
    row.window_max = search.window_max;
    row.perturbative = search.perturbative;
    if (base.gmn) {
      // GMN follows the same fast oscillation; scan a quarter fast period either side of tau.
      const double fast = setup.freqs ? setup.freqs->t_fast : cluster_frequencies(setup.spectrum).t_fast;
      constexpr int samples = 11;
      std::vector<double> values(samples);
      parallel_for(samples, base.workers, [&](int i) {
        const double t = search.tau + fast * (static_cast<double>(i) / (samples - 1) - 0.5) / 2.0;
        GmnProblem problem;
        problem.rho = receiver_density(amplitude_table(setup.spectrum, std::max(0.0, t))).rho;
        problem.tolerance = base.gmn_tolerance;
        values[static_cast<std::size_t>(i)] = solve_gmn(problem).gmn;
      });
      row.max_gmn = *std::max_element(values.begin(), values.end());
    }
    result.rows.push_back(row);
    if (j0 <= result.fit_j0_max) {
      fit_x.push_back(j0);
      fit_y.push_back(search.tau);
    }
  }
  try {
    result.fit = fit_power_law(fit_x, fit_y);
  } catch (const FitRefused& e) {
    result.fit_error = e.what();
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "j0,max_n3,max_gmn,tau,window_min,window_max,regime\n";
  out << std::setprecision(17);
  for (const auto& r : result.rows) {
    out << r.j0 << ',' << r.max_n3 << ',';
    if (r.max_gmn) out << *r.max_gmn;
    out << ',' << r.tau << ',' << r.window_min << ',' << r.window_max << ','
        << (r.perturbative ? "perturbative" : "strong") << '\n';
  }
  if (result.fit) {
    out << "# fit log(tau) = a + b log(j0) over j0 in [" << result.fit->fit_min << ", "
        << result.fit->fit_max << "], " << result.fit->points << " points\n";
    out << "# exponent = " << result.fit->exponent << '\n';
    out << "# intercept = " << result.fit->intercept << '\n';
    out << "# rms_residual = " << result.fit->residual << '\n';
  } else {
    out << "# fit refused: " << result.fit_error << '\n';
  }
}

// ---- validation ------------------------------------------------------------------------

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ValidationReport validate_run(const ValidateOptions& options) {
  options.chain.validate();
  if (options.chain.n_total > kValidateMaxSites)
    throw std::invalid_argument("validate: full oracle comparison is capped at N = " +
                                std::to_string(kValidateMaxSites) + " (requested N = " +
                                std::to_string(options.chain.n_total) + ")");
  if (options.times < 1) throw std::invalid_argument("validate: need at least one time");

  const ChainSetup setup = setup_chain(options.chain);
  const auto& spectrum = setup.spectrum;
  const int n = spectrum.sites();
  double horizon = 1000.0;
  if (setup.freqs) {
    horizon = 2.0 * setup.freqs->t_slow;
  } else {
    try {
      horizon = 2.0 * cluster_frequencies(spectrum).t_slow;
    } catch (const std::exception&) {
    }
  }

  ValidationReport report;
  auto add = [&](std::string name, double residual, double tolerance, std::string detail = {}) {
    report.checks.push_back(
        {std::move(name), residual, tolerance, residual <= tolerance, std::move(detail)});
  };

  const Eigen::MatrixXd& modes = spectrum.modes;
  add("spectrum_orthonormality",
      (modes.transpose() * modes - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(spectrum.omegas.data(), n);
  add("spectrum_reconstruction",
      (modes * w.asDiagonal() * modes.transpose() - hopping_matrix(setup.pattern))
          .cwiseAbs()
          .maxCoeff(),
      1e-10);

  const SectorPropagator prop = build_sector(setup.pattern);
  add("sector_reconstruction", prop.reconstruction_residual(), 1e-9);
  {
    const auto sums = three_body_sums(spectrum.omegas);
    double worst = 0;
    for (std::size_t k = 0; k < sums.size(); ++k)
      worst = std::max(worst, std::abs(sums[k] - static_cast<double>(
                                                     prop.energies(static_cast<Eigen::Index>(k)))));
    add("free_fermion_additivity", worst, 1e-9);
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> pick(0.0, horizon);
  double unitarity = 0, norm = 0, determinant = 0, validity = 0;
  std::string validity_detail;
  for (int s = 0; s < options.times; ++s) {
    const double t = pick(rng);
    const AmplitudeTable table = amplitude_table(spectrum, t);
    unitarity = std::max(unitarity, (table.amp * table.amp.adjoint() -
                                     Eigen::MatrixXcd::Identity(n, n))
                                        .cwiseAbs()
                                        .maxCoeff());
    const Eigen::VectorXcd sector = sector_amplitudes(prop, t);
    norm = std::max(norm, std::abs(sector.norm() - 1.0));
    for (std::size_t c = 0; c < prop.basis.size(); ++c)
      determinant = std::max(
          determinant, std::abs(three_amplitude(table, {1, 2, 3}, prop.basis.config(c)) -
                                sector(static_cast<Eigen::Index>(c))));

    const ReceiverState pipeline = receiver_density(table, options.fault);
    const ReceiverState exact = oracle_receiver_density(prop, t);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        const double diff = std::abs(pipeline.rho(i, j) - exact.rho(i, j));
        if (diff > report.max_density_residual || report.worst_entry.empty()) {
          report.max_density_residual = diff;
          report.worst_entry = receiver_entry_name(i, j);
          report.worst_time = t;
        }
      }
    for (const auto* state : {&pipeline, &exact}) {
      const StateCheck c = check_state(*state);
      double violation = std::max({c.hermiticity / 1e-12, c.trace_error / 1e-10,
                                   -c.min_eigenvalue / 1e-10, c.forbidden_entry / 1e-12});
      if (violation > validity) {
        validity = violation;
        std::ostringstream d;
        d << (state == &pipeline ? "pipeline" : "oracle") << " state at t=" << t;
        validity_detail = d.str();
      }
    }
  }
  std::ostringstream detail;
  detail << std::setprecision(17) << "worst entry " << report.worst_entry << " at t="
         << report.worst_time;
  add("density_match", report.max_density_residual, options.tolerance, detail.str());
  add("amplitude_unitarity", unitarity, 1e-10);
  add("sector_norm", norm, 1e-10);
  add("determinant_identity", determinant, 1e-10);
  add("state_validity", validity, 1.0, "residual in units of tolerance, worst " + validity_detail);
  return report;
}

void write_validation_report(std::ostream& out, const ValidationReport& report) {
  out << std::setprecision(17);
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " residual=" << c.residual
        << " tol=" << c.tolerance;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  out << (report.passed() ? "validation passed" : "validation FAILED") << '\n';
}

// ---- config ----------------------------------------------------------------------------

std::map<std::string, std::string> read_config_file(std::istream& in) {
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    values[key] = value;
  }
  return values;
}

}  // namespace qtransfer

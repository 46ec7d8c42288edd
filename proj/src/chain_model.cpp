#include "qtransfer/chain_model.hpp"

#include "qtransfer/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qtransfer {

bool ChainSpec::resonant() const {
  const int wire = wire_length();
  return wire >= 1 && (wire - 1) % 4 == 0;
}

void ChainSpec::validate() const {
  if (block_size != 3) throw std::invalid_argument("ChainSpec: block_size must be 3");
  if (n_total < 7)
    throw std::invalid_argument("ChainSpec: n_total must be at least 7, got " +
                                std::to_string(n_total));
  if (n_total % 2 == 0)
    throw std::invalid_argument("ChainSpec: n_total must be odd, got " + std::to_string(n_total));
  if (!(j_bulk > 0)) throw std::invalid_argument("ChainSpec: j_bulk must be positive");
  if (!(j0 > 0) || j0 > j_bulk)
    throw std::invalid_argument("ChainSpec: j0 must lie in (0, j_bulk]");
}

std::optional<std::string> ChainSpec::resonance_warning() const {
  if (resonant()) return std::nullopt;
  std::ostringstream msg;
  msg << "chain length " << n_total << " violates N = 4n + 7 (wire length " << wire_length()
      << "); sender and receiver levels are off resonance";
  return msg.str();
}

CouplingPattern build_couplings(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_total;
  CouplingPattern pattern;
  pattern.couplings.assign(static_cast<std::size_t>(n - 1), spec.j_bulk);
  // Bonds 3 (sites 3-4) and N-3 (sites N-3 - N-2), 1-indexed.
  pattern.couplings[2] = spec.j0;
  pattern.couplings[static_cast<std::size_t>(n - 4)] = spec.j0;
  return pattern;
}

CouplingPattern uniform_couplings(int sites, double j) {
  if (sites < 2) throw std::invalid_argument("uniform_couplings: need at least 2 sites");
  return CouplingPattern{std::vector<double>(static_cast<std::size_t>(sites - 1), j)};
}

Eigen::MatrixXd hopping_matrix(const CouplingPattern& pattern) {
  const int n = pattern.sites();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = pattern.couplings[static_cast<std::size_t>(i)];
    h(i + 1, i) = pattern.couplings[static_cast<std::size_t>(i)];
  }
  return h;
}

SingleParticleSpectrum diagonalize(const CouplingPattern& pattern) {
  if (pattern.couplings.empty())
    throw std::invalid_argument("diagonalize: coupling pattern is empty");
  for (double j : pattern.couplings)
    if (!(j > 0)) throw std::invalid_argument("diagonalize: couplings must be positive");

  const int n = pattern.sites();
  std::vector<long double> diag(static_cast<std::size_t>(n), 0.0L);
  std::vector<long double> off(pattern.couplings.begin(), pattern.couplings.end());
  const auto eig = tridiagonal_eigensolve<long double>(std::move(diag), std::move(off));

  SingleParticleSpectrum out;
  out.omegas_extended = eig.values;
  out.omegas.assign(eig.values.begin(), eig.values.end());
  out.modes.resize(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      out.modes(i, k) = static_cast<double>(eig.vectors[static_cast<std::size_t>(k * n + i)]);
  return out;
}

namespace {

constexpr double kClusterWindow = 0.5;

// Indices of the `count` eigenvalues nearest `center` among those within the window.
std::vector<std::size_t> nearest_in_window(const std::vector<double>& omegas, double center,
                                           std::size_t count, bool positive_only) {
  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    if (positive_only && !(omegas[k] > 0)) continue;
    if (std::abs(omegas[k] - center) <= kClusterWindow) candidates.push_back(k);
  }
  if (candidates.size() < count) {
    std::ostringstream msg;
    msg << "fewer than " << count << " eigenvalues within " << kClusterWindow << " of " << center;
    throw std::domain_error(msg.str());
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(omegas[a] - center) < std::abs(omegas[b] - center);
  });
  candidates.resize(count);
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

PerturbativeFrequencies assemble(double omega5, double omega6, double omega7) {
  PerturbativeFrequencies f;
  f.omega5 = omega5;
  f.omega6 = omega6;
  f.omega7 = omega7;
  f.omega76_minus = 0.5 * (omega7 - omega6);
  f.omega76_plus = 0.5 * (omega7 + omega6);
  f.t_slow = 2 * std::numbers::pi / f.omega76_minus;
  f.t_fast = 2 * std::numbers::pi / f.omega5;
  f.tau_estimate = std::numbers::pi / (2 * f.omega76_minus);
  return f;
}

}  // namespace

PerturbativeFrequencies cluster_frequencies(const SingleParticleSpectrum& spectrum) {
  const auto& w = spectrum.omegas;
  const auto triplet = nearest_in_window(w, 0.0, 3, false);
  const auto doublet = nearest_in_window(w, std::numbers::sqrt2, 2, true);
  double omega5 = 0;
  for (auto k : triplet) omega5 = std::max(omega5, w[k]);
  if (!(omega5 > 0)) throw std::domain_error("zero-energy triplet has no positive member");
  if (!(w[doublet[1]] > w[doublet[0]]))
    throw std::domain_error("doublet near sqrt(2) is exactly degenerate");
  return assemble(omega5, w[doublet[0]], w[doublet[1]]);
}

PerturbativeFrequencies perturbative_frequencies(const SingleParticleSpectrum& spectrum,
                                                 const ChainSpec& spec) {
  spec.validate();
  if (!spec.resonant())
    throw std::invalid_argument("perturbative_frequencies: " + *spec.resonance_warning());
  if (spec.j0 > 0.2 * spec.j_bulk)
    throw std::domain_error("perturbative_frequencies: j0 above 0.2 is outside the weak-coupling regime");
  if (spectrum.sites() != spec.n_total)
    throw std::invalid_argument("perturbative_frequencies: spectrum size does not match spec");

  const auto f = cluster_frequencies(spectrum);
  const auto& w = spectrum.omegas;
  const auto triplet = nearest_in_window(w, 0.0, 3, false);
  double nearest_outside = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < w.size(); ++k)
    if (std::find(triplet.begin(), triplet.end(), k) == triplet.end())
      nearest_outside = std::min(nearest_outside, std::abs(w[k]));
  if (!(nearest_outside - f.omega5 > 10 * f.omega5)) {
    std::ostringstream msg;
    msg << "perturbative_frequencies: near-zero triplet (omega5 = " << f.omega5
        << ") is not isolated; next level at " << nearest_outside
        << " (non-perturbative regime)";
    throw std::domain_error(msg.str());
  }
  return f;
}

void write_spectrum_csv(std::ostream& out, const SingleParticleSpectrum& spectrum) {
  const int n = spectrum.sites();
  out << "k,omega";
  for (int i = 1; i <= n; ++i) out << ",phi_" << i;
  out << '\n';
  out << std::setprecision(17);
  for (int k = 0; k < n; ++k) {
    out << (k + 1) << ',' << spectrum.omegas[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i) out << ',' << spectrum.modes(i, k);
    out << '\n';
  }
}

}  // namespace qtransfer

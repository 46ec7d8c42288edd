#include "qtransfer/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qtransfer {

namespace {

void check_site(int site, int n, const char* what) {
  if (site < 1 || site > n)
    throw std::out_of_range(std::string(what) + ": site " + std::to_string(site) +
                            " outside 1.." + std::to_string(n));
}

// exp(-i w t) with the phase reduced in extended precision.
Complex evolution_phase(long double omega, double t) {
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double phase = std::fmod(omega * static_cast<long double>(t), two_pi);
  return {static_cast<double>(std::cos(phase)), static_cast<double>(-std::sin(phase))};
}

Complex det3(const Complex (&m)[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Amplitude from the initial sender configuration {1,2,3} into ascending `to`.
Complex from_sender(const AmplitudeTable& table, int n, int m, int r) {
  Complex mat[3][3];
  const int dest[3] = {n, m, r};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) mat[a][b] = table.amp(a, dest[b] - 1);
  return det3(mat);
}

}  // namespace

Complex single_amplitude(const SingleParticleSpectrum& spectrum, int s, int r, double t) {
  const int n = spectrum.sites();
  check_site(s, n, "single_amplitude");
  check_site(r, n, "single_amplitude");
  Complex sum = 0;
  for (int k = 0; k < n; ++k)
    sum += evolution_phase(spectrum.omegas_extended[static_cast<std::size_t>(k)], t) *
           spectrum.modes(r - 1, k) * spectrum.modes(s - 1, k);
  return sum;
}

AmplitudeTable amplitude_table(const SingleParticleSpectrum& spectrum, double t) {
  const int n = spectrum.sites();
  Eigen::VectorXcd phases(n);
  for (int k = 0; k < n; ++k)
    phases(k) = evolution_phase(spectrum.omegas_extended[static_cast<std::size_t>(k)], t);
  const Eigen::MatrixXcd modes = spectrum.modes.cast<Complex>();
  AmplitudeTable table;
  table.time = t;
  // amp(s, r) = sum_k phi_{sk} e^{-i w_k t} phi_{rk}; symmetric since the modes are real.
  table.amp = modes * phases.asDiagonal() * modes.transpose();
  return table;
}

Complex three_amplitude(const AmplitudeTable& table, const SiteTriple& from, const SiteTriple& to) {
  const int n = table.sites();
  for (const auto* triple : {&from, &to}) {
    for (int site : *triple) check_site(site, n, "three_amplitude");
    if (!((*triple)[0] < (*triple)[1] && (*triple)[1] < (*triple)[2]))
      throw std::invalid_argument("three_amplitude: site triples must be strictly ascending");
  }
  Complex mat[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) mat[a][b] = table.f(from[a], to[b]);
  return det3(mat);
}

bool receiver_entry_allowed(int i, int j) {
  if (i == j) return true;
  const auto excitations = [](int x) { return ((x >> 2) & 1) + ((x >> 1) & 1) + (x & 1); };
  if (excitations(i) == excitations(j)) return true;
  return (i == 0 && j == 7) || (i == 7 && j == 0);
}

std::string receiver_entry_name(int i, int j) {
  return "rho_" + std::to_string(i) + std::to_string(j);
}

ReceiverState receiver_density(const AmplitudeTable& table,
                               const std::optional<AssemblyFault>& fault) {
  const int n = table.sites();
  if (n < 7) throw std::invalid_argument("receiver_density: chain too short");
  const int r1 = n - 2, r2 = n - 1, r3 = n;
  const int wire_end = n - 3;  // sites 1..N-3 are traced out

  ReceiverState state;
  auto& rho = state.rho;

  // No receiver excitation: vacuum branch plus all three excitations left behind.
  double empty = 0;
  for (int k = 1; k <= wire_end; ++k)
    for (int q = k + 1; q <= wire_end; ++q)
      for (int p = q + 1; p <= wire_end; ++p) empty += std::norm(from_sender(table, k, q, p));
  rho(0, 0) = 0.5 + 0.5 * empty;

  // One receiver excitation (two elsewhere): |100>, |010>, |001> -> 4, 2, 1.
  {
    const int index[3] = {4, 2, 1};
    const int site[3] = {r1, r2, r3};
    Eigen::Matrix3cd block = Eigen::Matrix3cd::Zero();
    for (int k = 1; k <= wire_end; ++k)
      for (int q = k + 1; q <= wire_end; ++q) {
        Eigen::Vector3cd a;
        for (int s = 0; s < 3; ++s) a(s) = from_sender(table, k, q, site[s]);
        block += a * a.adjoint();
      }
    for (int s = 0; s < 3; ++s)
      for (int u = 0; u < 3; ++u) rho(index[s], index[u]) = 0.5 * block(s, u);
  }

  // Two receiver excitations (one elsewhere): |110>, |101>, |011> -> 6, 5, 3.
  {
    const int index[3] = {6, 5, 3};
    const int pair_lo[3] = {r1, r1, r2};
    const int pair_hi[3] = {r2, r3, r3};
    Eigen::Matrix3cd block = Eigen::Matrix3cd::Zero();
    for (int k = 1; k <= wire_end; ++k) {
      Eigen::Vector3cd a;
      for (int s = 0; s < 3; ++s) a(s) = from_sender(table, k, pair_lo[s], pair_hi[s]);
      block += a * a.adjoint();
    }
    for (int s = 0; s < 3; ++s)
      for (int u = 0; u < 3; ++u) rho(index[s], index[u]) = 0.5 * block(s, u);
  }

  // All three on the receiver, coherent with the vacuum branch.
  const Complex full = from_sender(table, r1, r2, r3);
  rho(7, 7) = 0.5 * std::norm(full);
  rho(0, 7) = 0.5 * std::conj(full);
  rho(7, 0) = 0.5 * full;

  if (fault) {
    if (fault->row < 0 || fault->row > 7 || fault->col < 0 || fault->col > 7)
      throw std::out_of_range("receiver_density: fault entry out of range");
    rho(fault->row, fault->col) = -rho(fault->row, fault->col);
    if (fault->row != fault->col) rho(fault->col, fault->row) = -rho(fault->col, fault->row);
  }
  return state;
}

std::string to_string(Pair pair) {
  switch (pair) {
    case Pair::q12: return "12";
    case Pair::q13: return "13";
    case Pair::q23: return "23";
  }
  return "?";
}

TwoQubitState reduce_pair(const ReceiverState& state, Pair pair) {
  // Bit positions (2 = qubit 1, 0 = qubit 3) of the kept high/low qubit and the traced one.
  int hi = 2, lo = 1, traced = 0;
  switch (pair) {
    case Pair::q12: hi = 2; lo = 1; traced = 0; break;
    case Pair::q13: hi = 2; lo = 0; traced = 1; break;
    case Pair::q23: hi = 1; lo = 0; traced = 2; break;
  }
  const auto full_index = [&](int two, int bit) {
    return (((two >> 1) & 1) << hi) | ((two & 1) << lo) | (bit << traced);
  };
  TwoQubitState out;
  out.pair = pair;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      out.rho2(a, b) = state.rho(full_index(a, 0), full_index(b, 0)) +
                       state.rho(full_index(a, 1), full_index(b, 1));
  return out;
}

bool StateCheck::ok(double herm_tol, double trace_tol, double psd_tol, double sparsity_tol) const {
  return hermiticity <= herm_tol && trace_error <= trace_tol && min_eigenvalue >= -psd_tol &&
         forbidden_entry <= sparsity_tol;
}

StateCheck check_state(const ReceiverState& state) {
  StateCheck check;
  const Matrix8c& rho = state.rho;
  check.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  check.trace_error = std::abs(rho.trace() - Complex(1.0));
  const Matrix8c herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix8c> solver(herm, Eigen::EigenvaluesOnly);
  check.min_eigenvalue = solver.eigenvalues().minCoeff();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (!receiver_entry_allowed(i, j))
        check.forbidden_entry = std::max(check.forbidden_entry, std::abs(rho(i, j)));
  return check;
}

double perturbative_f1(const PerturbativeFrequencies& freqs, double t) {
  return (1.0 + 2.0 * std::sin(freqs.omega76_plus * t) * std::sin(freqs.omega76_minus * t) -
          std::cos(freqs.omega5 * t)) /
         4.0;
}

double perturbative_f2(const PerturbativeFrequencies& freqs, double t) {
  return -std::sin(freqs.omega76_plus * t) * std::sin(freqs.omega76_minus * t);
}

}  // namespace qtransfer

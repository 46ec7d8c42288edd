#pragma once

#include "qtransfer/chain_model.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <string>

namespace qtransfer {

using Complex = std::complex<double>;
using Matrix8c = Eigen::Matrix<Complex, 8, 8>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector8c = Eigen::Matrix<Complex, 8, 1>;

/// Ascending triple of 1-indexed sites.
using SiteTriple = std::array<int, 3>;

/// Single-particle propagator at one time: amp(s-1, r-1) = f_s^r(t) = <r|e^{-iHt}|s>.
struct AmplitudeTable {
  double time = 0;
  Eigen::MatrixXcd amp;

  int sites() const { return static_cast<int>(amp.rows()); }
  Complex f(int s, int r) const { return amp(s - 1, r - 1); }
};

Complex single_amplitude(const SingleParticleSpectrum& spectrum, int s, int r, double t);

AmplitudeTable amplitude_table(const SingleParticleSpectrum& spectrum, double t);

/// Slater determinant <nmr|e^{-iHt}|ijk> for ascending triples.
Complex three_amplitude(const AmplitudeTable& table, const SiteTriple& from, const SiteTriple& to);

/// Three-qubit state of sites (N-2, N-1, N) in the basis |abc>, index 4a + 2b + c, where
/// a = 1 means site N-2 is excited.
struct ReceiverState {
  Matrix8c rho = Matrix8c::Zero();
};

/// Entries (i, j) allowed to be nonzero by excitation-number conservation.
bool receiver_entry_allowed(int i, int j);

/// "rho_ij" label of a matrix entry.
std::string receiver_entry_name(int i, int j);

/// Sign flip applied to one assembled entry (and its mirror); used to exercise the
/// validation path with a known-bad assembly.
struct AssemblyFault {
  int row = 0;
  int col = 0;
};

ReceiverState receiver_density(const AmplitudeTable& table,
                               const std::optional<AssemblyFault>& fault = std::nullopt);

enum class Pair { q12, q13, q23 };

std::string to_string(Pair pair);

struct TwoQubitState {
  Matrix4c rho2 = Matrix4c::Zero();
  Pair pair = Pair::q13;
};

/// Partial trace over the receiver qubit not in `pair`; the kept qubits stay in
/// ascending order (lower label = more significant bit).
TwoQubitState reduce_pair(const ReceiverState& state, Pair pair);

struct StateCheck {
  double hermiticity = 0;      // max |rho - rho^dagger|
  double trace_error = 0;      // |Tr rho - 1|
  double min_eigenvalue = 0;
  double forbidden_entry = 0;  // max |rho_ij| outside the allowed pattern
  bool ok(double herm_tol = 1e-12, double trace_tol = 1e-10, double psd_tol = 1e-10,
          double sparsity_tol = 1e-12) const;
};

StateCheck check_state(const ReceiverState& state);

/// Leading-order amplitudes in the resonant regime (magnitudes track |f_1^{N-2}|, |f_2^{N-1}|).
double perturbative_f1(const PerturbativeFrequencies& freqs, double t);
double perturbative_f2(const PerturbativeFrequencies& freqs, double t);

}  // namespace qtransfer

#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qtransfer {

/// Geometry and couplings of a sender-wire-receiver XX chain. Sites are 1-indexed;
/// the sender block is sites 1..3, the receiver block N-2..N.
struct ChainSpec {
  int n_total = 19;
  double j_bulk = 1.0;
  double j0 = 0.01;
  int block_size = 3;

  int wire_length() const { return n_total - 2 * block_size; }
  /// N = 4n + 7, i.e. wire length 4n + 1.
  bool resonant() const;
  /// Throws std::invalid_argument on a hard violation (N < 7, even N, j0 out of (0, J]).
  void validate() const;
  /// Human-readable warning when the resonance condition fails, empty otherwise.
  std::optional<std::string> resonance_warning() const;
};

struct CouplingPattern {
  /// J_i for bonds i = 1..N-1 (stored 0-indexed, couplings[i-1] couples sites i and i+1).
  std::vector<double> couplings;

  int sites() const { return static_cast<int>(couplings.size()) + 1; }
};

CouplingPattern build_couplings(const ChainSpec& spec);

/// Uniform open chain with every coupling equal to j.
CouplingPattern uniform_couplings(int sites, double j = 1.0);

/// Eigenpairs of the single-particle hopping matrix.
struct SingleParticleSpectrum {
  std::vector<double> omegas;
  /// Column k is mode phi_k; modes(i, k) is the amplitude on site i+1.
  Eigen::MatrixXd modes;
  /// Eigenvalues before rounding to double; phases at large t are evaluated from these.
  std::vector<long double> omegas_extended;

  int sites() const { return static_cast<int>(omegas.size()); }
};

SingleParticleSpectrum diagonalize(const CouplingPattern& pattern);

/// Dense hopping matrix <i|H|j> = J_i (delta_{j,i+1} + delta_{j,i-1}).
Eigen::MatrixXd hopping_matrix(const CouplingPattern& pattern);

struct PerturbativeFrequencies {
  double omega5 = 0;          // 1st-order splitting of the zero-energy triplet
  double omega6 = 0;          // lower member of the doublet near sqrt(2)
  double omega7 = 0;          // upper member
  double omega76_minus = 0;   // (omega7 - omega6) / 2
  double omega76_plus = 0;    // (omega7 + omega6) / 2
  double t_slow = 0;          // T = 2 pi / omega76_minus
  double t_fast = 0;          // T~ = 2 pi / omega5
  double tau_estimate = 0;    // pi / (2 omega76_minus), the three-excitation transfer time
};

/// Extract the resonant triplet (near 0) and doublet (near sqrt 2). Throws
/// std::domain_error outside the perturbative regime.
PerturbativeFrequencies perturbative_frequencies(const SingleParticleSpectrum& spectrum,
                                                 const ChainSpec& spec);

/// Same cluster selection without the regime checks; used to seed time windows at
/// strong coupling, where the selected levels no longer form isolated clusters.
PerturbativeFrequencies cluster_frequencies(const SingleParticleSpectrum& spectrum);

/// CSV with header `k,omega,phi_1,...,phi_N`, 17 significant digits, one row per mode.
void write_spectrum_csv(std::ostream& out, const SingleParticleSpectrum& spectrum);

}  // namespace qtransfer

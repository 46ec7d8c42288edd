#pragma once

#include "qtransfer/chain_model.hpp"
#include "qtransfer/dynamics.hpp"

#include <Eigen/Dense>

#include <map>
#include <vector>

namespace qtransfer {

/// Lexicographically ordered ascending site triples (1-indexed) of a chain.
class SectorBasis {
public:
  explicit SectorBasis(int sites);

  int sites() const { return sites_; }
  std::size_t size() const { return configs_.size(); }
  const SiteTriple& config(std::size_t index) const { return configs_[index]; }
  const std::vector<SiteTriple>& configs() const { return configs_; }
  /// Throws std::out_of_range for a triple that is not an ascending in-range configuration.
  std::size_t index(const SiteTriple& triple) const;

private:
  int sites_;
  std::vector<SiteTriple> configs_;
  std::map<SiteTriple, std::size_t> lookup_;
};

/// Largest chain the dense three-excitation oracle accepts.
inline constexpr int kOracleMaxSites = 25;

/// Exact eigendecomposition of the XX Hamiltonian restricted to three excitations,
/// built directly from spin-flip hops between configurations.
struct SectorPropagator {
  SectorBasis basis;
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> hamiltonian;
  Eigen::Matrix<long double, Eigen::Dynamic, 1> energies;
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> states;

  /// max |H - V diag(E) V^T|.
  double reconstruction_residual() const;
};

/// Throws std::invalid_argument above kOracleMaxSites.
SectorPropagator build_sector(const CouplingPattern& pattern);

/// Amplitudes <config|e^{-iHt}|from> over the sector basis.
Eigen::VectorXcd sector_amplitudes(const SectorPropagator& prop, double t,
                                   const SiteTriple& from = {1, 2, 3});

/// Receiver block state from the exact global state (|vac> + e^{-iHt}|123>)/sqrt2 by an
/// explicit partial trace over sites 1..N-3.
ReceiverState oracle_receiver_density(const SectorPropagator& prop, double t);

/// All ascending 3-subset sums of the single-particle energies, sorted.
std::vector<double> three_body_sums(const std::vector<double>& omegas);

}  // namespace qtransfer

#include "qtransfer/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace qtransfer {

SectorBasis::SectorBasis(int sites) : sites_(sites) {
  if (sites < 3) throw std::invalid_argument("SectorBasis: need at least 3 sites");
  for (int i = 1; i <= sites; ++i)
    for (int j = i + 1; j <= sites; ++j)
      for (int k = j + 1; k <= sites; ++k) {
        lookup_.emplace(SiteTriple{i, j, k}, configs_.size());
        configs_.push_back({i, j, k});
      }
}

std::size_t SectorBasis::index(const SiteTriple& triple) const {
  const auto it = lookup_.find(triple);
  if (it == lookup_.end()) throw std::out_of_range("SectorBasis: not a basis configuration");
  return it->second;
}

double SectorPropagator::reconstruction_residual() const {
  const auto rebuilt = states * energies.asDiagonal() * states.transpose();
  return static_cast<double>((rebuilt - hamiltonian).cwiseAbs().maxCoeff());
}

SectorPropagator build_sector(const CouplingPattern& pattern) {
  const int n = pattern.sites();
  if (n > kOracleMaxSites)
    throw std::invalid_argument("build_sector: " + std::to_string(n) +
                                " sites exceeds the dense oracle cap of " +
                                std::to_string(kOracleMaxSites));
  SectorPropagator prop{SectorBasis(n), {}, {}, {}};
  const auto dim = static_cast<Eigen::Index>(prop.basis.size());
  prop.hamiltonian.setZero(dim, dim);

  for (std::size_t col = 0; col < prop.basis.size(); ++col) {
    const SiteTriple& from = prop.basis.config(col);
    for (int a = 0; a < 3; ++a) {
      const int site = from[static_cast<std::size_t>(a)];
      for (int target : {site - 1, site + 1}) {
        if (target < 1 || target > n) continue;
        if (std::find(from.begin(), from.end(), target) != from.end()) continue;
        SiteTriple to = from;
        to[static_cast<std::size_t>(a)] = target;
        // A nearest-neighbour hop into an empty site keeps the ascending order, so no
        // Jordan-Wigner string is crossed and the matrix element is +J_bond.
        const int bond = std::min(site, target);
        prop.hamiltonian(static_cast<Eigen::Index>(prop.basis.index(to)),
                         static_cast<Eigen::Index>(col)) =
            static_cast<long double>(pattern.couplings[static_cast<std::size_t>(bond - 1)]);
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>> solver(
      prop.hamiltonian);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("build_sector: sector eigendecomposition failed");
  prop.energies = solver.eigenvalues();
  prop.states = solver.eigenvectors();
  return prop;
}

Eigen::VectorXcd sector_amplitudes(const SectorPropagator& prop, double t, const SiteTriple& from) {
  const auto start = static_cast<Eigen::Index>(prop.basis.index(from));
  const Eigen::Index dim = prop.energies.size();
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  // coeff_k = <E_k|from> e^{-i E_k t}
  Eigen::Matrix<long double, Eigen::Dynamic, 1> re(dim), im(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const long double phase = std::fmod(prop.energies(k) * static_cast<long double>(t), two_pi);
    re(k) = prop.states(start, k) * std::cos(phase);
    im(k) = -prop.states(start, k) * std::sin(phase);
  }
  const Eigen::Matrix<long double, Eigen::Dynamic, 1> out_re = prop.states * re;
  const Eigen::Matrix<long double, Eigen::Dynamic, 1> out_im = prop.states * im;
  Eigen::VectorXcd out(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    out(i) = Complex(static_cast<double>(out_re(i)), static_cast<double>(out_im(i)));
  return out;
}

ReceiverState oracle_receiver_density(const SectorPropagator& prop, double t) {
  const int n = prop.basis.sites();
  if (n < 7) throw std::invalid_argument("oracle_receiver_density: chain too short");
  const Eigen::VectorXcd amp = sector_amplitudes(prop, t);
  const double weight = 1.0 / std::sqrt(2.0);

  // Global pure state grouped by the occupation of the traced sites 1..N-3.
  std::map<std::uint32_t, Vector8c> branches;
  branches[0] = Vector8c::Zero();
  branches[0](0) = weight;  // vacuum
  for (std::size_t c = 0; c < prop.basis.size(); ++c) {
    std::uint32_t rest = 0;
    int receiver = 0;
    for (int site : prop.basis.config(c)) {
      if (site >= n - 2)
        receiver |= 1 << (n - site);  // N-2 -> bit 2, N-1 -> bit 1, N -> bit 0
      else
        rest |= std::uint32_t{1} << (site - 1);
    }
    auto [it, inserted] = branches.try_emplace(rest, Vector8c::Zero());
    it->second(receiver) += weight * amp(static_cast<Eigen::Index>(c));
  }

  ReceiverState state;
  for (const auto& [rest, branch] : branches) state.rho += branch * branch.adjoint();
  return state;
}

std::vector<double> three_body_sums(const std::vector<double>& omegas) {
  std::vector<double> sums;
  const std::size_t n = omegas.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) sums.push_back(omegas[i] + omegas[j] + omegas[k]);
  std::sort(sums.begin(), sums.end());
  return sums;
}

}  // namespace qtransfer

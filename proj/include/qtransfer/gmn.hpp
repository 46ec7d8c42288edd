#pragma once

#include "qtransfer/dynamics.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace qtransfer {

/// Witness optimisation over operators that are fully decomposable for every
/// one-versus-two bipartition of three qubits:
///
///   min Tr[W rho]  s.t.  W = P_M + Q_M^{T_M},  0 <= P_M <= 1,  0 <= Q_M <= 1,  M = A, B, C.
///
/// -min is the genuine multipartite negativity.
enum class GmnMethod {
  interior_point,  // primal-dual path following, HKM direction with Mehrotra correction
  splitting,       // over-relaxed ADMM between the affine constraints and the box cones
};

struct GmnProblem {
  Matrix8c rho = Matrix8c::Zero();
  double tolerance = 1e-7;  // target duality gap
  int max_iterations = 50000;
  GmnMethod method = GmnMethod::interior_point;
  double penalty = 1.0;     // ADMM step parameter
  double relaxation = 1.6;  // over-relaxation factor in (0, 2)
};

enum class GmnStatus { converged, cap_reached };

std::string to_string(GmnStatus status);

struct PartitionDecomposition {
  Matrix8c p = Matrix8c::Zero();
  Matrix8c q = Matrix8c::Zero();
};

struct GmnSolution {
  double optimum = 0;     // Tr[W rho] at the returned (exactly feasible) witness
  double gmn = 0;         // max(0, -optimum)
  double dual_bound = 0;  // certified lower bound on the minimum
  double gap = 0;         // optimum - dual_bound
  Matrix8c witness = Matrix8c::Zero();
  std::array<PartitionDecomposition, 3> decomposition;  // index 0,1,2 -> qubit 1,2,3
  std::array<Matrix8c, 3> dual_multipliers;             // Y_M with sum_M Y_M = rho
  int iterations = 0;
  double primal_residual = 0;  // ADMM ||x - z||, or relative infeasibility for interior point
  double dual_residual = 0;
  GmnStatus status = GmnStatus::cap_reached;
};

/// Throws std::invalid_argument for input that is not a density matrix.
GmnSolution solve_gmn(const GmnProblem& problem);

/// Value of the dual objective  sum_M -Tr[(Y_M)_-] - Tr[(Y_M^{T_M})_-]  (no feasibility check).
double gmn_dual_value(const std::array<Matrix8c, 3>& multipliers);

struct CertificateCheck {
  std::string name;
  bool passed = false;
  double residual = 0;
  double tolerance = 0;
};

struct CertificateReport {
  std::vector<CertificateCheck> checks;
  bool all_passed() const;
};

/// Recomputes feasibility, objective, duality and negativity-bound residuals from scratch.
CertificateReport check_certificate(const GmnSolution& solution, const GmnProblem& problem);

/// Eight lines of eight whitespace-separated complex entries `a+bi`, row-major.
Matrix8c read_density_matrix(std::istream& in);
void write_density_matrix(std::ostream& out, const Matrix8c& rho);

/// `key = value` report with residuals at 17 significant digits.
void write_gmn_report(std::ostream& out, const GmnSolution& solution,
                      const CertificateReport& report);

}  // namespace qtransfer

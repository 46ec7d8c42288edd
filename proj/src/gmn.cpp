#include "qtransfer/gmn.hpp"

#include "qtransfer/measures.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qtransfer {

namespace {

using Block = std::array<Matrix8c, 7>;  // W, P_1, Q_1, P_2, Q_2, P_3, Q_3

constexpr int kCheckEvery = 25;

Matrix8c hermitian_part(const Matrix8c& m) { return 0.5 * (m + m.adjoint()); }

Eigen::Matrix<double, 8, 1> eigenvalues(const Matrix8c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix8c> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// Spectral projection onto {0 <= X <= 1}.
Matrix8c project_box(const Matrix8c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix8c> solver(hermitian_part(m));
  Eigen::Matrix<double, 8, 1> clipped = solver.eigenvalues();
  for (int i = 0; i < 8; ++i) clipped(i) = std::clamp(clipped(i), 0.0, 1.0);
  return solver.eigenvectors() * clipped.cast<Complex>().asDiagonal() *
         solver.eigenvectors().adjoint();
}

double negative_part_trace(const Matrix8c& m) {
  double sum = 0;
  for (double v : eigenvalues(m)) sum += std::min(0.0, v);
  return -sum;
}

// Orthogonal projection onto {W = P_M + T_M(Q_M), M = 1..3}. Partial transposition is an
// involutive isometry, so the multipliers solve 2 L_M + sum L = r_M in closed form.
Block project_affine(const Block& v) {
  std::array<Matrix8c, 3> residual;
  Matrix8c residual_sum = Matrix8c::Zero();
  for (int m = 0; m < 3; ++m) {
    residual[m] = v[0] - v[1 + 2 * m] - partial_transpose(v[2 + 2 * m], m + 1);
    residual_sum += residual[m];
  }
  const Matrix8c shared = residual_sum / 5.0;
  Block out;
  out[0] = v[0];
  for (int m = 0; m < 3; ++m) {
    const Matrix8c lambda = 0.5 * (residual[m] - shared);
    out[0] -= lambda;
    out[1 + 2 * m] = v[1 + 2 * m] + lambda;
    out[2 + 2 * m] = v[2 + 2 * m] + partial_transpose(lambda, m + 1);
  }
  return out;
}

double block_distance(const Block& a, const Block& b) {
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]).squaredNorm();
  return std::sqrt(sum);
}

struct Certified {
  double primal = 0;
  double dual = 0;
  Matrix8c witness;
  std::array<PartitionDecomposition, 3> decomposition;
  std::array<Matrix8c, 3> multipliers;
};

// Primal: shrink an affine-feasible point into the box, giving an exactly feasible witness.
// Dual: multipliers shifted so they sum to rho.
Certified certify(const Matrix8c& rho, const Matrix8c& w, const std::array<Matrix8c, 3>& p,
                  const std::array<Matrix8c, 3>& q, const std::array<Matrix8c, 3>& y) {
  Certified c;
  double violation = 0;
  for (int m = 0; m < 3; ++m)
    for (const Matrix8c* x : {&p[m], &q[m]}) {
      const auto ev = eigenvalues(*x);
      violation = std::max({violation, -ev.minCoeff(), ev.maxCoeff() - 1.0});
    }
  const double scale = 1.0 / (1.0 + 2.0 * violation);
  const Matrix8c id = Matrix8c::Identity();
  c.witness = hermitian_part((w + 2.0 * violation * id) * scale);
  for (int m = 0; m < 3; ++m) {
    c.decomposition[m].p = hermitian_part((p[m] + violation * id) * scale);
    c.decomposition[m].q = hermitian_part((q[m] + violation * id) * scale);
  }
  c.primal = (c.witness * rho).trace().real();

  Matrix8c total = Matrix8c::Zero();
  for (int m = 0; m < 3; ++m) {
    c.multipliers[m] = hermitian_part(y[m]);
    total += c.multipliers[m];
  }
  const Matrix8c correction = (rho - total) / 3.0;
  for (auto& ym : c.multipliers) ym += correction;
  c.dual = gmn_dual_value(c.multipliers);
  return c;
}

// Keeps the best certified primal and dual points seen so far.
struct Incumbent {
  GmnSolution best;
  double best_dual = -std::numeric_limits<double>::infinity();

  Incumbent() {
    best.optimum = std::numeric_limits<double>::infinity();
    best.gap = std::numeric_limits<double>::infinity();
  }

  bool offer(const Certified& c, double primal_residual, double dual_residual, double tolerance) {
    if (c.primal < best.optimum) {
      best.optimum = c.primal;
      best.witness = c.witness;
      best.decomposition = c.decomposition;
      best.primal_residual = primal_residual;
      best.dual_residual = dual_residual;
    }
    if (c.dual > best_dual) {
      best_dual = c.dual;
      best.dual_multipliers = c.multipliers;
    }
    best.gap = best.optimum - best_dual;
    return best.gap <= tolerance;
  }

  GmnSolution finish(int iterations, bool converged) {
    best.iterations = iterations;
    best.dual_bound = best_dual;
    best.gmn = std::max(0.0, -best.optimum);
    best.status = converged ? GmnStatus::converged : GmnStatus::cap_reached;
    return best;
  }
};

GmnSolution solve_splitting(const Matrix8c& rho, const GmnProblem& problem) {
  if (!(problem.penalty > 0)) throw std::invalid_argument("solve_gmn: penalty must be positive");
  if (!(problem.relaxation > 0 && problem.relaxation < 2))
    throw std::invalid_argument("solve_gmn: relaxation must lie in (0, 2)");
  const double sigma = problem.penalty;
  const double alpha = problem.relaxation;

  Block z, u;
  for (auto& m : z) m.setZero();
  for (auto& m : u) m.setZero();
  Block x = z;
  Incumbent incumbent;

  int iteration = 0;
  bool converged = false;
  for (; iteration < problem.max_iterations; ++iteration) {
    Block v;
    for (int i = 0; i < 7; ++i) v[i] = z[i] - u[i];
    v[0] -= rho / sigma;  // linear objective acts on W only
    x = project_affine(v);

    Block relaxed, z_next;
    for (int i = 0; i < 7; ++i) relaxed[i] = alpha * x[i] + (1 - alpha) * z[i];
    z_next[0] = relaxed[0] + u[0];  // W is unconstrained in the cone step
    for (int i = 1; i < 7; ++i) z_next[i] = project_box(relaxed[i] + u[i]);
    for (int i = 0; i < 7; ++i) u[i] += relaxed[i] - z_next[i];

    const double dual_step = sigma * block_distance(z_next, z);
    z = z_next;

    if (iteration % kCheckEvery == 0 || iteration + 1 == problem.max_iterations) {
      std::array<Matrix8c, 3> p, q, y;
      for (int m = 0; m < 3; ++m) {
        p[m] = x[1 + 2 * m];
        q[m] = x[2 + 2 * m];
        y[m] = -0.5 * sigma * (u[1 + 2 * m] + partial_transpose(u[2 + 2 * m], m + 1));
      }
      const Certified c = certify(rho, x[0], p, q, y);
      if (incumbent.offer(c, block_distance(x, z), dual_step, problem.tolerance)) {
        converged = true;
        ++iteration;
        break;
      }
    }
  }
  return incumbent.finish(iteration, converged);
}

// ---- interior point --------------------------------------------------------------------
//
// Dual form in the free variables y = (W, Q_1, Q_2, Q_3):
//   max -Tr[W rho]  s.t.  Z_{M,0} = W - Q_M^{T_M},  Z_{M,1} = 1 - Z_{M,0},
//                         Z_{M,2} = Q_M,           Z_{M,3} = 1 - Q_M,   all Z >= 0,
// so that P_M = Z_{M,0}. The primal blocks X_{M,k} pair with Z_{M,k}; the GMN dual
// multipliers are Y_M = X_{M,0} - X_{M,1}.

using Vars = std::array<Matrix8c, 4>;     // W, Q_1, Q_2, Q_3
using Blocks = std::array<Matrix8c, 12>;  // index 4 M + k

constexpr int kHermitianDim = 64;
constexpr int kVarDim = 4 * kHermitianDim;

const std::array<Matrix8c, kHermitianDim>& hermitian_basis() {
  static const auto basis = [] {
    std::array<Matrix8c, kHermitianDim> b;
    int n = 0;
    const double r = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < 8; ++j) {
      b[n].setZero();
      b[n++](j, j) = 1.0;
    }
    for (int j = 0; j < 8; ++j)
      for (int k = j + 1; k < 8; ++k) {
        b[n].setZero();
        b[n](j, k) = b[n](k, j) = r;
        ++n;
        b[n].setZero();
        b[n](j, k) = Complex(0, -r);
        b[n](k, j) = Complex(0, r);
        ++n;
      }
    return b;
  }();
  return basis;
}

// Coordinates Re Tr[E_e F] of any 8x8 matrix against the Hermitian basis above.
Eigen::Matrix<double, kHermitianDim, 1> hermitian_coords(const Matrix8c& f) {
  Eigen::Matrix<double, kHermitianDim, 1> out;
  const double r = 1.0 / std::sqrt(2.0);
  int n = 0;
  for (int j = 0; j < 8; ++j) out(n++) = f(j, j).real();
  for (int j = 0; j < 8; ++j)
    for (int k = j + 1; k < 8; ++k) {
      out(n++) = r * (f(j, k).real() + f(k, j).real());
      out(n++) = r * (f(k, j).imag() - f(j, k).imag());
    }
  return out;
}

Eigen::VectorXd to_coords(const Vars& v) {
  Eigen::VectorXd out(kVarDim);
  for (int g = 0; g < 4; ++g) out.segment<kHermitianDim>(g * kHermitianDim) = hermitian_coords(v[g]);
  return out;
}

Vars from_coords(const Eigen::VectorXd& c) {
  const auto& basis = hermitian_basis();
  Vars v;
  for (int g = 0; g < 4; ++g) {
    v[g].setZero();
    for (int e = 0; e < kHermitianDim; ++e) v[g] += c(g * kHermitianDim + e) * basis[e];
  }
  return v;
}

Blocks adjoint_map(const Vars& y) {
  Blocks z;
  for (int m = 0; m < 3; ++m) {
    const Matrix8c p = y[0] - partial_transpose(y[1 + m], m + 1);
    z[4 * m + 0] = -p;
    z[4 * m + 1] = p;
    z[4 * m + 2] = -y[1 + m];
    z[4 * m + 3] = y[1 + m];
  }
  return z;
}

Vars forward_map(const Blocks& x) {
  Vars g;
  g[0].setZero();
  for (int m = 0; m < 3; ++m) {
    const Matrix8c d = hermitian_part(x[4 * m + 0] - x[4 * m + 1]);
    g[0] -= d;
    g[1 + m] = partial_transpose(d, m + 1) - hermitian_part(x[4 * m + 2] - x[4 * m + 3]);
  }
  return g;
}

Blocks constant_blocks() {
  Blocks c;
  for (int m = 0; m < 3; ++m) {
    c[4 * m + 0].setZero();
    c[4 * m + 1].setIdentity();
    c[4 * m + 2].setZero();
    c[4 * m + 3].setIdentity();
  }
  return c;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] * b[i]).trace().real();
  return s;
}

double norm(const Blocks& a) { return std::sqrt(inner(a, a)); }

double norm(const Vars& v) {
  double s = 0;
  for (const auto& m : v) s += m.squaredNorm();
  return std::sqrt(s);
}

// Largest step in [0, 1/0.95] keeping x + a dx positive definite.
double max_step(const Blocks& x, const Blocks& dx) {
  double step = 1.0 / 0.95;
  for (std::size_t b = 0; b < x.size(); ++b) {
    Eigen::LLT<Matrix8c> llt(hermitian_part(x[b]));
    if (llt.info() != Eigen::Success) return 0.0;
    const Matrix8c inv_l = llt.matrixL().solve(Matrix8c::Identity());
    const double lowest = eigenvalues(inv_l * dx[b] * inv_l.adjoint()).minCoeff();
    if (lowest < 0) step = std::min(step, -1.0 / lowest);
  }
  return step;
}

// Columns of sum_b A_b^* (X_b A_b(e_j) Z_b^{-1}) for the HKM direction.
Eigen::MatrixXd schur_complement(const Blocks& x, const Blocks& z_inv) {
  const auto& basis = hermitian_basis();
  Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(kVarDim, kVarDim);
  for (int m = 0; m < 3; ++m) {
    const int q = (1 + m) * kHermitianDim;
    const int qubit = m + 1;
    // Blocks 0 and 1 see W and Q_M through W - Q_M^{T_M}.
    for (int j = 0; j < 2 * kHermitianDim; ++j) {
      const Matrix8c& e = basis[j % kHermitianDim];
      const Matrix8c lift = j < kHermitianDim ? e : Matrix8c(-partial_transpose(e, qubit));
      const Matrix8c f = x[4 * m] * lift * z_inv[4 * m] + x[4 * m + 1] * lift * z_inv[4 * m + 1];
      const int col = j < kHermitianDim ? j : q + j - kHermitianDim;
      schur.block<kHermitianDim, 1>(0, col) += hermitian_coords(f);
      schur.block<kHermitianDim, 1>(q, col) -= hermitian_coords(partial_transpose(f, qubit));
    }
    // Blocks 2 and 3 see Q_M alone.
    for (int j = 0; j < kHermitianDim; ++j) {
      const Matrix8c f = x[4 * m + 2] * basis[j] * z_inv[4 * m + 2] +
                         x[4 * m + 3] * basis[j] * z_inv[4 * m + 3];
      schur.block<kHermitianDim, 1>(q, q + j) += hermitian_coords(f);
    }
  }
  return 0.5 * (schur + schur.transpose());
}

GmnSolution solve_interior_point(const Matrix8c& rho, const GmnProblem& problem) {
  constexpr double n_total = 12 * 8;
  const int cap = std::min(problem.max_iterations, 200);
  const Blocks c_blocks = constant_blocks();
  Vars b_vars;
  b_vars[0] = -rho;
  for (int m = 1; m < 4; ++m) b_vars[m].setZero();
  const Eigen::VectorXd b_coords = to_coords(b_vars);

  Blocks x, z;
  for (auto& m : x) m.setIdentity();
  for (auto& m : z) m.setIdentity();
  Vars y;
  for (auto& m : y) m.setZero();

  Incumbent incumbent;
  int iteration = 0;
  bool converged = false;
  for (; iteration < cap; ++iteration) {
    const Blocks aty = adjoint_map(y);
    Blocks r_d;
    for (int i = 0; i < 12; ++i) r_d[i] = c_blocks[i] - z[i] - aty[i];
    const Vars ax = forward_map(x);
    Vars r_p;
    for (int g = 0; g < 4; ++g) r_p[g] = b_vars[g] - ax[g];
    const double mu = inner(x, z) / n_total;
    const double primal_infeasibility = norm(r_p) / (1.0 + norm(b_vars));
    const double dual_infeasibility = norm(r_d) / (1.0 + norm(c_blocks));

    {
      std::array<Matrix8c, 3> p, q, mult;
      for (int m = 0; m < 3; ++m) {
        q[m] = y[1 + m];
        p[m] = y[0] - partial_transpose(y[1 + m], m + 1);
        mult[m] = x[4 * m + 0] - x[4 * m + 1];
      }
      const Certified cert = certify(rho, y[0], p, q, mult);
      if (incumbent.offer(cert, primal_infeasibility, dual_infeasibility, problem.tolerance)) {
        converged = true;
        break;
      }
    }
    if (!(mu > 1e-16)) break;

    Blocks z_inv;
    for (int i = 0; i < 12; ++i) z_inv[i] = hermitian_part(z[i]).inverse();
    const Eigen::MatrixXd schur = schur_complement(x, z_inv);
    const Eigen::LDLT<Eigen::MatrixXd> factor(schur);
    if (factor.info() != Eigen::Success) break;

    Blocks xrz;
    for (int i = 0; i < 12; ++i) xrz[i] = x[i] * r_d[i] * z_inv[i];
    const Eigen::VectorXd base_rhs = b_coords + to_coords(forward_map(xrz));

    auto direction = [&](const Blocks& h, Vars& dy, Blocks& dx, Blocks& dz) {
      const Eigen::VectorXd rhs = base_rhs - to_coords(forward_map(h));
      dy = from_coords(factor.solve(rhs));
      const Blocks atdy = adjoint_map(dy);
      for (int i = 0; i < 12; ++i) {
        dz[i] = hermitian_part(r_d[i] - atdy[i]);
        dx[i] = hermitian_part(h[i] - x[i] - x[i] * dz[i] * z_inv[i]);
      }
    };

    // Predictor.
    Blocks zero;
    for (auto& m : zero) m.setZero();
    Vars dy;
    Blocks dx, dz;
    direction(zero, dy, dx, dz);
    const double ap = std::min(1.0, max_step(x, dx));
    const double ad = std::min(1.0, max_step(z, dz));
    Blocks xa, za;
    for (int i = 0; i < 12; ++i) {
      xa[i] = x[i] + ap * dx[i];
      za[i] = z[i] + ad * dz[i];
    }
    const double mu_aff = inner(xa, za) / n_total;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector.
    Blocks h;
    for (int i = 0; i < 12; ++i)
      h[i] = (sigma * mu * Matrix8c::Identity() - dx[i] * dz[i]) * z_inv[i];
    direction(h, dy, dx, dz);
    const double step_p = std::min(1.0, 0.95 * max_step(x, dx));
    const double step_d = std::min(1.0, 0.95 * max_step(z, dz));
    if (step_p <= 0 || step_d <= 0) break;
    for (int i = 0; i < 12; ++i) {
      x[i] = hermitian_part(x[i] + step_p * dx[i]);
      z[i] = hermitian_part(z[i] + step_d * dz[i]);
    }
    for (int g = 0; g < 4; ++g) y[g] = hermitian_part(y[g] + step_d * dy[g]);
  }
  return incumbent.finish(iteration, converged);
}

void validate_density(const Matrix8c& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("solve_gmn: density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-8)
    throw std::invalid_argument("solve_gmn: density matrix trace differs from 1");
  if (eigenvalues(rho).minCoeff() < -1e-9)
    throw std::invalid_argument("solve_gmn: density matrix is not positive semidefinite");
}

}  // namespace

std::string to_string(GmnStatus status) {
  return status == GmnStatus::converged ? "converged" : "cap-reached";
}

double gmn_dual_value(const std::array<Matrix8c, 3>& multipliers) {
  double value = 0;
  for (int m = 0; m < 3; ++m)
    value -= negative_part_trace(multipliers[m]) +
             negative_part_trace(partial_transpose(multipliers[m], m + 1));
  return value;
}

GmnSolution solve_gmn(const GmnProblem& problem) {
  validate_density(problem.rho);
  if (problem.max_iterations < 1)
    throw std::invalid_argument("solve_gmn: iteration cap must be positive");
  const Matrix8c rho = hermitian_part(problem.rho);
  return problem.method == GmnMethod::interior_point ? solve_interior_point(rho, problem)
                                                     : solve_splitting(rho, problem);
}

bool CertificateReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

CertificateReport check_certificate(const GmnSolution& solution, const GmnProblem& problem) {
  CertificateReport report;
  auto add = [&](std::string name, double residual, double tolerance) {
    report.checks.push_back({std::move(name), residual <= tolerance, residual, tolerance});
  };
  const Matrix8c& w = solution.witness;
  add("witness_hermitian", (w - w.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  for (int m = 0; m < 3; ++m) {
    const auto& d = solution.decomposition[static_cast<std::size_t>(m)];
    const std::string tag = "partition_" + std::to_string(m + 1);
    add(tag + "_decomposition", (w - d.p - partial_transpose(d.q, m + 1)).cwiseAbs().maxCoeff(),
        1e-8);
    const auto ep = eigenvalues(d.p);
    const auto eq = eigenvalues(d.q);
    add(tag + "_P_lower", std::max(0.0, -ep.minCoeff()), 1e-9);
    add(tag + "_P_upper", std::max(0.0, ep.maxCoeff() - 1.0), 1e-9);
    add(tag + "_Q_lower", std::max(0.0, -eq.minCoeff()), 1e-9);
    add(tag + "_Q_upper", std::max(0.0, eq.maxCoeff() - 1.0), 1e-9);
  }
  const double objective = (w * problem.rho).trace().real();
  add("objective", std::abs(objective - solution.optimum), 1e-9);
  add("gmn_value", std::abs(solution.gmn - std::max(0.0, -solution.optimum)), 1e-12);

  Matrix8c total = Matrix8c::Zero();
  for (const auto& y : solution.dual_multipliers) total += y;
  add("dual_feasibility", (total - problem.rho).cwiseAbs().maxCoeff(), 1e-10);
  const double dual = gmn_dual_value(solution.dual_multipliers);
  add("dual_bound", std::abs(dual - solution.dual_bound), 1e-9);
  add("weak_duality", std::max(0.0, dual - objective), 1e-9);
  if (solution.status == GmnStatus::converged)
    add("duality_gap", std::max(0.0, objective - dual), problem.tolerance);

  ReceiverState state;
  state.rho = problem.rho;
  double min_negativity = std::numeric_limits<double>::infinity();
  for (auto p : {Partition::a_bc, Partition::b_ac, Partition::c_ab})
    min_negativity = std::min(min_negativity, negativity(state, p));
  add("negativity_bound", std::max(0.0, solution.gmn - min_negativity), 1e-6);
  return report;
}

namespace {

Complex parse_complex(const std::string& token) {
  std::string s = token;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty matrix entry");
  auto to_double = [&](const std::string& part) {
    std::size_t used = 0;
    double value = std::stod(part, &used);
    if (used != part.size()) throw std::invalid_argument("malformed matrix entry '" + token + "'");
    return value;
  };
  if (s.back() != 'i') return {to_double(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = (s[k - 1] == '+' || s[k - 1] == '-') && k >= 2 ? k - 1 : k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (s.empty() || s == "+") return {0.0, 1.0};
    if (s == "-") return {0.0, -1.0};
    return {0.0, to_double(s)};
  }
  const std::string re = s.substr(0, split);
  std::string im = s.substr(split);
  if (im == "+" || im == "-") im += "1";
  if (im.size() > 1 && (im[1] == '+' || im[1] == '-')) im = (im[0] == im[1] ? "" : "-") + im.substr(2);
  return {to_double(re), to_double(im)};
}

}  // namespace

Matrix8c read_density_matrix(std::istream& in) {
  Matrix8c rho;
  std::string line;
  int row = 0;
  while (row < 8 && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t\r")] == '#') continue;
    std::istringstream fields(line);
    std::string token;
    int col = 0;
    while (fields >> token) {
      if (col >= 8)
        throw std::invalid_argument("density matrix row " + std::to_string(row + 1) +
                                    " has more than 8 entries");
      rho(row, col++) = parse_complex(token);
    }
    if (col != 8)
      throw std::invalid_argument("density matrix row " + std::to_string(row + 1) + " has " +
                                  std::to_string(col) + " entries, expected 8");
    ++row;
  }
  if (row != 8)
    throw std::invalid_argument("density matrix has " + std::to_string(row) +
                                " rows, expected 8");
  return rho;
}

void write_density_matrix(std::ostream& out, const Matrix8c& rho) {
  out << std::setprecision(17);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double im = rho(i, j).imag();
      out << (j ? " " : "") << rho(i, j).real() << (std::signbit(im) ? "-" : "+") << std::abs(im)
          << 'i';
    }
    out << '\n';
  }
}

void write_gmn_report(std::ostream& out, const GmnSolution& solution,
                      const CertificateReport& report) {
  out << std::setprecision(17);
  out << "status = " << to_string(solution.status) << '\n';
  out << "gmn = " << solution.gmn << '\n';
  out << "optimum = " << solution.optimum << '\n';
  out << "dual_bound = " << solution.dual_bound << '\n';
  out << "gap = " << solution.gap << '\n';
  out << "iterations = " << solution.iterations << '\n';
  out << "primal_residual = " << solution.primal_residual << '\n';
  out << "dual_residual = " << solution.dual_residual << '\n';
  for (const auto& c : report.checks)
    out << "check." << c.name << " = " << (c.passed ? "pass" : "fail") << " residual "
        << c.residual << " tolerance " << c.tolerance << '\n';
  out << "certificate = " << (report.all_passed() ? "pass" : "fail") << '\n';
  out << "witness =\n";
  write_density_matrix(out, solution.witness);
}

}  // namespace qtransfer

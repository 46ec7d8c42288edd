#include "qtransfer/measures.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qtransfer {

namespace {

constexpr double kXTypeTolerance = 1e-12;
constexpr double kEigenClip = 1e-12;
constexpr double kVerdictBoundary = 1e-9;

// Y x Y in the computational basis: anti-diagonal (-1, 1, 1, -1).
Matrix4c spin_flip(const Matrix4c& rho) {
  Matrix4c yy = Matrix4c::Zero();
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  return yy * rho.conjugate() * yy;
}

// Eigenvalues of rho * flip(rho), descending, computed as the spectrum of the Hermitian
// form sqrt(rho) flip(rho) sqrt(rho).
std::array<double, 4> r_spectrum(const Matrix4c& rho_in) {
  const Matrix4c rho = 0.5 * (rho_in + rho_in.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> decomposition(rho);
  Eigen::Vector4d roots = decomposition.eigenvalues();
  for (int i = 0; i < 4; ++i) roots(i) = std::sqrt(std::max(0.0, roots(i)));
  const Matrix4c sqrt_rho = decomposition.eigenvectors() * roots.cast<Complex>().asDiagonal() *
                            decomposition.eigenvectors().adjoint();
  Matrix4c product = sqrt_rho * spin_flip(rho) * sqrt_rho;
  product = 0.5 * (product + product.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> spectrum(product, Eigen::EigenvaluesOnly);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    double value = spectrum.eigenvalues()(i);
    out[static_cast<std::size_t>(i)] = value < kEigenClip ? 0.0 : value;
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Vector8c basis_combination(std::initializer_list<int> indices) {
  Vector8c v = Vector8c::Zero();
  const double weight = 1.0 / std::sqrt(static_cast<double>(indices.size()));
  for (int i : indices) v(i) = weight;
  return v;
}

double expectation(const ReceiverState& state, const Vector8c& v) {
  return (v.adjoint() * state.rho * v)(0, 0).real();
}

}  // namespace

std::string to_string(Partition partition) {
  switch (partition) {
    case Partition::a_bc: return "1|23";
    case Partition::b_ac: return "2|13";
    case Partition::c_ab: return "3|12";
  }
  return "?";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::biseparable_or_unknown: return "biseparable-or-unknown";
    case Verdict::w_or_ghz: return "W-or-GHZ";
    case Verdict::ghz: return "GHZ";
  }
  return "?";
}

double concurrence_x(const TwoQubitState& state) {
  const Matrix4c& r = state.rho2;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j || (i == 1 && j == 2) || (i == 2 && j == 1)) continue;
      if (std::abs(r(i, j)) > kXTypeTolerance)
        throw std::invalid_argument("concurrence_x: pair " + to_string(state.pair) +
                                    " is not X-type with a single coherence");
    }
  const double corners = std::sqrt(std::max(0.0, r(0, 0).real() * r(3, 3).real()));
  return 2.0 * std::max(0.0, std::abs(r(1, 2)) - corners);
}

double wootters_concurrence(const Matrix4c& rho) {
  const auto lambda = r_spectrum(rho);
  const double c = std::sqrt(lambda[0]) - std::sqrt(lambda[1]) - std::sqrt(lambda[2]) -
                   std::sqrt(lambda[3]);
  return std::max(0.0, c);
}

double concurrence_assistance(const TwoQubitState& state) {
  const auto lambda = r_spectrum(state.rho2);
  double sum = 0;
  for (double l : lambda) sum += std::sqrt(l);
  return sum;
}

Matrix8c partial_transpose(const Matrix8c& op, int qubit) {
  if (qubit < 1 || qubit > 3) throw std::out_of_range("partial_transpose: qubit must be 1..3");
  const int bit = 1 << (3 - qubit);
  Matrix8c out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      // Swap the chosen qubit's bra and ket labels.
      const int ii = (i & ~bit) | (j & bit);
      const int jj = (j & ~bit) | (i & bit);
      out(ii, jj) = op(i, j);
    }
  return out;
}

double negativity(const ReceiverState& state, Partition partition) {
  Matrix8c pt = partial_transpose(state.rho, static_cast<int>(partition));
  pt = 0.5 * (pt + pt.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix8c> solver(pt, Eigen::EigenvaluesOnly);
  const double trace_norm = solver.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, 0.5 * (trace_norm - 1.0));
}

double tripartite_negativity(const ReceiverState& state) {
  double product = 1;
  for (auto p : {Partition::a_bc, Partition::b_ac, Partition::c_ab}) {
    const double n = negativity(state, p);
    if (n == 0) return 0;
    product *= n;
  }
  return std::cbrt(product);
}

Vector8c ghz_vector() { return basis_combination({0, 7}); }
Vector8c w_vector() { return basis_combination({1, 2, 4}); }

double ghz_witness(const ReceiverState& state) { return 0.5 - expectation(state, ghz_vector()); }

double w_witness(const ReceiverState& state) {
  return 2.0 / 3.0 - expectation(state, w_vector());
}

Verdict classify(double value) {
  if (value < -0.25) return Verdict::ghz;
  if (value < 0) return Verdict::w_or_ghz;
  return Verdict::biseparable_or_unknown;
}

Verdict classify(const EntanglementRecord& record) { return classify(record.ghz_witness); }

EntanglementRecord evaluate_record(const ReceiverState& state, double time) {
  EntanglementRecord rec;
  rec.time = time;
  const auto p12 = reduce_pair(state, Pair::q12);
  const auto p13 = reduce_pair(state, Pair::q13);
  const auto p23 = reduce_pair(state, Pair::q23);
  rec.c12 = concurrence_x(p12);
  rec.c13 = concurrence_x(p13);
  rec.c23 = concurrence_x(p23);
  rec.c13_assist = concurrence_assistance(p13);
  rec.neg_1_23 = negativity(state, Partition::a_bc);
  rec.neg_2_13 = negativity(state, Partition::b_ac);
  rec.neg_3_12 = negativity(state, Partition::c_ab);
  const double product = rec.neg_1_23 * rec.neg_2_13 * rec.neg_3_12;
  rec.n3 = product > 0 ? std::cbrt(product) : 0.0;
  rec.ghz_witness = ghz_witness(state);
  rec.w_witness = w_witness(state);
  rec.verdict = classify(rec.ghz_witness);
  rec.verdict_on_boundary = std::abs(rec.ghz_witness + 0.25) <= kVerdictBoundary ||
                            std::abs(rec.ghz_witness) <= kVerdictBoundary;
  return rec;
}

}  // namespace qtransfer

#pragma once

#include "qtransfer/dynamics.hpp"

#include <optional>
#include <string>

namespace qtransfer {

/// Single-qubit side of a one-versus-two bipartition; qubit 1 = A (site N-2),
/// 2 = B (N-1), 3 = C (N).
enum class Partition { a_bc = 1, b_ac = 2, c_ab = 3 };

std::string to_string(Partition partition);

enum class Verdict { biseparable_or_unknown, w_or_ghz, ghz };

std::string to_string(Verdict verdict);

/// Every quantifier at one time point; one CSV row of `evolve`.
struct EntanglementRecord {
  double time = 0;
  double c12 = 0, c13 = 0, c23 = 0;
  double c13_assist = 0;
  double neg_1_23 = 0, neg_2_13 = 0, neg_3_12 = 0;
  double n3 = 0;
  double ghz_witness = 0;
  double w_witness = 0;
  std::optional<double> gmn;
  Verdict verdict = Verdict::biseparable_or_unknown;
  /// ghz_witness lies within 1e-9 of a class threshold.
  bool verdict_on_boundary = false;
};

/// Throws std::invalid_argument unless the only off-diagonal weight sits on (1,2)/(2,1).
double concurrence_x(const TwoQubitState& state);

/// Wootters concurrence from the spectrum of rho (Y x Y) rho* (Y x Y).
double wootters_concurrence(const Matrix4c& rho);

/// Sum of square roots of the same spectrum.
double concurrence_assistance(const TwoQubitState& state);

/// Partial transpose of an 8x8 operator on receiver qubit `qubit` (1..3).
Matrix8c partial_transpose(const Matrix8c& op, int qubit);

double negativity(const ReceiverState& state, Partition partition);
double tripartite_negativity(const ReceiverState& state);

Vector8c ghz_vector();
Vector8c w_vector();

double ghz_witness(const ReceiverState& state);
double w_witness(const ReceiverState& state);

Verdict classify(double ghz_witness_value);
Verdict classify(const EntanglementRecord& record);

/// All closed-form quantifiers; `gmn` is left empty.
EntanglementRecord evaluate_record(const ReceiverState& state, double time);

}  // namespace qtransfer

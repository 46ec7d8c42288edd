#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtransfer/measures.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace qtransfer;

namespace {

ReceiverState pure(const Vector8c& psi) {
  ReceiverState s;
  s.rho = psi * psi.adjoint() / psi.squaredNorm();
  return s;
}

Vector8c basis_state(int i) {
  Vector8c v = Vector8c::Zero();
  v(i) = 1.0;
  return v;
}

// Partial transpose by explicit tensor indices rho[(a b c),(a' b' c')].
Matrix8c transpose_by_indices(const Matrix8c& rho, int qubit) {
  Matrix8c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int ap = 0; ap < 2; ++ap)
          for (int bp = 0; bp < 2; ++bp)
            for (int cp = 0; cp < 2; ++cp) {
              int r[3] = {a, b, c}, s[3] = {ap, bp, cp};
              std::swap(r[qubit - 1], s[qubit - 1]);
              out(4 * r[0] + 2 * r[1] + r[2], 4 * s[0] + 2 * s[1] + s[2]) =
                  rho(4 * a + 2 * b + c, 4 * ap + 2 * bp + cp);
            }
  return out;
}

double negativity_by_indices(const Matrix8c& rho, int qubit) {
  const Eigen::SelfAdjointEigenSolver<Matrix8c> es(transpose_by_indices(rho, qubit));
  double sum = 0;
  for (int i = 0; i < 8; ++i) sum += std::min(0.0, es.eigenvalues()(i));
  return -sum;
}

ReceiverState biseparable_form() {
  ReceiverState s;
  s.rho.setZero();
  s.rho(0, 0) = 0.5;
  s.rho(6, 6) = s.rho(3, 3) = 0.25;
  s.rho(6, 3) = s.rho(3, 6) = -0.25;
  return s;
}

ReceiverState random_sector_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  // Mixture of states (x|000> + y|111>) and states inside the 1- and 2-excitation sectors.
  ReceiverState s;
  s.rho.setZero();
  for (int k = 0; k < 4; ++k) {
    Vector8c v = Vector8c::Zero();
    if (k == 0) {
      v(0) = Complex(g(rng), g(rng));
      v(7) = Complex(g(rng), g(rng));
    } else {
      for (int i : (k % 2 ? std::array<int, 3>{1, 2, 4} : std::array<int, 3>{3, 5, 6}))
        v(i) = Complex(g(rng), g(rng));
    }
    s.rho += std::abs(g(rng)) * v * v.adjoint();
  }
  s.rho /= s.rho.trace();
  return s;
}

}  // namespace

TEST_CASE("concurrence of simple two-qubit states") {
  TwoQubitState bell;
  bell.rho2.setZero();
  bell.rho2(1, 1) = bell.rho2(2, 2) = 0.5;
  bell.rho2(1, 2) = bell.rho2(2, 1) = -0.5;
  CHECK(concurrence_x(bell) == doctest::Approx(1.0));
  CHECK(wootters_concurrence(bell.rho2) == doctest::Approx(1.0));
  CHECK(concurrence_assistance(bell) == doctest::Approx(1.0));

  TwoQubitState product;
  product.rho2.setZero();
  product.rho2(0, 0) = 1.0;
  CHECK(concurrence_x(product) == 0.0);
  CHECK(wootters_concurrence(product.rho2) == doctest::Approx(0.0).scale(1));

  TwoQubitState mixed;
  mixed.rho2 = Matrix4c::Identity() / 4.0;
  CHECK(concurrence_x(mixed) == 0.0);
  CHECK(concurrence_assistance(mixed) == doctest::Approx(1.0).epsilon(1e-12));

  TwoQubitState not_x = mixed;
  not_x.rho2(0, 1) = not_x.rho2(1, 0) = 0.1;
  CHECK_THROWS_AS(concurrence_x(not_x), std::invalid_argument);
}

TEST_CASE("X-state formula agrees with the Wootters route") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    double p[4];
    double total = 0;
    for (double& x : p) total += (x = u(rng));
    TwoQubitState s;
    s.rho2.setZero();
    for (int i = 0; i < 4; ++i) s.rho2(i, i) = p[i] / total;
    const double bound = std::sqrt(s.rho2(1, 1).real() * s.rho2(2, 2).real());
    const Complex z = std::polar(bound * u(rng), 6.283 * u(rng));
    s.rho2(1, 2) = z;
    s.rho2(2, 1) = std::conj(z);
    const double expected =
        2.0 * std::max(0.0, std::abs(z) - std::sqrt(s.rho2(0, 0).real() * s.rho2(3, 3).real()));
    CHECK(concurrence_x(s) == doctest::Approx(expected).scale(1).epsilon(1e-12));
    CHECK(wootters_concurrence(s.rho2) == doctest::Approx(expected).scale(1).epsilon(1e-7));
    CHECK(concurrence_assistance(s) >= concurrence_x(s) - 1e-9);
  }
}

TEST_CASE("negativities of GHZ, product and biseparable states") {
  const Vector8c ghz = ghz_vector();
  const auto g = pure(ghz);
  for (int q = 1; q <= 3; ++q) {
    CHECK(negativity(g, static_cast<Partition>(q)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(negativity_by_indices(g.rho, q) == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK(tripartite_negativity(g) == doctest::Approx(0.5).epsilon(1e-12));

  const auto zero = pure(basis_state(0));
  for (int q = 1; q <= 3; ++q) CHECK(negativity(zero, static_cast<Partition>(q)) == 0.0);
  CHECK(tripartite_negativity(zero) == 0.0);

  const auto bis = biseparable_form();
  CHECK(negativity(bis, Partition::b_ac) == doctest::Approx(0.0).scale(1));
  CHECK(negativity(bis, Partition::a_bc) > 0.1);
  CHECK(negativity(bis, Partition::c_ab) > 0.1);
  CHECK(tripartite_negativity(bis) == doctest::Approx(0.0).scale(1));
}

TEST_CASE("partial transpose matches the tensor-index definition") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix8c m;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m(i, j) = Complex(g(rng), g(rng));
    for (int q = 1; q <= 3; ++q) {
      CHECK((partial_transpose(m, q) - transpose_by_indices(m, q)).cwiseAbs().maxCoeff() == 0.0);
      CHECK((partial_transpose(partial_transpose(m, q), q) - m).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  CHECK_THROWS_AS(partial_transpose(Matrix8c::Identity(), 0), std::out_of_range);
  CHECK_THROWS_AS(partial_transpose(Matrix8c::Identity(), 4), std::out_of_range);
}

TEST_CASE("GHZ and W witnesses") {
  const auto g = pure(ghz_vector());
  const auto w = pure(w_vector());
  ReceiverState mixed;
  mixed.rho = Matrix8c::Identity() / 8.0;
  CHECK(ghz_witness(g) == doctest::Approx(-0.5));
  CHECK(ghz_witness(mixed) == doctest::Approx(0.375));
  CHECK(ghz_witness(w) == doctest::Approx(0.5));
  CHECK(w_witness(w) == doctest::Approx(-1.0 / 3.0));
  CHECK(w_witness(g) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("verdict thresholds") {
  CHECK(classify(-0.4) == Verdict::ghz);
  CHECK(classify(-0.1) == Verdict::w_or_ghz);
  CHECK(classify(0.2) == Verdict::biseparable_or_unknown);
  CHECK(classify(-0.25) == Verdict::w_or_ghz);
  CHECK(classify(0.0) == Verdict::biseparable_or_unknown);
  CHECK(to_string(Verdict::ghz) == "GHZ");
  CHECK(to_string(Verdict::w_or_ghz) == "W-or-GHZ");
  CHECK(to_string(Verdict::biseparable_or_unknown) == "biseparable-or-unknown");

  auto record = evaluate_record(pure(ghz_vector()), 0.0);
  CHECK(record.verdict == Verdict::ghz);
  CHECK_FALSE(record.verdict_on_boundary);
  ReceiverState edge;
  edge.rho.setZero();
  edge.rho(0, 0) = 1.0;  // <GHZ|rho|GHZ> = 1/2, witness exactly 0
  record = evaluate_record(edge, 0.0);
  CHECK(record.verdict == Verdict::biseparable_or_unknown);
  CHECK(record.verdict_on_boundary);
}

TEST_CASE("quantifiers are invariant under local phase rotations") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 6.283);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_sector_state(rng);
    const double phi[3] = {u(rng), u(rng), u(rng)};
    Vector8c phases;
    for (int i = 0; i < 8; ++i)
      phases(i) = std::polar(1.0, phi[0] * ((i >> 2) & 1) + phi[1] * ((i >> 1) & 1) + phi[2] * (i & 1));
    ReceiverState r;
    r.rho = phases.asDiagonal() * s.rho * phases.conjugate().asDiagonal();
    const auto a = evaluate_record(s, 0.0);
    const auto b = evaluate_record(r, 0.0);
    CHECK(a.c12 == doctest::Approx(b.c12).scale(1));
    CHECK(a.c13 == doctest::Approx(b.c13).scale(1));
    CHECK(a.c23 == doctest::Approx(b.c23).scale(1));
    CHECK(a.c13_assist == doctest::Approx(b.c13_assist).scale(1));
    CHECK(a.neg_1_23 == doctest::Approx(b.neg_1_23).scale(1));
    CHECK(a.neg_2_13 == doctest::Approx(b.neg_2_13).scale(1));
    CHECK(a.neg_3_12 == doctest::Approx(b.neg_3_12).scale(1));
    CHECK(a.n3 == doctest::Approx(b.n3).scale(1));
    // A global phase multiplies every vector and leaves rho unchanged.
    const Complex phase = std::polar(1.0, phi[0]);
    const auto c = evaluate_record(pure(phase * ghz_vector()), 0.0);
    CHECK(c.ghz_witness == doctest::Approx(-0.5));
  }
}

TEST_CASE("negativity bounds on random sector states") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_sector_state(rng);
    for (int q = 1; q <= 3; ++q) {
      const double n = negativity(s, static_cast<Partition>(q));
      CHECK(n >= 0.0);
      CHECK(n <= 0.5 + 1e-12);
      CHECK(n == doctest::Approx(negativity_by_indices(s.rho, q)).scale(1).epsilon(1e-12));
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtransfer/dynamics.hpp"
#include "qtransfer/measures.hpp"
#include "qtransfer/oracle.hpp"

#include <cmath>
#include <random>

using namespace qtransfer;

namespace {

ChainSpec chain(int n, double j0) {
  ChainSpec s;
  s.n_total = n;
  s.j0 = j0;
  return s;
}

struct Fixture {
  ChainSpec spec;
  SingleParticleSpectrum spectrum;
  PerturbativeFrequencies freqs;

  explicit Fixture(ChainSpec s)
      : spec(s), spectrum(diagonalize(build_couplings(s))),
        freqs(perturbative_frequencies(spectrum, s)) {}
};

const Fixture& n19() {
  static const Fixture f(chain(19, 0.01));
  return f;
}

}  // namespace

TEST_CASE("single amplitudes at t = 0 are the identity") {
  const auto s = diagonalize(build_couplings(chain(11, 0.05)));
  const auto table = amplitude_table(s, 0.0);
  for (int a = 1; a <= 11; ++a)
    for (int b = 1; b <= 11; ++b)
      CHECK(std::abs(table.f(a, b) - Complex(a == b ? 1.0 : 0.0)) < 1e-14);
}

TEST_CASE("two-site chain: f_1^2 = -i sin t") {
  const auto s = diagonalize(uniform_couplings(2));
  for (int i = 0; i <= 50; ++i) {
    const double t = 0.37 * i;
    CHECK(std::abs(single_amplitude(s, 1, 2, t) - Complex(0, -std::sin(t))) < 1e-14);
    CHECK(std::abs(single_amplitude(s, 1, 1, t) - Complex(std::cos(t), 0)) < 1e-14);
  }
}

TEST_CASE("amplitude table is unitary") {
  const auto& f = n19();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2 * f.freqs.t_slow);
  for (int i = 0; i < 20; ++i) {
    const auto table = amplitude_table(f.spectrum, u(rng));
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(19, 19);
    CHECK((table.amp * table.amp.adjoint() - id).cwiseAbs().maxCoeff() < 1e-10);
    for (int s = 1; s <= 19; ++s) CHECK(table.amp.row(s - 1).squaredNorm() == doctest::Approx(1.0));
    CHECK(std::abs(single_amplitude(f.spectrum, 2, 17, table.time) - table.f(2, 17)) < 1e-13);
  }
}

TEST_CASE("single_amplitude rejects bad sites") {
  const auto s = diagonalize(uniform_couplings(5));
  CHECK_THROWS_AS(single_amplitude(s, 0, 1, 1.0), std::out_of_range);
  CHECK_THROWS_AS(single_amplitude(s, 1, 6, 1.0), std::out_of_range);
}

TEST_CASE("three-particle determinants") {
  const auto s = diagonalize(build_couplings(chain(11, 0.05)));
  const auto t0 = amplitude_table(s, 0.0);
  CHECK(std::abs(three_amplitude(t0, {1, 2, 3}, {1, 2, 3}) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(three_amplitude(t0, {1, 2, 3}, {1, 2, 4})) < 1e-15);
  CHECK_THROWS_AS(three_amplitude(t0, {1, 2, 3}, {2, 1, 4}), std::invalid_argument);

  const auto prop = build_sector(build_couplings(chain(11, 0.05)));
  const auto table = amplitude_table(s, 50.0);
  const Eigen::VectorXcd exact = sector_amplitudes(prop, 50.0);
  double worst = 0;
  for (std::size_t c = 0; c < prop.basis.size(); ++c)
    worst = std::max(worst, std::abs(three_amplitude(table, {1, 2, 3}, prop.basis.config(c)) -
                                     exact(static_cast<Eigen::Index>(c))));
  CHECK(worst < 1e-10);
}

TEST_CASE("receiver density at t = 0 is |000><000|") {
  const auto& f = n19();
  const auto state = receiver_density(amplitude_table(f.spectrum, 0.0));
  Matrix8c expected = Matrix8c::Zero();
  expected(0, 0) = 1.0;
  CHECK((state.rho - expected).cwiseAbs().maxCoeff() < 1e-15);
  const auto pair = reduce_pair(state, Pair::q13);
  CHECK(std::abs(pair.rho2(0, 0) - Complex(1.0)) < 1e-15);
  CHECK(pair.rho2.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("receiver states are valid density matrices with the sector pattern") {
  const auto& f = n19();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.2 * f.freqs.t_slow);
  for (int i = 0; i < 200; ++i) {
    const auto state = receiver_density(amplitude_table(f.spectrum, u(rng)));
    const auto c = check_state(state);
    CHECK(c.ok());
    for (auto p : {Pair::q12, Pair::q13, Pair::q23})
      CHECK(std::abs(reduce_pair(state, p).rho2.trace() - Complex(1.0)) < 1e-12);
  }
}

TEST_CASE("allowed entry pattern") {
  CHECK(receiver_entry_allowed(0, 0));
  CHECK(receiver_entry_allowed(0, 7));
  CHECK(receiver_entry_allowed(1, 4));  // |001>, |100>
  CHECK(receiver_entry_allowed(3, 6));  // |011>, |110>
  CHECK_FALSE(receiver_entry_allowed(0, 1));
  CHECK_FALSE(receiver_entry_allowed(3, 7));
  CHECK_FALSE(receiver_entry_allowed(1, 3));
  CHECK(receiver_entry_name(3, 5) == "rho_35");
  int allowed = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) allowed += receiver_entry_allowed(i, j);
  CHECK(allowed == 1 + 9 + 9 + 1 + 2);
}

TEST_CASE("assembly fault flips the named entry") {
  const auto& f = n19();
  const auto table = amplitude_table(f.spectrum, 0.25 * f.freqs.t_slow);
  const auto good = receiver_density(table);
  const auto bad = receiver_density(table, AssemblyFault{3, 5});
  CHECK(bad.rho(3, 5) == -good.rho(3, 5));
  CHECK(bad.rho(5, 3) == -good.rho(5, 3));
  CHECK(bad.rho(0, 0) == good.rho(0, 0));
}

TEST_CASE("GHZ fidelity above 3/4 near the transfer time") {
  const auto& f = n19();
  double best = 0;
  const double tau = f.freqs.tau_estimate;
  for (int i = -400; i <= 400; ++i) {
    const double t = tau + i * f.freqs.t_fast / 80.0;
    const auto state = receiver_density(amplitude_table(f.spectrum, t));
    best = std::max(best, (ghz_vector().adjoint() * state.rho * ghz_vector())(0, 0).real());
  }
  CHECK(best > 0.75);
}

TEST_CASE("pair 13 coherence reaches 1/4 where C13 reaches 1/2") {
  const auto& f = n19();
  double best_c = 0, coherence = 0;
  for (int i = 0; i < 20000; ++i) {
    const double t = i * f.freqs.t_slow / 20000.0;
    const auto pair = reduce_pair(receiver_density(amplitude_table(f.spectrum, t)), Pair::q13);
    const double c = concurrence_x(pair);
    if (c > best_c) {
      best_c = c;
      coherence = std::abs(pair.rho2(1, 2));
    }
  }
  CHECK(best_c == doctest::Approx(0.5).epsilon(0.04));
  CHECK(coherence == doctest::Approx(0.25).epsilon(0.04));
}

TEST_CASE("perturbative amplitudes") {
  const auto& f = n19();
  CHECK(perturbative_f1(f.freqs, 0.0) == 0.0);
  CHECK(perturbative_f2(f.freqs, 0.0) == 0.0);
  double dev1 = 0, dev2 = 0, lo = 1, hi = -1;
  for (int i = 0; i <= 8000; ++i) {
    const double t = i * f.freqs.t_slow / 8000.0;
    const double p1 = perturbative_f1(f.freqs, t);
    const double p2 = perturbative_f2(f.freqs, t);
    dev1 = std::max(dev1, std::abs(std::abs(p1) - std::abs(single_amplitude(f.spectrum, 1, 17, t))));
    dev2 = std::max(dev2, std::abs(std::abs(p2) - std::abs(single_amplitude(f.spectrum, 2, 18, t))));
    lo = std::min(lo, p1);
    hi = std::max(hi, p1);
  }
  CHECK(dev1 < 0.05);
  CHECK(dev2 < 0.05);
  CHECK(lo >= -0.5 - 1e-12);
  CHECK(hi <= 1.0 + 1e-12);
}

TEST_CASE("fault-free pipeline matches the oracle at N = 11") {
  const auto spec = chain(11, 0.05);
  const auto s = diagonalize(build_couplings(spec));
  const auto prop = build_sector(build_couplings(spec));
  for (double t : {0.0, 1.0, 17.5, 333.0, 4000.0}) {
    const auto a = receiver_density(amplitude_table(s, t));
    const auto b = oracle_receiver_density(prop, t);
    CHECK((a.rho - b.rho).cwiseAbs().maxCoeff() < 1e-10);
  }
}
